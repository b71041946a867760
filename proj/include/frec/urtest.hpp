#pragma once

#include <cstdint>
#include <optional>

#include "frec/core.hpp"
#include "frec/depth.hpp"
#include "frec/records.hpp"

namespace frec {

/// Outcome of the record-based functional unit root test.
///
/// The null hypothesis is an I(1) functional process; it is rejected when
/// T_n = N_n / sqrt(n) falls below the alpha-quantile of the G2 limit law.
/// p_value is the left-tail probability of T_n under G2.
struct TestResult {
    std::size_t n = 0;
    int N_total = 0;
    int N_upper = 0;
    int N_lower = 0;
    double T_n = 0.0;
    double alpha = 0.05;
    double q_alpha = 0.0;
    double p_value = 1.0;
    bool reject = false;
};

TestResult rb_unit_root_test(const FunctionalSample& sample,
                             DepthKind kind = DepthKind::MBD,
                             RecordAlgorithm algo = RecordAlgorithm::StreamingPair,
                             double alpha = 0.05,
                             std::optional<std::uint64_t> tiebreak_seed = std::nullopt);

/// Same test evaluated on an already computed record trajectory.
TestResult rb_unit_root_test(const RecordTrajectory& traj, double alpha);

}  // namespace frec
