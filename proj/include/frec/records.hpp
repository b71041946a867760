#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "frec/core.hpp"
#include "frec/depth.hpp"

namespace frec {

enum class RecordKind { Upper, Lower };

/// One record event at (1-based) time j.
struct RecordEvent {
    std::size_t time = 0;
    RecordKind kind = RecordKind::Upper;
    double depth_at_detection = 0.0;
    double t_upper = 0.0;  // fraction of time spent at or above the deepest curve
    double t_lower = 0.0;  // 1 - t_upper
};

/// Record events plus the counting processes they induce.
///
/// N[j-1] is the number of records among the first j curves; N = N_upper +
/// N_lower elementwise. The first two curves are records by definition, so
/// N[0] = 1 and N[1] = 2. record_times lists the L(k) sequence.
struct RecordTrajectory {
    std::vector<RecordEvent> events;
    std::size_t n = 0;
    std::vector<int> N;
    std::vector<int> N_upper;
    std::vector<int> N_lower;
    std::vector<std::size_t> record_times;
};

/// ExactPrefix recomputes the depth of the whole prefix at every step and is
/// the reference semantics (O(n^2 m log n)). StreamingPair keeps the two most
/// extreme curves seen so far and ranks each arrival against that pair,
/// falling back to a full-prefix confirmation only when the pair is tied or
/// beaten (amortized O(n m log n) plus the confirmations); the two algorithms
/// produce identical trajectories.
enum class RecordAlgorithm { ExactPrefix, StreamingPair };

struct CountingRow {
    std::size_t j;
    int N;
    int N_upper;
    int N_lower;
};

/// Optional sink for diagnostics (duplicate curves in the input, which may
/// break the no-multiple-ties assumption). Defaults to stderr.
using DiagnosticHandler = std::function<void(const std::string&)>;
void set_record_diagnostic_handler(DiagnosticHandler handler);

RecordTrajectory detect_records(const FunctionalSample& sample, DepthKind kind,
                                RecordAlgorithm algo,
                                std::optional<std::uint64_t> tiebreak_seed = std::nullopt);

/// Classifies the record at time j (1-based, j >= 3) of the given prefix as
/// upper or lower by the fraction of time it spends at or above the deepest
/// curve of the prefix. Throws std::logic_error if x_j is not a record.
RecordEvent classify(std::size_t j, const FunctionalSample& prefix_sample,
                     const DepthVector& prefix_depth, const DepthOrder& prefix_order);

std::vector<CountingRow> counting_process(const RecordTrajectory& traj);

}  // namespace frec
