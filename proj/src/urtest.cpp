#include "frec/urtest.hpp"

#include <cmath>
#include <stdexcept>

#include "frec/asymptotics.hpp"

namespace frec {

TestResult rb_unit_root_test(const RecordTrajectory& traj, double alpha) {
    if (traj.n < 3) {
        throw std::invalid_argument("rb_unit_root_test: need at least 3 curves");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("rb_unit_root_test: alpha must lie in (0,1)");
    }
    TestResult res;
    res.n = traj.n;
    res.N_upper = traj.N_upper.back();
    res.N_lower = traj.N_lower.back();
    res.N_total = traj.N.back();
    res.T_n = static_cast<double>(res.N_total) / std::sqrt(static_cast<double>(res.n));
    res.alpha = alpha;
    res.q_alpha = quantile(LimitLaw::G2, alpha);
    res.p_value = cdf(LimitLaw::G2, res.T_n);
    res.reject = res.T_n < res.q_alpha;
    return res;
}

TestResult rb_unit_root_test(const FunctionalSample& sample, DepthKind kind,
                             RecordAlgorithm algo, double alpha,
                             std::optional<std::uint64_t> tiebreak_seed) {
    if (sample.size() < 3) {
        throw std::invalid_argument("rb_unit_root_test: need at least 3 curves");
    }
    return rb_unit_root_test(detect_records(sample, kind, algo, tiebreak_seed),
                             alpha);
}

}  // namespace frec
