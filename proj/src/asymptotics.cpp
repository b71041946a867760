#include "frec/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace frec {

double pdf(LimitLaw law, double x) {
    if (x < 0.0) return 0.0;
    if (law == LimitLaw::G1) {
        return std::exp(-x * x / 4.0) / std::sqrt(std::numbers::pi);
    }
    return std::sqrt(2.0 / std::numbers::pi) * x * x * std::exp(-x * x / 2.0);
}

double cdf(LimitLaw law, double x) {
    if (x < 0.0) return 0.0;
    if (law == LimitLaw::G1) {
        return std::erf(x / 2.0);
    }
    return std::erf(x / std::numbers::sqrt2) -
           std::sqrt(2.0 / std::numbers::pi) * x * std::exp(-x * x / 2.0);
}

double quantile(LimitLaw law, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("quantile: alpha must lie in (0,1)");
    }
    double lo = 0.0;
    double hi = 10.0;  // cdf(law, 10) == 1 to machine precision
    double mid = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double f = cdf(law, mid);
        if (std::abs(f - alpha) <= 1e-10) break;
        if (f < alpha) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-15) break;
    }
    return mid;
}

}  // namespace frec
