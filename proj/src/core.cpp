#include "frec/core.hpp"

#include <cmath>
#include <stdexcept>

namespace frec {

Grid uniform_grid(std::size_t m) {
    if (m < 2) {
        throw std::invalid_argument("uniform_grid: need at least 2 points");
    }
    Grid g;
    g.points.resize(m);
    g.weights.assign(m, 1.0 / static_cast<double>(m));
    for (std::size_t k = 0; k < m; ++k) {
        g.points[k] = static_cast<double>(k) / static_cast<double>(m - 1);
    }
    return g;
}

void validate_grid(const Grid& g) {
    const std::size_t m = g.points.size();
    if (m < 2) {
        throw std::invalid_argument("grid: need at least 2 points");
    }
    if (g.weights.size() != m) {
        throw std::invalid_argument("grid: points/weights length mismatch");
    }
    double wsum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        if (!(g.points[k] >= 0.0 && g.points[k] <= 1.0)) {
            throw std::invalid_argument("grid: points must lie in [0,1]");
        }
        if (k > 0 && !(g.points[k] > g.points[k - 1])) {
            throw std::invalid_argument("grid: points must be strictly increasing");
        }
        if (!(g.weights[k] > 0.0)) {
            throw std::invalid_argument("grid: weights must be positive");
        }
        wsum += g.weights[k];
    }
    if (std::abs(wsum - 1.0) > 1e-9) {
        throw std::invalid_argument("grid: weights must sum to 1");
    }
}

void validate_sample(const FunctionalSample& sample) {
    validate_grid(sample.grid);
    if (sample.curves.empty()) {
        throw std::invalid_argument("sample: need at least one curve");
    }
    const std::size_t m = sample.grid.size();
    for (const Curve& c : sample.curves) {
        if (c.values.size() != m) {
            throw std::invalid_argument("sample: curve length does not match grid");
        }
        for (double v : c.values) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("sample: non-finite curve value");
            }
        }
    }
}

double inner_product(const Curve& a, const Curve& b, const Grid& g) {
    const std::size_t m = g.size();
    if (a.size() != m || b.size() != m) {
        throw std::invalid_argument("inner_product: curve/grid length mismatch");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        acc += g.weights[k] * a.values[k] * b.values[k];
    }
    return acc;
}

double time_fraction(const std::vector<bool>& mask, const Grid& g) {
    if (mask.size() != g.size()) {
        throw std::invalid_argument("time_fraction: mask/grid length mismatch");
    }
    std::size_t count_true = 0;
    for (bool b : mask) count_true += b ? 1 : 0;
    const std::size_t count_false = mask.size() - count_true;

    // Always accumulate the same side for a mask and its complement, so that
    // time_fraction(mask) + time_fraction(!mask) == 1 holds exactly.
    const bool direct = count_true < count_false ||
                        (count_true == count_false && mask[0]);
    double acc = 0.0;
    for (std::size_t k = 0; k < mask.size(); ++k) {
        if (mask[k] == direct) acc += g.weights[k];
    }
    return direct ? acc : 1.0 - acc;
}

}  // namespace frec
