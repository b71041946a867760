#pragma once

#include <cstddef>
#include <vector>

namespace frec {

/// Discretization of [0,1]: strictly increasing abscissae plus quadrature
/// weights that split the unit Lebesgue measure across the points.
struct Grid {
    std::vector<double> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
};

/// One discretized function: one value per grid point.
struct Curve {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t k) const { return values[k]; }
};

/// A functional time series: curves on a shared grid, index i = time order.
struct FunctionalSample {
    Grid grid;
    std::vector<Curve> curves;

    std::size_t size() const { return curves.size(); }
    std::size_t grid_size() const { return grid.size(); }
};

/// m equispaced points k/(m-1) on [0,1], equal weights 1/m.
/// Throws std::invalid_argument for m < 2.
Grid uniform_grid(std::size_t m);

/// Throws std::invalid_argument if the grid invariants are violated.
void validate_grid(const Grid& g);

/// Throws std::invalid_argument if curves and grid are inconsistent or any
/// value is non-finite.
void validate_sample(const FunctionalSample& sample);

/// Quadrature inner product  sum_k w_k a_k b_k.
double inner_product(const Curve& a, const Curve& b, const Grid& g);

/// Lebesgue measure of {s : mask(s)} approximated by the weights of the
/// points where the mask is true.
double time_fraction(const std::vector<bool>& mask, const Grid& g);

}  // namespace frec
