#pragma once

namespace frec {

/// Limit laws of the record counting processes under the random-walk null:
/// G1 for the upper counts N_n^u / sqrt(n), with density
///   g1(x) = pi^{-1/2} exp(-x^2/4),  x >= 0,
/// and G2 for the total counts T_n = N_n / sqrt(n), with density
///   g2(x) = (2/pi)^{1/2} x^2 exp(-x^2/2),  x >= 0.
enum class LimitLaw { G1, G2 };

double pdf(LimitLaw law, double x);

/// Closed forms: F1(x) = erf(x/2), F2(x) = erf(x/sqrt(2)) -
/// sqrt(2/pi) x exp(-x^2/2); both are cross-checked against quadrature of
/// the densities in the test suite.
double cdf(LimitLaw law, double x);

/// Inverse CDF by bisection on [0, 10] to |cdf(x) - alpha| <= 1e-10.
/// Throws std::invalid_argument unless 0 < alpha < 1.
double quantile(LimitLaw law, double alpha);

}  // namespace frec
