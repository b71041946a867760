#include <doctest.h>

#include <cmath>
#include <functional>
#include <stdexcept>

#include "frec/asymptotics.hpp"

using namespace frec;

namespace {

// Adaptive Simpson quadrature; reference integrator for the density/CDF
// consistency checks.
double simpson(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double eps, int depth) {
    const double c = 0.5 * (a + b);
    const double whole = simpson(f, a, b);
    const double halves = simpson(f, a, c) + simpson(f, c, b);
    if (depth <= 0 || std::abs(halves - whole) < 15.0 * eps) {
        return halves + (halves - whole) / 15.0;
    }
    return integrate(f, a, c, eps / 2.0, depth - 1) +
           integrate(f, c, b, eps / 2.0, depth - 1);
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("cdf matches the integrated density to 1e-9") {
    for (LimitLaw law : {LimitLaw::G1, LimitLaw::G2}) {
        auto density = [law](double x) { return pdf(law, x); };
        for (double x : {0.1, 0.34, 0.59, 1.0, 2.0, 3.5, 6.0}) {
            const double numeric = integrate(density, 0.0, x, 1e-13, 40);
            CHECK(std::abs(cdf(law, x) - numeric) <= 1e-9);
        }
    }
}

TEST_CASE("densities integrate to one") {
    for (LimitLaw law : {LimitLaw::G1, LimitLaw::G2}) {
        auto density = [law](double x) { return pdf(law, x); };
        // integrate in pieces so the adaptive rule cannot short-circuit on a
        // flat-looking wide interval
        double total = 0.0;
        for (double a = 0.0; a < 10.0; a += 1.0) {
            total += integrate(density, a, a + 1.0, 1e-14, 40);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(cdf(law, 40.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("pdf and cdf boundary behavior") {
    for (LimitLaw law : {LimitLaw::G1, LimitLaw::G2}) {
        CHECK(cdf(law, 0.0) == 0.0);
        CHECK(cdf(law, -1.0) == 0.0);
        CHECK(pdf(law, -1.0) == 0.0);
    }
    CHECK(pdf(LimitLaw::G1, 0.0) == doctest::Approx(1.0 / std::sqrt(std::acos(-1.0))));
    CHECK(pdf(LimitLaw::G2, 0.0) == 0.0);
}

TEST_CASE("quantile inverts the cdf") {
    for (LimitLaw law : {LimitLaw::G1, LimitLaw::G2}) {
        for (double alpha : {0.01, 0.05, 0.25, 0.5, 0.9, 0.99}) {
            const double q = quantile(law, alpha);
            CHECK(std::abs(cdf(law, q) - alpha) <= 1e-9);
        }
    }
}

TEST_CASE("reference critical values of the total-count law") {
    const double q05 = quantile(LimitLaw::G2, 0.05);
    const double q01 = quantile(LimitLaw::G2, 0.01);
    CHECK(std::round(q05 * 100.0) / 100.0 == doctest::Approx(0.59));
    CHECK(std::round(q01 * 100.0) / 100.0 == doctest::Approx(0.34));
}

TEST_CASE("quantile rejects alphas outside (0,1)") {
    CHECK_THROWS_AS(quantile(LimitLaw::G2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(quantile(LimitLaw::G2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(quantile(LimitLaw::G1, -0.2), std::invalid_argument);
}

}  // TEST_SUITE
