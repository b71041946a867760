#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "frec/core.hpp"

using namespace frec;

TEST_SUITE("core") {

TEST_CASE("uniform_grid spans [0,1] with equal weights") {
    const Grid g = uniform_grid(5);
    REQUIRE(g.size() == 5);
    CHECK(g.points.front() == 0.0);
    CHECK(g.points.back() == 1.0);
    CHECK(g.points[1] == doctest::Approx(0.25));
    for (double w : g.weights) CHECK(w == 0.2);
    double sum = 0.0;
    for (double w : g.weights) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("uniform_grid rejects degenerate sizes") {
    CHECK_THROWS_AS(uniform_grid(0), std::invalid_argument);
    CHECK_THROWS_AS(uniform_grid(1), std::invalid_argument);
}

TEST_CASE("validate_grid rejects broken invariants") {
    Grid g = uniform_grid(4);
    CHECK_NOTHROW(validate_grid(g));
    Grid decreasing = g;
    std::swap(decreasing.points[1], decreasing.points[2]);
    CHECK_THROWS_AS(validate_grid(decreasing), std::invalid_argument);
    Grid short_weights = g;
    short_weights.weights.pop_back();
    CHECK_THROWS_AS(validate_grid(short_weights), std::invalid_argument);
}

TEST_CASE("validate_sample rejects ragged curves and non-finite values") {
    FunctionalSample s;
    s.grid = uniform_grid(3);
    s.curves = {Curve{{1.0, 2.0, 3.0}}, Curve{{0.0, 0.0, 0.0}}};
    CHECK_NOTHROW(validate_sample(s));

    FunctionalSample ragged = s;
    ragged.curves[1].values.pop_back();
    CHECK_THROWS_AS(validate_sample(ragged), std::invalid_argument);

    FunctionalSample nan = s;
    nan.curves[0].values[1] = std::nan("");
    CHECK_THROWS_AS(validate_sample(nan), std::invalid_argument);
}

TEST_CASE("inner_product matches the weighted sum") {
    const Grid g = uniform_grid(4);
    const Curve a{{1.0, 2.0, 3.0, 4.0}};
    const Curve b{{4.0, 3.0, 2.0, 1.0}};
    // (4 + 6 + 6 + 4) / 4
    CHECK(inner_product(a, b, g) == doctest::Approx(5.0));
    CHECK(inner_product(a, b, g) == inner_product(b, a, g));
}

TEST_CASE("time_fraction of a mask and its complement sum to exactly 1") {
    std::mt19937_64 eng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 2 + eng() % 60;
        const Grid g = uniform_grid(m);
        std::vector<bool> mask(m), flipped(m);
        for (std::size_t k = 0; k < m; ++k) {
            mask[k] = (eng() & 1) != 0;
            flipped[k] = !mask[k];
        }
        const double a = time_fraction(mask, g);
        const double b = time_fraction(flipped, g);
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
        CHECK(a + b == 1.0);  // bit-exact by construction
    }
}

TEST_CASE("time_fraction of full and empty masks") {
    const Grid g = uniform_grid(7);
    CHECK(time_fraction(std::vector<bool>(7, true), g) == 1.0);
    CHECK(time_fraction(std::vector<bool>(7, false), g) == 0.0);
}

}  // TEST_SUITE
