#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "frec/simulate.hpp"

using namespace frec;

TEST_SUITE("simulate") {

TEST_CASE("rng streams are reproducible and distinct") {
    Rng a(Seed{42, 0});
    Rng b(Seed{42, 0});
    Rng c(Seed{42, 1});
    bool any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const double va = a.uniform();
        CHECK(va == b.uniform());
        CHECK(va > 0.0);
        CHECK(va <= 1.0);
        if (va != c.uniform()) any_diff = true;
    }
    CHECK(any_diff);
}

TEST_CASE("normal draws have roughly standard moments") {
    Rng rng(Seed{7, 0});
    const int n = 20000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sum2 += z * z;
    }
    CHECK(std::abs(sum / n) < 0.03);
    CHECK(std::abs(sum2 / n - 1.0) < 0.05);
}

TEST_CASE("brownian motion starts at zero with unit variance at s = 1") {
    const Grid g = uniform_grid(30);
    const NoiseSampler sampler(NoiseSpec{NoiseKind::BrownianMotion}, g);
    Rng rng(Seed{1, 0});
    double sum2 = 0.0;
    const int reps = 4000;
    for (int r = 0; r < reps; ++r) {
        const Curve c = sampler.draw(rng);
        CHECK(c.values.front() == 0.0);
        sum2 += c.values.back() * c.values.back();
    }
    CHECK(sum2 / reps == doctest::Approx(1.0).epsilon(0.08));
}

TEST_CASE("brownian bridge is pinned at both endpoints") {
    const Grid g = uniform_grid(25);
    const NoiseSampler sampler(NoiseSpec{NoiseKind::BrownianBridge}, g);
    Rng rng(Seed{2, 0});
    for (int r = 0; r < 50; ++r) {
        const Curve c = sampler.draw(rng);
        CHECK(c.values.front() == 0.0);
        CHECK(std::abs(c.values.back()) < 1e-14);
    }
}

TEST_CASE("gaussian process matches its covariance at lag zero") {
    NoiseSpec spec;
    spec.kind = NoiseKind::GaussianProcess;
    const Grid g = uniform_grid(15);
    const NoiseSampler sampler(spec, g);
    Rng rng(Seed{3, 0});
    double sum2 = 0.0;
    const int reps = 4000;
    for (int r = 0; r < reps; ++r) {
        const Curve c = sampler.draw(rng);
        sum2 += c.values[7] * c.values[7];
    }
    // var eps(s) = gp_scale = 0.2
    CHECK(sum2 / reps == doctest::Approx(0.2).epsilon(0.1));
}

TEST_CASE("hilbert-schmidt norm of the unit kernel is one") {
    const Grid g = uniform_grid(40);
    CHECK(hs_norm([](double, double) { return 1.0; }, g) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("calibrated kernels hit their target norm") {
    const Grid g = uniform_grid(50);
    for (int sign : {+1, -1}) {
        for (double target : {0.5, 0.7, 0.9}) {
            const auto kernel = calibrated_exp_kernel(sign, target, g);
            CHECK(hs_norm(kernel, g) == doctest::Approx(target).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(calibrated_exp_kernel(+1, 0.0, g), std::invalid_argument);
}

TEST_CASE("kernel operator application matches the quadrature sum") {
    const Grid g = uniform_grid(5);
    auto kernel = [](double u, double s) { return u + 2.0 * s; };
    const Curve x{{1.0, 2.0, 3.0, 4.0, 5.0}};
    const Curve y = apply_kernel_operator(kernel, x, g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            acc += g.weights[j] * kernel(g.points[j], g.points[k]) * x.values[j];
        }
        CHECK(y.values[k] == doctest::Approx(acc).epsilon(1e-15));
    }
}

TEST_CASE("models produce the requested shapes deterministically") {
    const Grid g = uniform_grid(12);
    for (ModelKind kind :
         {ModelKind::M1_RandomWalk, ModelKind::M2_EigOneFar, ModelKind::M3_Iid,
          ModelKind::M4_Far1, ModelKind::M5_MeanBreak, ModelKind::M6_OperatorBreak}) {
        ModelSpec model;
        model.kind = kind;
        model.n = 25;
        const FunctionalSample a = gen_model(model, NoiseSpec{}, g, Seed{5, 3});
        const FunctionalSample b = gen_model(model, NoiseSpec{}, g, Seed{5, 3});
        REQUIRE(a.size() == 25);
        REQUIRE(a.grid_size() == 12);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a.curves[i].values == b.curves[i].values);
        }
    }
}

TEST_CASE("random walk differences reproduce the driving noise") {
    const Grid g = uniform_grid(10);
    ModelSpec model;
    model.kind = ModelKind::M1_RandomWalk;
    model.n = 30;
    const FunctionalSample s = gen_model(model, NoiseSpec{}, g, Seed{8, 0});

    NoiseSampler sampler(NoiseSpec{}, g);
    Rng rng(Seed{8, 0});
    Curve prev{std::vector<double>(g.size(), 0.0)};
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Curve eps = sampler.draw(rng);
        for (std::size_t k = 0; k < g.size(); ++k) {
            CHECK(s.curves[i].values[k] ==
                  doctest::Approx(prev.values[k] + eps.values[k]).epsilon(1e-15));
        }
        prev = s.curves[i];
    }
}

TEST_CASE("mean-break model shifts the level after the break") {
    const Grid g = uniform_grid(10);
    ModelSpec with_break;
    with_break.kind = ModelKind::M5_MeanBreak;
    with_break.n = 40;
    ModelSpec plain = with_break;
    plain.kind = ModelKind::M4_Far1;
    const FunctionalSample a = gen_model(with_break, NoiseSpec{}, g, Seed{13, 0});
    const FunctionalSample b = gen_model(plain, NoiseSpec{}, g, Seed{13, 0});
    for (std::size_t i = 0; i < 40; ++i) {
        const double shift = i + 1 > 20 ? 2.0 : 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            CHECK(a.curves[i].values[k] ==
                  doctest::Approx(b.curves[i].values[k] + shift).epsilon(1e-12));
        }
    }
}

TEST_CASE("invalid model configurations are rejected") {
    const Grid g = uniform_grid(8);
    ModelSpec model;
    model.kind = ModelKind::M2_EigOneFar;
    model.n = 10;
    NoiseSpec gp;
    gp.kind = NoiseKind::GaussianProcess;
    CHECK_THROWS_AS(gen_model(model, gp, g, Seed{}), std::invalid_argument);

    ModelSpec empty;
    empty.n = 0;
    CHECK_THROWS_AS(gen_model(empty, NoiseSpec{}, g, Seed{}), std::invalid_argument);

    ModelSpec bad_break;
    bad_break.kind = ModelKind::M5_MeanBreak;
    bad_break.n = 10;
    bad_break.break_at = 11;
    CHECK_THROWS_AS(gen_model(bad_break, NoiseSpec{}, g, Seed{}),
                    std::invalid_argument);
}

}  // TEST_SUITE
