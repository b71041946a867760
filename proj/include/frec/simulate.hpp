#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "frec/core.hpp"

namespace frec {

enum class NoiseKind { BrownianMotion, BrownianBridge, GaussianProcess };

/// Functional white noise. The Gaussian-process parameters describe the
/// covariance gp_scale * exp(-gp_range * |s - t|) and are ignored by the
/// other kinds.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::BrownianMotion;
    double gp_scale = 0.2;
    double gp_range = 0.3;
};

enum class ModelKind {
    M1_RandomWalk,    // X_i = X_{i-1} + eps_i
    M2_EigOneFar,     // FAR(1) whose coefficient operator has eigenvalue 1
    M3_Iid,           // X_i = eps_i
    M4_Far1,          // FAR(1) with exponential kernel, calibrated norm
    M5_MeanBreak,     // level shift at break_at on top of an M4 path
    M6_OperatorBreak  // coefficient operator switches at break_at
};

struct ModelSpec {
    ModelKind kind = ModelKind::M1_RandomWalk;
    std::size_t n = 0;
    std::size_t break_at = 0;  // 0 means n/2
    double psi1_norm = 0.5;
    double psi2_norm = 0.7;
};

/// (value, stream) pairs yield independent reproducible random streams;
/// stream is typically the replicate index.
struct Seed {
    std::uint64_t value = 0;
    std::uint64_t stream = 0;
};

/// Deterministic random source. Normals come from Box-Muller on the raw
/// 64-bit engine output, so sequences are identical across platforms.
class Rng {
public:
    explicit Rng(Seed seed);

    double uniform();  // in (0, 1]
    double normal();   // standard normal

private:
    std::uint64_t next_word();

    std::uint64_t state_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Draws functional white noise curves; the Gaussian-process covariance
/// factor is computed once at construction.
class NoiseSampler {
public:
    NoiseSampler(const NoiseSpec& spec, const Grid& g);

    Curve draw(Rng& rng) const;

private:
    NoiseSpec spec_;
    Grid grid_;
    std::vector<double> chol_;  // lower-triangular factor, row-major (Gp only)
};

Curve gen_noise(const NoiseSpec& spec, const Grid& g, Seed seed);

/// Hilbert-Schmidt norm {sum_u sum_v w_u w_v kernel(u,v)^2}^{1/2} on the grid.
double hs_norm(const std::function<double(double, double)>& kernel, const Grid& g);

/// y(s_k) = sum_j w_j kernel(s_j, s_k) x(s_j).
Curve apply_kernel_operator(const std::function<double(double, double)>& kernel,
                            const Curve& x, const Grid& g);

/// Kernels of the calibrated FAR(1) coefficient operators:
/// exp(+(u^2+s^2)/2) scaled so the Hilbert-Schmidt norm equals target_norm
/// (sign = +1), or exp(-(u^2+s^2)/2) likewise (sign = -1).
std::function<double(double, double)> calibrated_exp_kernel(int sign,
                                                            double target_norm,
                                                            const Grid& g);

FunctionalSample gen_model(const ModelSpec& model, const NoiseSpec& noise,
                           const Grid& g, Seed seed);

/// Test hook: same recursions with an arbitrary noise source.
FunctionalSample gen_model_with(const ModelSpec& model,
                                const std::function<Curve(Rng&)>& noise_source,
                                const Grid& g, Rng& rng);

}  // namespace frec
