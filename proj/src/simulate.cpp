#include "frec/simulate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace frec {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(Seed seed) {
    std::uint64_t s = seed.value ^ (seed.stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    for (auto& word : state_) word = splitmix64(s);
}

std::uint64_t Rng::next_word() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    return (static_cast<double>(next_word() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

namespace {

// In-place Cholesky of a dense symmetric matrix (row-major). Throws on a
// non-positive-definite input.
void cholesky(std::vector<double>& a, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i * m + j];
            for (std::size_t k = 0; k < j; ++k) sum -= a[i * m + k] * a[j * m + k];
            if (i == j) {
                if (sum <= 0.0) {
                    throw std::runtime_error(
                        "gaussian process covariance is not positive definite");
                }
                a[i * m + j] = std::sqrt(sum);
            } else {
                a[i * m + j] = sum / a[j * m + j];
            }
        }
        for (std::size_t j = i + 1; j < m; ++j) a[i * m + j] = 0.0;
    }
}

}  // namespace

NoiseSampler::NoiseSampler(const NoiseSpec& spec, const Grid& g)
    : spec_(spec), grid_(g) {
    validate_grid(g);
    if (spec.kind == NoiseKind::GaussianProcess) {
        if (!(spec.gp_scale > 0.0) || !(spec.gp_range > 0.0)) {
            throw std::invalid_argument("gaussian process parameters must be positive");
        }
        const std::size_t m = g.size();
        chol_.resize(m * m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                chol_[i * m + j] = spec.gp_scale *
                                   std::exp(-spec.gp_range * std::abs(g.points[i] - g.points[j]));
            }
            chol_[i * m + i] += 1e-12;  // guard numerically semi-definite inputs
        }
        cholesky(chol_, m);
    }
}

Curve NoiseSampler::draw(Rng& rng) const {
    const std::size_t m = grid_.size();
    Curve c;
    c.values.resize(m);
    switch (spec_.kind) {
        case NoiseKind::BrownianMotion:
        case NoiseKind::BrownianBridge: {
            double prev_s = 0.0;
            double w = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                const double ds = grid_.points[k] - prev_s;
                if (ds > 0.0) w += std::sqrt(ds) * rng.normal();
                prev_s = grid_.points[k];
                c.values[k] = w;
            }
            if (spec_.kind == NoiseKind::BrownianBridge) {
                const double w1 = c.values[m - 1];
                for (std::size_t k = 0; k < m; ++k) {
                    c.values[k] -= grid_.points[k] * w1;
                }
            }
            break;
        }
        case NoiseKind::GaussianProcess: {
            std::vector<double> z(m);
            for (std::size_t k = 0; k < m; ++k) z[k] = rng.normal();
            for (std::size_t i = 0; i < m; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j <= i; ++j) acc += chol_[i * m + j] * z[j];
                c.values[i] = acc;
            }
            break;
        }
    }
    return c;
}

Curve gen_noise(const NoiseSpec& spec, const Grid& g, Seed seed) {
    NoiseSampler sampler(spec, g);
    Rng rng(seed);
    return sampler.draw(rng);
}

double hs_norm(const std::function<double(double, double)>& kernel, const Grid& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double k = kernel(g.points[i], g.points[j]);
            acc += g.weights[i] * g.weights[j] * k * k;
        }
    }
    return std::sqrt(acc);
}

Curve apply_kernel_operator(const std::function<double(double, double)>& kernel,
                            const Curve& x, const Grid& g) {
    const std::size_t m = g.size();
    if (x.size() != m) {
        throw std::invalid_argument("apply_kernel_operator: curve/grid mismatch");
    }
    Curve y;
    y.values.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            acc += g.weights[j] * kernel(g.points[j], g.points[k]) * x.values[j];
        }
        y.values[k] = acc;
    }
    return y;
}

std::function<double(double, double)> calibrated_exp_kernel(int sign,
                                                            double target_norm,
                                                            const Grid& g) {
    if (target_norm <= 0.0) {
        throw std::invalid_argument("calibrated_exp_kernel: norm must be positive");
    }
    const double sg = sign >= 0 ? 0.5 : -0.5;
    auto base = [sg](double u, double s) { return std::exp(sg * (u * u + s * s)); };
    const double c = target_norm / hs_norm(base, g);
    return [base, c](double u, double s) { return c * base(u, s); };
}

namespace {

constexpr std::size_t kBurnIn = 100;

// Precomputed quadrature matrix of a kernel integral operator.
class KernelOperator {
public:
    KernelOperator(const std::function<double(double, double)>& kernel, const Grid& g)
        : m_(g.size()), a_(m_ * m_) {
        for (std::size_t k = 0; k < m_; ++k) {
            for (std::size_t j = 0; j < m_; ++j) {
                a_[k * m_ + j] = g.weights[j] * kernel(g.points[j], g.points[k]);
            }
        }
    }

    Curve apply(const Curve& x) const {
        Curve y;
        y.values.resize(m_);
        for (std::size_t k = 0; k < m_; ++k) {
            double acc = 0.0;
            for (std::size_t j = 0; j < m_; ++j) acc += a_[k * m_ + j] * x.values[j];
            y.values[k] = acc;
        }
        return y;
    }

private:
    std::size_t m_;
    std::vector<double> a_;
};

Curve zero_curve(const Grid& g) { return Curve{std::vector<double>(g.size(), 0.0)}; }

void add_in_place(Curve& x, const Curve& y) {
    for (std::size_t k = 0; k < x.size(); ++k) x.values[k] += y.values[k];
}

// Orthonormal pair {1, sqrt(2) cos(2 pi s)} re-orthonormalized against the
// grid inner product.
std::pair<Curve, Curve> orthonormal_pair(const Grid& g) {
    const std::size_t m = g.size();
    Curve e1{std::vector<double>(m, 1.0)};
    Curve e2;
    e2.values.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        e2.values[k] = std::numbers::sqrt2 * std::cos(2.0 * std::numbers::pi * g.points[k]);
    }
    const double n1 = std::sqrt(inner_product(e1, e1, g));
    for (double& v : e1.values) v /= n1;
    const double proj = inner_product(e2, e1, g);
    for (std::size_t k = 0; k < m; ++k) e2.values[k] -= proj * e1.values[k];
    const double n2 = std::sqrt(inner_product(e2, e2, g));
    for (double& v : e2.values) v /= n2;
    return {e1, e2};
}

}  // namespace

FunctionalSample gen_model_with(const ModelSpec& model,
                                const std::function<Curve(Rng&)>& noise_source,
                                const Grid& g, Rng& rng) {
    if (model.n < 1) {
        throw std::invalid_argument("gen_model: sample size must be positive");
    }
    const std::size_t n = model.n;
    std::size_t break_at = model.break_at == 0 ? n / 2 : model.break_at;
    if (break_at > n) {
        throw std::invalid_argument("gen_model: break point beyond sample size");
    }

    FunctionalSample out;
    out.grid = g;
    out.curves.reserve(n);

    switch (model.kind) {
        case ModelKind::M1_RandomWalk: {
            Curve x = zero_curve(g);
            for (std::size_t i = 0; i < n; ++i) {
                add_in_place(x, noise_source(rng));
                out.curves.push_back(x);
            }
            break;
        }
        case ModelKind::M2_EigOneFar: {
            const auto [e1, e2] = orthonormal_pair(g);
            const double a = (std::sqrt(5.0) - 1.0) / 2.0;
            double u = 0.0, v = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double u_next = a * (u + v) + rng.normal();
                const double v_next = a * u;
                u = u_next;
                v = v_next;
                Curve x;
                x.values.resize(g.size());
                for (std::size_t k = 0; k < g.size(); ++k) {
                    x.values[k] = u * e1.values[k] + v * e2.values[k];
                }
                out.curves.push_back(std::move(x));
            }
            break;
        }
        case ModelKind::M3_Iid: {
            for (std::size_t i = 0; i < n; ++i) out.curves.push_back(noise_source(rng));
            break;
        }
        case ModelKind::M4_Far1: {
            const KernelOperator psi1(calibrated_exp_kernel(+1, model.psi1_norm, g), g);
            Curve x = zero_curve(g);
            for (std::size_t i = 0; i < kBurnIn + n; ++i) {
                x = psi1.apply(x);
                add_in_place(x, noise_source(rng));
                if (i >= kBurnIn) out.curves.push_back(x);
            }
            break;
        }
        case ModelKind::M5_MeanBreak: {
            const KernelOperator psi1(calibrated_exp_kernel(+1, model.psi1_norm, g), g);
            Curve eta = zero_curve(g);
            for (std::size_t i = 0; i < kBurnIn + n; ++i) {
                eta = psi1.apply(eta);
                add_in_place(eta, noise_source(rng));
                if (i >= kBurnIn) {
                    Curve x = eta;
                    if (i - kBurnIn + 1 > break_at) {
                        for (double& vv : x.values) vv += 2.0;
                    }
                    out.curves.push_back(std::move(x));
                }
            }
            break;
        }
        case ModelKind::M6_OperatorBreak: {
            const KernelOperator psi1(calibrated_exp_kernel(+1, model.psi1_norm, g), g);
            const KernelOperator psi2(calibrated_exp_kernel(-1, model.psi2_norm, g), g);
            Curve x = zero_curve(g);
            for (std::size_t i = 0; i < kBurnIn + n; ++i) {
                const bool pre_break = i < kBurnIn || (i - kBurnIn + 1) <= break_at;
                x = pre_break ? psi2.apply(x) : psi1.apply(x);
                add_in_place(x, noise_source(rng));
                if (i >= kBurnIn) out.curves.push_back(x);
            }
            break;
        }
    }
    return out;
}

FunctionalSample gen_model(const ModelSpec& model, const NoiseSpec& noise,
                           const Grid& g, Seed seed) {
    if (model.kind == ModelKind::M2_EigOneFar &&
        noise.kind != NoiseKind::BrownianMotion) {
        // The model fixes its own scalar innovation on the first basis
        // direction; only the default noise tag is accepted.
        throw std::invalid_argument("gen_model: model m2 does not take a noise choice");
    }
    NoiseSampler sampler(noise, g);
    Rng rng(seed);
    auto source = [&sampler](Rng& r) { return sampler.draw(r); };
    return gen_model_with(model, source, g, rng);
}

}  // namespace frec
