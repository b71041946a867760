#include "frec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "frec/asymptotics.hpp"

namespace frec {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string noise_tag(const NoiseSpec& spec) {
    switch (spec.kind) {
        case NoiseKind::BrownianMotion: return "bm";
        case NoiseKind::BrownianBridge: return "bb";
        case NoiseKind::GaussianProcess: return "gp";
    }
    return "?";
}

std::string model_tag(const ModelSpec& spec) {
    switch (spec.kind) {
        case ModelKind::M1_RandomWalk: return "m1";
        case ModelKind::M2_EigOneFar: return "m2";
        case ModelKind::M3_Iid: return "m3";
        case ModelKind::M4_Far1: return "m4";
        case ModelKind::M5_MeanBreak: return "m5";
        case ModelKind::M6_OperatorBreak: return "m6";
    }
    return "?";
}

std::uint64_t cell_hash(const ModelSpec& model, const NoiseSpec& noise,
                        std::size_t n) {
    std::string key = model_tag(model) + "|" + noise_tag(noise) +
                      "|n=" + std::to_string(n) +
                      "|psi1=" + std::to_string(model.psi1_norm) +
                      "|psi2=" + std::to_string(model.psi2_norm) +
                      "|k=" + std::to_string(model.break_at);
    return fnv1a(key);
}

void validate_config(const McConfig& cfg) {
    if (cfg.n_values.empty()) {
        throw std::invalid_argument("mc config: n_values must be nonempty");
    }
    if (cfg.replicates < 1) {
        throw std::invalid_argument("mc config: replicates must be >= 1");
    }
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
        throw std::invalid_argument("mc config: alpha must lie in (0,1)");
    }
    if (cfg.grid_points < 2) {
        throw std::invalid_argument("mc config: need at least 2 grid points");
    }
}

// Runs fn(r) for r in [0, count) on up to harness_thread_cap() workers.
// Each item writes only its own output slot, so scheduling cannot change
// results. The first failure is rethrown with replicate context.
template <typename Fn>
void parallel_replicates(int count, Fn&& fn) {
    const unsigned workers =
        std::min<unsigned>(std::max(1u, harness_thread_cap()),
                           static_cast<unsigned>(count));
    if (workers <= 1) {
        for (int r = 0; r < count; ++r) fn(r);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= count || failed.load()) break;
                try {
                    fn(r);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!failed.exchange(true)) {
                        error_message =
                            "replicate " + std::to_string(r) + ": " + e.what();
                    }
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (failed.load()) throw std::runtime_error(error_message);
}

}  // namespace

unsigned harness_thread_cap() {
    if (const char* env = std::getenv("FREC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

McResult run_size_power(const McConfig& cfg) {
    validate_config(cfg);
    const Grid g = uniform_grid(cfg.grid_points);

    McResult result;
    for (std::size_t n : cfg.n_values) {
        ModelSpec model = cfg.model;
        model.n = n;
        const std::uint64_t cell = cell_hash(model, cfg.noise, n);

        McCellResult out;
        out.n = n;
        out.T_samples.resize(cfg.replicates);
        out.N_samples.resize(cfg.replicates);
        std::vector<char> rejected(cfg.replicates, 0);

        const auto start = std::chrono::steady_clock::now();
        parallel_replicates(cfg.replicates, [&](int r) {
            const Seed seed{cfg.base_seed.value,
                            cell ^ static_cast<std::uint64_t>(r)};
            const FunctionalSample sample = gen_model(model, cfg.noise, g, seed);
            const TestResult tr =
                rb_unit_root_test(sample, cfg.depth, cfg.algo, cfg.alpha);
            out.T_samples[r] = tr.T_n;
            out.N_samples[r] = tr.N_total;
            rejected[r] = tr.reject ? 1 : 0;
        });
        out.wall_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();

        int reject_count = 0;
        double t_sum = 0.0;
        for (int r = 0; r < cfg.replicates; ++r) {
            reject_count += rejected[r];
            t_sum += out.T_samples[r];
        }
        out.rejection_rate =
            static_cast<double>(reject_count) / static_cast<double>(cfg.replicates);
        out.mean_T = t_sum / static_cast<double>(cfg.replicates);
        result.cells.push_back(std::move(out));
    }
    return result;
}

RecordLawResult run_record_law(const McConfig& cfg) {
    validate_config(cfg);
    if (cfg.model.kind != ModelKind::M1_RandomWalk &&
        cfg.model.kind != ModelKind::M3_Iid) {
        throw std::invalid_argument("run_record_law: model must be m1 or m3");
    }
    const Grid g = uniform_grid(cfg.grid_points);
    const std::size_t n = cfg.n_values.front();
    ModelSpec model = cfg.model;
    model.n = n;
    const std::uint64_t cell = cell_hash(model, cfg.noise, n);

    RecordLawResult out;
    out.n = n;
    const bool random_walk = model.kind == ModelKind::M1_RandomWalk;
    if (random_walk) {
        out.normalized_upper_counts.resize(cfg.replicates);
    } else {
        out.trajectories.resize(cfg.replicates);
    }

    parallel_replicates(cfg.replicates, [&](int r) {
        const Seed seed{cfg.base_seed.value, cell ^ static_cast<std::uint64_t>(r)};
        const FunctionalSample sample = gen_model(model, cfg.noise, g, seed);
        const RecordTrajectory traj = detect_records(sample, cfg.depth, cfg.algo);
        if (random_walk) {
            out.normalized_upper_counts[r] =
                static_cast<double>(traj.N_upper.back()) /
                std::sqrt(static_cast<double>(n));
        } else {
            out.trajectories[r] = traj.N;
        }
    });

    if (random_walk) {
        const int points = 200;
        const double x_max = 4.0;
        out.law_grid.resize(points);
        out.law_pdf.resize(points);
        for (int i = 0; i < points; ++i) {
            const double x = x_max * static_cast<double>(i) / (points - 1);
            out.law_grid[i] = x;
            out.law_pdf[i] = pdf(LimitLaw::G1, x);
        }
    } else {
        out.log_reference.resize(n);
        for (std::size_t j = 1; j <= n; ++j) {
            out.log_reference[j - 1] = std::log(static_cast<double>(j));
        }
    }
    return out;
}

std::vector<std::pair<double, double>> run_power_sweep(const McConfig& cfg) {
    validate_config(cfg);
    if (cfg.sweep.empty()) {
        throw std::invalid_argument("run_power_sweep: sweep must be nonempty");
    }
    if (cfg.model.kind != ModelKind::M4_Far1) {
        throw std::invalid_argument("run_power_sweep: model must be m4");
    }
    for (double norm : cfg.sweep) {
        if (!(norm > 0.0 && norm <= 1.0)) {
            throw std::invalid_argument("run_power_sweep: norms must lie in (0,1]");
        }
    }

    std::vector<std::pair<double, double>> rates;
    rates.reserve(cfg.sweep.size());
    for (double norm : cfg.sweep) {
        McConfig point = cfg;
        point.model.psi1_norm = norm;
        point.n_values = {cfg.n_values.front()};
        point.sweep.clear();
        const McResult res = run_size_power(point);
        rates.emplace_back(norm, res.cells.front().rejection_rate);
    }
    return rates;
}

}  // namespace frec
