#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "frec/depth.hpp"
#include "frec/records.hpp"
#include "frec/simulate.hpp"
#include "frec/urtest.hpp"

namespace frec {

/// One Monte Carlo experiment plan. Replicates of each cell are independent
/// work items; the replicate seed stream is hash(cell) ^ replicate, so
/// results do not depend on worker count or on which other cells run.
struct McConfig {
    ModelSpec model;
    NoiseSpec noise;
    std::vector<std::size_t> n_values;
    int replicates = 200;
    double alpha = 0.05;
    DepthKind depth = DepthKind::MBD;
    RecordAlgorithm algo = RecordAlgorithm::StreamingPair;
    Seed base_seed;
    std::vector<double> sweep;  // optional psi1_norm sweep (model m4)
    std::size_t grid_points = 50;
};

struct McCellResult {
    std::size_t n = 0;
    double rejection_rate = 0.0;
    double mean_T = 0.0;
    std::vector<double> T_samples;  // indexed by replicate
    std::vector<int> N_samples;     // N_n per replicate
    double wall_seconds = 0.0;
};

struct McResult {
    std::vector<McCellResult> cells;
};

/// Size/power experiment: per (n, replicate) generate a sample, run the
/// record-based unit root test, and aggregate rejection rates.
McResult run_size_power(const McConfig& cfg);

/// Limit-law experiment at n = n_values.front().
/// For the random-walk model: the empirical sample of N_n^u / sqrt(n) plus
/// the G1 density on a plotting grid. For the i.i.d. model: the N_j
/// trajectories plus the log j reference curve.
struct RecordLawResult {
    std::size_t n = 0;
    std::vector<double> normalized_upper_counts;
    std::vector<double> law_grid;
    std::vector<double> law_pdf;
    std::vector<std::vector<int>> trajectories;
    std::vector<double> log_reference;
};

RecordLawResult run_record_law(const McConfig& cfg);

/// Rejection rate per operator norm (model m4, n = n_values.front()).
std::vector<std::pair<double, double>> run_power_sweep(const McConfig& cfg);

/// Worker cap used by the harness: FREC_THREADS if set, else the hardware
/// concurrency.
unsigned harness_thread_cap();

}  // namespace frec
