#include "frec/records.hpp"

#include <algorithm>
#include <iostream>
#include <stdexcept>

namespace frec {

namespace {

DiagnosticHandler& diagnostic_handler() {
    static DiagnosticHandler handler = [](const std::string& msg) {
        std::cerr << "frec: warning: " << msg << "\n";
    };
    return handler;
}

double weighted_mean(const Curve& c, const Grid& g) {
    double acc = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) acc += g.weights[k] * c.values[k];
    return acc;
}

double fraction_at_or_above(const Curve& x, const Curve& ref, const Grid& g) {
    std::vector<bool> mask(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) mask[k] = x.values[k] >= ref.values[k];
    return time_fraction(mask, g);
}

RecordKind resolve_kind(double t_upper, const Curve& x, const Curve& ref,
                        const Grid& g) {
    if (t_upper > 0.5) return RecordKind::Upper;
    if (t_upper < 0.5) return RecordKind::Lower;
    // Exact half split: decide by the mean level, a measure-zero event for
    // continuous data.
    return weighted_mean(x, g) > weighted_mean(ref, g) ? RecordKind::Upper
                                                       : RecordKind::Lower;
}

// The two initial curves are records by definition. The one lying above the
// other on the larger time fraction seeds the upper side.
std::pair<RecordEvent, RecordEvent> seed_initial_events(
    const FunctionalSample& sample, DepthKind kind) {
    const Grid& g = sample.grid;
    const Curve& x1 = sample.curves[0];
    const Curve& x2 = sample.curves[1];

    FunctionalSample head;
    head.grid = g;
    head.curves = {x1, x2};
    const DepthVector dv2 = compute_depth(head, kind);

    const double t1 = fraction_at_or_above(x1, x2, g);
    const RecordKind k1 = resolve_kind(t1, x1, x2, g);

    RecordEvent e1;
    e1.time = 1;
    e1.kind = k1;
    e1.depth_at_detection = 1.0;  // a single curve is trivially the deepest
    e1.t_upper = t1;
    e1.t_lower = 1.0 - t1;

    RecordEvent e2;
    e2.time = 2;
    e2.kind = k1 == RecordKind::Upper ? RecordKind::Lower : RecordKind::Upper;
    e2.depth_at_detection = dv2.values[1];
    e2.t_upper = fraction_at_or_above(x2, x1, g);
    e2.t_lower = 1.0 - e2.t_upper;
    return {e1, e2};
}

// Second-smallest value of the depth multiset (the (j-1)th largest).
double second_smallest(const std::vector<double>& values) {
    std::vector<double> copy = values;
    std::nth_element(copy.begin(), copy.begin() + 1, copy.end());
    return copy[1];
}

void warn_on_duplicate_curves(const FunctionalSample& sample) {
    const std::size_t n = sample.size();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return sample.curves[a].values < sample.curves[b].values;
    });
    for (std::size_t i = 1; i < n; ++i) {
        if (sample.curves[idx[i]].values == sample.curves[idx[i - 1]].values) {
            diagnostic_handler()(
                "sample contains bit-identical curves; the no-multiple-ties "
                "assumption may not hold");
            return;
        }
    }
}

void finalize_counts(RecordTrajectory& traj) {
    traj.N.assign(traj.n, 0);
    traj.N_upper.assign(traj.n, 0);
    traj.N_lower.assign(traj.n, 0);
    std::size_t e = 0;
    int total = 0, upper = 0, lower = 0;
    for (std::size_t j = 1; j <= traj.n; ++j) {
        if (e < traj.events.size() && traj.events[e].time == j) {
            ++total;
            if (traj.events[e].kind == RecordKind::Upper) {
                ++upper;
            } else {
                ++lower;
            }
            traj.record_times.push_back(j);
            ++e;
        }
        traj.N[j - 1] = total;
        traj.N_upper[j - 1] = upper;
        traj.N_lower[j - 1] = lower;
    }
}

std::optional<std::uint64_t> per_step_seed(std::optional<std::uint64_t> seed,
                                           std::size_t j) {
    if (!seed) return std::nullopt;
    return *seed ^ (0x9e3779b97f4a7c15ULL * j);
}

RecordTrajectory detect_exact_prefix(const FunctionalSample& sample,
                                     DepthKind kind,
                                     std::optional<std::uint64_t> seed) {
    RecordTrajectory traj;
    traj.n = sample.size();
    auto [e1, e2] = seed_initial_events(sample, kind);
    traj.events = {e1, e2};

    FunctionalSample prefix;
    prefix.grid = sample.grid;
    prefix.curves = {sample.curves[0], sample.curves[1]};
    for (std::size_t j = 3; j <= sample.size(); ++j) {
        prefix.curves.push_back(sample.curves[j - 1]);
        const DepthVector dv = compute_depth(prefix, kind);
        if (dv.values[j - 1] <= second_smallest(dv.values)) {
            const DepthOrder order = depth_order(dv, per_step_seed(seed, j));
            traj.events.push_back(classify(j, prefix, dv, order));
        }
    }
    finalize_counts(traj);
    return traj;
}

// Fenwick tree counting how many prefix curves occupy each value slot of one
// grid column.
class Fenwick {
  public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

    void add(std::size_t pos) {
        for (std::size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1)) {
            ++tree_[i];
        }
    }

    // Number of inserted slots in [0, pos).
    std::uint32_t count_below(std::size_t pos) const {
        std::uint32_t acc = 0;
        for (std::size_t i = pos; i > 0; i -= i & (~i + 1)) acc += tree_[i];
        return acc;
    }

  private:
    std::vector<std::uint32_t> tree_;
};

// Incremental below/above rank counts for the growing prefix, one Fenwick
// tree per grid column over the value slots of the full sample.
class PrefixRankIndex {
  public:
    explicit PrefixRankIndex(const FunctionalSample& sample) : sample_(sample) {
        const std::size_t n = sample.size();
        const std::size_t m = sample.grid_size();
        sorted_cols_.resize(m);
        slot_.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<std::size_t> idx(n);
            for (std::size_t i = 0; i < n; ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                const double va = sample.curves[a].values[k];
                const double vb = sample.curves[b].values[k];
                return va != vb ? va < vb : a < b;
            });
            sorted_cols_[k].resize(n);
            slot_[k].resize(n);
            for (std::size_t r = 0; r < n; ++r) {
                sorted_cols_[k][r] = sample.curves[idx[r]].values[k];
                slot_[k][idx[r]] = static_cast<std::uint32_t>(r);
            }
            fen_.emplace_back(n);
        }
    }

    void insert(std::size_t curve) {
        for (std::size_t k = 0; k < sorted_cols_.size(); ++k) {
            fen_[k].add(slot_[k][curve]);
        }
        ++inserted_;
    }

    // Counts of inserted values strictly below / strictly above curve's value
    // in column k.
    std::pair<std::uint32_t, std::uint32_t> counts(std::size_t curve,
                                                   std::size_t k) const {
        const std::vector<double>& col = sorted_cols_[k];
        const double v = sample_.curves[curve].values[k];
        const auto lo = std::lower_bound(col.begin(), col.end(), v);
        const auto hi = std::upper_bound(lo, col.end(), v);
        const std::uint32_t below =
            fen_[k].count_below(static_cast<std::size_t>(lo - col.begin()));
        const std::uint32_t leq =
            fen_[k].count_below(static_cast<std::size_t>(hi - col.begin()));
        return {below, static_cast<std::uint32_t>(inserted_) - leq};
    }

    std::size_t columns() const { return sorted_cols_.size(); }

  private:
    const FunctionalSample& sample_;
    std::vector<std::vector<double>> sorted_cols_;
    std::vector<std::vector<std::uint32_t>> slot_;
    std::vector<Fenwick> fen_;
    std::size_t inserted_ = 0;
};

std::uint64_t choose2(std::uint64_t k) { return k * (k - 1) / 2; }

// Integer modified-band-depth numerator of one curve against the current
// prefix; identical arithmetic to the batch depth computation.
std::uint64_t mbd_numerator(const PrefixRankIndex& idx, std::size_t curve,
                            std::size_t prefix_size) {
    const std::uint64_t pairs = choose2(prefix_size);
    std::uint64_t num = 0;
    for (std::size_t k = 0; k < idx.columns(); ++k) {
        const auto [below, above] = idx.counts(curve, k);
        num += pairs - choose2(below) - choose2(above);
    }
    return num;
}

LevelHist level_hist(const PrefixRankIndex& idx, std::size_t curve,
                     std::size_t prefix_size) {
    std::vector<std::size_t> levels(idx.columns());
    for (std::size_t k = 0; k < idx.columns(); ++k) {
        const auto [below, above] = idx.counts(curve, k);
        const std::size_t gap = below > above ? below - above : above - below;
        levels[k] = prefix_size - gap;
    }
    std::sort(levels.begin(), levels.end());
    LevelHist h;
    for (std::size_t k = 0; k < levels.size();) {
        std::size_t k2 = k;
        while (k2 < levels.size() && levels[k2] == levels[k]) ++k2;
        h.emplace_back(levels[k], k2 - k);
        k = k2;
    }
    return h;
}

// Indices of the two smallest-depth curves (ties broken by index).
std::pair<std::size_t, std::size_t> two_most_extreme(const DepthVector& dv) {
    std::size_t a = 0, b = 1;
    if (dv.values[b] < dv.values[a]) std::swap(a, b);
    for (std::size_t i = 2; i < dv.size(); ++i) {
        if (dv.values[i] < dv.values[a]) {
            b = a;
            a = i;
        } else if (dv.values[i] < dv.values[b]) {
            b = i;
        }
    }
    return {a, b};
}

// StreamingPair tracks the two most extreme curves seen so far and ranks each
// arrival against that pair only, touching the full prefix just when the
// cheap check fires. The filter cannot miss a record even when the tracked
// pair is stale: for any two distinct curves, at most one can be the unique
// deepest-extreme, so the less extreme of the pair is never more extreme than
// the prefix's second most extreme curve, and an arrival that is a record
// always ties or beats one of the pair. Every firing is confirmed against the
// full prefix depth (which also resynchronizes the pair) before an event is
// emitted, so the output is identical to the exact prefix scan.
RecordTrajectory detect_streaming_pair(const FunctionalSample& sample,
                                       DepthKind kind,
                                       std::optional<std::uint64_t> seed) {
    RecordTrajectory traj;
    traj.n = sample.size();
    auto [e1, e2] = seed_initial_events(sample, kind);
    traj.events = {e1, e2};

    PrefixRankIndex idx(sample);
    idx.insert(0);
    idx.insert(1);

    FunctionalSample prefix;
    prefix.grid = sample.grid;
    prefix.curves = {sample.curves[0], sample.curves[1]};

    std::size_t p1 = 0, p2 = 1;
    for (std::size_t j = 3; j <= sample.size(); ++j) {
        const std::size_t arrival = j - 1;
        idx.insert(arrival);
        prefix.curves.push_back(sample.curves[arrival]);

        bool candidate;
        if (kind == DepthKind::MBD) {
            const std::uint64_t num_x = mbd_numerator(idx, arrival, j);
            const std::uint64_t num_1 = mbd_numerator(idx, p1, j);
            const std::uint64_t num_2 = mbd_numerator(idx, p2, j);
            candidate = num_x <= std::max(num_1, num_2);
        } else {
            const LevelHist hx = level_hist(idx, arrival, j);
            candidate = compare_extremeness(hx, level_hist(idx, p1, j)) <= 0 ||
                        compare_extremeness(hx, level_hist(idx, p2, j)) <= 0;
        }

        if (candidate) {
            const DepthVector dv = compute_depth(prefix, kind);
            std::tie(p1, p2) = two_most_extreme(dv);
            if (dv.values[j - 1] <= second_smallest(dv.values)) {
                const DepthOrder order = depth_order(dv, per_step_seed(seed, j));
                traj.events.push_back(classify(j, prefix, dv, order));
            }
        }
    }
    finalize_counts(traj);
    return traj;
}

}  // namespace

void set_record_diagnostic_handler(DiagnosticHandler handler) {
    diagnostic_handler() = std::move(handler);
}

RecordEvent classify(std::size_t j, const FunctionalSample& prefix_sample,
                     const DepthVector& prefix_depth,
                     const DepthOrder& prefix_order) {
    if (j < 3 || j != prefix_sample.size() || prefix_depth.size() != j ||
        prefix_order.permutation.size() != j) {
        throw std::invalid_argument("classify: inconsistent prefix at time j");
    }
    if (prefix_depth.values[j - 1] > second_smallest(prefix_depth.values)) {
        throw std::logic_error("classify: curve at time j is not a record");
    }

    // Reference curve: the deepest of the prefix. If the arrival itself ties
    // for deepest (fully degenerate prefix), fall back to the runner-up.
    std::size_t deepest = prefix_order.permutation[0];
    if (deepest == j - 1) deepest = prefix_order.permutation[1];

    const Grid& g = prefix_sample.grid;
    const Curve& x = prefix_sample.curves[j - 1];
    const Curve& ref = prefix_sample.curves[deepest];

    RecordEvent ev;
    ev.time = j;
    ev.depth_at_detection = prefix_depth.values[j - 1];
    ev.t_upper = fraction_at_or_above(x, ref, g);
    ev.t_lower = 1.0 - ev.t_upper;
    ev.kind = resolve_kind(ev.t_upper, x, ref, g);
    return ev;
}

RecordTrajectory detect_records(const FunctionalSample& sample, DepthKind kind,
                                RecordAlgorithm algo,
                                std::optional<std::uint64_t> tiebreak_seed) {
    validate_sample(sample);
    if (sample.size() < 2) {
        throw std::invalid_argument("detect_records: need at least 2 curves");
    }
    warn_on_duplicate_curves(sample);
    return algo == RecordAlgorithm::ExactPrefix
               ? detect_exact_prefix(sample, kind, tiebreak_seed)
               : detect_streaming_pair(sample, kind, tiebreak_seed);
}

std::vector<CountingRow> counting_process(const RecordTrajectory& traj) {
    std::vector<CountingRow> rows;
    rows.reserve(traj.n);
    for (std::size_t j = 1; j <= traj.n; ++j) {
        rows.push_back(CountingRow{j, traj.N[j - 1], traj.N_upper[j - 1],
                                   traj.N_lower[j - 1]});
    }
    return rows;
}

}  // namespace frec
