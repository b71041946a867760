#include "frec/depth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>

namespace frec {

namespace {

std::uint64_t choose2(std::uint64_t k) { return k * (k - 1) / 2; }

// Sorted copy of the values of one grid column.
std::vector<double> sorted_column(const FunctionalSample& sample, std::size_t k) {
    std::vector<double> col(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        col[i] = sample.curves[i].values[k];
    }
    std::sort(col.begin(), col.end());
    return col;
}

}  // namespace

DepthVector mbd(const FunctionalSample& sample) {
    validate_sample(sample);
    const std::size_t n = sample.size();
    const std::size_t m = sample.grid_size();
    if (n < 2) {
        throw std::invalid_argument("mbd: need at least 2 curves");
    }

    // Integer numerators keep tie comparisons exact: the depth of curve i is
    // num[i] / (m * C(n,2)), and distinct numerators stay distinct doubles.
    const std::uint64_t pairs = choose2(n);
    std::vector<std::uint64_t> num(n, 0);
    for (std::size_t k = 0; k < m; ++k) {
        const std::vector<double> col = sorted_column(sample, k);
        for (std::size_t i = 0; i < n; ++i) {
            const double v = sample.curves[i].values[k];
            const auto lo = std::lower_bound(col.begin(), col.end(), v);
            const auto hi = std::upper_bound(lo, col.end(), v);
            const std::uint64_t below = static_cast<std::uint64_t>(lo - col.begin());
            const std::uint64_t above = static_cast<std::uint64_t>(col.end() - hi);
            num[i] += pairs - choose2(below) - choose2(above);
        }
    }

    DepthVector dv;
    dv.kind = DepthKind::MBD;
    dv.values.resize(n);
    const double denom = static_cast<double>(m) * static_cast<double>(pairs);
    for (std::size_t i = 0; i < n; ++i) {
        dv.values[i] = static_cast<double>(num[i]) / denom;
    }
    return dv;
}

int compare_extremeness(const LevelHist& a, const LevelHist& b) {
    std::size_t ia = 0, ib = 0;
    std::size_t cum_a = 0, cum_b = 0;
    while (ia < a.size() || ib < b.size()) {
        std::size_t level;
        if (ib == b.size() || (ia < a.size() && a[ia].first <= b[ib].first)) {
            level = a[ia].first;
        } else {
            level = b[ib].first;
        }
        if (ia < a.size() && a[ia].first == level) cum_a += a[ia++].second;
        if (ib < b.size() && b[ib].first == level) cum_b += b[ib++].second;
        if (cum_a != cum_b) return cum_a > cum_b ? -1 : 1;
    }
    return 0;
}

DepthVector extremal_depth(const FunctionalSample& sample) {
    validate_sample(sample);
    const std::size_t n = sample.size();
    const std::size_t m = sample.grid_size();
    if (n < 2) {
        throw std::invalid_argument("extremal_depth: need at least 2 curves");
    }

    std::vector<std::vector<std::size_t>> levels(n, std::vector<std::size_t>(m));
    for (std::size_t k = 0; k < m; ++k) {
        const std::vector<double> col = sorted_column(sample, k);
        for (std::size_t i = 0; i < n; ++i) {
            const double v = sample.curves[i].values[k];
            const auto lo = std::lower_bound(col.begin(), col.end(), v);
            const auto hi = std::upper_bound(lo, col.end(), v);
            const std::size_t below = static_cast<std::size_t>(lo - col.begin());
            const std::size_t above = static_cast<std::size_t>(col.end() - hi);
            const std::size_t gap = below > above ? below - above : above - below;
            levels[i][k] = n - gap;
        }
    }

    std::vector<LevelHist> hists(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t>& lv = levels[i];
        std::sort(lv.begin(), lv.end());
        LevelHist& h = hists[i];
        for (std::size_t k = 0; k < m;) {
            std::size_t k2 = k;
            while (k2 < m && lv[k2] == lv[k]) ++k2;
            h.emplace_back(lv[k], k2 - k);
            k = k2;
        }
    }

    // Sort curve indices from most to least extreme; equal histograms tie.
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const int c = compare_extremeness(hists[a], hists[b]);
        return c != 0 ? c < 0 : a < b;
    });

    DepthVector dv;
    dv.kind = DepthKind::ED;
    dv.values.resize(n);
    std::size_t pos = 0;
    while (pos < n) {
        std::size_t end = pos + 1;
        while (end < n &&
               compare_extremeness(hists[idx[pos]], hists[idx[end]]) == 0) {
            ++end;
        }
        // Every curve in this tie group dominates exactly the n - end curves
        // that come later in the extremeness order.
        const double ed = 1.0 - static_cast<double>(n - end) / static_cast<double>(n);
        for (std::size_t p = pos; p < end; ++p) dv.values[idx[p]] = ed;
        pos = end;
    }
    return dv;
}

DepthVector compute_depth(const FunctionalSample& sample, DepthKind kind) {
    return kind == DepthKind::MBD ? mbd(sample) : extremal_depth(sample);
}

DepthOrder depth_order(const DepthVector& dv,
                       std::optional<std::uint64_t> tiebreak_seed) {
    const std::size_t n = dv.size();
    if (n == 0) {
        throw std::invalid_argument("depth_order: empty depth vector");
    }

    std::vector<double> w(n, 0.0);
    if (tiebreak_seed) {
        std::mt19937_64 eng(*tiebreak_seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (std::size_t i = 0; i < n; ++i) w[i] = unif(eng);
    }

    DepthOrder order;
    order.tiebreak_seed = tiebreak_seed;
    order.permutation.resize(n);
    for (std::size_t i = 0; i < n; ++i) order.permutation[i] = i;
    std::sort(order.permutation.begin(), order.permutation.end(),
              [&](std::size_t a, std::size_t b) {
                  if (dv.values[a] != dv.values[b]) {
                      return dv.values[a] > dv.values[b];
                  }
                  if (tiebreak_seed && w[a] != w[b]) return w[a] > w[b];
                  return a < b;
              });

    std::size_t pos = 0;
    while (pos < n) {
        std::size_t end = pos + 1;
        while (end < n && dv.values[order.permutation[end]] ==
                              dv.values[order.permutation[pos]]) {
            ++end;
        }
        order.tie_groups.emplace_back(order.permutation.begin() + pos,
                                      order.permutation.begin() + end);
        pos = end;
    }
    return order;
}

bool validate_assumption1(DepthKind kind, const std::vector<double>& constants,
                          const Grid& g) {
    if (constants.size() < 3) {
        throw std::invalid_argument("validate_assumption1: need at least 3 values");
    }
    std::vector<double> sorted = constants;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("validate_assumption1: values must be distinct");
    }
    validate_grid(g);

    FunctionalSample sample;
    sample.grid = g;
    sample.curves.reserve(constants.size());
    for (double a : constants) {
        sample.curves.push_back(Curve{std::vector<double>(g.size(), a)});
    }

    const DepthVector dv = compute_depth(sample, kind);
    std::vector<double> depths = dv.values;
    std::nth_element(depths.begin(), depths.begin() + 1, depths.end());
    const double second_smallest = depths[1];

    std::vector<std::size_t> extremes;
    for (std::size_t i = 0; i < dv.size(); ++i) {
        if (dv.values[i] <= second_smallest) extremes.push_back(i);
    }
    if (extremes.size() != 2) return false;

    const std::size_t imin = static_cast<std::size_t>(
        std::min_element(constants.begin(), constants.end()) - constants.begin());
    const std::size_t imax = static_cast<std::size_t>(
        std::max_element(constants.begin(), constants.end()) - constants.begin());
    return (extremes[0] == imin && extremes[1] == imax) ||
           (extremes[0] == imax && extremes[1] == imin);
}

}  // namespace frec
