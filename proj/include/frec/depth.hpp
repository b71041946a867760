#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frec/core.hpp"

namespace frec {

enum class DepthKind { MBD, ED };

/// Per-curve depth values in [0,1] for one sample.
struct DepthVector {
    std::vector<double> values;
    DepthKind kind = DepthKind::MBD;

    std::size_t size() const { return values.size(); }
};

/// Center-outward ordering induced by a depth vector.
///
/// permutation[0] is the deepest curve index (0-based); depth is
/// non-increasing along the permutation. Curves with exactly equal depth form
/// one tie group. With a tiebreak seed the permutation is additionally
/// strict inside tie groups via i.i.d. uniform draws (larger draw = deeper);
/// without one, ties fall back to original index order.
struct DepthOrder {
    std::vector<std::size_t> permutation;
    std::vector<std::vector<std::size_t>> tie_groups;
    std::optional<std::uint64_t> tiebreak_seed;
};

/// Modified band depth with pairwise bands, band membership inclusive of the
/// endpoints. Computed per grid point from the below/above rank counts
///   [C(n,2) - C(a,2) - C(b,2)] / C(n,2)
/// and averaged over the grid. Requires n >= 2.
DepthVector mbd(const FunctionalSample& sample);

/// Extremal depth. Pointwise depth 1 - |#below - #above|/n per grid point;
/// curves are compared by the left tail of their pointwise-depth CDFs (first
/// differing level decides, larger mass = more extreme). Requires n >= 2.
DepthVector extremal_depth(const FunctionalSample& sample);

DepthVector compute_depth(const FunctionalSample& sample, DepthKind kind);

/// Pointwise-depth histogram of one curve: (level, #grid points) pairs sorted
/// by level. Used by extremal depth and by the incremental record scan.
using LevelHist = std::vector<std::pair<std::size_t, std::size_t>>;

/// Left-tail comparison of two depth-level CDFs: at the smallest level where
/// the cumulative masses differ, the curve with the larger mass is more
/// extreme. Returns -1 if a is more extreme, +1 if b is, 0 if equal.
int compare_extremeness(const LevelHist& a, const LevelHist& b);

DepthOrder depth_order(const DepthVector& dv,
                       std::optional<std::uint64_t> tiebreak_seed = std::nullopt);

/// Builds constant curves from the given distinct values, computes their
/// depth, and reports whether the two smallest-depth curves are exactly the
/// min and max constants (as a set, ties included).
bool validate_assumption1(DepthKind kind, const std::vector<double>& constants,
                          const Grid& g);

}  // namespace frec
