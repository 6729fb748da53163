#pragma once

#include <vector>

#include "crowns/poset.hpp"

namespace crowns {

/**
 * A 4-crown inside the extremal points: two minimal points below two maximal
 * points with all four cross relations. Stored canonically with low_a < low_b
 * and high_v < high_w by id.
 */
struct Crown4 {
    int low_a, low_b;
    int high_v, high_w;

    PointSet points() const { return PointSet::of({low_a, low_b, high_v, high_w}); }
    friend bool operator==(const Crown4&, const Crown4&) = default;
};

enum class CrownKind { proper, improper };

// All 4-crowns with both low points minimal and both high points maximal,
// each reported once in canonical order, sorted lexicographically.
std::vector<Crown4> enumerate_crowns_in_extremals(const Poset& p);

// Points lying in both diagonal intervals of the crown; independent of which
// disjoint-edge pairing is used.
PointSet crown_inner(const Poset& p, const Crown4& c);

// Improper iff the inner is nonempty.
CrownKind classify(const Poset& p, const Crown4& c);

/**
 * The network of improper 4-crowns, grouped by shared inner point.
 *
 * inner_points holds every midpoint with at least two minimal points below
 * and two maximal points above; xi maps each of them to its shadow set
 * (minimal points below plus maximal points above); bundles keeps the
 * inclusion-maximal shadow sets, deduplicated and sorted.
 */
struct BundleFamily {
    PointSet inner_points;
    std::vector<std::pair<int, PointSet>> xi; // (inner point, shadow set)
    std::vector<PointSet> bundles;

    PointSet union_of_bundles() const {
        PointSet u;
        for (PointSet b : bundles)
            u = u | b;
        return u;
    }
};

BundleFamily bundle_family(const Poset& p);

} // namespace crowns
