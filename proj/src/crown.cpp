#include "crowns/crown.hpp"

#include <algorithm>

namespace crowns {

std::vector<Crown4> enumerate_crowns_in_extremals(const Poset& p) {
    std::vector<Crown4> out;
    std::vector<int> lows = p.minimal_points().members();
    std::vector<int> highs = p.maximal_points().members();
    for (std::size_t i = 0; i < lows.size(); ++i)
        for (std::size_t j = i + 1; j < lows.size(); ++j) {
            int a = lows[i], b = lows[j];
            PointSet above_both = p.strictly_above(a) & p.strictly_above(b) & p.maximal_points();
            std::vector<int> vs = above_both.members();
            for (std::size_t k = 0; k < vs.size(); ++k)
                for (std::size_t l = k + 1; l < vs.size(); ++l)
                    out.push_back(Crown4{a, b, vs[k], vs[l]});
        }
    return out;
}

PointSet crown_inner(const Poset& p, const Crown4& c) {
    return p.interval(c.low_a, c.high_v) & p.interval(c.low_b, c.high_w);
}

CrownKind classify(const Poset& p, const Crown4& c) {
    return crown_inner(p, c).empty() ? CrownKind::proper : CrownKind::improper;
}

BundleFamily bundle_family(const Poset& p) {
    BundleFamily out;
    PointSet lows = p.minimal_points();
    PointSet highs = p.maximal_points();
    // A midpoint is the inner point of some improper 4-crown in the extremal
    // points exactly when its shadow has >= 2 points on each level.
    for (int m : p.midpoints().members()) {
        PointSet below = p.strictly_below(m) & lows;
        PointSet above = p.strictly_above(m) & highs;
        if (below.count() >= 2 && above.count() >= 2) {
            out.inner_points.set(m);
            out.xi.emplace_back(m, below | above);
        }
    }
    for (auto& [m, shadow] : out.xi) {
        bool maximal = true;
        for (auto& [m2, other] : out.xi)
            if (other != shadow && other.contains(shadow)) {
                maximal = false;
                break;
            }
        if (maximal)
            out.bundles.push_back(shadow);
    }
    std::sort(out.bundles.begin(), out.bundles.end());
    out.bundles.erase(std::unique(out.bundles.begin(), out.bundles.end()), out.bundles.end());
    return out;
}

} // namespace crowns
