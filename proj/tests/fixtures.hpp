#pragma once

#include "crowns/poset.hpp"

// Shared hand-built posets. Point ids are stable; labels follow the naming
// in the comments.

namespace fixtures {

using crowns::Poset;
using crowns::PointSet;

inline Poset with_labels(Poset p, std::initializer_list<const char*> names) {
    int i = 0;
    for (const char* n : names)
        p.set_label(i++, n);
    return p;
}

// a=0, b=1 < v=2, w=3 (all four cross edges)
inline Poset crown4() {
    return with_labels(Poset::from_pairs(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}),
                       {"a", "b", "v", "w"});
}

// crown plus a midpoint m=4 strictly between both levels
inline Poset crown4_plus_mid() {
    return with_labels(Poset::from_pairs(5, {{0, 4}, {1, 4}, {4, 2}, {4, 3}}),
                       {"a", "b", "v", "w", "m"});
}

// crown plus two incomparable midpoints m1=4, m2=5
inline Poset crown4_plus_two_mids() {
    return with_labels(
        Poset::from_pairs(6, {{0, 4}, {1, 4}, {4, 2}, {4, 3}, {0, 5}, {1, 5}, {5, 2}, {5, 3}}),
        {"a", "b", "v", "w", "m1", "m2"});
}

inline Poset chain(int k) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i + 1 < k; ++i)
        pairs.emplace_back(i, i + 1);
    return Poset::from_pairs(k, pairs);
}

// a=0 < v=1, w=2
inline Poset vee() {
    return with_labels(Poset::from_pairs(3, {{0, 1}, {0, 2}}), {"a", "v", "w"});
}

// Two improper crowns glued at the shared minimal point b:
// {a=0, b=1} < {v=2, w=3} around m1=8 and {b=1, c=4} < {x=5, y=6} around m2=7.
inline Poset glued_crowns() {
    return with_labels(Poset::from_pairs(9, {{0, 8},
                                             {1, 8},
                                             {8, 2},
                                             {8, 3},
                                             {1, 7},
                                             {4, 7},
                                             {7, 5},
                                             {7, 6}}),
                       {"a", "b", "v", "w", "c", "x", "y", "m2", "m1"});
}

// Two-bundle poset whose hollow two-level subset is a retract:
// minimal c=0, a=1, b=2, s=3; maximal v=4, w=5, u=6, t=7; midpoints m1=8, m2=9.
// m1 sits over {a,c} under {v,t}; m2 over {b,s} under {w,u}; plus a < w.
// The carrier {c,a,b,v,w,u} induces edges a<v, a<w, b<w, b<u, c<v.
inline Poset two_bundle_retract() {
    return with_labels(Poset::from_pairs(10, {{1, 8},
                                              {0, 8},
                                              {8, 4},
                                              {8, 7},
                                              {2, 9},
                                              {3, 9},
                                              {9, 5},
                                              {9, 6},
                                              {1, 5}}),
                       {"c", "a", "b", "s", "v", "w", "u", "t", "m1", "m2"});
}

inline PointSet two_bundle_carrier() { return PointSet::of({0, 1, 2, 4, 5, 6}); }

// Complete two-vertex bundle graph over a crown: minimal a=0, b=1, s=2;
// maximal v=3, w=4, t=5; m1=6 over {a,b} under {v,w,t}; m2=7 over {a,b,s}
// under {v,w}. The bundles share points on both levels.
inline Poset complete_two_bundles() {
    return with_labels(Poset::from_pairs(8, {{0, 6},
                                             {1, 6},
                                             {6, 3},
                                             {6, 4},
                                             {6, 5},
                                             {0, 7},
                                             {1, 7},
                                             {2, 7},
                                             {7, 3},
                                             {7, 4}}),
                       {"a", "b", "s", "v", "w", "t", "m1", "m2"});
}

} // namespace fixtures
