#include "crowns/hom_search.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace crowns {

namespace {

TwoColorMultigraph build_target(const Poset& c, TargetKind kind) {
    return kind == TargetKind::image ? image_graph(c) : max_image_graph(c);
}

struct PhiSearch {
    const TwoColorMultigraph& fg;
    const TwoColorMultigraph& tg;
    bool clique;
    // Per bundle, the carrier points (c ids) whose injected image lies in it,
    // split by level of c.
    std::vector<PointSet> hits_low, hits_high;
    std::vector<int> order;
    std::vector<int> phi;

    bool vertex_ok(int b, int v) const {
        const Vertex& vert = tg.vertex(v);
        if (vert.in_lower_family()) {
            PointSet lows = hits_low[static_cast<std::size_t>(b)];
            if (lows.count() >= 2 || (lows.count() == 1 && vert.low_anchor != lows.first()))
                return false;
        }
        if (vert.in_upper_family()) {
            PointSet highs = hits_high[static_cast<std::size_t>(b)];
            if (highs.count() >= 2 || (highs.count() == 1 && vert.high_anchor != highs.first()))
                return false;
        }
        return true;
    }

    bool assign(std::size_t pos) {
        if (pos == order.size())
            return true;
        int b = order[pos];
        for (int v = 0; v < tg.vertex_count(); ++v) {
            if (!vertex_ok(b, v))
                continue;
            bool ok = true;
            for (std::size_t q = 0; q < pos && ok; ++q) {
                int b2 = order[q];
                int v2 = phi[static_cast<std::size_t>(b2)];
                if (fg.l_adjacent(b, b2) && !tg.l_adjacent(v, v2))
                    ok = false;
                else if (fg.u_adjacent(b, b2) && !tg.u_adjacent(v, v2))
                    ok = false;
                else if (clique && (!tg.l_adjacent(v, v2) || !tg.u_adjacent(v, v2)))
                    ok = false;
            }
            if (!ok)
                continue;
            phi[static_cast<std::size_t>(b)] = v;
            if (assign(pos + 1))
                return true;
        }
        return false;
    }

    // point_map in p ids; c_low/c_high are c's levels, bundles in p ids.
    void load_injection(const std::vector<PointSet>& bundles, std::span<const int> point_map,
                        PointSet c_low) {
        std::size_t nb = bundles.size();
        hits_low.assign(nb, PointSet{});
        hits_high.assign(nb, PointSet{});
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t q = 0; q < point_map.size(); ++q)
                if (bundles[b].test(point_map[q])) {
                    if (c_low.test(static_cast<int>(q)))
                        hits_low[b].set(static_cast<int>(q));
                    else
                        hits_high[b].set(static_cast<int>(q));
                }
        // Forced bundles (two image points on one level) first.
        order.resize(nb);
        for (std::size_t b = 0; b < nb; ++b)
            order[b] = static_cast<int>(b);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            int cx = hits_low[static_cast<std::size_t>(x)].count() +
                     hits_high[static_cast<std::size_t>(x)].count();
            int cy = hits_low[static_cast<std::size_t>(y)].count() +
                     hits_high[static_cast<std::size_t>(y)].count();
            return cx > cy;
        });
        phi.assign(nb, -1);
    }
};

bool inverse_order_preserving(const Poset& p, const Poset& c, std::span<const int> point_map) {
    for (int a : c.minimal_points().members())
        for (int v : c.maximal_points().members())
            if (p.less(point_map[static_cast<std::size_t>(a)],
                       point_map[static_cast<std::size_t>(v)]) &&
                !c.less(a, v))
                return false;
    return true;
}

} // namespace

std::optional<WitnessViolation> check_witness(const Poset& p, const Poset& c,
                                              std::span<const int> embed,
                                              const SeparatingWitness& w) {
    using K = WitnessViolation::Kind;
    BundleFamily bf = bundle_family(p);
    TwoColorMultigraph fg = bundle_graph(p, bf);
    TwoColorMultigraph tg = build_target(c, w.target);

    if (static_cast<int>(w.phi.size()) != fg.vertex_count())
        return WitnessViolation{K::malformed, -1, -1, -1, "assignment size mismatch"};
    for (int v : w.phi)
        if (v < 0 || v >= tg.vertex_count())
            return WitnessViolation{K::malformed, -1, -1, -1, "assignment target out of range"};
    if (static_cast<int>(w.point_map.size()) != c.size())
        return WitnessViolation{K::malformed, -1, -1, -1, "injection size mismatch"};
    for (int x : w.point_map)
        if (x < 0 || x >= p.size())
            return WitnessViolation{K::malformed, -1, -1, -1, "injection image out of range"};

    PointSet image;
    for (int q = 0; q < c.size(); ++q) {
        int x = w.point_map[static_cast<std::size_t>(q)];
        if (image.test(x))
            return WitnessViolation{K::not_injective, -1, -1, q,
                                    "injection repeats " + p.label(x)};
        image.set(x);
        bool low_ok = c.minimal_points().test(q) && p.minimal_points().test(x);
        bool high_ok = c.maximal_points().test(q) && p.maximal_points().test(x);
        if (!low_ok && !high_ok)
            return WitnessViolation{K::level_broken, -1, -1, q,
                                    "injection does not preserve the level of " + c.label(q)};
    }

    for (int i = 0; i < fg.vertex_count(); ++i)
        for (int j = i; j < fg.vertex_count(); ++j) {
            int vi = w.phi[static_cast<std::size_t>(i)];
            int vj = w.phi[static_cast<std::size_t>(j)];
            if (fg.l_adjacent(i, j) && !tg.l_adjacent(vi, vj))
                return WitnessViolation{K::hom_l_edge, i, j, -1,
                                        "shared minimal point, images share no lower point"};
            if (fg.u_adjacent(i, j) && !tg.u_adjacent(vi, vj))
                return WitnessViolation{K::hom_u_edge, i, j, -1,
                                        "shared maximal point, images share no upper point"};
        }

    for (int b = 0; b < fg.vertex_count(); ++b) {
        const Vertex& vert = tg.vertex(w.phi[static_cast<std::size_t>(b)]);
        for (int q = 0; q < c.size(); ++q) {
            if (!bf.bundles[static_cast<std::size_t>(b)].test(w.point_map[static_cast<std::size_t>(q)]))
                continue;
            if (c.minimal_points().test(q) && vert.in_lower_family() && vert.low_anchor != q)
                return WitnessViolation{K::anchor_low, b, -1, q,
                                        "bundle holds the image of " + c.label(q) +
                                            " but maps to a lower-family vertex anchored elsewhere"};
            if (c.maximal_points().test(q) && vert.in_upper_family() && vert.high_anchor != q)
                return WitnessViolation{K::anchor_high, b, -1, q,
                                        "bundle holds the image of " + c.label(q) +
                                            " but maps to an upper-family vertex anchored elsewhere"};
        }
    }

    if (w.z_separating) {
        if (embed.size() != w.point_map.size())
            return WitnessViolation{K::carrier_not_fixed, -1, -1, -1,
                                    "carrier-fixing witness without an embedded carrier"};
        PointSet z;
        for (int x : embed) {
            z.set(x);
            if (!p.extremal_points().test(x))
                return WitnessViolation{K::carrier_not_fixed, -1, -1, -1,
                                        "embedded carrier leaves the extremal points"};
        }
        if (image != z)
            return WitnessViolation{K::carrier_not_fixed, -1, -1, -1,
                                    "injection does not permute the embedded carrier"};
    }
    return std::nullopt;
}

std::optional<SeparatingWitness> find_z_separating(const Poset& p, PointSet z,
                                                   SepSearchOptions opt) {
    validate_ambient(p);
    if (!p.extremal_points().contains(z))
        throw PreconditionError("carrier must lie inside the extremal points");
    Subposet sub = induced(p, z);
    const Poset& c = sub.poset;
    TwoColorMultigraph tg = build_target(c, opt.target);
    BundleFamily bf = bundle_family(p);
    TwoColorMultigraph fg = bundle_graph(p, bf);

    std::vector<int> c_low = c.minimal_points().members();
    std::vector<int> c_high = c.maximal_points().members();
    std::vector<int> img_low, img_high;
    for (int q : c_low)
        img_low.push_back(sub.points[static_cast<std::size_t>(q)]);
    for (int q : c_high)
        img_high.push_back(sub.points[static_cast<std::size_t>(q)]);
    std::sort(img_low.begin(), img_low.end());
    std::sort(img_high.begin(), img_high.end());

    PhiSearch search{fg, tg, opt.require_clique_image, {}, {}, {}, {}};
    std::vector<int> point_map(static_cast<std::size_t>(c.size()));
    std::vector<int> perm_low = img_low;
    do {
        std::vector<int> perm_high = img_high;
        do {
            for (std::size_t k = 0; k < c_low.size(); ++k)
                point_map[static_cast<std::size_t>(c_low[k])] = perm_low[k];
            for (std::size_t k = 0; k < c_high.size(); ++k)
                point_map[static_cast<std::size_t>(c_high[k])] = perm_high[k];
            if (opt.require_order_preserving_inverse &&
                !inverse_order_preserving(p, c, point_map))
                continue;
            search.load_injection(bf.bundles, point_map, c.minimal_points());
            if (search.assign(0))
                return SeparatingWitness{opt.target, search.phi, point_map, true};
        } while (std::next_permutation(perm_high.begin(), perm_high.end()));
    } while (std::next_permutation(perm_low.begin(), perm_low.end()));
    return std::nullopt;
}

namespace {

// Ordered injections of slots into candidates, lexicographic by image tuple.
struct InjectionIter {
    std::span<const int> candidates;
    int slots;
    std::vector<int> pick; // indices into candidates
    bool done = false;

    explicit InjectionIter(std::span<const int> cand, int k) : candidates(cand), slots(k) {
        if (k > static_cast<int>(cand.size())) {
            done = true;
            return;
        }
        for (int s = 0; s < k; ++s)
            pick.push_back(next_free(0, s));
    }
    int next_free(int from, int depth) const {
        for (int i = from; i < static_cast<int>(candidates.size()); ++i) {
            bool used = false;
            for (int d = 0; d < depth; ++d)
                if (pick[static_cast<std::size_t>(d)] == i)
                    used = true;
            if (!used)
                return i;
        }
        return -1;
    }
    void advance() {
        int d = slots - 1;
        while (d >= 0) {
            int nxt = next_free(pick[static_cast<std::size_t>(d)] + 1, d);
            if (nxt >= 0) {
                pick[static_cast<std::size_t>(d)] = nxt;
                bool ok = true;
                for (int e = d + 1; e < slots && ok; ++e) {
                    int f = next_free(0, e);
                    if (f < 0)
                        ok = false;
                    else
                        pick[static_cast<std::size_t>(e)] = f;
                }
                if (ok)
                    return;
            }
            --d;
        }
        done = true;
    }
    int image(int slot) const { return candidates[static_cast<std::size_t>(pick[static_cast<std::size_t>(slot)])]; }
};

} // namespace

namespace {

bool is_full_ordinal_sum(const Poset& c) {
    if (!is_height_one(c))
        return false;
    for (int a : c.minimal_points().members())
        for (int v : c.maximal_points().members())
            if (!c.less(a, v))
                return false;
    return true;
}

/**
 * Fast path for full ordinal-sum targets: the assignment search sees the
 * injection only through which bundles contain each image point, and the
 * inverse of any level-preserving injection is automatically
 * order-preserving. So instead of all image tuples we enumerate, per carrier
 * point, a bundle-membership profile, honoring how many points of each
 * profile exist. Concrete image points are materialized from the chosen
 * profiles afterwards.
 */
struct ProfileClasses {
    std::vector<std::uint64_t> profile; // bundle-membership mask per class
    std::vector<std::vector<int>> members;

    ProfileClasses(std::span<const int> level_points, const std::vector<PointSet>& bundles) {
        for (int x : level_points) {
            std::uint64_t key = 0;
            for (std::size_t b = 0; b < bundles.size(); ++b)
                if (bundles[b].test(x))
                    key |= std::uint64_t{1} << b;
            std::size_t idx = 0;
            while (idx < profile.size() && profile[idx] != key)
                ++idx;
            if (idx == profile.size()) {
                profile.push_back(key);
                members.emplace_back();
            }
            members[idx].push_back(x);
        }
    }
};

std::optional<SeparatingWitness> find_separating_sum(const Poset& p, const Poset& c,
                                                     SepSearchOptions opt,
                                                     const BundleFamily& bf,
                                                     const TwoColorMultigraph& fg,
                                                     const TwoColorMultigraph& tg) {
    std::vector<int> c_low = c.minimal_points().members();
    std::vector<int> c_high = c.maximal_points().members();
    std::vector<int> p_low = p.minimal_points().members();
    std::vector<int> p_high = p.maximal_points().members();
    if (c_low.size() > p_low.size() || c_high.size() > p_high.size())
        return std::nullopt;

    ProfileClasses low_classes(p_low, bf.bundles);
    ProfileClasses high_classes(p_high, bf.bundles);
    std::vector<int> low_pick(c_low.size()), high_pick(c_high.size());
    std::vector<int> low_used(low_classes.profile.size(), 0);
    std::vector<int> high_used(high_classes.profile.size(), 0);

    PhiSearch search{fg, tg, opt.require_clique_image, {}, {}, {}, {}};
    std::size_t nb = bf.bundles.size();

    auto run_phi = [&]() -> bool {
        search.hits_low.assign(nb, PointSet{});
        search.hits_high.assign(nb, PointSet{});
        for (std::size_t k = 0; k < c_low.size(); ++k) {
            std::uint64_t prof = low_classes.profile[static_cast<std::size_t>(low_pick[k])];
            for (std::size_t b = 0; b < nb; ++b)
                if ((prof >> b) & 1u)
                    search.hits_low[b].set(c_low[k]);
        }
        for (std::size_t k = 0; k < c_high.size(); ++k) {
            std::uint64_t prof = high_classes.profile[static_cast<std::size_t>(high_pick[k])];
            for (std::size_t b = 0; b < nb; ++b)
                if ((prof >> b) & 1u)
                    search.hits_high[b].set(c_high[k]);
        }
        search.order.resize(nb);
        for (std::size_t b = 0; b < nb; ++b)
            search.order[b] = static_cast<int>(b);
        std::stable_sort(search.order.begin(), search.order.end(), [&](int x, int y) {
            int cx = search.hits_low[static_cast<std::size_t>(x)].count() +
                     search.hits_high[static_cast<std::size_t>(x)].count();
            int cy = search.hits_low[static_cast<std::size_t>(y)].count() +
                     search.hits_high[static_cast<std::size_t>(y)].count();
            return cx > cy;
        });
        search.phi.assign(nb, -1);
        return search.assign(0);
    };

    std::function<bool(std::size_t)> pick_high = [&](std::size_t k) -> bool {
        if (k == c_high.size())
            return run_phi();
        for (std::size_t cl = 0; cl < high_classes.profile.size(); ++cl) {
            if (high_used[cl] >= static_cast<int>(high_classes.members[cl].size()))
                continue;
            high_pick[k] = static_cast<int>(cl);
            ++high_used[cl];
            if (pick_high(k + 1))
                return true;
            --high_used[cl];
        }
        return false;
    };
    std::function<bool(std::size_t)> pick_low = [&](std::size_t k) -> bool {
        if (k == c_low.size())
            return pick_high(0);
        for (std::size_t cl = 0; cl < low_classes.profile.size(); ++cl) {
            if (low_used[cl] >= static_cast<int>(low_classes.members[cl].size()))
                continue;
            low_pick[k] = static_cast<int>(cl);
            ++low_used[cl];
            if (pick_low(k + 1))
                return true;
            --low_used[cl];
        }
        return false;
    };
    if (!pick_low(0))
        return std::nullopt;

    // Materialize the injection: each carrier point takes the next unused
    // member of its chosen class, in carrier order.
    std::vector<int> point_map(static_cast<std::size_t>(c.size()), -1);
    std::vector<int> low_next(low_classes.profile.size(), 0);
    std::vector<int> high_next(high_classes.profile.size(), 0);
    for (std::size_t k = 0; k < c_low.size(); ++k) {
        auto cl = static_cast<std::size_t>(low_pick[k]);
        point_map[static_cast<std::size_t>(c_low[k])] =
            low_classes.members[cl][static_cast<std::size_t>(low_next[cl]++)];
    }
    for (std::size_t k = 0; k < c_high.size(); ++k) {
        auto cl = static_cast<std::size_t>(high_pick[k]);
        point_map[static_cast<std::size_t>(c_high[k])] =
            high_classes.members[cl][static_cast<std::size_t>(high_next[cl]++)];
    }
    return SeparatingWitness{opt.target, search.phi, point_map, false};
}

} // namespace

std::optional<SeparatingWitness> find_separating(const Poset& p, const Poset& c,
                                                 SepSearchOptions opt) {
    validate_ambient(p);
    TwoColorMultigraph tg = build_target(c, opt.target);
    BundleFamily bf = bundle_family(p);
    TwoColorMultigraph fg = bundle_graph(p, bf);

    if (is_full_ordinal_sum(c))
        return find_separating_sum(p, c, opt, bf, fg, tg);

    std::vector<int> c_low = c.minimal_points().members();
    std::vector<int> c_high = c.maximal_points().members();
    std::vector<int> p_low = p.minimal_points().members();
    std::vector<int> p_high = p.maximal_points().members();
    if (c_low.size() > p_low.size() || c_high.size() > p_high.size())
        return std::nullopt;

    PhiSearch search{fg, tg, opt.require_clique_image, {}, {}, {}, {}};
    std::vector<int> point_map(static_cast<std::size_t>(c.size()));
    // The assignment search depends on the injection only through which
    // carrier points land in which bundle, so memoize on that signature.
    std::map<std::vector<std::uint64_t>, std::optional<std::vector<int>>> memo;

    for (InjectionIter low(p_low, static_cast<int>(c_low.size())); !low.done; low.advance()) {
        for (std::size_t k = 0; k < c_low.size(); ++k)
            point_map[static_cast<std::size_t>(c_low[k])] = low.image(static_cast<int>(k));
        for (InjectionIter high(p_high, static_cast<int>(c_high.size())); !high.done;
             high.advance()) {
            for (std::size_t k = 0; k < c_high.size(); ++k)
                point_map[static_cast<std::size_t>(c_high[k])] = high.image(static_cast<int>(k));
            if (opt.require_order_preserving_inverse &&
                !inverse_order_preserving(p, c, point_map))
                continue;
            search.load_injection(bf.bundles, point_map, c.minimal_points());
            std::vector<std::uint64_t> key;
            key.reserve(2 * bf.bundles.size());
            for (std::size_t b = 0; b < bf.bundles.size(); ++b) {
                key.push_back(search.hits_low[b].bits);
                key.push_back(search.hits_high[b].bits);
            }
            auto [it, fresh] = memo.try_emplace(std::move(key));
            if (fresh)
                it->second = search.assign(0) ? std::optional<std::vector<int>>(search.phi)
                                              : std::nullopt;
            if (it->second)
                return SeparatingWitness{opt.target, *it->second, point_map, false};
        }
    }
    return std::nullopt;
}

} // namespace crowns
