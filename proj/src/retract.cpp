#include "crowns/retract.hpp"

#include <algorithm>
#include <cassert>

namespace crowns {

bool is_homomorphism(const OrderMap& f) {
    for (int x = 0; x < f.source.size(); ++x)
        for (int y : f.source.strictly_above(x).members())
            if (!f.target.leq(f(x), f(y)))
                return false;
    return true;
}

bool is_surjective(const OrderMap& f) {
    PointSet hit;
    for (int v : f.map)
        hit.set(v);
    return hit == f.target.carrier();
}

bool verify_retraction(const RetractionWitness& w) {
    const OrderMap& r = w.map;
    if (!same_order(r.source, r.target))
        return false;
    if (!is_homomorphism(r))
        return false;
    PointSet image;
    for (int x = 0; x < r.source.size(); ++x)
        image.set(r(x));
    if (image != w.image)
        return false;
    for (int x = 0; x < r.source.size(); ++x)
        if (r(r(x)) != r(x))
            return false;
    for (int z : w.image.members())
        if (r(z) != z)
            return false;
    return true;
}

OrderMap strictify(const OrderMap& f) {
    const Poset& p = f.source;
    const Poset& q = f.target;
    validate_ambient(p);
    validate_ambient(q);
    if (!is_homomorphism(f))
        throw PreconditionError("strictify: input is not order-preserving");
    if (!is_surjective(f))
        throw NotSurjectiveError("strictify: input is not surjective");

    OrderMap g = f;
    for (int x = 0; x < p.size(); ++x) {
        int y = f(x);
        if (p.minimal_points().test(x) && !q.minimal_points().test(y))
            g.map[static_cast<std::size_t>(x)] = (q.minimal_points() & q.down_set(y)).first();
        else if (p.maximal_points().test(x) && !q.maximal_points().test(y))
            g.map[static_cast<std::size_t>(x)] = (q.maximal_points() & q.up_set(y)).first();
    }
    if (!is_homomorphism(g))
        throw InternalError("strictify produced a non-homomorphism");
    return g;
}

AlphaBeta shadow_images(const Poset& p, const Poset& q, std::span<const int> f, int x) {
    (void)q;
    AlphaBeta ab;
    for (int l : (p.minimal_points() & p.strictly_below(x)).members())
        ab.alpha.set(f[static_cast<std::size_t>(l)]);
    for (int u : (p.maximal_points() & p.strictly_above(x)).members())
        ab.beta.set(f[static_cast<std::size_t>(u)]);
    return ab;
}

namespace {

void require_extension_inputs(const Poset& p, const Poset& q, std::span<const int> f) {
    validate_ambient(p);
    validate_ambient(q);
    if (!is_height_one(q))
        throw NotHeightOneError("extension target must have height one");
    if (static_cast<int>(f.size()) != p.size())
        throw PreconditionError("partial map has the wrong size");
    for (int x = 0; x < p.size(); ++x) {
        bool extremal = p.extremal_points().test(x);
        int v = f[static_cast<std::size_t>(x)];
        if (extremal && (v < 0 || v >= q.size()))
            throw PreconditionError("partial map must cover every extremal point");
        if (!extremal && v != -1)
            throw PreconditionError("partial map must be -1 on midpoints");
    }
    for (int x : p.extremal_points().members())
        for (int y : (p.strictly_above(x) & p.extremal_points()).members())
            if (!q.leq(f[static_cast<std::size_t>(x)], f[static_cast<std::size_t>(y)]))
                throw PreconditionError("partial map is not order-preserving on the extremal points");
}

} // namespace

std::optional<OrderMap> extend_from_extremals(const Poset& p, const Poset& q,
                                              std::span<const int> f_on_extremals) {
    require_extension_inputs(p, q, f_on_extremals);
    OrderMap g{p, q, std::vector<int>(f_on_extremals.begin(), f_on_extremals.end())};
    for (int x : p.midpoints().members()) {
        AlphaBeta ab = shadow_images(p, q, f_on_extremals, x);
        assert(!ab.alpha.empty() && !ab.beta.empty());
        if (ab.alpha.count() >= 2) {
            if (ab.beta.count() >= 2) {
                if ((ab.alpha & ab.beta).empty())
                    return std::nullopt;
                throw InternalError("overlapping shadow images of size two");
            }
            g.map[static_cast<std::size_t>(x)] = ab.beta.first();
        } else {
            g.map[static_cast<std::size_t>(x)] = ab.alpha.first();
        }
    }
    if (!is_homomorphism(g))
        throw InternalError("midpoint extension is not order-preserving");
    return g;
}

std::optional<Crown4> check_extension_condition(const Poset& p, const Poset& q,
                                                std::span<const int> f_on_extremals) {
    std::vector<Crown4> improper;
    for (const Crown4& c : enumerate_crowns_in_extremals(p))
        if (classify(p, c) == CrownKind::improper)
            improper.push_back(c);
    return check_extension_condition(p, q, f_on_extremals, improper);
}

std::optional<Crown4> check_extension_condition(const Poset& p, const Poset& q,
                                                std::span<const int> f_on_extremals,
                                                std::span<const Crown4> improper_crowns) {
    (void)p;
    for (const Crown4& c : improper_crowns) {
        PointSet lows_hit, highs_hit;
        for (int pt : {c.low_a, c.low_b, c.high_v, c.high_w}) {
            int v = f_on_extremals[static_cast<std::size_t>(pt)];
            if (q.minimal_points().test(v))
                lows_hit.set(v);
            else
                highs_hit.set(v);
        }
        if (lows_hit.count() >= 2 && highs_hit.count() >= 2)
            return c;
    }
    return std::nullopt;
}

bool inverse_order_preserving_map(const Poset& p, const Poset& c, std::span<const int> point_map) {
    for (int a : c.minimal_points().members())
        for (int v : c.maximal_points().members())
            if (p.less(point_map[static_cast<std::size_t>(a)],
                       point_map[static_cast<std::size_t>(v)]) &&
                !c.less(a, v))
                return false;
    return true;
}

OrderMap surjection_from_witness(const Poset& p, const Poset& c, const SeparatingWitness& w,
                                 PointSet l0, PointSet u0) {
    PointSet c_low = c.minimal_points();
    PointSet c_high = c.maximal_points();
    if (l0.empty() || u0.empty() || !c_low.contains(l0) || !c_high.contains(u0))
        throw PreconditionError("base sets must be nonempty level subsets");
    for (int a : l0.members())
        for (int v : c_high.members())
            if (!c.less(a, v))
                throw PreconditionError("base minimal points must sit below the whole top level");
    for (int v : u0.members())
        for (int a : c_low.members())
            if (!c.less(a, v))
                throw PreconditionError("base maximal points must sit above the whole bottom level");

    // The witness itself must be sound (its carrier-fixing flag is checked by
    // the caller that has the embedding).
    SeparatingWitness plain = w;
    plain.z_separating = false;
    if (auto bad = check_witness(p, c, {}, plain))
        throw PreconditionError("invalid witness: " + bad->message);
    if (!inverse_order_preserving_map(p, c, w.point_map))
        throw PreconditionError("witness injection has no order-preserving inverse");

    BundleFamily bf = bundle_family(p);
    TwoColorMultigraph tg =
        w.target == TargetKind::image ? image_graph(c) : max_image_graph(c);

    PointSet used_low, used_high; // anchors hit by the assignment
    for (std::size_t b = 0; b < bf.bundles.size(); ++b) {
        const Vertex& vert = tg.vertex(w.phi[b]);
        if (vert.in_lower_family())
            used_low.set(vert.low_anchor);
        if (vert.in_upper_family())
            used_high.set(vert.high_anchor);
    }
    if (!l0.contains(used_low) || !u0.contains(used_high))
        throw PreconditionError("witness anchors leave the base sets");

    auto partition_level = [&](PointSet p_level, PointSet c_level, PointSet used, PointSet base,
                               bool lower) {
        std::vector<PointSet> cells(static_cast<std::size_t>(c.size()));
        for (int a : c_level.members()) {
            for (std::size_t b = 0; b < bf.bundles.size(); ++b) {
                const Vertex& vert = tg.vertex(w.phi[b]);
                bool anchored = lower ? (vert.in_lower_family() && vert.low_anchor == a)
                                      : (vert.in_upper_family() && vert.high_anchor == a);
                if (anchored)
                    cells[static_cast<std::size_t>(a)] =
                        cells[static_cast<std::size_t>(a)] | (bf.bundles[b] & p_level);
            }
        }
        PointSet assigned;
        for (int a : c_level.members()) {
            if ((assigned & cells[static_cast<std::size_t>(a)]).count() != 0)
                throw InternalError("anchored cells are not disjoint");
            assigned = assigned | cells[static_cast<std::size_t>(a)];
        }
        for (int a : c_level.members()) {
            int img = w.point_map[static_cast<std::size_t>(a)];
            if (!cells[static_cast<std::size_t>(a)].test(img)) {
                if (assigned.test(img))
                    throw InternalError("injection image lands in a foreign cell");
                cells[static_cast<std::size_t>(a)].set(img);
                assigned.set(img);
            }
        }
        int sink = !used.empty() ? used.first() : base.first();
        cells[static_cast<std::size_t>(sink)] =
            cells[static_cast<std::size_t>(sink)] | (p_level - assigned);
        return cells;
    };

    std::vector<PointSet> v_cells =
        partition_level(p.minimal_points(), c_low, used_low, l0, true);
    std::vector<PointSet> u_cells =
        partition_level(p.maximal_points(), c_high, used_high, u0, false);

    std::vector<int> f(static_cast<std::size_t>(p.size()), -1);
    for (int a : c_low.members())
        for (int x : v_cells[static_cast<std::size_t>(a)].members())
            f[static_cast<std::size_t>(x)] = a;
    for (int v : c_high.members())
        for (int x : u_cells[static_cast<std::size_t>(v)].members())
            f[static_cast<std::size_t>(x)] = v;

    std::optional<OrderMap> g = extend_from_extremals(p, c, f);
    if (!g)
        throw InternalError("witness-built level map does not extend");
    if (!is_surjective(*g))
        throw InternalError("witness-built map is not surjective");
    return std::move(*g);
}

namespace {

struct OrdinalSplit {
    PointSet low, high; // p ids
};

OrdinalSplit require_ordinal_sum_in_extremals(const Poset& p, PointSet z) {
    validate_ambient(p);
    if (!p.extremal_points().contains(z))
        throw PreconditionError("carrier must lie inside the extremal points");
    OrdinalSplit s{z & p.minimal_points(), z & p.maximal_points()};
    if (s.low.empty() || s.high.empty())
        throw NotOrdinalSumError("carrier needs points on both levels");
    for (int a : s.low.members())
        for (int v : s.high.members())
            if (!p.less(a, v))
                throw NotOrdinalSumError("missing cross edge " + p.label(a) + " < " + p.label(v));
    return s;
}

} // namespace

std::optional<RetractionWitness> decide_retract(const Poset& p, PointSet z) {
    require_ordinal_sum_in_extremals(p, z);
    std::optional<SeparatingWitness> w = find_z_separating(p, z);
    if (!w)
        return std::nullopt;
    Subposet sub = induced(p, z);
    const Poset& c = sub.poset;
    OrderMap f = surjection_from_witness(p, c, *w, c.minimal_points(), c.maximal_points());
    std::vector<int> r(static_cast<std::size_t>(p.size()));
    for (int x = 0; x < p.size(); ++x)
        r[static_cast<std::size_t>(x)] = w->point_map[static_cast<std::size_t>(f(x))];
    RetractionWitness witness{OrderMap{p, p, std::move(r)}, z};
    if (!verify_retraction(witness))
        throw InternalError("constructed retraction failed verification");
    return witness;
}

Subposet reduce_to_core(const Poset& p, PointSet z) {
    require_ordinal_sum_in_extremals(p, z);
    BundleFamily bf = bundle_family(p);
    return induced(p, bf.union_of_bundles() | bf.inner_points | z);
}

Subposet crown_edge_poset(const Poset& p, PointSet z) {
    validate_ambient(p);
    if (!p.extremal_points().contains(z))
        throw PreconditionError("carrier must lie inside the extremal points");
    BundleFamily bf = bundle_family(p);
    std::vector<int> pts = z.members();
    int k = static_cast<int>(pts.size());
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            int x = pts[static_cast<std::size_t>(i)], y = pts[static_cast<std::size_t>(j)];
            if (!p.less(x, y))
                continue;
            for (PointSet b : bf.bundles)
                if (b.test(x) && b.test(y)) {
                    rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
                    break;
                }
        }
    Poset q = Poset::from_closed_rows(k, std::move(rows));
    for (int i = 0; i < k; ++i)
        if (p.has_label(pts[static_cast<std::size_t>(i)]))
            q.set_label(i, p.label(pts[static_cast<std::size_t>(i)]));
    return Subposet{std::move(q), std::move(pts)};
}

Poset n_poset(const Poset& c, int a, int v) {
    if (!c.minimal_points().test(a) || !c.maximal_points().test(v))
        throw PreconditionError("frame points must be a minimal and a maximal point");
    std::vector<std::pair<int, int>> pairs;
    for (int x : c.minimal_points().members())
        pairs.emplace_back(x, v);
    for (int y : c.maximal_points().members())
        if (y != v)
            pairs.emplace_back(a, y);
    Poset q = Poset::from_pairs(c.size(), pairs);
    for (int x = 0; x < c.size(); ++x)
        if (c.has_label(x))
            q.set_label(x, c.label(x));
    return q;
}

std::optional<std::pair<int, int>> clique_criterion(const Poset& p, PointSet z) {
    validate_ambient(p);
    if (!p.extremal_points().contains(z))
        throw PreconditionError("carrier must lie inside the extremal points");
    Subposet cf = crown_edge_poset(p, z);
    if (!is_connected(induced(p, z).poset))
        throw NotConnectedError("carrier must induce a connected poset");
    PointSet zl = z & p.minimal_points();
    PointSet zu = z & p.maximal_points();
    std::vector<std::pair<int, int>> covered; // p ids
    for (int i = 0; i < cf.poset.size(); ++i)
        for (int j : cf.poset.strictly_above(i).members())
            covered.emplace_back(cf.points[static_cast<std::size_t>(i)],
                                 cf.points[static_cast<std::size_t>(j)]);
    for (int a : zl.members())
        for (int v : zu.members()) {
            bool fits = true;
            for (auto [x, y] : covered)
                if (x != a && y != v) {
                    fits = false;
                    break;
                }
            if (fits)
                return std::make_pair(a, v);
        }
    return std::nullopt;
}

EdgeCriterion uncovered_edge_criterion(const Poset& p, PointSet z) {
    OrdinalSplit s = require_ordinal_sum_in_extremals(p, z);
    if (z.count() != 4 || s.low.count() != 2 || s.high.count() != 2)
        throw PreconditionError("criterion needs a 4-crown carrier");
    BundleFamily bf = bundle_family(p);
    for (std::size_t i = 0; i < bf.bundles.size(); ++i)
        for (std::size_t j = i + 1; j < bf.bundles.size(); ++j) {
            PointSet common = bf.bundles[i] & bf.bundles[j];
            if ((common & p.minimal_points()).empty() || (common & p.maximal_points()).empty())
                return EdgeCriterion::not_applicable;
        }
    for (int a : s.low.members())
        for (int v : s.high.members()) {
            bool covered = false;
            for (PointSet b : bf.bundles)
                if (b.test(a) && b.test(v)) {
                    covered = true;
                    break;
                }
            if (!covered)
                return EdgeCriterion::retract;
        }
    return EdgeCriterion::not_retract;
}

} // namespace crowns
