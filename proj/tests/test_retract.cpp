#include <doctest.h>

#include <algorithm>

#include "crowns/io.hpp"
#include "crowns/oracle.hpp"
#include "crowns/retract.hpp"
#include "fixtures.hpp"

using namespace crowns;

namespace {

Poset two_chain() { return fixtures::chain(2); }

// identity-style partial map on the extremal points
std::vector<int> extremal_map(const Poset& p, std::initializer_list<int> values) {
    std::vector<int> f(values);
    return f;
}

} // namespace

TEST_CASE("strictify keeps already-strict maps") {
    OrderMap f{fixtures::chain(3), two_chain(), {0, 1, 1}};
    CHECK(strictify(f).map == f.map);

    OrderMap g{fixtures::crown4_plus_mid(), two_chain(), {0, 0, 1, 1, 0}};
    CHECK(strictify(g).map == g.map);
}

TEST_CASE("strictify redirects a minimal point mapped high") {
    // a and the midpoint land on the top of the 2-chain; a gets pulled back
    // to the smallest minimal point below it.
    OrderMap f{fixtures::crown4_plus_mid(), two_chain(), {1, 0, 1, 1, 1}};
    REQUIRE(is_homomorphism(f));
    OrderMap g = strictify(f);
    CHECK(g.map == std::vector<int>{0, 0, 1, 1, 1});
    CHECK(g.map[4] == f.map[4]);
}

TEST_CASE("strictify rejects non-surjective and non-order-preserving input") {
    OrderMap f{fixtures::chain(3), two_chain(), {0, 0, 0}};
    CHECK_THROWS_AS(strictify(f), NotSurjectiveError);
    OrderMap g{fixtures::chain(3), two_chain(), {1, 0, 1}};
    CHECK_THROWS_AS(strictify(g), PreconditionError);
}

TEST_CASE("strictify output is strict on random surjections") {
    int tried = 0;
    for (std::uint64_t seed = 0; tried < 50 && seed < 2000; ++seed) {
        Poset p = random_poset(seed, 7, 0.35);
        Poset q = induced(random_poset(seed ^ 0x9, 4, 0.5), PointSet::full(4)).poset;
        bool q_ok = true;
        try {
            validate_ambient(q);
        } catch (const PosetError&) {
            q_ok = false;
        }
        if (!q_ok)
            continue;
        // draw random maps until one is a surjective homomorphism
        std::uint64_t h = seed * 0x9e3779b97f4a7c15ull + 7;
        OrderMap f{p, q, std::vector<int>(static_cast<std::size_t>(p.size()), 0)};
        bool found = false;
        for (int tries = 0; tries < 300 && !found; ++tries) {
            for (int x = 0; x < p.size(); ++x) {
                h = h * 6364136223846793005ull + 1442695040888963407ull;
                f.map[static_cast<std::size_t>(x)] =
                    static_cast<int>((h >> 33) % static_cast<std::uint64_t>(q.size()));
            }
            found = is_homomorphism(f) && is_surjective(f);
        }
        if (!found)
            continue;
        ++tried;
        OrderMap g = strictify(f);
        CHECK(is_homomorphism(g));
        PointSet glow, ghigh;
        for (int x : p.minimal_points().members())
            glow.set(g(x));
        for (int x : p.maximal_points().members())
            ghigh.set(g(x));
        CHECK(glow == q.minimal_points());
        CHECK(ghigh == q.maximal_points());
        for (int x : p.midpoints().members())
            CHECK(g(x) == f(x));
    }
    CHECK(tried > 0);
}

TEST_CASE("strictify keeps retractions retractions") {
    int tried = 0;
    for (std::uint64_t seed = 0; tried < 40 && seed < 600; ++seed) {
        Poset p = random_poset(seed ^ 0x51, 7, 0.35);
        PointSet z{(seed * 0x9e3779b97f4a7c15ull) % 128};
        if (!p.carrier().contains(z) || z.count() < 2)
            continue;
        std::optional<RetractionWitness> r = oracle_retraction_exists(p, z);
        if (!r)
            continue;
        Subposet sub = induced(p, z);
        bool q_ok = true;
        try {
            validate_ambient(sub.poset);
        } catch (const PosetError&) {
            q_ok = false;
        }
        if (!q_ok)
            continue;
        ++tried;
        OrderMap f{p, sub.poset, std::vector<int>(static_cast<std::size_t>(p.size()))};
        for (int x = 0; x < p.size(); ++x)
            f.map[static_cast<std::size_t>(x)] = sub.index_of(r->map(x));
        OrderMap g = strictify(f);
        CHECK(is_homomorphism(g));
        for (int q = 0; q < sub.poset.size(); ++q)
            CHECK(g(sub.points[static_cast<std::size_t>(q)]) == q);
    }
    CHECK(tried > 0);
}

TEST_CASE("midpoint extension on the fixtures") {
    Poset crown = fixtures::crown4();
    std::optional<OrderMap> same =
        extend_from_extremals(crown, crown, extremal_map(crown, {0, 1, 2, 3}));
    REQUIRE(same.has_value());
    CHECK(same->map == std::vector<int>{0, 1, 2, 3});

    Poset p = fixtures::crown4_plus_mid();
    CHECK(!extend_from_extremals(p, crown, extremal_map(p, {0, 1, 2, 3, -1})));

    std::optional<OrderMap> collapsed =
        extend_from_extremals(p, crown, extremal_map(p, {0, 0, 2, 3, -1}));
    REQUIRE(collapsed.has_value());
    CHECK(collapsed->map[4] == 0);
    CHECK(is_homomorphism(*collapsed));
}

TEST_CASE("shadow images drive the extension rule") {
    Poset p = fixtures::crown4_plus_mid();
    Poset crown = fixtures::crown4();
    std::vector<int> f = {0, 1, 2, 3, -1};
    AlphaBeta ab = shadow_images(p, crown, f, 4);
    CHECK(ab.alpha == PointSet::of({0, 1}));
    CHECK(ab.beta == PointSet::of({2, 3}));
}

TEST_CASE("extension condition on the fixtures") {
    Poset crown = fixtures::crown4();
    CHECK(!check_extension_condition(crown, crown, extremal_map(crown, {0, 1, 2, 3})));

    Poset p = fixtures::crown4_plus_mid();
    std::optional<Crown4> blocking =
        check_extension_condition(p, crown, extremal_map(p, {0, 1, 2, 3, -1}));
    REQUIRE(blocking.has_value());
    CHECK(*blocking == Crown4{0, 1, 2, 3});

    CHECK(!check_extension_condition(p, crown, extremal_map(p, {0, 0, 2, 3, -1})));
}

TEST_CASE("extension exists exactly when no crown blocks, exhaustively") {
    std::vector<Poset> targets;
    for (int m = 1; m <= 2; ++m)
        for (int k = 1; k <= 2; ++k)
            targets.push_back(ordinal_sum(Poset::antichain(m), Poset::antichain(k)));
    for (const Poset& p : all_posets(4)) {
        bool ambient = true;
        try {
            validate_ambient(p);
        } catch (const PosetError&) {
            ambient = false;
        }
        if (!ambient)
            continue;
        std::vector<int> lows = p.minimal_points().members();
        std::vector<int> highs = p.maximal_points().members();
        for (const Poset& c : targets) {
            int m = c.minimal_points().count();
            int k = c.maximal_points().count();
            if (static_cast<int>(lows.size()) < m || static_cast<int>(highs.size()) < k)
                continue;
            // every level-surjective map of the extremal points
            std::vector<int> f(static_cast<std::size_t>(p.size()), -1);
            int total_low = 1;
            for (std::size_t i = 0; i < lows.size(); ++i)
                total_low *= m;
            int total_high = 1;
            for (std::size_t i = 0; i < highs.size(); ++i)
                total_high *= k;
            for (int a = 0; a < total_low; ++a)
                for (int b = 0; b < total_high; ++b) {
                    int aa = a, bb = b;
                    PointSet lo_hit, hi_hit;
                    for (int x : lows) {
                        f[static_cast<std::size_t>(x)] = aa % m;
                        lo_hit.set(aa % m);
                        aa /= m;
                    }
                    for (int x : highs) {
                        f[static_cast<std::size_t>(x)] = m + bb % k;
                        hi_hit.set(m + bb % k);
                        bb /= k;
                    }
                    if (lo_hit.count() != m || hi_hit.count() != k)
                        continue;
                    bool ext = extend_from_extremals(p, c, f).has_value();
                    bool ok = !check_extension_condition(p, c, f).has_value();
                    CHECK(ext == ok);
                }
        }
    }
}

TEST_CASE("witness-built surjection collapses leftovers onto the base points") {
    Poset p = parse_poset_text("points 6\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\n"
                               "edge 4 5\nedge 4 2\n");
    PointSet z = PointSet::of({0, 1, 2, 3});
    Subposet sub = induced(p, z);
    SeparatingWitness trivial{TargetKind::max_image, {}, {0, 1, 2, 3}, true};
    OrderMap f = surjection_from_witness(p, sub.poset, trivial, sub.poset.minimal_points(),
                                         sub.poset.maximal_points());
    CHECK(is_homomorphism(f));
    CHECK(is_surjective(f));
    CHECK(f.map == std::vector<int>{0, 1, 2, 3, 0, 2});
}

TEST_CASE("witness-built surjection preconditions") {
    Poset p = fixtures::two_bundle_retract();
    PointSet z = fixtures::two_bundle_carrier();
    Subposet sub = induced(p, z);
    std::optional<SeparatingWitness> w = find_z_separating(p, z);
    REQUIRE(w.has_value());
    CHECK_THROWS_AS(
        surjection_from_witness(p, sub.poset, *w, PointSet{}, sub.poset.maximal_points()),
        PreconditionError);
    // a base set without full cross edges is rejected
    CHECK_THROWS_AS(surjection_from_witness(p, sub.poset, *w, PointSet::of({0}),
                                            sub.poset.maximal_points()),
                    PreconditionError);
    SeparatingWitness broken = *w;
    broken.phi.clear();
    CHECK_THROWS_AS(surjection_from_witness(p, sub.poset, broken, sub.poset.minimal_points(),
                                            sub.poset.maximal_points()),
                    PreconditionError);
}

TEST_CASE("witness text format") {
    Poset p = parse_poset_text("points 6\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\n"
                               "edge 4 5\nedge 4 2\n");
    std::optional<RetractionWitness> w = decide_retract(p, PointSet::of({0, 1, 2, 3}));
    REQUIRE(w.has_value());
    std::string text = serialize_order_map(w->map, verify_retraction(*w));
    CHECK(text == "map 0 -> 0\nmap 1 -> 1\nmap 2 -> 2\nmap 3 -> 3\nmap 4 -> 0\nmap 5 -> 2\n"
                  "verified: true\n");
}

TEST_CASE("decide: crowns in height-one posets are retracts") {
    Poset p = parse_poset_text("points 6\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\n"
                               "edge 4 5\nedge 4 2\n");
    std::optional<RetractionWitness> w = decide_retract(p, PointSet::of({0, 1, 2, 3}));
    REQUIRE(w.has_value());
    CHECK(verify_retraction(*w));
}

TEST_CASE("decide: the swallowed crown is not a retract") {
    CHECK(!decide_retract(fixtures::crown4_plus_mid(), PointSet::of({0, 1, 2, 3})));
    CHECK(!decide_retract(fixtures::crown4_plus_two_mids(), PointSet::of({0, 1, 2, 3})));
}

TEST_CASE("the two-bundle fixture carrier is a retract, outside the ordinal-sum fast path") {
    Poset p = fixtures::two_bundle_retract();
    PointSet z = fixtures::two_bundle_carrier();
    // the carrier misses cross edges, so the decision procedure refuses it
    CHECK_THROWS_AS(decide_retract(p, z), NotOrdinalSumError);
    // but it is a retract, and the necessary separating witness exists
    std::optional<RetractionWitness> w = oracle_retraction_exists(p, z);
    REQUIRE(w.has_value());
    CHECK(verify_retraction(*w));
    CHECK(find_z_separating(p, z).has_value());
}

TEST_CASE("decide handles a single-edge carrier through the tip vertex") {
    Poset p = fixtures::crown4_plus_mid();
    PointSet z = PointSet::of({0, 2});
    std::optional<RetractionWitness> w = decide_retract(p, z);
    REQUIRE(w.has_value());
    CHECK(verify_retraction(*w));
    CHECK(oracle_retraction_exists(p, z).has_value());

    // the same construction works from an image-graph witness
    std::optional<SeparatingWitness> wi =
        find_z_separating(p, z, {TargetKind::image, false, false});
    REQUIRE(wi.has_value());
    Subposet sub = induced(p, z);
    OrderMap f = surjection_from_witness(p, sub.poset, *wi, sub.poset.minimal_points(),
                                         sub.poset.maximal_points());
    CHECK(is_homomorphism(f));
    CHECK(is_surjective(f));
}

TEST_CASE("decide handles carriers wider than a crown") {
    // three-below-two complete bipartite carrier with a swallowing midpoint
    Poset blocked = Poset::from_pairs(
        6, {{0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {0, 5}, {1, 5}, {5, 3}, {5, 4}});
    PointSet z = PointSet::of({0, 1, 2, 3, 4});
    CHECK(!decide_retract(blocked, z));
    CHECK(!oracle_retraction_exists(blocked, z));

    // midpoint with a single maximal point above: no bundle, retract exists
    Poset open = Poset::from_pairs(
        6, {{0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {0, 5}, {1, 5}, {5, 3}});
    std::optional<RetractionWitness> w = decide_retract(open, z);
    REQUIRE(w.has_value());
    CHECK(verify_retraction(*w));
    CHECK(oracle_retraction_exists(open, z).has_value());
}

TEST_CASE("decide preconditions") {
    Poset p = fixtures::crown4_plus_mid();
    CHECK_THROWS_AS(decide_retract(p, PointSet::of({0, 1, 2, 4})), PreconditionError);
    Poset h = parse_poset_text("points 6\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\n"
                               "edge 4 5\nedge 4 2\n");
    CHECK_THROWS_AS(decide_retract(h, PointSet::of({0, 4, 2, 3})), NotOrdinalSumError);
    CHECK_THROWS_AS(decide_retract(h, PointSet::of({2, 3, 5})), NotOrdinalSumError);
}

TEST_CASE("core reduction on the fixtures") {
    Poset h = parse_poset_text("points 6\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\n"
                               "edge 4 5\nedge 4 2\n");
    Subposet core = reduce_to_core(h, PointSet::of({0, 1, 2, 3}));
    CHECK(core.poset.size() == 4);
    CHECK(same_order(core.poset, fixtures::crown4()));

    // a dangling edge far from the crown is dropped
    Poset p = parse_poset_text("points 7\nedge 0 4\nedge 1 4\nedge 4 2\nedge 4 3\nedge 5 6\n");
    Subposet q = reduce_to_core(p, PointSet::of({0, 1, 2, 3}));
    CHECK(q.poset.size() == 5);
    CHECK(q.index_of(5) == -1);
    CHECK(q.index_of(6) == -1);
}

TEST_CASE("core reduction preserves the decision and the bundles") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        Poset p = random_poset(seed ^ 0x1234, 8, 0.3);
        for (const Crown4& cr : enumerate_crowns_in_extremals(p)) {
            PointSet z = cr.points();
            Subposet core = reduce_to_core(p, z);
            PointSet zq;
            for (int x : z.members())
                zq.set(core.index_of(x));
            CHECK(decide_retract(p, z).has_value() ==
                  decide_retract(core.poset, zq).has_value());
            std::vector<PointSet> a = bundle_family(p).bundles;
            std::vector<PointSet> b;
            for (PointSet s : bundle_family(core.poset).bundles)
                b.push_back(core.to_parent(s));
            std::sort(b.begin(), b.end());
            CHECK(a == b);
        }
    }
}

TEST_CASE("covered-edge subposet") {
    Poset h = parse_poset_text("points 6\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\n"
                               "edge 4 5\nedge 4 2\n");
    Subposet empty_cf = crown_edge_poset(h, PointSet::of({0, 1, 2, 3}));
    CHECK(empty_cf.poset.edge_count() == 0);

    Poset p = fixtures::crown4_plus_mid();
    Subposet cf = crown_edge_poset(p, PointSet::of({0, 1, 2, 3}));
    CHECK(same_order(cf.poset, fixtures::crown4()));
}

TEST_CASE("frame poset and the clique criterion") {
    Poset crown = fixtures::crown4();
    Poset frame = n_poset(crown, 0, 2);
    CHECK(frame.edge_count() == 3);
    CHECK(frame.less(0, 2));
    CHECK(frame.less(1, 2));
    CHECK(frame.less(0, 3));
    CHECK_THROWS_AS(n_poset(crown, 2, 0), PreconditionError);

    Poset h = parse_poset_text("points 6\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\n"
                               "edge 4 5\nedge 4 2\n");
    CHECK(clique_criterion(h, PointSet::of({0, 1, 2, 3})).has_value());

    CHECK(!clique_criterion(fixtures::crown4_plus_mid(), PointSet::of({0, 1, 2, 3})));
}

TEST_CASE("the two-bundle fixture pins its unique frame pair") {
    Poset p = fixtures::two_bundle_retract();
    PointSet z = fixtures::two_bundle_carrier();
    Subposet cf = crown_edge_poset(p, z);
    // covered edges in carrier ids (c,a,b,v,w,u -> 0..5)
    std::vector<std::pair<int, int>> covered = cf.poset.edges();
    std::vector<std::pair<int, int>> expect = {{0, 3}, {1, 3}, {2, 4}, {2, 5}};
    std::sort(covered.begin(), covered.end());
    CHECK(covered == expect);

    std::optional<std::pair<int, int>> pair = clique_criterion(p, z);
    REQUIRE(pair.has_value());
    CHECK(*pair == std::pair<int, int>{2, 4}); // b and v in ambient ids

    // and it is the only fitting pair
    Poset c = induced(p, z).poset;
    int fits = 0;
    for (int a : c.minimal_points().members())
        for (int v : c.maximal_points().members()) {
            Poset frame = n_poset(c, a, v);
            bool contained = true;
            for (auto [x, y] : cf.poset.edges())
                if (!frame.less(x, y))
                    contained = false;
            if (contained)
                ++fits;
        }
    CHECK(fits == 1);
}

TEST_CASE("clique criterion matches the clique-restricted search") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Poset p = random_poset(seed ^ 0xaa, 8, 0.3);
        for (const Crown4& cr : enumerate_crowns_in_extremals(p)) {
            PointSet z = cr.points();
            bool frame = clique_criterion(p, z).has_value();
            bool search =
                find_z_separating(p, z, {TargetKind::max_image, true, false}).has_value();
            CHECK(frame == search);
        }
    }
}

TEST_CASE("uncovered-edge criterion") {
    Poset h = parse_poset_text("points 6\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\n"
                               "edge 4 5\nedge 4 2\n");
    CHECK(uncovered_edge_criterion(h, PointSet::of({0, 1, 2, 3})) == EdgeCriterion::retract);

    Poset p = fixtures::crown4_plus_mid();
    CHECK(uncovered_edge_criterion(p, PointSet::of({0, 1, 2, 3})) == EdgeCriterion::not_retract);
    CHECK(!decide_retract(p, PointSet::of({0, 1, 2, 3})).has_value());

    Poset cb = fixtures::complete_two_bundles();
    PointSet z = PointSet::of({0, 1, 3, 4});
    CHECK(uncovered_edge_criterion(cb, z) == EdgeCriterion::not_retract);
    CHECK(!decide_retract(cb, z).has_value());

    Poset g = fixtures::glued_crowns();
    CHECK(uncovered_edge_criterion(g, PointSet::of({0, 1, 2, 3})) ==
          EdgeCriterion::not_applicable);

    CHECK_THROWS_AS(uncovered_edge_criterion(h, PointSet::of({4, 5, 2, 3})), PosetError);
}
