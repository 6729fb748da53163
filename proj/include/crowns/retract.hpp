#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "crowns/crown.hpp"
#include "crowns/hom_search.hpp"
#include "crowns/poset.hpp"

namespace crowns {

/**
 * Total map between poset carriers. Both endpoints are stored by value so a
 * map stays checkable on its own.
 */
struct OrderMap {
    Poset source;
    Poset target;
    std::vector<int> map; // source id -> target id

    int operator()(int x) const { return map[static_cast<std::size_t>(x)]; }
};

// x < y in the source implies f(x) <= f(y) in the target.
bool is_homomorphism(const OrderMap& f);
bool is_surjective(const OrderMap& f);

/**
 * Idempotent order-preserving self-map with the given image, fixing the
 * image pointwise.
 */
struct RetractionWitness {
    OrderMap map; // source == target
    PointSet image;
};

bool verify_retraction(const RetractionWitness& w);

/**
 * Turns a surjective homomorphism into one that maps minimal points onto
 * minimal points and maximal onto maximal, leaving midpoints untouched: a
 * minimal point whose image is not minimal is redirected to the smallest-id
 * minimal point below its image, dually above. A retraction stays a
 * retraction. Throws NotSurjectiveError.
 */
OrderMap strictify(const OrderMap& f);

/**
 * Shadow images of a midpoint: the images of the minimal points below it and
 * of the maximal points above it.
 */
struct AlphaBeta {
    PointSet alpha, beta; // target ids
};

AlphaBeta shadow_images(const Poset& p, const Poset& q, std::span<const int> f, int x);

/**
 * Extends a homomorphism given on the extremal points of p (value -1 on
 * midpoints) to all of p, into a height-one target: a midpoint whose lower
 * shadow maps to two or more points takes its upper shadow's unique image,
 * otherwise its lower shadow's unique image. Returns nothing exactly when
 * some midpoint has disjoint shadow images of size >= 2 on both sides, in
 * which case no extension exists at all.
 */
std::optional<OrderMap> extend_from_extremals(const Poset& p, const Poset& q,
                                              std::span<const int> f_on_extremals);

/**
 * Decides extendability for level-surjective f by inspecting improper
 * 4-crowns: returns a blocking crown whose four points meet two distinct
 * fibers over the minimal level of q and two over the maximal level, or
 * nothing when no such crown exists (then the extension succeeds).
 */
std::optional<Crown4> check_extension_condition(const Poset& p, const Poset& q,
                                                std::span<const int> f_on_extremals);
std::optional<Crown4> check_extension_condition(const Poset& p, const Poset& q,
                                                std::span<const int> f_on_extremals,
                                                std::span<const Crown4> improper_crowns);

// The inverse of the level-preserving injection is order-preserving on its
// image: related images come from related carrier points.
bool inverse_order_preserving_map(const Poset& p, const Poset& c,
                                  std::span<const int> point_map);

/**
 * Builds a surjective homomorphism p -> c from a separating witness, by the
 * level-partition construction: minimal points covered by bundles anchored
 * at a go to a, the injection's images keep their own labels, and leftover
 * points collapse onto the smallest anchored (or given) label; dually above.
 * The partial map is then extended over the midpoints.
 *
 * l0/u0 (c ids) must be nonempty with l0 below all of U(C) and L(C) below
 * all of u0; the witness's anchors must stay inside them and its injection
 * must have an order-preserving inverse. Violations raise PreconditionError.
 */
OrderMap surjection_from_witness(const Poset& p, const Poset& c, const SeparatingWitness& w,
                                 PointSet l0, PointSet u0);

/**
 * Decides whether the subset z (a full ordinal sum of two antichains inside
 * the extremal points) is a retract of p, returning a verified retraction or
 * nothing. Throws PreconditionError when z leaves the extremal points and
 * NotOrdinalSumError when a cross edge is missing.
 */
std::optional<RetractionWitness> decide_retract(const Poset& p, PointSet z);

/**
 * Restriction of p to the points that matter for the decision: bundle
 * points, their inner points, and z itself. The bundle family is unchanged
 * and the decision for z is preserved.
 */
Subposet reduce_to_core(const Poset& p, PointSet z);

/**
 * The subposet of z whose edges are exactly the edges of the induced order
 * covered by some bundle. Carrier order matches induced(p, z).
 */
Subposet crown_edge_poset(const Poset& p, PointSet z);

/**
 * Comparison frame on c's carrier: everything minimal below v plus a below
 * everything maximal.
 */
Poset n_poset(const Poset& c, int a, int v);

/**
 * Scans for a pair (a, v) whose frame contains every bundle-covered edge of
 * the induced order on z; such a pair exists exactly when some separating
 * witness fixing z has a clique image. Returned points are p ids.
 */
std::optional<std::pair<int, int>> clique_criterion(const Poset& p, PointSet z);

enum class EdgeCriterion { retract, not_retract, not_applicable };

/**
 * Shortcut criterion for a 4-crown z when the bundle graph is complete in
 * both colors: retract iff some crown edge lies in no bundle. Reports
 * not_applicable when the bundle graph is incomplete.
 */
EdgeCriterion uncovered_edge_criterion(const Poset& p, PointSet z);

} // namespace crowns
