#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crowns/multigraph.hpp"

namespace crowns {

enum class TargetKind { image, max_image };

struct SepSearchOptions {
    TargetKind target = TargetKind::max_image;
    // Restrict the image of the assignment to a pairwise L-and-U clique.
    bool require_clique_image = false;
    // Only accept injections whose inverse is order-preserving on the image
    // (automatic when the target is a full ordinal sum).
    bool require_order_preserving_inverse = false;
};

/**
 * A separating homomorphism: a two-colored homomorphism from the bundle
 * graph of p into an image graph of the target c, together with the
 * level-preserving injection of c's carrier into the extremal points of p
 * that belongs to it.
 */
struct SeparatingWitness {
    TargetKind target;
    std::vector<int> phi;       // bundle index -> vertex index in the target graph
    std::vector<int> point_map; // c point -> p point (the injection)
    bool z_separating = false;
};

struct WitnessViolation {
    enum class Kind {
        malformed,
        not_injective,
        level_broken,
        carrier_not_fixed,
        hom_l_edge,
        hom_u_edge,
        anchor_low,
        anchor_high,
    } kind;
    int bundle_f = -1, bundle_g = -1;
    int c_point = -1;
    std::string message;
};

/**
 * Re-derives the bundle and target graphs and verifies the witness: the
 * assignment is a two-colored homomorphism, the anchoring condition holds
 * (a bundle containing the image of a carrier point can only map to a
 * lower-family vertex anchored at that point, dually above), and the
 * injection is level-preserving; for carrier-fixing witnesses the injection
 * must permute the embedded carrier. Returns the first violation found, in
 * a fixed check order, or nothing when the witness is valid.
 *
 * embed maps c's point ids to p's (the carrier of c inside p); pass an empty
 * span when c does not live inside p.
 */
std::optional<WitnessViolation> check_witness(const Poset& p, const Poset& c,
                                              std::span<const int> embed,
                                              const SeparatingWitness& w);

/**
 * Searches for a separating homomorphism whose injection permutes the given
 * carrier z inside the extremal points of p (so the witness can seed an
 * actual retraction). Injections run over level-preserving bijections of z,
 * the assignment by backtracking over bundles in order of decreasing overlap
 * with z. Deterministic; returns the first witness found or nothing.
 */
std::optional<SeparatingWitness> find_z_separating(const Poset& p, PointSet z,
                                                   SepSearchOptions opt = {});

/**
 * Searches for a separating homomorphism into a free-standing target c, the
 * injection ranging over all level-preserving injections of c's carrier into
 * the extremal points of p.
 */
std::optional<SeparatingWitness> find_separating(const Poset& p, const Poset& c,
                                                 SepSearchOptions opt = {});

} // namespace crowns
