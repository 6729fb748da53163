#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "crowns/retract.hpp"

namespace crowns {

// Search-space cap for the brute-force oracles, in bits of unpruned
// branching. Overridable through the CROWNS_SIZE_BUDGET environment
// variable.
double size_guard_budget_bits();

/**
 * Exact decision by backtracking over all assignments of the outside points
 * into z, fixing z pointwise and pruning on order violations. Throws
 * SizeGuardError when the unpruned space exceeds the budget.
 */
std::optional<RetractionWitness> oracle_retraction_exists(const Poset& p, PointSet z);

/**
 * Exact decision by exhaustive search over order-preserving maps from p onto
 * c with a surjectivity check.
 */
std::optional<OrderMap> oracle_surjective_hom_exists(const Poset& p, const Poset& c);

/**
 * Every strict order on n labeled points, generated as transitively closed
 * orientations with triple-wise consistency pruning. The callback may be
 * invoked up to several million times for n = 7.
 */
void enumerate_posets(int n, const std::function<void(const Poset&)>& fn);
std::vector<Poset> all_posets(int n);

// Restriction to orders of height at most one (every point minimal or
// maximal); set require_edge to drop antichains.
void enumerate_height_one_posets(int n, const std::function<void(const Poset&)>& fn);

/**
 * Seed-deterministic random poset: closure of a density-controlled random
 * acyclic edge sample, re-drawn until no point is isolated. Identical seeds
 * give identical posets on every platform.
 */
Poset random_poset(std::uint64_t seed, int n, double density);

} // namespace crowns
