#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crowns/poset.hpp"

namespace crowns {

/**
 * Bounds and knobs for the verification sweeps. threads <= 1 runs the plain
 * serial loops; larger values run the same work as OpenMP-parallel loops
 * over the instance streams with deterministic merging, so both modes must
 * produce identical reports.
 */
struct VerifyOptions {
    int exhaustive_max_n = 6;
    long long random_count = 10000;
    int random_max_n = 10;
    long long surj_count = 5000;
    int surj_max_n = 9;
    int extension_max_n = 6;
    int heightone_max_n = 7;
    std::uint64_t seed = 1;
    int threads = 1;
    // Test hook: inverts the decide-vs-oracle comparison so the mismatch
    // reporting machinery can be exercised end to end.
    bool inject_fault = false;
};

struct CheckCounter {
    long long instances = 0;
    long long mismatches = 0;
};

struct Tally {
    long long posets = 0;
    long long instances = 0;
    CheckCounter decide_vs_oracle;
    CheckCounter target_equivalence;
    CheckCounter separating_vs_oracle;
    CheckCounter extension_biconditional;
    CheckCounter clique_equivalence;
    CheckCounter edge_criterion;
    CheckCounter reduction;
    CheckCounter witness_integrity;
    CheckCounter census;
    CheckCounter heightone_retract;

    long long counterexample_index = -1;
    std::string counterexample;

    void merge(const Tally& other);
    long long mismatches() const;
    bool ok() const { return mismatches() == 0; }
};

struct SweepReport {
    std::string name;
    Tally tally;
    double seconds = 0;
};

// Exhaustive decide-vs-oracle over every labeled poset up to
// exhaustive_max_n points and every 4-crown in its extremal points, with the
// dual-target, clique, edge-criterion, reduction, and witness checks on each
// instance.
SweepReport sweep_retracts_exhaustive(const VerifyOptions& opt);

// The same battery over seeded random posets up to random_max_n points.
SweepReport sweep_retracts_random(const VerifyOptions& opt);

// Separating-homomorphism existence against the brute-force surjection
// oracle, over seeded random posets and full two-level ordinal sums.
SweepReport sweep_surjections_random(const VerifyOptions& opt);

// Extension biconditional: for every poset and every level-surjective map of
// its extremal points onto a small two-level ordinal sum, the midpoint
// extension succeeds exactly when no improper 4-crown blocks it.
SweepReport sweep_extensions_exhaustive(const VerifyOptions& opt);

// Image-graph vertex census against the closed-form count for full ordinal
// sums.
SweepReport sweep_image_graph_census(const VerifyOptions& opt);

// Every 4-crown in a poset of height one is a retract with a verified
// witness.
SweepReport sweep_height_one(const VerifyOptions& opt);

std::vector<SweepReport> run_all_sweeps(const VerifyOptions& opt, std::ostream* log);

// Re-parses an emitted counterexample and re-runs its check in isolation;
// true when the mismatch shows up again.
bool reproduce_counterexample(const std::string& text, const VerifyOptions& opt);

std::string render_sweep_report(const SweepReport& r);

} // namespace crowns
