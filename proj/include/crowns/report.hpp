#pragma once

#include <string>
#include <vector>

#include "crowns/crown.hpp"
#include "crowns/multigraph.hpp"
#include "crowns/poset.hpp"

namespace crowns {

/**
 * Structured analysis of one poset: levels, crowns with classification and
 * inners, inner points, bundles, and the bundle-graph edge summary. Text and
 * JSON renderings carry the same content; the JSON keys are stable.
 */
struct AnalysisReport {
    struct CrownEntry {
        Crown4 crown;
        bool proper;
        PointSet inner;
    };
    struct GraphEdge {
        int from, to;
        bool l_color; // false = U
    };

    Poset poset;
    LevelDecomposition level;
    std::vector<CrownEntry> crowns;
    BundleFamily bundles;
    std::vector<GraphEdge> bundle_edges; // loops included
};

AnalysisReport analyze(const Poset& p);

std::string render_text(const AnalysisReport& r);
std::string render_json(const AnalysisReport& r);

} // namespace crowns
