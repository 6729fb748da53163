#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crowns/crown.hpp"
#include "crowns/poset.hpp"

namespace crowns {

/**
 * Which of the two candidate-image families a vertex belongs to. A vertex of
 * the image graph on the lower side is {a} plus a nonempty set of points
 * above a; upper side is the dual. Two-element vertices (the tips, single
 * edges of the target poset) belong to both families at once.
 */
enum class Side { lower, upper, both };

struct Vertex {
    PointSet points;     // label; carrier ids of the graph's ground poset
    Side side;           // bundle vertices use Side::both with no anchors
    int low_anchor = -1; // the lower-level point when side is lower/both
    int high_anchor = -1;

    bool is_tip() const { return points.count() == 2 && side == Side::both; }
    bool in_lower_family() const { return side != Side::upper; }
    bool in_upper_family() const { return side != Side::lower; }
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

/**
 * Undirected multigraph with two edge colors (L and U) and loops. The two
 * colors never produce parallel edges of the same color, so adjacency is a
 * pair of symmetric boolean matrices.
 */
class TwoColorMultigraph {
public:
    explicit TwoColorMultigraph(std::vector<Vertex> vertices = {});

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const Vertex& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
    const std::vector<Vertex>& vertices() const { return vertices_; }

    bool l_adjacent(int i, int j) const { return l_[idx(i, j)] != 0; }
    bool u_adjacent(int i, int j) const { return u_[idx(i, j)] != 0; }
    void add_l_edge(int i, int j) { l_[idx(i, j)] = l_[idx(j, i)] = 1; }
    void add_u_edge(int i, int j) { u_[idx(i, j)] = u_[idx(j, i)] = 1; }

    int find_vertex(const Vertex& v) const;

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * vertices_.size() + static_cast<std::size_t>(j);
    }
    std::vector<Vertex> vertices_;
    std::vector<std::uint8_t> l_, u_;
};

// One vertex per bundle; L-edge iff the bundles share a minimal point of p,
// U-edge iff they share a maximal point. Every vertex carries both loops.
TwoColorMultigraph bundle_graph(const Poset& p, const BundleFamily& bf);

// All candidate bundle images in c: sets {a} u N with N a nonempty set of
// points above a, and the duals, each listed once (tips merged). L-edge iff
// two labels share a lower-level point, U-edge iff an upper-level one.
// c must be connected of height one; throws NotHeightOneError/NotConnectedError.
TwoColorMultigraph image_graph(const Poset& c);

// The subgraph induced by the principal up-sets and down-sets of c, merged
// when equal as sets. Lower vertices first in ascending anchor order, then
// the upper ones.
TwoColorMultigraph max_image_graph(const Poset& c);

// Collapse of an image-graph vertex onto the principal vertex of its family;
// lower-family vertices (tips included) go to the up-set of their anchor,
// remaining upper vertices to the down-set of theirs. S is contained in the
// result.
Vertex max_image_of(const Poset& c, const Vertex& s);

// Deterministic Graphviz output: vertices sorted by label, L-edges solid,
// U-edges dashed, loops rendered.
std::string export_dot(const TwoColorMultigraph& g, const Poset& ground,
                       const std::string& name = "g");

} // namespace crowns
