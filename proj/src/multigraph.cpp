#include "crowns/multigraph.hpp"

#include <algorithm>
#include <sstream>

namespace crowns {

TwoColorMultigraph::TwoColorMultigraph(std::vector<Vertex> vertices)
    : vertices_(std::move(vertices)) {
    std::size_t n = vertices_.size();
    l_.assign(n * n, 0);
    u_.assign(n * n, 0);
}

int TwoColorMultigraph::find_vertex(const Vertex& v) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (vertices_[static_cast<std::size_t>(i)] == v)
            return i;
    return -1;
}

namespace {

// Shared edge rule of both graphs: color intersection of the labels.
void wire_by_labels(TwoColorMultigraph& g, PointSet lows, PointSet highs) {
    for (int i = 0; i < g.vertex_count(); ++i)
        for (int j = i; j < g.vertex_count(); ++j) {
            PointSet common = g.vertex(i).points & g.vertex(j).points;
            if (!(common & lows).empty())
                g.add_l_edge(i, j);
            if (!(common & highs).empty())
                g.add_u_edge(i, j);
        }
}

void require_image_target(const Poset& c) {
    if (!is_height_one(c))
        throw NotHeightOneError("target poset must have height one");
    if (!is_connected(c))
        throw NotConnectedError("target poset must be connected");
}

} // namespace

TwoColorMultigraph bundle_graph(const Poset& p, const BundleFamily& bf) {
    std::vector<Vertex> verts;
    verts.reserve(bf.bundles.size());
    for (PointSet b : bf.bundles)
        verts.push_back(Vertex{b, Side::both, -1, -1});
    TwoColorMultigraph g(std::move(verts));
    wire_by_labels(g, p.minimal_points(), p.maximal_points());
    return g;
}

TwoColorMultigraph image_graph(const Poset& c) {
    require_image_target(c);
    PointSet lows = c.minimal_points();
    PointSet highs = c.maximal_points();
    std::vector<Vertex> verts;
    // Lower family: {a} u N with nonempty N above a. Two-element sets are the
    // tips; they double as the dual upper-family set and are listed once.
    for (int a : lows.members()) {
        std::vector<int> ups = (c.strictly_above(a) & highs).members();
        int k = static_cast<int>(ups.size());
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            PointSet s = PointSet::of({a});
            for (int t = 0; t < k; ++t)
                if ((mask >> t) & 1u)
                    s.set(ups[static_cast<std::size_t>(t)]);
            if (s.count() == 2)
                verts.push_back(Vertex{s, Side::both, a, (s - PointSet::of({a})).first()});
            else
                verts.push_back(Vertex{s, Side::lower, a, -1});
        }
    }
    for (int v : highs.members()) {
        std::vector<int> downs = (c.strictly_below(v) & lows).members();
        int k = static_cast<int>(downs.size());
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            PointSet s = PointSet::of({v});
            for (int t = 0; t < k; ++t)
                if ((mask >> t) & 1u)
                    s.set(downs[static_cast<std::size_t>(t)]);
            if (s.count() == 2)
                continue; // tip, already listed in the lower pass
            verts.push_back(Vertex{s, Side::upper, -1, v});
        }
    }
    TwoColorMultigraph g(std::move(verts));
    wire_by_labels(g, lows, highs);
    return g;
}

TwoColorMultigraph max_image_graph(const Poset& c) {
    require_image_target(c);
    PointSet lows = c.minimal_points();
    PointSet highs = c.maximal_points();
    std::vector<Vertex> verts;
    for (int a : lows.members()) {
        PointSet s = c.up_set(a);
        if (s.count() == 2)
            verts.push_back(Vertex{s, Side::both, a, (s - PointSet::of({a})).first()});
        else
            verts.push_back(Vertex{s, Side::lower, a, -1});
    }
    for (int v : highs.members()) {
        PointSet s = c.down_set(v);
        if (s.count() == 2) {
            Vertex tip{s, Side::both, (s - PointSet::of({v})).first(), v};
            bool merged = false;
            for (const Vertex& w : verts)
                if (w == tip) {
                    merged = true;
                    break;
                }
            if (merged)
                continue;
            verts.push_back(tip);
        } else {
            verts.push_back(Vertex{s, Side::upper, -1, v});
        }
    }
    TwoColorMultigraph g(std::move(verts));
    wire_by_labels(g, lows, highs);
    return g;
}

Vertex max_image_of(const Poset& c, const Vertex& s) {
    if (s.in_lower_family()) {
        int a = s.low_anchor;
        PointSet up = c.up_set(a);
        if (up.count() == 2)
            return Vertex{up, Side::both, a, (up - PointSet::of({a})).first()};
        return Vertex{up, Side::lower, a, -1};
    }
    int v = s.high_anchor;
    PointSet down = c.down_set(v);
    if (down.count() == 2)
        return Vertex{down, Side::both, (down - PointSet::of({v})).first(), v};
    return Vertex{down, Side::upper, -1, v};
}

std::string export_dot(const TwoColorMultigraph& g, const Poset& ground,
                       const std::string& name) {
    std::vector<std::pair<std::string, int>> order;
    order.reserve(static_cast<std::size_t>(g.vertex_count()));
    for (int i = 0; i < g.vertex_count(); ++i)
        order.emplace_back(ground.set_to_string(g.vertex(i).points), i);
    std::sort(order.begin(), order.end());

    std::vector<int> pos(static_cast<std::size_t>(g.vertex_count()));
    for (std::size_t r = 0; r < order.size(); ++r)
        pos[static_cast<std::size_t>(order[r].second)] = static_cast<int>(r);

    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (std::size_t r = 0; r < order.size(); ++r)
        out << "  v" << r << " [label=\"" << order[r].first << "\"];\n";
    for (std::size_t r = 0; r < order.size(); ++r)
        for (std::size_t s = r; s < order.size(); ++s) {
            int i = order[r].second, j = order[s].second;
            if (g.l_adjacent(i, j))
                out << "  v" << r << " -- v" << s << " [style=solid];\n";
            if (g.u_adjacent(i, j))
                out << "  v" << r << " -- v" << s << " [style=dashed];\n";
        }
    out << "}\n";
    return out.str();
}

} // namespace crowns
