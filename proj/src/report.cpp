#include "crowns/report.hpp"

#include <sstream>

#include <json.hpp>

namespace crowns {

AnalysisReport analyze(const Poset& p) {
    AnalysisReport r{p, levels(p), {}, bundle_family(p), {}};
    for (const Crown4& c : enumerate_crowns_in_extremals(p))
        r.crowns.push_back({c, classify(p, c) == CrownKind::proper, crown_inner(p, c)});
    TwoColorMultigraph g = bundle_graph(p, r.bundles);
    for (int i = 0; i < g.vertex_count(); ++i)
        for (int j = i; j < g.vertex_count(); ++j) {
            if (g.l_adjacent(i, j))
                r.bundle_edges.push_back({i, j, true});
            if (g.u_adjacent(i, j))
                r.bundle_edges.push_back({i, j, false});
        }
    return r;
}

std::string render_text(const AnalysisReport& r) {
    const Poset& p = r.poset;
    std::ostringstream out;
    out << "poset: " << p.size() << " points, " << p.edge_count() << " relations\n";
    out << "minimal:   " << p.set_to_string(r.level.minimal) << "\n";
    out << "maximal:   " << p.set_to_string(r.level.maximal) << "\n";
    out << "midpoints: " << p.set_to_string(r.level.midpoints) << "\n";
    out << "crowns in extremal points: " << r.crowns.size() << "\n";
    for (const auto& e : r.crowns) {
        out << "  " << p.set_to_string(PointSet::of({e.crown.low_a, e.crown.low_b})) << " < "
            << p.set_to_string(PointSet::of({e.crown.high_v, e.crown.high_w})) << ": "
            << (e.proper ? "proper" : "improper");
        if (!e.inner.empty())
            out << ", inner " << p.set_to_string(e.inner);
        out << "\n";
    }
    out << "inner points: " << p.set_to_string(r.bundles.inner_points) << "\n";
    out << "bundles: " << r.bundles.bundles.size() << "\n";
    for (PointSet b : r.bundles.bundles)
        out << "  " << p.set_to_string(b) << "\n";
    int l_edges = 0, u_edges = 0, loops = 0;
    for (const auto& e : r.bundle_edges) {
        if (e.from == e.to)
            ++loops;
        else
            (e.l_color ? l_edges : u_edges)++;
    }
    out << "bundle graph: " << r.bundles.bundles.size() << " vertices, " << l_edges
        << " L-edges, " << u_edges << " U-edges between distinct bundles, " << loops
        << " loops\n";
    return out.str();
}

namespace {

nlohmann::json names_of(const Poset& p, PointSet s) {
    nlohmann::json arr = nlohmann::json::array();
    for (int x : s.members())
        arr.push_back(p.label(x));
    return arr;
}

} // namespace

std::string render_json(const AnalysisReport& r) {
    const Poset& p = r.poset;
    nlohmann::json j;
    j["points"] = p.size();
    j["relations"] = p.edge_count();
    j["minimal"] = names_of(p, r.level.minimal);
    j["maximal"] = names_of(p, r.level.maximal);
    j["midpoints"] = names_of(p, r.level.midpoints);
    j["crowns"] = nlohmann::json::array();
    for (const auto& e : r.crowns) {
        nlohmann::json c;
        c["low"] = names_of(p, PointSet::of({e.crown.low_a, e.crown.low_b}));
        c["high"] = names_of(p, PointSet::of({e.crown.high_v, e.crown.high_w}));
        c["proper"] = e.proper;
        c["inner"] = names_of(p, e.inner);
        j["crowns"].push_back(c);
    }
    j["inner_points"] = names_of(p, r.bundles.inner_points);
    j["bundles"] = nlohmann::json::array();
    for (PointSet b : r.bundles.bundles)
        j["bundles"].push_back(names_of(p, b));
    j["bundle_graph"] = nlohmann::json::object();
    j["bundle_graph"]["l_edges"] = nlohmann::json::array();
    j["bundle_graph"]["u_edges"] = nlohmann::json::array();
    for (const auto& e : r.bundle_edges) {
        nlohmann::json pair = nlohmann::json::array({e.from, e.to});
        j["bundle_graph"][e.l_color ? "l_edges" : "u_edges"].push_back(pair);
    }
    return j.dump(2) + "\n";
}

} // namespace crowns
