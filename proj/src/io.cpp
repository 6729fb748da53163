#include "crowns/io.hpp"

#include <fstream>
#include <sstream>

#include "crowns/retract.hpp"

namespace crowns {

Poset parse_poset(std::istream& in) {
    int n = -1;
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::pair<int, std::string>> labels;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#')
            continue;
        if (word == "points") {
            if (n >= 0)
                throw ParseError(lineno, "duplicate points line");
            if (!(ls >> n) || n < 0)
                throw ParseError(lineno, "expected: points <n>");
            if (n > max_points)
                throw ParseError(lineno, "at most 64 points supported");
        } else if (word == "label") {
            int id;
            std::string name;
            if (!(ls >> id >> name))
                throw ParseError(lineno, "expected: label <id> <name>");
            labels.emplace_back(id, name);
        } else if (word == "edge") {
            int x, y;
            if (!(ls >> x >> y))
                throw ParseError(lineno, "expected: edge <id> <id>");
            pairs.emplace_back(x, y);
        } else {
            throw ParseError(lineno, "unknown directive '" + word + "'");
        }
        if (n < 0 && word != "points")
            throw ParseError(lineno, "points line must come first");
    }
    if (n < 0)
        throw ParseError(lineno, "missing points line");
    Poset p;
    try {
        p = Poset::from_pairs(n, pairs);
    } catch (const PosetError& e) {
        throw ParseError(lineno, e.what());
    }
    for (auto& [id, name] : labels) {
        if (id < 0 || id >= n)
            throw ParseError(lineno, "label id out of range: " + std::to_string(id));
        p.set_label(id, name);
    }
    return p;
}

Poset parse_poset_text(const std::string& text) {
    std::istringstream in(text);
    return parse_poset(in);
}

Poset load_poset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw PosetError("cannot open " + path);
    return parse_poset(in);
}

std::string serialize_poset(const Poset& p) {
    std::ostringstream out;
    out << "points " << p.size() << "\n";
    for (int x = 0; x < p.size(); ++x)
        if (p.has_label(x))
            out << "label " << x << " " << p.label(x) << "\n";
    for (auto [x, y] : p.cover_edges())
        out << "edge " << x << " " << y << "\n";
    return out.str();
}

std::string serialize_order_map(const OrderMap& f, bool verified) {
    std::ostringstream out;
    for (int x = 0; x < f.source.size(); ++x)
        out << "map " << f.source.label(x) << " -> "
            << f.target.label(f.map[static_cast<std::size_t>(x)]) << "\n";
    out << "verified: " << (verified ? "true" : "false") << "\n";
    return out.str();
}

} // namespace crowns
