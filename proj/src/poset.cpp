#include "crowns/poset.hpp"

#include <algorithm>
#include <cassert>

namespace crowns {

Poset Poset::from_pairs(int n, std::span<const std::pair<int, int>> pairs) {
    if (n < 0 || n > max_points)
        throw PreconditionError("point count must be between 0 and 64");
    Poset p;
    p.n_ = n;
    p.up_.assign(static_cast<std::size_t>(n), 0);
    for (auto [x, y] : pairs) {
        if (x < 0 || x >= n || y < 0 || y >= n)
            throw PreconditionError("edge endpoint out of range: (" + std::to_string(x) +
                                    "," + std::to_string(y) + ")");
        if (x == y)
            throw SelfLoopError("self loop on point " + std::to_string(x));
        p.up_[static_cast<std::size_t>(x)] |= std::uint64_t{1} << y;
    }
    // Warshall closure, one bit row at a time.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if ((p.up_[static_cast<std::size_t>(i)] >> k) & 1u)
                p.up_[static_cast<std::size_t>(i)] |= p.up_[static_cast<std::size_t>(k)];
    for (int i = 0; i < n; ++i)
        if ((p.up_[static_cast<std::size_t>(i)] >> i) & 1u)
            throw CycleError("relation contains a cycle through point " + std::to_string(i));
    p.finish();
    return p;
}

Poset Poset::from_closed_rows(int n, std::vector<std::uint64_t> up_rows) {
    Poset p;
    p.n_ = n;
    p.up_ = std::move(up_rows);
    assert(static_cast<int>(p.up_.size()) == n);
#ifndef NDEBUG
    for (int i = 0; i < n; ++i) {
        assert(((p.up_[static_cast<std::size_t>(i)] >> i) & 1u) == 0);
        for (int k = 0; k < n; ++k)
            if ((p.up_[static_cast<std::size_t>(i)] >> k) & 1u)
                assert((p.up_[static_cast<std::size_t>(k)] & ~p.up_[static_cast<std::size_t>(i)]) == 0);
    }
#endif
    p.finish();
    return p;
}

void Poset::finish() {
    down_.assign(static_cast<std::size_t>(n_), 0);
    for (int x = 0; x < n_; ++x)
        for (std::uint64_t b = up_[static_cast<std::size_t>(x)]; b != 0; b &= b - 1)
            down_[static_cast<std::size_t>(__builtin_ctzll(b))] |= std::uint64_t{1} << x;
    min_ = max_ = PointSet{};
    for (int x = 0; x < n_; ++x) {
        if (down_[static_cast<std::size_t>(x)] == 0)
            min_.set(x);
        if (up_[static_cast<std::size_t>(x)] == 0)
            max_.set(x);
    }
}

int Poset::edge_count() const {
    int c = 0;
    for (int x = 0; x < n_; ++x)
        c += __builtin_popcountll(up_[static_cast<std::size_t>(x)]);
    return c;
}

std::vector<std::pair<int, int>> Poset::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < n_; ++x)
        for (int y : PointSet{up_[static_cast<std::size_t>(x)]}.members())
            out.emplace_back(x, y);
    return out;
}

std::vector<std::pair<int, int>> Poset::cover_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < n_; ++x) {
        for (int y : strictly_above(x).members()) {
            // x -< y iff nothing sits strictly between.
            if ((strictly_above(x) & strictly_below(y)).empty())
                out.emplace_back(x, y);
        }
    }
    return out;
}

void Poset::set_label(int p, std::string name) {
    if (p < 0 || p >= n_)
        throw PreconditionError("label id out of range");
    if (static_cast<int>(labels_.size()) < n_)
        labels_.resize(static_cast<std::size_t>(n_));
    labels_[static_cast<std::size_t>(p)] = std::move(name);
}

int Poset::point_by_name(const std::string& name) const {
    for (int p = 0; p < n_; ++p)
        if (has_label(p) && labels_[static_cast<std::size_t>(p)] == name)
            return p;
    // Fall back to a plain decimal id.
    if (!name.empty() && name.size() <= 9 &&
        name.find_first_not_of("0123456789") == std::string::npos) {
        int id = std::stoi(name);
        if (id >= 0 && id < n_)
            return id;
    }
    return -1;
}

std::string Poset::set_to_string(PointSet s) const {
    std::string out = "{";
    bool first = true;
    for (int p : s.members()) {
        if (!first)
            out += ", ";
        out += label(p);
        first = false;
    }
    return out + "}";
}

LevelDecomposition levels(const Poset& p) {
    return LevelDecomposition{p.minimal_points(), p.maximal_points(), p.extremal_points(),
                              p.midpoints()};
}

Subposet induced(const Poset& p, PointSet keep) {
    if (!p.carrier().contains(keep))
        throw PreconditionError("induced: subset exceeds carrier");
    std::vector<int> pts = keep.members();
    int k = static_cast<int>(pts.size());
    std::vector<int> local(static_cast<std::size_t>(p.size()), -1);
    for (int i = 0; i < k; ++i)
        local[static_cast<std::size_t>(pts[static_cast<std::size_t>(i)])] = i;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i)
        for (int yp : (p.strictly_above(pts[static_cast<std::size_t>(i)]) & keep).members())
            rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << local[static_cast<std::size_t>(yp)];
    Poset q = Poset::from_closed_rows(k, std::move(rows));
    for (int i = 0; i < k; ++i)
        if (p.has_label(pts[static_cast<std::size_t>(i)]))
            q.set_label(i, p.label(pts[static_cast<std::size_t>(i)]));
    return Subposet{std::move(q), std::move(pts)};
}

namespace {

Poset sum_impl(const Poset& p, const Poset& q, bool ordinal) {
    int n = p.size() + q.size();
    if (n > max_points)
        throw PreconditionError("sum exceeds 64 points");
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < p.size(); ++x)
        rows[static_cast<std::size_t>(x)] = p.strictly_above(x).bits;
    std::uint64_t q_all = 0;
    for (int x = 0; x < q.size(); ++x)
        q_all |= std::uint64_t{1} << (p.size() + x);
    for (int x = 0; x < q.size(); ++x)
        rows[static_cast<std::size_t>(p.size() + x)] = q.strictly_above(x).bits << p.size();
    if (ordinal)
        for (int x = 0; x < p.size(); ++x)
            rows[static_cast<std::size_t>(x)] |= q_all;
    Poset r = Poset::from_closed_rows(n, std::move(rows));
    for (int x = 0; x < p.size(); ++x)
        if (p.has_label(x))
            r.set_label(x, p.label(x));
    for (int x = 0; x < q.size(); ++x)
        if (q.has_label(x))
            r.set_label(p.size() + x, q.label(x));
    return r;
}

} // namespace

Poset direct_sum(const Poset& p, const Poset& q) { return sum_impl(p, q, false); }

Poset ordinal_sum(const Poset& p, const Poset& q) { return sum_impl(p, q, true); }

void validate_ambient(const Poset& p) {
    if (p.size() < 2)
        throw TooSmallError("ambient poset needs at least two points");
    for (int x = 0; x < p.size(); ++x)
        if (p.strictly_above(x).empty() && p.strictly_below(x).empty())
            throw IsolatedPointError(x, p.label(x));
}

bool is_height_one(const Poset& p) {
    if (p.edge_count() == 0)
        return false;
    return p.midpoints().empty();
}

bool is_connected(const Poset& p) {
    if (p.size() <= 1)
        return true;
    PointSet seen = PointSet::of({0});
    PointSet frontier = seen;
    while (!frontier.empty()) {
        PointSet next;
        for (int x : frontier.members())
            next = next | p.strictly_above(x) | p.strictly_below(x);
        next = next - seen;
        seen = seen | next;
        frontier = next;
    }
    return seen == p.carrier();
}

} // namespace crowns
