#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crowns/errors.hpp"

namespace crowns {

inline constexpr int max_points = 64;

/**
 * Subset of a poset's carrier, bitset semantics over point ids 0..n-1.
 */
struct PointSet {
    std::uint64_t bits = 0;

    static PointSet of(std::initializer_list<int> points) {
        PointSet s;
        for (int p : points)
            s.set(p);
        return s;
    }
    static PointSet full(int n) {
        return PointSet{n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1)};
    }

    bool test(int p) const { return (bits >> p) & 1u; }
    void set(int p) { bits |= std::uint64_t{1} << p; }
    void unset(int p) { bits &= ~(std::uint64_t{1} << p); }

    int count() const { return __builtin_popcountll(bits); }
    bool empty() const { return bits == 0; }
    bool contains(PointSet other) const { return (other.bits & ~bits) == 0; }
    int first() const { return bits == 0 ? -1 : __builtin_ctzll(bits); }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for (std::uint64_t b = bits; b != 0; b &= b - 1)
            out.push_back(__builtin_ctzll(b));
        return out;
    }

    friend PointSet operator&(PointSet a, PointSet b) { return PointSet{a.bits & b.bits}; }
    friend PointSet operator|(PointSet a, PointSet b) { return PointSet{a.bits | b.bits}; }
    friend PointSet operator-(PointSet a, PointSet b) { return PointSet{a.bits & ~b.bits}; }
    friend bool operator==(PointSet a, PointSet b) { return a.bits == b.bits; }
    friend bool operator!=(PointSet a, PointSet b) { return a.bits != b.bits; }
    friend bool operator<(PointSet a, PointSet b) { return a.bits < b.bits; }
};

/**
 * Finite strict partial order on points 0..n-1, stored transitively closed
 * as per-point up/down bit rows. Immutable after construction; cheap to copy
 * and safe to share across threads.
 */
class Poset {
public:
    Poset() = default;

    // Closes the input pairs transitively. Pairs may be covers or any acyclic
    // relation. Throws SelfLoopError on (x,x) input, CycleError if the closure
    // would relate a point to itself.
    static Poset from_pairs(int n, std::span<const std::pair<int, int>> pairs);
    static Poset from_pairs(int n, std::initializer_list<std::pair<int, int>> pairs) {
        return from_pairs(n, std::span<const std::pair<int, int>>(pairs.begin(), pairs.size()));
    }
    static Poset antichain(int n) { return from_pairs(n, {}); }

    // Adopts already-closed rows; validates in debug builds only.
    static Poset from_closed_rows(int n, std::vector<std::uint64_t> up_rows);

    int size() const { return n_; }

    bool less(int x, int y) const { return (up_[static_cast<std::size_t>(x)] >> y) & 1u; }
    bool leq(int x, int y) const { return x == y || less(x, y); }
    bool comparable(int x, int y) const { return less(x, y) || less(y, x); }

    PointSet strictly_above(int x) const { return PointSet{up_[static_cast<std::size_t>(x)]}; }
    PointSet strictly_below(int x) const { return PointSet{down_[static_cast<std::size_t>(x)]}; }
    // Reflexive down-set {z : z <= x} and up-set {z : x <= z}.
    PointSet down_set(int x) const { return PointSet{down_[static_cast<std::size_t>(x)] | (std::uint64_t{1} << x)}; }
    PointSet up_set(int x) const { return PointSet{up_[static_cast<std::size_t>(x)] | (std::uint64_t{1} << x)}; }
    PointSet interval(int x, int y) const { return up_set(x) & down_set(y); }

    PointSet carrier() const { return PointSet::full(n_); }
    PointSet minimal_points() const { return min_; }
    PointSet maximal_points() const { return max_; }
    PointSet extremal_points() const { return min_ | max_; }
    PointSet midpoints() const { return carrier() - extremal_points(); }

    int edge_count() const;
    std::vector<std::pair<int, int>> edges() const;       // all strict pairs
    std::vector<std::pair<int, int>> cover_edges() const; // transitive reduction

    bool has_label(int p) const {
        return p < static_cast<int>(labels_.size()) && !labels_[static_cast<std::size_t>(p)].empty();
    }
    std::string label(int p) const {
        return has_label(p) ? labels_[static_cast<std::size_t>(p)] : std::to_string(p);
    }
    void set_label(int p, std::string name);
    // Resolves a label, falling back to a decimal id; -1 if unknown.
    int point_by_name(const std::string& name) const;

    std::string set_to_string(PointSet s) const; // "{a, b, v}"

    // Relation equality, labels ignored.
    friend bool same_order(const Poset& a, const Poset& b) {
        return a.n_ == b.n_ && a.up_ == b.up_;
    }

private:
    int n_ = 0;
    std::vector<std::uint64_t> up_;   // up_[x] = {y : x < y}
    std::vector<std::uint64_t> down_; // down_[x] = {y : y < x}
    PointSet min_, max_;
    std::vector<std::string> labels_; // empty or sparse; default is the decimal id

    void finish(); // derive down_, min_, max_ from up_
};

/**
 * Level split of a poset: minimal points, maximal points, their union, and
 * the midpoints (everything else).
 */
struct LevelDecomposition {
    PointSet minimal, maximal, extremal, midpoints;
};

LevelDecomposition levels(const Poset& p);

/**
 * Induced subposet together with the carrier remapping (new id -> parent id).
 */
struct Subposet {
    Poset poset;
    std::vector<int> points;

    int index_of(int parent_id) const {
        for (std::size_t i = 0; i < points.size(); ++i)
            if (points[i] == parent_id)
                return static_cast<int>(i);
        return -1;
    }
    PointSet to_parent(PointSet local) const {
        PointSet out;
        for (int q : local.members())
            out.set(points[static_cast<std::size_t>(q)]);
        return out;
    }
};

Subposet induced(const Poset& p, PointSet keep);

// Disjoint union; carriers relabeled so q's points follow p's.
Poset direct_sum(const Poset& p, const Poset& q);
// Disjoint union plus every p-point below every q-point.
Poset ordinal_sum(const Poset& p, const Poset& q);

// Standing ambient assumptions: at least two points, no isolated point.
// Throws TooSmallError or IsolatedPointError.
void validate_ambient(const Poset& p);

// Longest chain has exactly two points.
bool is_height_one(const Poset& p);
// Comparability graph connected (true for n <= 1).
bool is_connected(const Poset& p);

} // namespace crowns
