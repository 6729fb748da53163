#include "crowns/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

namespace crowns {

double size_guard_budget_bits() {
    if (const char* env = std::getenv("CROWNS_SIZE_BUDGET")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0)
            return v;
    }
    return 44.0;
}

namespace {

void check_budget(int free_points, int choices) {
    if (choices <= 1)
        return;
    double bits = free_points * std::log2(static_cast<double>(choices));
    if (bits > size_guard_budget_bits())
        throw SizeGuardError("search space of " + std::to_string(bits) +
                             " bits exceeds the budget");
}

struct MapSearch {
    const Poset& p;
    const Poset& target;          // order the images live in
    const std::vector<int>& cand; // candidate images, fixed order
    std::vector<int> assign;      // p id -> image (target ids), -1 unassigned
    const std::vector<int>& order;

    bool consistent(int x, int img) const {
        for (int y = 0; y < p.size(); ++y) {
            int iy = assign[static_cast<std::size_t>(y)];
            if (iy < 0)
                continue;
            if (p.less(x, y) && !target.leq(img, iy))
                return false;
            if (p.less(y, x) && !target.leq(iy, img))
                return false;
        }
        return true;
    }
};

} // namespace

std::optional<RetractionWitness> oracle_retraction_exists(const Poset& p, PointSet z) {
    if (!p.carrier().contains(z))
        throw PreconditionError("image set exceeds carrier");
    if (z.empty())
        return std::nullopt;
    std::vector<int> zs = z.members();
    std::vector<int> free = (p.carrier() - z).members();
    check_budget(static_cast<int>(free.size()), static_cast<int>(zs.size()));

    std::vector<int> assign(static_cast<std::size_t>(p.size()), -1);
    for (int zp : zs)
        assign[static_cast<std::size_t>(zp)] = zp;
    MapSearch s{p, p, zs, std::move(assign), free};

    // Fixed points must already be consistent with each other; they are,
    // being the identity on an induced subposet.
    std::function<bool(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == free.size())
            return true;
        int x = free[pos];
        for (int img : zs) {
            if (!s.consistent(x, img))
                continue;
            s.assign[static_cast<std::size_t>(x)] = img;
            if (rec(pos + 1))
                return true;
            s.assign[static_cast<std::size_t>(x)] = -1;
        }
        return false;
    };
    if (!rec(0))
        return std::nullopt;
    return RetractionWitness{OrderMap{p, p, std::move(s.assign)}, z};
}

std::optional<OrderMap> oracle_surjective_hom_exists(const Poset& p, const Poset& c) {
    if (c.size() > p.size())
        return std::nullopt;
    if (c.size() == 0)
        return std::nullopt;
    check_budget(p.size(), c.size());
    std::vector<int> imgs(static_cast<std::size_t>(c.size()));
    for (int i = 0; i < c.size(); ++i)
        imgs[static_cast<std::size_t>(i)] = i;
    std::vector<int> order(static_cast<std::size_t>(p.size()));
    for (int i = 0; i < p.size(); ++i)
        order[static_cast<std::size_t>(i)] = i;
    MapSearch s{p, c, imgs, std::vector<int>(static_cast<std::size_t>(p.size()), -1), order};

    std::vector<int> fiber_count(static_cast<std::size_t>(c.size()), 0);
    int missing = c.size();
    std::function<bool(int)> rec = [&](int pos) {
        if (p.size() - pos < missing)
            return false; // not enough points left to reach every target
        if (pos == p.size())
            return true;
        for (int img = 0; img < c.size(); ++img) {
            if (!s.consistent(pos, img))
                continue;
            s.assign[static_cast<std::size_t>(pos)] = img;
            if (fiber_count[static_cast<std::size_t>(img)]++ == 0)
                --missing;
            if (rec(pos + 1))
                return true;
            if (--fiber_count[static_cast<std::size_t>(img)] == 0)
                ++missing;
            s.assign[static_cast<std::size_t>(pos)] = -1;
        }
        return false;
    };
    if (!rec(0))
        return std::nullopt;
    return OrderMap{p, c, std::move(s.assign)};
}

namespace {

/**
 * Orientation backtracking: pairs (i,k), i < k, processed in k-major order
 * with three choices each (incomparable, i<k, k<i). A choice is rejected as
 * soon as any triple of already-decided pairs fails transitivity, so the
 * leaves are exactly the transitively closed orientations.
 */
struct PosetEnumerator {
    int n;
    bool height_one;
    const std::function<void(const Poset&)>& fn;
    std::vector<std::uint64_t> up, down;

    void run() {
        if (n == 0)
            return;
        rec(1, 0);
    }

    void emit() {
        std::vector<std::uint64_t> rows(up.begin(), up.end());
        fn(Poset::from_closed_rows(n, std::move(rows)));
    }

    void rec(int k, int i) {
        if (k == n) {
            emit();
            return;
        }
        int ni = i + 1 == k ? 0 : i + 1;
        int nk = i + 1 == k ? k + 1 : k;

        std::uint64_t below_i = down[static_cast<std::size_t>(i)];
        std::uint64_t above_i = up[static_cast<std::size_t>(i)];
        std::uint64_t below_k = down[static_cast<std::size_t>(k)];
        std::uint64_t above_k = up[static_cast<std::size_t>(k)];
        // Only triples whose three pairs are all decided constrain this
        // choice: those are {j,i,k} with j < i, since (j,k) for j in (i,k)
        // comes later in this round. Rows touching k only hold such j
        // already; rows of i need masking.
        std::uint64_t mask = (std::uint64_t{1} << i) - 1;

        // incomparable: nothing decided may force a relation between i and k
        if ((above_i & below_k) == 0 && (below_i & above_k) == 0)
            rec(nk, ni);

        // i < k: decided points below i must be below k, dually above k
        if (((below_i & mask) & ~below_k) == 0 && (above_k & ~above_i) == 0 &&
            (!height_one || (below_i == 0 && above_k == 0))) {
            up[static_cast<std::size_t>(i)] |= std::uint64_t{1} << k;
            down[static_cast<std::size_t>(k)] |= std::uint64_t{1} << i;
            rec(nk, ni);
            up[static_cast<std::size_t>(i)] &= ~(std::uint64_t{1} << k);
            down[static_cast<std::size_t>(k)] &= ~(std::uint64_t{1} << i);
        }

        // k < i
        if ((below_k & ~below_i) == 0 && ((above_i & mask) & ~above_k) == 0 &&
            (!height_one || (below_k == 0 && above_i == 0))) {
            up[static_cast<std::size_t>(k)] |= std::uint64_t{1} << i;
            down[static_cast<std::size_t>(i)] |= std::uint64_t{1} << k;
            rec(nk, ni);
            up[static_cast<std::size_t>(k)] &= ~(std::uint64_t{1} << i);
            down[static_cast<std::size_t>(i)] &= ~(std::uint64_t{1} << k);
        }
    }
};

} // namespace

namespace {

// Exhaustive enumeration walks 3^(n choose 2) orientations before pruning;
// the default budget admits n <= 7.
void check_enum_budget(int n) {
    if (n < 0 || n > max_points)
        throw PreconditionError("point count out of range");
    check_budget(n * (n - 1) / 2, 3);
}

} // namespace

void enumerate_posets(int n, const std::function<void(const Poset&)>& fn) {
    check_enum_budget(n);
    PosetEnumerator e{n, false, fn,
                      std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0),
                      std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0)};
    e.run();
}

std::vector<Poset> all_posets(int n) {
    std::vector<Poset> out;
    enumerate_posets(n, [&](const Poset& p) { out.push_back(p); });
    return out;
}

void enumerate_height_one_posets(int n, const std::function<void(const Poset&)>& fn) {
    check_enum_budget(n);
    PosetEnumerator e{n, true, fn,
                      std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0),
                      std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0)};
    e.run();
}

namespace {

// Hand-rolled bounded draw; the standard distributions are not pinned across
// implementations.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

} // namespace

Poset random_poset(std::uint64_t seed, int n, double density) {
    if (n < 2 || n > max_points)
        throw PreconditionError("random poset needs 2..64 points");
    std::mt19937_64 rng(seed);
    const std::uint64_t threshold =
        static_cast<std::uint64_t>(density * 4294967296.0);
    for (;;) {
        std::vector<int> topo(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            topo[static_cast<std::size_t>(i)] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(topo[static_cast<std::size_t>(i)],
                      topo[static_cast<std::size_t>(draw_below(rng, static_cast<std::uint64_t>(i + 1)))]);
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if ((rng() & 0xffffffffu) < threshold)
                    pairs.emplace_back(topo[static_cast<std::size_t>(i)],
                                       topo[static_cast<std::size_t>(j)]);
        Poset p = Poset::from_pairs(n, pairs);
        bool isolated = false;
        for (int x = 0; x < n && !isolated; ++x)
            if (p.strictly_above(x).empty() && p.strictly_below(x).empty())
                isolated = true;
        if (!isolated)
            return p;
    }
}

} // namespace crowns
