#include "crowns/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "crowns/io.hpp"
#include "crowns/oracle.hpp"
#include "crowns/retract.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crowns {

namespace {

void merge_counter(CheckCounter& a, const CheckCounter& b) {
    a.instances += b.instances;
    a.mismatches += b.mismatches;
}

} // namespace

void Tally::merge(const Tally& other) {
    posets += other.posets;
    instances += other.instances;
    merge_counter(decide_vs_oracle, other.decide_vs_oracle);
    merge_counter(target_equivalence, other.target_equivalence);
    merge_counter(separating_vs_oracle, other.separating_vs_oracle);
    merge_counter(extension_biconditional, other.extension_biconditional);
    merge_counter(clique_equivalence, other.clique_equivalence);
    merge_counter(edge_criterion, other.edge_criterion);
    merge_counter(reduction, other.reduction);
    merge_counter(witness_integrity, other.witness_integrity);
    merge_counter(census, other.census);
    merge_counter(heightone_retract, other.heightone_retract);
    if (other.counterexample_index >= 0 &&
        (counterexample_index < 0 || other.counterexample_index < counterexample_index)) {
        counterexample_index = other.counterexample_index;
        counterexample = other.counterexample;
    }
}

long long Tally::mismatches() const {
    return decide_vs_oracle.mismatches + target_equivalence.mismatches +
           separating_vs_oracle.mismatches + extension_biconditional.mismatches +
           clique_equivalence.mismatches + edge_criterion.mismatches + reduction.mismatches +
           witness_integrity.mismatches + census.mismatches + heightone_retract.mismatches;
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

bool ambient_ok(const Poset& p) {
    if (p.size() < 2)
        return false;
    for (int x = 0; x < p.size(); ++x)
        if (p.strictly_above(x).empty() && p.strictly_below(x).empty())
            return false;
    return true;
}

CheckCounter& counter_by_name(Tally& t, const std::string& name) {
    if (name == "retract")
        return t.decide_vs_oracle;
    if (name == "target-equivalence")
        return t.target_equivalence;
    if (name == "separating")
        return t.separating_vs_oracle;
    if (name == "extension")
        return t.extension_biconditional;
    if (name == "clique-equivalence")
        return t.clique_equivalence;
    if (name == "edge-criterion")
        return t.edge_criterion;
    if (name == "reduction")
        return t.reduction;
    if (name == "witness")
        return t.witness_integrity;
    if (name == "census")
        return t.census;
    if (name == "heightone")
        return t.heightone_retract;
    throw PreconditionError("unknown check name: " + name);
}

struct InstanceContext {
    std::string sweep;
    long long index = 0;
    const Poset* poset = nullptr;
    const Crown4* crown = nullptr;
    int sum_low = 0, sum_high = 0;
    const std::vector<int>* fmap = nullptr;
};

std::string render_counterexample(const InstanceContext& ctx, const std::string& check,
                                  const std::string& detail) {
    std::ostringstream out;
    out << "# sweep: " << ctx.sweep << "\n";
    out << "# check: " << check << "\n";
    out << "# detail: " << detail << "\n";
    if (ctx.crown)
        out << "# crown: " << ctx.crown->low_a << " " << ctx.crown->low_b << " "
            << ctx.crown->high_v << " " << ctx.crown->high_w << "\n";
    if (ctx.sum_low > 0)
        out << "# sum: " << ctx.sum_low << " " << ctx.sum_high << "\n";
    if (ctx.fmap) {
        out << "# fmap:";
        for (int v : *ctx.fmap)
            out << " " << v;
        out << "\n";
    }
    if (ctx.poset)
        out << serialize_poset(*ctx.poset);
    return out.str();
}

struct Checker {
    Tally& t;
    const InstanceContext& ctx;

    void record(const std::string& name, bool ok, const std::function<std::string()>& detail) {
        CheckCounter& c = counter_by_name(t, name);
        ++c.instances;
        if (ok)
            return;
        ++c.mismatches;
        if (t.counterexample_index < 0 || ctx.index < t.counterexample_index) {
            t.counterexample_index = ctx.index;
            t.counterexample = render_counterexample(ctx, name, detail());
        }
    }
    void record(const std::string& name, bool ok, const std::string& detail) {
        record(name, ok, [&] { return detail; });
    }
};

// The full battery of per-crown checks shared by the exhaustive, random, and
// reproduction paths.
void crown_battery(const Poset& p, const Crown4& cr, const VerifyOptions& opt, Tally& t,
                   const std::string& sweep, long long index) {
    PointSet z = cr.points();
    InstanceContext ctx{sweep, index, &p, &cr, 0, 0, nullptr};
    Checker ck{t, ctx};
    ++t.instances;
    try {
        std::optional<RetractionWitness> dec = decide_retract(p, z);
        std::optional<RetractionWitness> orc = oracle_retraction_exists(p, z);
        bool decided = dec.has_value();
        bool flipped = opt.inject_fault ? !decided : decided;
        ck.record("retract", flipped == orc.has_value(), [&] {
            std::ostringstream d;
            d << "decide=" << (flipped ? "retract" : "none")
              << " oracle=" << (orc ? "retract" : "none");
            if (opt.inject_fault)
                d << " (fault injected)";
            return d.str();
        });
        if (dec)
            ck.record("witness", verify_retraction(*dec), "decide witness failed verification");
        if (orc)
            ck.record("witness", verify_retraction(*orc), "oracle witness failed verification");

        Subposet sub = induced(p, z);
        std::optional<SeparatingWitness> wi =
            find_z_separating(p, z, SepSearchOptions{TargetKind::image, false, false});
        std::optional<SeparatingWitness> wm =
            find_z_separating(p, z, SepSearchOptions{TargetKind::max_image, false, false});
        ck.record("target-equivalence", wi.has_value() == wm.has_value(), [&] {
            std::ostringstream d;
            d << "image-graph=" << (wi ? "found" : "none")
              << " max-image-graph=" << (wm ? "found" : "none");
            return d.str();
        });
        if (wi)
            ck.record("witness", !check_witness(p, sub.poset, sub.points, *wi),
                      "image-graph witness rejected");
        if (wm)
            ck.record("witness", !check_witness(p, sub.poset, sub.points, *wm),
                      "max-image-graph witness rejected");
        ck.record("target-equivalence", wm.has_value() == decided,
                  "decide disagrees with its own search");

        std::optional<std::pair<int, int>> cc = clique_criterion(p, z);
        std::optional<SeparatingWitness> wc =
            find_z_separating(p, z, SepSearchOptions{TargetKind::max_image, true, false});
        ck.record("clique-equivalence", cc.has_value() == wc.has_value(), [&] {
            std::ostringstream d;
            d << "frame-scan=" << (cc ? "pair" : "none")
              << " clique-search=" << (wc ? "found" : "none");
            return d.str();
        });
        if (wc)
            ck.record("witness", !check_witness(p, sub.poset, sub.points, *wc),
                      "clique-image witness rejected");

        EdgeCriterion ec = uncovered_edge_criterion(p, z);
        if (ec != EdgeCriterion::not_applicable)
            ck.record("edge-criterion", (ec == EdgeCriterion::retract) == decided, [&] {
                std::ostringstream d;
                d << "criterion=" << (ec == EdgeCriterion::retract ? "retract" : "none")
                  << " decide=" << (decided ? "retract" : "none");
                return d.str();
            });

        Subposet core = reduce_to_core(p, z);
        PointSet z_core;
        for (int x : z.members())
            z_core.set(core.index_of(x));
        std::optional<RetractionWitness> dec_core = decide_retract(core.poset, z_core);
        bool families_match = [&] {
            std::vector<PointSet> a = bundle_family(p).bundles;
            std::vector<PointSet> b;
            for (PointSet s : bundle_family(core.poset).bundles)
                b.push_back(core.to_parent(s));
            std::sort(b.begin(), b.end());
            return a == b;
        }();
        ck.record("reduction", dec_core.has_value() == decided && families_match, [&] {
            std::ostringstream d;
            d << "core=" << (dec_core ? "retract" : "none") << " full="
              << (decided ? "retract" : "none") << " bundles "
              << (families_match ? "match" : "differ");
            return d.str();
        });
        if (dec_core)
            ck.record("witness", verify_retraction(*dec_core),
                      "core decide witness failed verification");
    } catch (const std::exception& e) {
        ck.record("retract", false, std::string("exception: ") + e.what());
    }
}

void heightone_battery(const Poset& p, const Crown4& cr, const VerifyOptions& opt, Tally& t,
                       long long index) {
    (void)opt;
    PointSet z = cr.points();
    InstanceContext ctx{"height-one", index, &p, &cr, 0, 0, nullptr};
    Checker ck{t, ctx};
    ++t.instances;
    try {
        std::optional<RetractionWitness> dec = decide_retract(p, z);
        ck.record("heightone", dec.has_value(), "crown in a height-one poset not decided a retract");
        if (dec)
            ck.record("witness", verify_retraction(*dec), "witness failed verification");
    } catch (const std::exception& e) {
        ck.record("heightone", false, std::string("exception: ") + e.what());
    }
}

void surjection_battery(const Poset& p, int m, int n, const VerifyOptions& opt, Tally& t,
                        long long index) {
    (void)opt;
    Poset c = ordinal_sum(Poset::antichain(m), Poset::antichain(n));
    InstanceContext ctx{"surjection-random", index, &p, nullptr, m, n, nullptr};
    Checker ck{t, ctx};
    ++t.instances;
    try {
        SepSearchOptions sep_opt{TargetKind::max_image, false, true};
        std::optional<SeparatingWitness> w = find_separating(p, c, sep_opt);
        std::optional<OrderMap> orc = oracle_surjective_hom_exists(p, c);
        ck.record("separating", w.has_value() == orc.has_value(), [&] {
            std::ostringstream d;
            d << "separating=" << (w ? "found" : "none")
              << " oracle=" << (orc ? "found" : "none");
            return d.str();
        });
        std::optional<SeparatingWitness> wi =
            find_separating(p, c, SepSearchOptions{TargetKind::image, false, true});
        ck.record("target-equivalence", wi.has_value() == w.has_value(),
                  "free-standing searches disagree across targets");
        if (w) {
            ck.record("witness", !check_witness(p, c, {}, *w), "separating witness rejected");
            OrderMap f =
                surjection_from_witness(p, c, *w, c.minimal_points(), c.maximal_points());
            ck.record("witness", is_homomorphism(f) && is_surjective(f),
                      "witness-built surjection invalid");
        }
        if (orc)
            ck.record("witness", is_homomorphism(*orc) && is_surjective(*orc),
                      "oracle surjection invalid");
    } catch (const std::exception& e) {
        ck.record("separating", false, std::string("exception: ") + e.what());
    }
}

void extension_check(const Poset& p, int m, int n, const std::vector<int>& fmap,
                     std::span<const Crown4> improper, Tally& t, long long index) {
    Poset c = ordinal_sum(Poset::antichain(m), Poset::antichain(n));
    InstanceContext ctx{"extension-exhaustive", index, &p, nullptr, m, n, &fmap};
    Checker ck{t, ctx};
    ++t.instances;
    try {
        std::optional<Crown4> blocking = check_extension_condition(p, c, fmap, improper);
        std::optional<OrderMap> ext = extend_from_extremals(p, c, fmap);
        ck.record("extension", blocking.has_value() != ext.has_value(), [&] {
            std::ostringstream d;
            d << "condition=" << (blocking ? "blocked" : "ok")
              << " extension=" << (ext ? "built" : "none");
            return d.str();
        });
        if (ext)
            ck.record("extension", is_homomorphism(*ext), "extension is not order-preserving");
    } catch (const std::exception& e) {
        ck.record("extension", false, std::string("exception: ") + e.what());
    }
}

void census_check(int m, int n, Tally& t, long long index) {
    Poset c = ordinal_sum(Poset::antichain(m), Poset::antichain(n));
    InstanceContext ctx{"image-graph-census", index, &c, nullptr, m, n, nullptr};
    Checker ck{t, ctx};
    ++t.instances;
    try {
        long long expect = static_cast<long long>(n) * ((1ll << m) - 1) +
                           static_cast<long long>(m) * ((1ll << n) - 1) -
                           static_cast<long long>(m) * n;
        long long got = image_graph(c).vertex_count();
        ck.record("census", got == expect, [&] {
            std::ostringstream d;
            d << "expected " << expect << " vertices, built " << got;
            return d.str();
        });
    } catch (const std::exception& e) {
        ck.record("census", false, std::string("exception: ") + e.what());
    }
}

/**
 * Serial reference loop and the OpenMP kernel over an index range. Both
 * accumulate into per-thread tallies merged commutatively, so the report is
 * identical whichever path runs.
 */
template <typename Body>
void run_indexed(long long base, long long count, int threads, Tally& total, Body&& body) {
#ifdef _OPENMP
    if (threads > 1) {
        Tally shared;
#pragma omp parallel num_threads(threads)
        {
            Tally mine;
#pragma omp for schedule(dynamic, 8)
            for (long long i = 0; i < count; ++i)
                body(base + i, mine);
#pragma omp critical
            shared.merge(mine);
        }
        total.merge(shared);
        return;
    }
#endif
    Tally mine;
    for (long long i = 0; i < count; ++i)
        body(base + i, mine);
    total.merge(mine);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Index space: a block per poset size so counterexample indices stay ordered
// across the n-loop.
constexpr long long size_block = 1ll << 40;

template <typename PerPoset>
void for_poset_batches(int max_n, bool height_one, int threads, Tally& total,
                       PerPoset&& per_poset) {
    constexpr long long batch = 1 << 16;
    for (int n = 2; n <= max_n; ++n) {
        std::vector<Poset> buf;
        buf.reserve(batch);
        long long emitted = 0;
        auto flush = [&]() {
            if (buf.empty())
                return;
            long long base = n * size_block + emitted;
            run_indexed(base, static_cast<long long>(buf.size()), threads, total,
                        [&](long long idx, Tally& t) {
                            per_poset(buf[static_cast<std::size_t>(idx - base)], idx, t);
                        });
            emitted += static_cast<long long>(buf.size());
            buf.clear();
        };
        auto sink = [&](const Poset& p) {
            buf.push_back(p);
            if (static_cast<long long>(buf.size()) >= batch)
                flush();
        };
        if (height_one)
            enumerate_height_one_posets(n, sink);
        else
            enumerate_posets(n, sink);
        flush();
    }
}

} // namespace

SweepReport sweep_retracts_exhaustive(const VerifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    SweepReport r{"retract-exhaustive", {}, 0};
    for_poset_batches(opt.exhaustive_max_n, false, opt.threads, r.tally,
                      [&](const Poset& p, long long idx, Tally& t) {
                          ++t.posets;
                          if (!ambient_ok(p))
                              return;
                          for (const Crown4& cr : enumerate_crowns_in_extremals(p))
                              crown_battery(p, cr, opt, t, "retract-exhaustive", idx);
                      });
    r.seconds = seconds_since(t0);
    return r;
}

SweepReport sweep_retracts_random(const VerifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    SweepReport r{"retract-random", {}, 0};
    run_indexed(0, opt.random_count, opt.threads, r.tally, [&](long long i, Tally& t) {
        ++t.posets;
        std::uint64_t h = mix64(opt.seed ^ mix64(static_cast<std::uint64_t>(i)));
        int span = std::max(1, opt.random_max_n - 3);
        int n = 4 + static_cast<int>(h % static_cast<std::uint64_t>(span));
        double density = 0.2 + 0.3 * (static_cast<double>((h >> 8) & 0xff) / 255.0);
        Poset p = random_poset(h, n, density);
        for (const Crown4& cr : enumerate_crowns_in_extremals(p))
            crown_battery(p, cr, opt, t, "retract-random", i);
    });
    r.seconds = seconds_since(t0);
    return r;
}

SweepReport sweep_surjections_random(const VerifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    SweepReport r{"surjection-random", {}, 0};
    run_indexed(0, opt.surj_count, opt.threads, r.tally, [&](long long i, Tally& t) {
        ++t.posets;
        std::uint64_t h = mix64(opt.seed ^ 0x5317ull);
        h = mix64(h ^ static_cast<std::uint64_t>(i));
        int span = std::max(1, opt.surj_max_n - 3);
        int n = 4 + static_cast<int>(h % static_cast<std::uint64_t>(span));
        double density = 0.2 + 0.3 * (static_cast<double>((h >> 8) & 0xff) / 255.0);
        Poset p = random_poset(h, n, density);
        int extremal = p.extremal_points().count();
        for (int m = 1; m <= 3; ++m)
            for (int k = 1; k <= 3; ++k)
                if (m + k <= extremal)
                    surjection_battery(p, m, k, opt, t, i);
    });
    r.seconds = seconds_since(t0);
    return r;
}

namespace {

// All surjections of level_points onto {0..k-1}, passed to fn as the image
// vector aligned with level_points.
void for_level_surjections(const std::vector<int>& level_points, int k,
                           const std::function<void(const std::vector<int>&)>& fn) {
    std::size_t sz = level_points.size();
    if (static_cast<int>(sz) < k)
        return;
    std::vector<int> img(sz, 0);
    for (;;) {
        PointSet hit;
        for (int v : img)
            hit.set(v);
        if (hit.count() == k)
            fn(img);
        std::size_t pos = 0;
        while (pos < sz && ++img[pos] == k) {
            img[pos] = 0;
            ++pos;
        }
        if (pos == sz)
            return;
    }
}

} // namespace

SweepReport sweep_extensions_exhaustive(const VerifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    SweepReport r{"extension-exhaustive", {}, 0};
    for_poset_batches(
        opt.extension_max_n, false, opt.threads, r.tally,
        [&](const Poset& p, long long idx, Tally& t) {
            ++t.posets;
            if (!ambient_ok(p))
                return;
            std::vector<Crown4> improper;
            for (const Crown4& cr : enumerate_crowns_in_extremals(p))
                if (classify(p, cr) == CrownKind::improper)
                    improper.push_back(cr);
            std::vector<int> lows = p.minimal_points().members();
            std::vector<int> highs = p.maximal_points().members();
            std::vector<int> fmap(static_cast<std::size_t>(p.size()), -1);
            for (int m = 1; m <= 3; ++m)
                for (int k = 1; k <= 3; ++k)
                    for_level_surjections(lows, m, [&](const std::vector<int>& low_img) {
                        for_level_surjections(highs, k, [&](const std::vector<int>& high_img) {
                            for (std::size_t q = 0; q < lows.size(); ++q)
                                fmap[static_cast<std::size_t>(lows[q])] = low_img[q];
                            for (std::size_t q = 0; q < highs.size(); ++q)
                                fmap[static_cast<std::size_t>(highs[q])] = m + high_img[q];
                            extension_check(p, m, k, fmap, improper, t, idx);
                        });
                    });
        });
    r.seconds = seconds_since(t0);
    return r;
}

SweepReport sweep_image_graph_census(const VerifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    SweepReport r{"image-graph-census", {}, 0};
    run_indexed(0, 9, opt.threads, r.tally, [&](long long i, Tally& t) {
        int m = 1 + static_cast<int>(i / 3);
        int n = 1 + static_cast<int>(i % 3);
        ++t.posets;
        census_check(m, n, t, i);
    });
    r.seconds = seconds_since(t0);
    return r;
}

SweepReport sweep_height_one(const VerifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    SweepReport r{"height-one", {}, 0};
    for_poset_batches(opt.heightone_max_n, true, opt.threads, r.tally,
                      [&](const Poset& p, long long idx, Tally& t) {
                          ++t.posets;
                          if (!ambient_ok(p))
                              return;
                          for (const Crown4& cr : enumerate_crowns_in_extremals(p))
                              heightone_battery(p, cr, opt, t, idx);
                      });
    r.seconds = seconds_since(t0);
    return r;
}

std::vector<SweepReport> run_all_sweeps(const VerifyOptions& opt, std::ostream* log) {
    std::vector<SweepReport> out;
    auto push = [&](SweepReport r) {
        if (log)
            *log << render_sweep_report(r) << std::flush;
        out.push_back(std::move(r));
    };
    push(sweep_retracts_exhaustive(opt));
    push(sweep_retracts_random(opt));
    push(sweep_surjections_random(opt));
    push(sweep_extensions_exhaustive(opt));
    push(sweep_image_graph_census(opt));
    push(sweep_height_one(opt));
    return out;
}

namespace {

std::string counter_line(const std::string& name, const CheckCounter& c) {
    std::ostringstream out;
    out << "  " << name << ": " << c.instances << " checks, " << c.mismatches << " mismatches\n";
    return out.str();
}

} // namespace

std::string render_sweep_report(const SweepReport& r) {
    std::ostringstream out;
    out << "[" << r.name << "] posets=" << r.tally.posets << " instances=" << r.tally.instances
        << " mismatches=" << r.tally.mismatches() << " (" << r.seconds << "s)\n";
    const Tally& t = r.tally;
    auto maybe = [&](const std::string& n, const CheckCounter& c) {
        if (c.instances > 0)
            out << counter_line(n, c);
    };
    maybe("decide-vs-oracle", t.decide_vs_oracle);
    maybe("target-equivalence", t.target_equivalence);
    maybe("separating-vs-oracle", t.separating_vs_oracle);
    maybe("extension-biconditional", t.extension_biconditional);
    maybe("clique-equivalence", t.clique_equivalence);
    maybe("edge-criterion", t.edge_criterion);
    maybe("reduction", t.reduction);
    maybe("witness-integrity", t.witness_integrity);
    maybe("image-graph-census", t.census);
    maybe("height-one-retract", t.heightone_retract);
    if (!r.tally.counterexample.empty())
        out << r.tally.counterexample;
    return out.str();
}

bool reproduce_counterexample(const std::string& text, const VerifyOptions& opt) {
    std::istringstream in(text);
    std::string line, check, sweep;
    std::optional<Crown4> crown;
    int sum_low = 0, sum_high = 0;
    std::vector<int> fmap;
    std::ostringstream poset_text;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word != "#") {
            poset_text << line << "\n";
            continue;
        }
        std::string key;
        ls >> key;
        if (key == "check:")
            ls >> check;
        else if (key == "sweep:")
            ls >> sweep;
        else if (key == "crown:") {
            Crown4 c{};
            ls >> c.low_a >> c.low_b >> c.high_v >> c.high_w;
            crown = c;
        } else if (key == "sum:")
            ls >> sum_low >> sum_high;
        else if (key == "fmap:") {
            int v;
            while (ls >> v)
                fmap.push_back(v);
        }
    }
    Poset p = parse_poset_text(poset_text.str());
    Tally t;
    if (check == "census") {
        census_check(sum_low, sum_high, t, 0);
    } else if (check == "separating") {
        surjection_battery(p, sum_low, sum_high, opt, t, 0);
    } else if (check == "extension") {
        std::vector<Crown4> improper;
        for (const Crown4& cr : enumerate_crowns_in_extremals(p))
            if (classify(p, cr) == CrownKind::improper)
                improper.push_back(cr);
        extension_check(p, sum_low, sum_high, fmap, improper, t, 0);
    } else if (check == "heightone") {
        if (!crown)
            throw PreconditionError("counterexample lacks a crown line");
        heightone_battery(p, *crown, opt, t, 0);
    } else {
        if (!crown)
            throw PreconditionError("counterexample lacks a crown line");
        if (sweep == "height-one")
            heightone_battery(p, *crown, opt, t, 0);
        else
            crown_battery(p, *crown, opt, t, sweep, 0);
    }
    return counter_by_name(t, check).mismatches > 0;
}

} // namespace crowns
