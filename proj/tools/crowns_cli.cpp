#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crowns/io.hpp"
#include "crowns/multigraph.hpp"
#include "crowns/oracle.hpp"
#include "crowns/report.hpp"
#include "crowns/retract.hpp"
#include "crowns/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace crowns;

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_error = 2;

PointSet resolve_points(const Poset& p, const std::vector<std::string>& names) {
    PointSet out;
    for (const std::string& name : names) {
        int id = p.point_by_name(name);
        if (id < 0)
            throw PreconditionError("unknown point name: " + name);
        out.set(id);
    }
    return out;
}

std::vector<std::string> split_names(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (const std::string& arg : args) {
        std::string cur;
        for (char ch : arg) {
            if (ch == ',') {
                if (!cur.empty())
                    out.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty())
            out.push_back(cur);
    }
    return out;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw PosetError("cannot write " + path);
    f << text;
}

int cmd_analyze(const std::string& file, const std::string& format) {
    Poset p = load_poset_file(file);
    AnalysisReport r = analyze(p);
    std::cout << (format == "json" ? render_json(r) : render_text(r));
    return exit_ok;
}

int cmd_decide(const std::string& file, const std::vector<std::string>& lower,
               const std::vector<std::string>& upper, const std::string& witness_path,
               const std::string& format) {
    Poset p = load_poset_file(file);
    PointSet z = resolve_points(p, split_names(lower)) | resolve_points(p, split_names(upper));
    std::optional<RetractionWitness> w = decide_retract(p, z);
    if (format == "json") {
        std::cout << "{\n  \"retract\": " << (w ? "true" : "false") << ",\n  \"carrier\": \""
                  << p.set_to_string(z) << "\"\n}\n";
    } else {
        std::cout << p.set_to_string(z) << (w ? " is a retract" : " is not a retract") << "\n";
    }
    if (w) {
        std::string text = serialize_order_map(w->map, verify_retraction(*w));
        if (!witness_path.empty())
            write_out(witness_path, text);
        else
            std::cout << text;
        return exit_ok;
    }
    return exit_negative;
}

int cmd_graph(const std::string& file, const std::string& which,
              const std::vector<std::string>& lower, const std::vector<std::string>& upper,
              const std::string& out_path) {
    Poset p = load_poset_file(file);
    if (which == "F") {
        BundleFamily bf = bundle_family(p);
        write_out(out_path, export_dot(bundle_graph(p, bf), p, "bundles"));
        return exit_ok;
    }
    Poset target = p;
    if (!lower.empty() || !upper.empty()) {
        PointSet z =
            resolve_points(p, split_names(lower)) | resolve_points(p, split_names(upper));
        target = induced(p, z).poset;
    }
    if (which == "C")
        write_out(out_path, export_dot(image_graph(target), target, "images"));
    else if (which == "Cmax")
        write_out(out_path, export_dot(max_image_graph(target), target, "max_images"));
    else
        throw PreconditionError("--which must be F, C, or Cmax");
    return exit_ok;
}

int cmd_verify(const VerifyOptions& opt) {
    std::vector<SweepReport> reports = run_all_sweeps(opt, &std::cout);
    long long bad = 0;
    for (const SweepReport& r : reports)
        bad += r.tally.mismatches();
    if (bad == 0) {
        std::cout << "all sweeps clean\n";
        return exit_ok;
    }
    std::cout << bad << " mismatches found\n";
    return exit_negative;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite poset retract analysis: crowns, bundles, image graphs, decisions"};
    app.require_subcommand(1);

    std::string file, format = "text", out_path, witness_path, which = "F";
    std::vector<std::string> lower, upper;

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "levels, crowns, bundles of a poset");
    analyze_cmd->add_option("file", file, "poset file")->required();
    analyze_cmd->add_option("--format", format, "text or json");

    CLI::App* decide_cmd =
        app.add_subcommand("decide", "decide whether the named two-level subset is a retract");
    decide_cmd->add_option("file", file, "poset file")->required();
    decide_cmd->add_option("--lower", lower, "lower-level point names (comma separated)")
        ->required();
    decide_cmd->add_option("--upper", upper, "upper-level point names")->required();
    decide_cmd->add_option("--witness", witness_path, "write the retraction witness here");
    decide_cmd->add_option("--format", format, "text or json");

    CLI::App* graph_cmd = app.add_subcommand("graph", "emit a multigraph as Graphviz text");
    graph_cmd->add_option("file", file, "poset file")->required();
    graph_cmd->add_option("--which", which, "F (bundle graph), C (image graph), Cmax")
        ->required();
    graph_cmd->add_option("--lower", lower, "restrict to these lower points");
    graph_cmd->add_option("--upper", upper, "and these upper points");
    graph_cmd->add_option("--out", out_path, "output file (default stdout)");

    VerifyOptions vopt;
    vopt.random_count = 2000;
    vopt.surj_count = 500;
    vopt.exhaustive_max_n = 5;
    vopt.extension_max_n = 5;
    vopt.heightone_max_n = 6;
#ifdef _OPENMP
    vopt.threads = omp_get_max_threads();
#endif
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the self-verification sweeps against the oracles");
    verify_cmd->add_option("--max-n", vopt.exhaustive_max_n, "exhaustive sweep size cap");
    verify_cmd->add_option("--random-count", vopt.random_count, "random retract instances");
    verify_cmd->add_option("--random-max-n", vopt.random_max_n, "random poset size cap");
    verify_cmd->add_option("--surj-count", vopt.surj_count, "random surjection instances");
    verify_cmd->add_option("--surj-max-n", vopt.surj_max_n, "surjection poset size cap");
    verify_cmd->add_option("--extension-max-n", vopt.extension_max_n, "extension sweep size cap");
    verify_cmd->add_option("--heightone-max-n", vopt.heightone_max_n, "height-one sweep size cap");
    verify_cmd->add_option("--seed", vopt.seed, "base seed for the random sweeps");
    verify_cmd->add_option("--threads", vopt.threads, "worker threads (1 = serial reference)");
    verify_cmd->add_flag("--inject-fault", vopt.inject_fault,
                         "invert one comparison to exercise mismatch reporting");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed())
            return cmd_analyze(file, format);
        if (decide_cmd->parsed())
            return cmd_decide(file, lower, upper, witness_path, format);
        if (graph_cmd->parsed())
            return cmd_graph(file, which, lower, upper, out_path);
        if (verify_cmd->parsed())
            return cmd_verify(vopt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
