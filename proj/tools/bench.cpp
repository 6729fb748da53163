// Benchmark comparing the serial reference loops against the OpenMP kernels
// on the same verification workload, checking that both produce identical
// tallies.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "crowns/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace crowns;

namespace {

struct WorkloadResult {
    double seconds = 0;
    long long instances = 0;
    long long mismatches = 0;
};

WorkloadResult run(const VerifyOptions& opt) {
    WorkloadResult r;
    SweepReport a = sweep_retracts_exhaustive(opt);
    SweepReport b = sweep_retracts_random(opt);
    SweepReport c = sweep_height_one(opt);
    r.seconds = a.seconds + b.seconds + c.seconds;
    r.instances = a.tally.instances + b.tally.instances + c.tally.instances;
    r.mismatches = a.tally.mismatches() + b.tally.mismatches() + c.tally.mismatches();
    return r;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP timing on the retract verification workload"};
    VerifyOptions opt;
    opt.exhaustive_max_n = 5;
    opt.random_count = 1000;
    opt.random_max_n = 9;
    opt.heightone_max_n = 6;
    int max_threads = 1;
#ifdef _OPENMP
    max_threads = omp_get_max_threads();
#endif
    app.add_option("--max-n", opt.exhaustive_max_n, "exhaustive sweep size cap");
    app.add_option("--random-count", opt.random_count, "random instances");
    app.add_option("--heightone-max-n", opt.heightone_max_n, "height-one sweep size cap");
    app.add_option("--seed", opt.seed, "random seed");
    app.add_option("--threads", max_threads, "max worker threads to benchmark");
    CLI11_PARSE(app, argc, argv);

    opt.threads = 1;
    WorkloadResult serial = run(opt);
    std::printf("%8s %12s %12s %10s %9s\n", "threads", "instances", "mismatches", "seconds",
                "speedup");
    std::printf("%8d %12lld %12lld %10.3f %9s\n", 1, serial.instances, serial.mismatches,
                serial.seconds, "1.00x");

    bool consistent = true;
    for (int th = 2; th <= max_threads; th *= 2) {
        opt.threads = th;
        WorkloadResult par = run(opt);
        std::printf("%8d %12lld %12lld %10.3f %8.2fx\n", th, par.instances, par.mismatches,
                    par.seconds, serial.seconds / par.seconds);
        if (par.instances != serial.instances || par.mismatches != serial.mismatches)
            consistent = false;
    }
    if (!consistent) {
        std::printf("parallel tallies diverge from the serial reference\n");
        return 1;
    }
    return serial.mismatches == 0 ? 0 : 1;
}
