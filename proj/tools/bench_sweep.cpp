// Benchmark of the serial sweep against the OpenMP sweep on a grid of
// shooting-backed spectrum jobs.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "pdmspec/sweep.hpp"

using namespace pdmspec;
using Clock = std::chrono::steady_clock;

namespace {

std::vector<SweepJob> make_jobs(int repeats, bool with_oracle, int points) {
    std::vector<SweepJob> jobs;
    for (int rep = 0; rep < repeats; ++rep) {
        for (double lambda : {-3.0, -2.0, 2.0, 3.0}) {
            for (int n_r : {0, 1}) {
                SweepJob job;
                job.params = PowerLawCoulomb{0.5, 0.1, lambda, 10.0};
                job.qn = QuantumNumbers{n_r, 2 - n_r};
                job.order = 5;
                job.with_oracle = with_oracle;
                job.oracle_points = points;
                jobs.push_back(job);
            }
        }
    }
    return jobs;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 4;
    const int points = argc > 2 ? std::atoi(argv[2]) : 24001;
    const std::vector<SweepJob> jobs = make_jobs(repeats, true, points);
    std::printf("%zu jobs, %d shooting points each\n", jobs.size(), points);

    const auto t_serial = Clock::now();
    const std::vector<SweepRecord> serial = run_sweep_serial(jobs);
    const double dt_serial = seconds_since(t_serial);

    const auto t_parallel = Clock::now();
    const std::vector<SweepRecord> parallel = run_sweep_parallel(jobs);
    const double dt_parallel = seconds_since(t_parallel);

    int mismatches = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (serial[i].ok() != parallel[i].ok()) {
            ++mismatches;
            continue;
        }
        if (serial[i].ok() &&
            serial[i].spectrum->partials.back() != parallel[i].spectrum->partials.back()) {
            ++mismatches;
        }
    }

    std::printf("serial:   %8.3f s\n", dt_serial);
    std::printf("parallel: %8.3f s  (speedup %.2fx)\n", dt_parallel, dt_serial / dt_parallel);
    std::printf("result mismatches: %d\n", mismatches);
    return mismatches == 0 ? 0 : 1;
}
