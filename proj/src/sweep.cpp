#include "pdmspec/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pdmspec {

SweepRecord run_job(const SweepJob& job) {
    SweepRecord rec;
    rec.job = job;
    try {
        const AmbiguitySet amb{};
        SpectrumResult res = hbar_expansion_spectrum(job.params.mass(), job.params.potential(),
                                                     amb, job.qn, job.order);
        if (job.with_oracle) {
            const ShootingResult shot =
                numerov_eigenvalue(job.params.mass(), job.params.potential(), amb, job.qn,
                                   res.partials.back(), res.r0, job.oracle_points);
            res.oracle_energy = shot.energy;
        }
        rec.spectrum = std::move(res);
    } catch (const std::exception& ex) {
        rec.error = ex.what();
    }
    return rec;
}

std::vector<SweepRecord> run_sweep_serial(const std::vector<SweepJob>& jobs) {
    std::vector<SweepRecord> out(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        out[i] = run_job(jobs[i]);
    }
    return out;
}

std::vector<SweepRecord> run_sweep_parallel(const std::vector<SweepJob>& jobs) {
    std::vector<SweepRecord> out(jobs.size());
    const auto n = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = run_job(jobs[static_cast<std::size_t>(i)]);
    }
    return out;
}

void set_sweep_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) {
        omp_set_num_threads(threads);
    }
#else
    (void)threads;
#endif
}

}  // namespace pdmspec
