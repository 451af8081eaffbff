#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdmspec/coulomb_pdm.hpp"
#include "pdmspec/oracle.hpp"

namespace pdmspec {

struct SweepJob {
    PowerLawCoulomb params;
    QuantumNumbers qn;
    int order = 5;
    bool with_oracle = false;
    int oracle_points = 48001;
};

struct SweepRecord {
    SweepJob job;
    std::optional<SpectrumResult> spectrum;
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
};

/// Computes one job: expansion spectrum and, on request, the shooting
/// eigenvalue seeded by the highest partial sum.
SweepRecord run_job(const SweepJob& job);

/// Serial reference sweep.
std::vector<SweepRecord> run_sweep_serial(const std::vector<SweepJob>& jobs);

/// OpenMP sweep over independent jobs; records come back in job order
/// regardless of completion order.  Falls back to the serial path when
/// built without OpenMP.
std::vector<SweepRecord> run_sweep_parallel(const std::vector<SweepJob>& jobs);

/// Thread-count override for the parallel sweep (0 keeps the default).
void set_sweep_threads(int threads);

}  // namespace pdmspec
