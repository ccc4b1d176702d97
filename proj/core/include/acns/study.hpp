#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "acns/diagnostics.hpp"
#include "acns/solver.hpp"

namespace acns {

/// Vanishing vertical viscosity experiment: one limit run plus a viscous run
/// per nu2, sharing the initial condition.
struct StudyConfig {
    int nx = 128;
    int ny = 384;
    double stretch = 0.9;
    double nu1 = 0.1;
    std::vector<double> nu2_list = {1e-2, 1e-3, 1e-4, 1e-5};  // decreasing
    std::vector<int> r_list = {2, 4, 6};
    double t_end = 1.0;
    double cfl = 0.4;
    double output_every = 0.05;
    double dt_max = 0.0;
    IcSpec ic;
    std::vector<double> snapshot_times;  // default: every 0.1 up to t_end
    int threads = 0;                     // 0 = hardware concurrency

    void validate() const;
    std::vector<double> effective_snapshot_times() const;
    SolverConfig member_config(double nu2, Regime regime) const;
};

struct RunResult {
    std::vector<FlowState> snapshots;
    std::vector<DiagnosticsRecord> series;
};

/// Integrates one configuration to t_end. The step size is the advective CFL
/// bound, optionally capped by dt_max, and clipped so records land exactly on
/// the output lattice and snapshots exactly on snapshot_times. Deterministic
/// for a given config.
RunResult run_simulation(const SolverConfig& cfg);

/// Per-r sup over aligned snapshot times of ||u-U||_r + ||v-V||_r.
std::map<int, double> difference_norms(const std::vector<FlowState>& viscous,
                                       const std::vector<FlowState>& limit,
                                       const std::vector<int>& r_list);

struct RateFit {
    double alpha = 0.0;
    double residual = 0.0;  // rms least-squares residual in log space
};

/// Least-squares slope of log(err) against log(nu2). Needs >= 3 positive
/// points.
RateFit fit_rate(std::span<const std::pair<double, double>> points);

struct MemberSummary {
    double nu2 = 0.0;
    bool ok = false;
    std::string error;
    std::map<int, double> err_r;
    double gradq_ratio_max = 0.0;  // sup over snapshots of the grad-q audit
    double int_gradq_l2sq = 0.0;   // int_0^T ||grad q||_2^2 dt
    double int_gradp_l2sq = 0.0;
    double sup_vx_l2 = 0.0;
    double sup_u_linf = 0.0;
};

struct StudyResult {
    std::vector<MemberSummary> members;
    std::map<int, RateFit> alpha_r;  // fitted convergence exponents
    RateFit gradq_slope;             // slope of log int||grad q||^2 dt vs log nu2
    double gradp_spread = 0.0;       // max/min of int||grad p||^2 dt over members
    double vx_spread = 0.0;          // max/min of sup_t ||v_x||_2
    double uinf_const = 0.0;  // max_i sup_t||u||_inf^2 / ((e+|log nu2|)log(e+|log nu2|))
    bool partial = false;
    double wall_seconds = 0.0;

    RunResult limit_run;
    std::vector<RunResult> member_runs;  // aligned with members
};

/// Runs the full experiment. Member runs are independent and execute
/// concurrently up to the thread cap; failures mark the result partial.
StudyResult run_study(const StudyConfig& cfg);

/// sup_t ||u||_inf^2 / ((e + |log nu2|) log(e + |log nu2|)).
double uinf_log_ratio(double sup_u_linf, double nu2);

}  // namespace acns
