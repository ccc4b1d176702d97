#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "acns/field.hpp"
#include "acns/grid.hpp"

namespace acns {

/// Thrown when a run goes non-finite; carries the last valid time.
class NumericalError : public std::runtime_error {
  public:
    NumericalError(const std::string& what, double t_last)
        : std::runtime_error(what), t_last_(t_last) {}
    double last_valid_time() const { return t_last_; }

  private:
    double t_last_;
};

/// Named initial-condition family. "taylor_profile" is
///   psi0 = A sin(m x) y^2 (1-y)^b,   mean_u0 = B (y^2/2 - y^3/3),
/// which satisfies the wall conditions of both systems for b >= 3.
struct IcSpec {
    std::string name = "taylor_profile";  // or "zero"
    double amplitude = 1.0;               // A
    int mode = 1;                         // m
    int top_exponent = 3;                 // b
    double mean_amplitude = 0.0;          // B
};

struct SolverConfig {
    int nx = 128;
    int ny = 384;
    double stretch = 0.9;
    double nu1 = 0.1;
    double nu2 = 1e-3;
    double cfl = 0.4;
    double t_end = 1.0;
    double output_every = 0.05;
    /// Caps the step size when positive; 0 means CFL-limited only.
    double dt_max = 0.0;
    Regime regime = Regime::Viscous;
    IcSpec ic;
    /// Test hook: drops the nonlinear terms so linear-decay oracles have
    /// closed forms.
    bool disable_nonlinear = false;
    /// Times at which full snapshots are emitted; {0, t_end} if empty.
    std::vector<double> snapshot_times;

    void validate() const;
};

/// Builds the initial state, computing omega0 = -laplacian(psi0) and checking
/// the analytic wall traces of the named profile against the regime's wall
/// conditions (tolerance 1e-10). Incompatible profiles are rejected with the
/// offending trace norm in the message.
FlowState init_state(const SolverConfig& cfg);
FlowState init_state(const SolverConfig& cfg, GridPtr grid);

/// Advective CFL bound dt = cfl * min(dx/max|u|, min_dy/max|v|), capped at
/// t_end - t (diffusion is implicit and imposes no constraint).
double cfl_dt(const FlowState& s, double cfl, double t_end);

/// Curl-form advection -(u w_x + v w_y), x-spectral and dealiased, assembled
/// in the split form 1/2[u w_x + v w_y + (u w)_x + flux_ddy(v w)] whose
/// weighted pairing with omega vanishes identically. The mean-flow flux
/// divergence d/dy <u v> rides along.
struct AdvectionTerms {
    ScalarField curl;
    std::vector<double> mean_flux_div;
};
AdvectionTerms advect_terms(const FlowState& s);
ScalarField advect(const FlowState& s);

/// One IMEX step: Adams-Bashforth (2nd order, Euler bootstrap) advection,
/// Crank-Nicolson diffusion via per-mode tridiagonal solves. Viscous regime:
/// omega(x,1)=0 (free slip) and Thom's closure omega_hat(0) =
/// -2 psi_hat(y1)/h1^2 at the bottom wall, solved self-consistently with the
/// new streamfunction. Limit regime: horizontal diffusion only, no wall
/// closure; wall rows advect with the 1D equation dt Omega + U dx Omega =
/// nu1 dxx Omega.
class Stepper {
  public:
    explicit Stepper(SolverConfig cfg);

    const SolverConfig& config() const { return cfg_; }
    FlowState step(const FlowState& s, double dt);
    void reset_history();

  private:
    FlowState step_viscous(const FlowState& s, double dt);
    FlowState step_limit(const FlowState& s, double dt);
    void ab_combine(const AdvectionTerms& now, double dt, ScalarField& curl,
                    std::vector<double>& mean);

    SolverConfig cfg_;
    bool have_history_ = false;
    double dt_prev_ = 0.0;
    ScalarField curl_prev_;
    std::vector<double> mean_prev_;
};

/// Single bootstrap step (Euler advection + CN diffusion); convenience
/// wrappers over Stepper for one-off use.
FlowState step(const FlowState& s, double dt, const SolverConfig& cfg);
FlowState step_limit(const FlowState& s, double dt, const SolverConfig& cfg);

}  // namespace acns
