#pragma once

#include <map>
#include <span>
#include <utility>

#include "acns/elliptic.hpp"
#include "acns/field.hpp"

namespace acns {

/// Norm and audit snapshot of a state. All audits return 0 on the zero
/// field rather than NaN.
struct DiagnosticsRecord {
    double t = 0.0;
    double energy = 0.0;  // ||u||_2^2 + ||v||_2^2
    double diss_h = 0.0;  // ||u_x||_2^2 + ||v_x||_2^2
    double diss_v = 0.0;  // ||u_y||_2^2 + ||v_y||_2^2
    std::map<int, std::pair<double, double>> lp_norms;  // p -> (||u||_p, ||v||_p)
    double linf_u = 0.0;
    double vx_l2 = 0.0;
    double grad_p_l2 = 0.0;
    double grad_q_l2 = 0.0;
    double uyy_l2 = 0.0;
    double uyx_l2 = 0.0;
    /// Running energy-identity residual up to this record; filled by the
    /// simulation driver, zero for isolated records.
    double budget_residual = 0.0;
};

/// Computes every field of the record from the state: velocities from the
/// streamfunction, p from the Neumann Poisson problem, q from the closed form
/// (viscous regime; identically zero in the limit regime), derivatives by
/// spectral x / finite-difference y.
DiagnosticsRecord record(const FlowState& s);

/// Relative residual of the discrete energy identity
///   E(T) + 2 nu1 int diss_h dt + 2 nu2 int diss_v dt = E(0)
/// with trapezoidal time integration over the series.
double energy_budget(std::span<const DiagnosticsRecord> series, double nu1, double nu2);

/// Triple-product audit: int |f g h| divided by the right-hand side of the
/// anisotropic estimate with its constant omitted,
///   ||f||_2 ||g||_2^{m/(m+1)} (||g||_2+||g_y||_2)^{1/(m+1)}
///          ||h||_{2m}^{m/(m+1)} (||h||_2+||h_x||_2)^{1/(m+1)}.
double audit_triple_product(const ScalarField& f, const ScalarField& g, const ScalarField& h,
                            double m);

/// ||grad q||_2^2 / (nu2^2 ||u_yy||_2 ||u_yx||_2) on a viscous snapshot.
double audit_grad_q(const FlowState& s);

/// Low/high frequency split of a zero-mean pressure: Fourier modes in x
/// combined with a Neumann-compatible cosine expansion in y, retaining
/// combined wavenumbers sqrt(k^2 + (n pi)^2) <= R.
struct FrequencySplit {
    ScalarField p_low;
    ScalarField p_high;
    double ratio_low = 0.0;   // ||p_low||_inf^2 / (log R * ||grad p||_2^2)
    double ratio_high = 0.0;  // R * ||p_high||_2 / ||grad p||_2
};
FrequencySplit pressure_frequency_split(const ScalarField& p, double R);

/// Wall L2(x) traces of u and u_y together with the two trace-inequality
/// ratios int u(1)^2 dx / (2||u||_2 ||u_y||_2) and
/// int u_y(0)^2 dx / (2||u_y||_2 ||u_yy||_2).
struct WallTraces {
    double u_bottom = 0.0;
    double uy_bottom = 0.0;
    double u_top = 0.0;
    double uy_top = 0.0;
    double ratio_top = 0.0;
    double ratio_bottom = 0.0;
};
WallTraces wall_traces(const FlowState& s);

}  // namespace acns
