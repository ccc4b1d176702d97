#include "acns/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace acns {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

// Dense symmetric positive-definite solve (Cholesky), for the small cosine
// Gram systems of the frequency split.
void spd_solve(std::vector<double>& a, int n, std::vector<double>& rhs_re,
               std::vector<double>& rhs_im) {
    auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = A(i, j);
            for (int k = 0; k < j; ++k) s -= A(i, k) * A(j, k);
            if (i == j) {
                if (s <= 0.0) throw std::runtime_error("spd_solve: matrix not positive definite");
                A(i, i) = std::sqrt(s);
            } else {
                A(i, j) = s / A(j, j);
            }
        }
    }
    auto sweep = [&](std::vector<double>& b) {
        for (int i = 0; i < n; ++i) {
            double s = b[i];
            for (int k = 0; k < i; ++k) s -= A(i, k) * b[k];
            b[i] = s / A(i, i);
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = b[i];
            for (int k = i + 1; k < n; ++k) s -= A(k, i) * b[k];
            b[i] = s / A(i, i);
        }
    };
    sweep(rhs_re);
    sweep(rhs_im);
}

}  // namespace

DiagnosticsRecord record(const FlowState& s) {
    const Grid& g = *s.grid;
    DiagnosticsRecord r;
    r.t = s.t;

    auto [uh, vh] = velocity_spectral(s);
    const ScalarField u = to_physical(uh);
    const ScalarField v = to_physical(vh);
    const ScalarField ux = to_physical(ddx(uh));
    const ScalarField vx = to_physical(ddx(vh));
    const ScalarField uy = to_physical(ddy(uh));
    const ScalarField vy = to_physical(ddy(vh));

    r.energy = sq(norm_lp(u, 2)) + sq(norm_lp(v, 2));
    r.diss_h = sq(norm_lp(ux, 2)) + sq(norm_lp(vx, 2));
    r.diss_v = sq(norm_lp(uy, 2)) + sq(norm_lp(vy, 2));
    for (int p : {2, 4, 6, 8}) r.lp_norms[p] = {norm_lp(u, p), norm_lp(v, p)};
    r.linf_u = norm_linf(u);
    r.vx_l2 = norm_lp(vx, 2);

    const PressureSolve ps = solve_flow_pressure(u, v);
    const ScalarField ph = to_spectral(ps.p);
    const ScalarField px = to_physical(ddx(ph));
    const ScalarField py = to_physical(ddy(ph));
    r.grad_p_l2 = std::sqrt(sq(norm_lp(px, 2)) + sq(norm_lp(py, 2)));

    if (s.regime == Regime::Viscous) {
        const auto uy0 = wall_uy_hat(s);
        r.grad_q_l2 = std::sqrt(grad_q_l2sq_exact(uy0, s.nu2, g));
    }

    r.uyy_l2 = norm_lp(to_physical(d2y(uh)), 2);
    r.uyx_l2 = norm_lp(to_physical(ddy(ddx(uh))), 2);
    return r;
}

double energy_budget(std::span<const DiagnosticsRecord> series, double nu1, double nu2) {
    if (series.size() < 2)
        throw std::invalid_argument("energy_budget: need at least two records");
    double ih = 0.0, iv = 0.0;
    for (size_t i = 1; i < series.size(); ++i) {
        const double dt = series[i].t - series[i - 1].t;
        ih += 0.5 * dt * (series[i].diss_h + series[i - 1].diss_h);
        iv += 0.5 * dt * (series[i].diss_v + series[i - 1].diss_v);
    }
    const double e0 = series.front().energy;
    const double lhs = series.back().energy + 2.0 * nu1 * ih + 2.0 * nu2 * iv;
    if (e0 == 0.0) return std::abs(lhs);
    return std::abs(lhs - e0) / e0;
}

double audit_triple_product(const ScalarField& f, const ScalarField& g, const ScalarField& h,
                            double m) {
    if (m < 1.0) throw std::invalid_argument("audit_triple_product: m must be >= 1");
    if (f.rep() != Rep::Physical || g.rep() != Rep::Physical || h.rep() != Rep::Physical)
        throw std::invalid_argument("audit_triple_product: fields must be physical");
    const Grid& gr = f.grid();
    const auto& w = gr.y_weights();

    double lhs = 0.0;
    for (int iy = 0; iy < gr.ny(); ++iy) {
        double rowsum = 0.0;
        for (int ix = 0; ix < gr.nx(); ++ix)
            rowsum += std::abs(f.at(ix, iy) * g.at(ix, iy) * h.at(ix, iy));
        lhs += w[iy] * rowsum;
    }
    lhs *= gr.dx();

    const double gy = norm_lp(ddy(g), 2);
    const double hx = norm_lp(to_physical(ddx(to_spectral(h))), 2);
    const double e = 1.0 / (m + 1.0);
    const double rhs = norm_lp(f, 2) * std::pow(norm_lp(g, 2), m * e) *
                       std::pow(norm_lp(g, 2) + gy, e) * std::pow(norm_lp(h, 2.0 * m), m * e) *
                       std::pow(norm_lp(h, 2) + hx, e);
    if (rhs == 0.0) return 0.0;  // then lhs is 0 as well
    return lhs / rhs;
}

double audit_grad_q(const FlowState& s) {
    if (s.regime != Regime::Viscous)
        throw std::invalid_argument("audit_grad_q: viscous regime required");
    const auto uy0 = wall_uy_hat(s);
    const double num = grad_q_l2sq_exact(uy0, s.nu2, *s.grid);

    auto [uh, vh] = velocity_spectral(s);
    const double uyy = norm_lp(to_physical(d2y(uh)), 2);
    const double uyx = norm_lp(to_physical(ddy(ddx(uh))), 2);
    const double den = s.nu2 * s.nu2 * uyy * uyx;
    if (den == 0.0) return 0.0;
    return num / den;
}

FrequencySplit pressure_frequency_split(const ScalarField& p, double R) {
    if (R <= 1.0) throw std::invalid_argument("pressure_frequency_split: R must exceed 1");
    if (p.rep() != Rep::Physical)
        throw std::invalid_argument("pressure_frequency_split: p must be physical");
    const Grid& g = p.grid();
    const GridPtr gp = p.grid_ptr();
    const int ny = g.ny();
    const auto& w = g.y_weights();
    const auto& y = g.y_nodes();

    const ScalarField ph = to_spectral(p);
    const double gradsq =
        sq(norm_lp(to_physical(ddx(ph)), 2)) + sq(norm_lp(to_physical(ddy(ph)), 2));

    // Neumann-compatible cosine table up to the largest y-mode the cutoff can
    // admit (bounded so the Gram system stays small and well conditioned).
    const int n_cap = std::min(ny / 4, 96);
    const int n_need = std::min(n_cap, static_cast<int>(std::floor(R / kPi)) + 1);
    std::vector<double> cosv(static_cast<size_t>(n_need) * ny);
    for (int n = 0; n < n_need; ++n)
        for (int j = 0; j < ny; ++j)
            cosv[static_cast<size_t>(n) * ny + j] = std::cos(n * kPi * y[j]);

    ScalarField low_hat(gp, Rep::XSpectral);
    const int kmax = std::min(g.nkx() - 1, static_cast<int>(std::floor(R)));
    std::vector<double> gram, bre, bim;
    for (int k = 0; k <= kmax; ++k) {
        const double budget = R * R - double(k) * k;
        const int cnt = std::min(
            n_need, static_cast<int>(std::floor(std::sqrt(std::max(budget, 0.0)) / kPi)) + 1);
        if (cnt <= 0) continue;
        gram.assign(static_cast<size_t>(cnt) * cnt, 0.0);
        bre.assign(cnt, 0.0);
        bim.assign(cnt, 0.0);
        for (int a = 0; a < cnt; ++a) {
            const double* ca = &cosv[static_cast<size_t>(a) * ny];
            for (int b = a; b < cnt; ++b) {
                const double* cb = &cosv[static_cast<size_t>(b) * ny];
                double sgr = 0.0;
                for (int j = 0; j < ny; ++j) sgr += w[j] * ca[j] * cb[j];
                gram[static_cast<size_t>(a) * cnt + b] = sgr;
                gram[static_cast<size_t>(b) * cnt + a] = sgr;
            }
            double sre = 0.0, sim = 0.0;
            for (int j = 0; j < ny; ++j) {
                const Complex z = ph.mode(k, j);
                sre += w[j] * ca[j] * z.real();
                sim += w[j] * ca[j] * z.imag();
            }
            bre[a] = sre;
            bim[a] = sim;
        }
        spd_solve(gram, cnt, bre, bim);
        for (int j = 0; j < ny; ++j) {
            Complex acc{0.0, 0.0};
            for (int n = 0; n < cnt; ++n)
                acc += Complex{bre[n], bim[n]} * cosv[static_cast<size_t>(n) * ny + j];
            low_hat.mode(k, j) = acc;
        }
    }

    ScalarField high_hat = ph;
    for (int k = 0; k < g.nkx(); ++k)
        for (int j = 0; j < ny; ++j) high_hat.mode(k, j) -= low_hat.mode(k, j);

    FrequencySplit out{to_physical(low_hat), to_physical(high_hat), 0.0, 0.0};
    if (gradsq > 0.0) {
        out.ratio_low = sq(norm_linf(out.p_low)) / (std::log(R) * gradsq);
        out.ratio_high = R * norm_lp(out.p_high, 2) / std::sqrt(gradsq);
    }
    return out;
}

WallTraces wall_traces(const FlowState& s) {
    const Grid& g = *s.grid;
    auto [uh, vh] = velocity_spectral(s);
    const ScalarField u = to_physical(uh);
    const ScalarField uy = to_physical(ddy(uh));

    auto trace_sq = [&](const ScalarField& f, int iy) {
        double acc = 0.0;
        for (int ix = 0; ix < g.nx(); ++ix) acc += sq(f.at(ix, iy));
        return acc * g.dx();
    };
    WallTraces t;
    const int top = g.ny() - 1;
    const double iu0 = trace_sq(u, 0), iuy0 = trace_sq(uy, 0);
    const double iu1 = trace_sq(u, top), iuy1 = trace_sq(uy, top);
    t.u_bottom = std::sqrt(iu0);
    t.uy_bottom = std::sqrt(iuy0);
    t.u_top = std::sqrt(iu1);
    t.uy_top = std::sqrt(iuy1);

    const double un = norm_lp(u, 2);
    const double uyn = norm_lp(uy, 2);
    const double uyyn = norm_lp(to_physical(d2y(uh)), 2);
    t.ratio_top = (un * uyn > 0.0) ? iu1 / (2.0 * un * uyn) : 0.0;
    t.ratio_bottom = (uyn * uyyn > 0.0) ? iuy0 / (2.0 * uyn * uyyn) : 0.0;
    return t;
}

}  // namespace acns
