#include "acns/solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "acns/elliptic.hpp"

namespace acns {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWallTol = 1e-10;

struct Profile {
    std::vector<double> f;
    double f0, f1;     // f(0), f(1)
    double df0, df1;   // f'(0), f'(1)
    double ddf1;       // f''(1)
};

// y^2 (1-y)^b sampled on the grid, with analytic wall traces.
Profile taylor_profile(const Grid& g, int b) {
    if (b < 1) throw std::invalid_argument("taylor_profile: top exponent must be >= 1");
    Profile p;
    p.f.resize(g.ny());
    for (int j = 0; j < g.ny(); ++j) {
        const double y = g.y_nodes()[j];
        p.f[j] = y * y * std::pow(1.0 - y, b);
    }
    p.f0 = 0.0;
    p.f1 = 0.0;
    p.df0 = 0.0;
    p.df1 = (b == 1) ? -1.0 : 0.0;
    p.ddf1 = (b == 1) ? -4.0 : (b == 2 ? 2.0 : 0.0);
    return p;
}

void check_finite(const FlowState& s, double t_last) {
    for (const auto& z : s.omega.data_spectral())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NumericalError("solver: non-finite vorticity", t_last);
    for (double v : s.mean_u)
        if (!std::isfinite(v)) throw NumericalError("solver: non-finite mean flow", t_last);
}

}  // namespace

void SolverConfig::validate() const {
    if (nu1 <= 0.0) throw std::invalid_argument("config: nu1 must be positive");
    if (regime == Regime::Viscous) {
        if (!(nu2 > 0.0)) throw std::invalid_argument("config: viscous regime requires nu2 > 0");
        if (!(nu2 < nu1))
            throw std::invalid_argument("config: viscous regime expects nu2 < nu1");
    } else if (nu2 != 0.0) {
        throw std::invalid_argument("config: limit regime requires nu2 = 0");
    }
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("config: cfl must be in (0,1]");
    if (t_end < 0.0) throw std::invalid_argument("config: t_end must be >= 0");
    if (output_every <= 0.0) throw std::invalid_argument("config: output_every must be > 0");
}

FlowState init_state(const SolverConfig& cfg) {
    return init_state(cfg, build_grid(cfg.nx, cfg.ny, cfg.stretch));
}

FlowState init_state(const SolverConfig& cfg, GridPtr grid) {
    cfg.validate();
    const Grid& g = *grid;
    FlowState s(grid, cfg.nu1, cfg.nu2, cfg.regime);

    if (cfg.ic.name == "zero") return s;
    if (cfg.ic.name != "taylor_profile")
        throw std::invalid_argument("init_state: unknown ic '" + cfg.ic.name + "'");

    const IcSpec& ic = cfg.ic;
    if (ic.mode < 1 || ic.mode > g.dealias_cutoff())
        throw std::invalid_argument("init_state: ic mode outside the retained band");
    const Profile prof = taylor_profile(g, ic.top_exponent);

    // Wall-trace compatibility, from the analytic profile derivatives.
    // ||sin(mx)||_{L2(x)} = sqrt(pi).
    const double sqrt_pi = std::sqrt(kPi);
    const double v_bot = std::abs(ic.amplitude * ic.mode * prof.f0) * sqrt_pi;
    const double v_top = std::abs(ic.amplitude * ic.mode * prof.f1) * sqrt_pi;
    if (v_bot > kWallTol || v_top > kWallTol)
        throw std::invalid_argument("init_state: ic violates v=0 at walls, trace norm " +
                                    std::to_string(std::max(v_bot, v_top)));
    if (cfg.regime == Regime::Viscous) {
        const double u_bot = std::abs(ic.amplitude * prof.df0) * sqrt_pi;
        if (u_bot > kWallTol)
            throw std::invalid_argument("init_state: ic violates u(x,0)=0, trace norm " +
                                        std::to_string(u_bot));
        const double uy_top = std::abs(ic.amplitude * prof.ddf1) * sqrt_pi;
        if (uy_top > kWallTol)
            throw std::invalid_argument("init_state: ic violates u_y(x,1)=0, trace norm " +
                                        std::to_string(uy_top));
    }

    // psi_hat = -i A/2 f(y) at k=+m (sin expansion), omega = -laplacian(psi).
    const Complex amp{0.0, -0.5 * ic.amplitude};
    for (int j = 0; j < g.ny(); ++j) s.psi.mode(ic.mode, j) = amp * prof.f[j];
    const ScalarField psi_yy = d2y(s.psi);
    for (int j = 0; j < g.ny(); ++j)
        s.omega.mode(ic.mode, j) =
            double(ic.mode) * ic.mode * s.psi.mode(ic.mode, j) - psi_yy.mode(ic.mode, j);

    if (ic.mean_amplitude != 0.0) {
        for (int j = 0; j < g.ny(); ++j) {
            const double y = g.y_nodes()[j];
            s.mean_u[j] = ic.mean_amplitude * (0.5 * y * y - y * y * y / 3.0);
        }
    }
    return s;
}

double cfl_dt(const FlowState& s, double cfl, double t_end) {
    const Grid& g = *s.grid;
    auto [u, v] = velocity_from_state(s);
    const double umax = norm_linf(u);
    const double vmax = norm_linf(v);
    double dt = t_end - s.t;
    if (umax > 0.0) dt = std::min(dt, cfl * g.dx() / umax);
    if (vmax > 0.0) dt = std::min(dt, cfl * g.min_dy() / vmax);
    return dt;
}

AdvectionTerms advect_terms(const FlowState& s) {
    const Grid& g = *s.grid;
    const GridPtr gp = s.grid;
    const int nx = g.nx();
    const int ny = g.ny();
    const int nkx = g.nkx();

    const ScalarField psi_d = dealias(s.psi);
    const ScalarField omega_d = dealias(s.omega);

    ScalarField u_hat = ddy(psi_d);
    for (int j = 0; j < ny; ++j) u_hat.mode(0, j) += Complex{s.mean_u[j], 0.0};
    ScalarField v_hat = ddx(psi_d);
    for (auto& z : v_hat.data_spectral()) z = -z;

    const ScalarField u = to_physical(u_hat);
    const ScalarField v = to_physical(v_hat);
    const ScalarField w = to_physical(omega_d);
    const ScalarField wx = to_physical(ddx(omega_d));
    const ScalarField wy = to_physical(ddy(omega_d));

    ScalarField adv(gp, Rep::Physical);   // u w_x + v w_y
    ScalarField fx(gp, Rep::Physical);    // u w
    ScalarField fy(gp, Rep::Physical);    // v w
    std::vector<double> mean_flux(ny, 0.0);
    for (int iy = 0; iy < ny; ++iy) {
        double acc = 0.0;
        for (int ix = 0; ix < nx; ++ix) {
            const double uu = u.at(ix, iy);
            const double vv = v.at(ix, iy);
            adv.at(ix, iy) = uu * wx.at(ix, iy) + vv * wy.at(ix, iy);
            fx.at(ix, iy) = uu * w.at(ix, iy);
            fy.at(ix, iy) = vv * w.at(ix, iy);
            acc += uu * vv;
        }
        mean_flux[iy] = acc / nx;
    }

    const ScalarField adv_hat = to_spectral(adv);
    const ScalarField fxx_hat = ddx(to_spectral(fx));
    const ScalarField fyy_hat = ddy_flux(to_spectral(fy));

    AdvectionTerms out{ScalarField(gp, Rep::XSpectral), std::vector<double>(ny)};
    for (int j = 0; j < ny; ++j)
        for (int k = 0; k < nkx; ++k)
            out.curl.mode(k, j) =
                -0.5 * (adv_hat.mode(k, j) + fxx_hat.mode(k, j) + fyy_hat.mode(k, j));
    out.curl = dealias(out.curl);

    if (s.regime == Regime::Limit) {
        // Wall rows follow the closed 1D equation (v = 0 there): keep only
        // the consistent x-advection part.
        const ScalarField fx_hat = to_spectral(fx);
        ScalarField advx(gp, Rep::Physical);
        for (int ix = 0; ix < nx; ++ix) {
            advx.at(ix, 0) = u.at(ix, 0) * wx.at(ix, 0);
            advx.at(ix, ny - 1) = u.at(ix, ny - 1) * wx.at(ix, ny - 1);
        }
        const ScalarField advx_hat = to_spectral(advx);
        const int cutoff = g.dealias_cutoff();
        for (int k = 0; k <= cutoff; ++k) {
            out.curl.mode(k, 0) =
                -0.5 * (advx_hat.mode(k, 0) + Complex{0.0, double(k)} * fx_hat.mode(k, 0));
            out.curl.mode(k, ny - 1) = -0.5 * (advx_hat.mode(k, ny - 1) +
                                               Complex{0.0, double(k)} * fx_hat.mode(k, ny - 1));
        }
    }

    g.ddy_flux(mean_flux, out.mean_flux_div);
    return out;
}

ScalarField advect(const FlowState& s) { return advect_terms(s).curl; }

Stepper::Stepper(SolverConfig cfg)
    : cfg_(std::move(cfg)),
      curl_prev_(build_grid(cfg_.nx, cfg_.ny, cfg_.stretch), Rep::XSpectral),
      mean_prev_(cfg_.ny, 0.0) {
    cfg_.validate();
}

void Stepper::reset_history() {
    have_history_ = false;
    dt_prev_ = 0.0;
}

void Stepper::ab_combine(const AdvectionTerms& now, double dt, ScalarField& curl,
                         std::vector<double>& mean) {
    double alpha = 1.0, beta = 0.0;
    if (have_history_ && dt_prev_ > 0.0) {
        const double r = dt / dt_prev_;
        alpha = 1.0 + 0.5 * r;
        beta = 0.5 * r;
    }
    curl = now.curl;
    mean = now.mean_flux_div;
    if (beta != 0.0) {
        auto& c = curl.data_spectral();
        const auto& cp = curl_prev_.data_spectral();
        for (size_t i = 0; i < c.size(); ++i) c[i] = alpha * c[i] - beta * cp[i];
        for (size_t j = 0; j < mean.size(); ++j)
            mean[j] = alpha * mean[j] - beta * mean_prev_[j];
    }
    curl_prev_ = now.curl;
    mean_prev_ = now.mean_flux_div;
    dt_prev_ = dt;
    have_history_ = true;
}

FlowState Stepper::step(const FlowState& s, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    if (s.regime != cfg_.regime)
        throw std::invalid_argument("step: state regime does not match config");
    // Advective CFL precondition; diffusion is implicit.
    {
        const double bound = cfl_dt(s, cfg_.cfl, s.t + 2.0 * dt);
        if (dt > bound * 1.0001)
            throw std::invalid_argument("step: dt exceeds the advective CFL bound");
    }
    FlowState out = (s.regime == Regime::Viscous) ? step_viscous(s, dt) : step_limit(s, dt);
    check_finite(out, s.t);
    return out;
}

FlowState Stepper::step_viscous(const FlowState& s, double dt) {
    const Grid& g = *s.grid;
    const int ny = g.ny();
    const int cutoff = g.dealias_cutoff();
    const double nu1 = s.nu1;
    const double nu2 = s.nu2;

    AdvectionTerms now = cfg_.disable_nonlinear
                             ? AdvectionTerms{ScalarField(s.grid, Rep::XSpectral),
                                              std::vector<double>(ny, 0.0)}
                             : advect_terms(s);
    ScalarField expl(s.grid, Rep::XSpectral);
    std::vector<double> mean_expl(ny);
    ab_combine(now, dt, expl, mean_expl);

    const ScalarField omega_yy = d2y(s.omega);

    FlowState out(s.grid, s.nu1, s.nu2, s.regime);
    out.t = s.t + dt;

    const double h1 = g.wall_dy();
    std::vector<Complex> rhs(ny), om0(ny), psi0(ny);
    std::vector<double> rhs_h(ny, 0.0), om_h(ny), psi_h(ny), neg_om_h(ny);
    for (int k = 1; k <= cutoff; ++k) {
        const double k2 = double(k) * k;
        const Helmholtz1D cn(g, 1.0 / dt + 0.5 * nu1 * k2, -0.5 * nu2, ModeBC::Kind::Dirichlet,
                             ModeBC::Kind::Dirichlet);
        const Helmholtz1D inv(g, -k2, 1.0, ModeBC::Kind::Dirichlet, ModeBC::Kind::Dirichlet);

        for (int j = 0; j < ny; ++j)
            rhs[j] = (1.0 / dt - 0.5 * nu1 * k2) * s.omega.mode(k, j) +
                     0.5 * nu2 * omega_yy.mode(k, j) + expl.mode(k, j);

        // Particular solution with homogeneous walls, plus the wall response,
        // combined so Thom's closure holds at the new time level.
        cn.solve<Complex>(rhs, Complex{0, 0}, Complex{0, 0}, om0);
        cn.solve<double>(rhs_h, 1.0, 0.0, om_h);

        for (int j = 0; j < ny; ++j) rhs[j] = -om0[j];
        inv.solve<Complex>(rhs, Complex{0, 0}, Complex{0, 0}, psi0);
        for (int j = 0; j < ny; ++j) neg_om_h[j] = -om_h[j];
        inv.solve<double>(neg_om_h, 0.0, 0.0, psi_h);

        const Complex c = -2.0 * psi0[1] / (h1 * h1 + 2.0 * psi_h[1]);
        for (int j = 0; j < ny; ++j) {
            out.omega.mode(k, j) = om0[j] + c * om_h[j];
            out.psi.mode(k, j) = psi0[j] + c * psi_h[j];
        }
    }

    // Mean flow: u_t + d/dy <u v> = nu2 u_yy, u(0)=0, u_y(1)=0.
    {
        const Helmholtz1D cn(g, 1.0 / dt, -0.5 * nu2, ModeBC::Kind::Dirichlet,
                             ModeBC::Kind::Neumann);
        std::vector<double> meanyy = g.d2y(s.mean_u);
        std::vector<double> rhsm(ny);
        for (int j = 0; j < ny; ++j)
            rhsm[j] = s.mean_u[j] / dt + 0.5 * nu2 * meanyy[j] - mean_expl[j];
        cn.solve<double>(rhsm, 0.0, 0.0, out.mean_u);
    }
    return out;
}

FlowState Stepper::step_limit(const FlowState& s, double dt) {
    const Grid& g = *s.grid;
    const int ny = g.ny();
    const int cutoff = g.dealias_cutoff();
    const double nu1 = s.nu1;

    AdvectionTerms now = cfg_.disable_nonlinear
                             ? AdvectionTerms{ScalarField(s.grid, Rep::XSpectral),
                                              std::vector<double>(ny, 0.0)}
                             : advect_terms(s);
    ScalarField expl(s.grid, Rep::XSpectral);
    std::vector<double> mean_expl(ny);
    ab_combine(now, dt, expl, mean_expl);

    FlowState out(s.grid, s.nu1, 0.0, Regime::Limit);
    out.t = s.t + dt;

    // Horizontal diffusion only: the CN solve is diagonal per mode, and the
    // wall rows advance with the same closed equation as the interior.
    for (int k = 1; k <= cutoff; ++k) {
        const double k2 = double(k) * k;
        const double den = 1.0 / dt + 0.5 * nu1 * k2;
        const double num = 1.0 / dt - 0.5 * nu1 * k2;
        for (int j = 0; j < ny; ++j)
            out.omega.mode(k, j) = (num * s.omega.mode(k, j) + expl.mode(k, j)) / den;
    }
    out.psi = streamfunction_from_vorticity(out.omega, Regime::Limit, g);

    for (int j = 0; j < ny; ++j) out.mean_u[j] = s.mean_u[j] - dt * mean_expl[j];
    return out;
}

FlowState step(const FlowState& s, double dt, const SolverConfig& cfg) {
    Stepper st(cfg);
    return st.step(s, dt);
}

FlowState step_limit(const FlowState& s, double dt, const SolverConfig& cfg) {
    Stepper st(cfg);
    return st.step(s, dt);
}

}  // namespace acns
