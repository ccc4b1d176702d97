#include "acns/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace acns {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Helmholtz1D::Helmholtz1D(const Grid& grid, double alpha, double beta, ModeBC::Kind bottom,
                         ModeBC::Kind top)
    : grid_(&grid), bottom_(bottom), top_(top), n_(grid.ny()) {
    const int n = n_;
    std::vector<double> diag(n, 0.0), sup(n, 0.0);
    sub_.assign(n, 0.0);
    for (int j = 1; j < n - 1; ++j) {
        double s, d, p;
        grid.d2y_row(j, s, d, p);
        sub_[j] = beta * s;
        diag[j] = alpha + beta * d;
        sup[j] = beta * p;
    }

    if (bottom_ == ModeBC::Kind::Dirichlet) {
        diag[0] = 1.0;
        sup[0] = 0.0;
    } else {
        // One-sided derivative row b0 f0 + b1 f1 + b2 f2 = g; fold the f2
        // entry into the j=1 equation to stay tridiagonal.
        double b0, b1, b2;
        grid.ddy_wall_row(false, b0, b1, b2);
        const double r = b2 / sup[1];
        diag[0] = b0 - r * sub_[1];
        sup[0] = b1 - r * diag[1];
        bot_coupling_ = r;
    }
    if (top_ == ModeBC::Kind::Dirichlet) {
        diag[n - 1] = 1.0;
        sub_[n - 1] = 0.0;
    } else {
        double c0, c1, c2;  // multiply f_{n-1}, f_{n-2}, f_{n-3}
        grid.ddy_wall_row(true, c0, c1, c2);
        const double r = c2 / sub_[n - 2];
        diag[n - 1] = c0 - r * sup[n - 2];
        sub_[n - 1] = c1 - r * diag[n - 2];
        top_coupling_ = r;
    }

    // Thomas factorization.
    cp_.assign(n, 0.0);
    invm_.assign(n, 0.0);
    invm_[0] = 1.0 / diag[0];
    cp_[0] = sup[0] * invm_[0];
    for (int j = 1; j < n; ++j) {
        const double m = diag[j] - sub_[j] * cp_[j - 1];
        invm_[j] = 1.0 / m;
        if (j < n - 1) cp_[j] = sup[j] * invm_[j];
    }
}

template <class T>
void Helmholtz1D::solve(std::span<const T> rhs, T bc0, T bc1, std::span<T> out) const {
    const int n = n_;
    if (static_cast<int>(rhs.size()) != n || static_cast<int>(out.size()) != n)
        throw std::invalid_argument("Helmholtz1D::solve: length mismatch");

    std::vector<T> d(rhs.begin(), rhs.end());
    d[0] = (bottom_ == ModeBC::Kind::Dirichlet) ? bc0 : bc0 - bot_coupling_ * d[1];
    d[n - 1] = (top_ == ModeBC::Kind::Dirichlet) ? bc1 : bc1 - top_coupling_ * d[n - 2];

    d[0] = d[0] * invm_[0];
    for (int j = 1; j < n; ++j) d[j] = (d[j] - sub_[j] * d[j - 1]) * invm_[j];
    out[n - 1] = d[n - 1];
    for (int j = n - 2; j >= 0; --j) out[j] = d[j] - cp_[j] * out[j + 1];
}

template void Helmholtz1D::solve<double>(std::span<const double>, double, double,
                                         std::span<double>) const;
template void Helmholtz1D::solve<Complex>(std::span<const Complex>, Complex, Complex,
                                          std::span<Complex>) const;

ModeSolve solve_mode(int k, std::span<const Complex> rhs, const ModeBC& bc, const Grid& grid) {
    const int n = grid.ny();
    if (static_cast<int>(rhs.size()) != n)
        throw std::invalid_argument("solve_mode: rhs length mismatch");

    ModeSolve result;
    result.solution.assign(n, Complex{0.0, 0.0});

    const bool nn = bc.kind0 == ModeBC::Kind::Neumann && bc.kind1 == ModeBC::Kind::Neumann;
    if (k == 0 && nn) {
        // Singular case: constant nullspace. Project the rhs onto the
        // compatible range, trade the bottom Neumann row for a Dirichlet pin
        // (the projected problem satisfies it automatically to second order),
        // and normalize to zero y-mean.
        std::vector<double> re(n), im(n);
        for (int j = 0; j < n; ++j) {
            re[j] = rhs[j].real();
            im[j] = rhs[j].imag();
        }
        const double flux_re = bc.value1.real() - bc.value0.real();
        const double flux_im = bc.value1.imag() - bc.value0.imag();
        const double res_re = grid.integrate_y(re) - flux_re;
        const double res_im = grid.integrate_y(im) - flux_im;
        result.compat_residual = std::hypot(res_re, res_im);

        std::vector<Complex> proj(rhs.begin(), rhs.end());
        const Complex shift{res_re, res_im};
        for (auto& z : proj) z -= shift;

        Helmholtz1D solver(grid, 0.0, 1.0, ModeBC::Kind::Dirichlet, ModeBC::Kind::Neumann);
        solver.solve<Complex>(proj, Complex{0.0, 0.0}, bc.value1, result.solution);

        std::vector<double> sre(n);
        for (int j = 0; j < n; ++j) sre[j] = result.solution[j].real();
        const double mre = grid.integrate_y(sre);
        for (int j = 0; j < n; ++j) sre[j] = result.solution[j].imag();
        const double mim = grid.integrate_y(sre);
        const Complex mean{mre, mim};
        for (auto& z : result.solution) z -= mean;
        return result;
    }

    Helmholtz1D solver(grid, -double(k) * k, 1.0, bc.kind0, bc.kind1);
    solver.solve<Complex>(rhs, bc.value0, bc.value1, result.solution);
    return result;
}

ScalarField streamfunction_from_vorticity(const ScalarField& omega, Regime regime,
                                          const Grid& grid) {
    if (omega.rep() != Rep::XSpectral)
        throw std::invalid_argument("streamfunction_from_vorticity: omega must be x-spectral");
    (void)regime;  // psi vanishes at both walls in both regimes.
    const int n = grid.ny();
    const int nkx = grid.nkx();
    ScalarField psi(omega.grid_ptr(), Rep::XSpectral, BcTag::BothWallsZero);
    std::vector<Complex> rhs(n), sol(n);
    for (int k = 1; k < nkx; ++k) {
        Helmholtz1D solver(grid, -double(k) * k, 1.0, ModeBC::Kind::Dirichlet,
                           ModeBC::Kind::Dirichlet);
        for (int j = 0; j < n; ++j) rhs[j] = -omega.mode(k, j);
        solver.solve<Complex>(rhs, Complex{0.0, 0.0}, Complex{0.0, 0.0}, sol);
        for (int j = 0; j < n; ++j) psi.mode(k, j) = sol[j];
    }
    return psi;
}

PressureSolve solve_flow_pressure(const ScalarField& u, const ScalarField& v) {
    if (u.rep() != Rep::Physical || v.rep() != Rep::Physical)
        throw std::invalid_argument("solve_flow_pressure: u, v must be physical");
    const Grid& g = u.grid();
    const GridPtr gp = u.grid_ptr();
    const int n = g.ny();
    const int nx = g.nx();
    const int nkx = g.nkx();

    const ScalarField uh = to_spectral(u);
    const ScalarField vh = to_spectral(v);
    const ScalarField ud = to_physical(dealias(uh));
    const ScalarField uxd = to_physical(dealias(ddx(uh)));
    const ScalarField vxd = to_physical(dealias(ddx(vh)));

    ScalarField prod_a(gp, Rep::Physical);  // u u_x
    ScalarField prod_b(gp, Rep::Physical);  // u v_x
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            prod_a.at(ix, iy) = ud.at(ix, iy) * uxd.at(ix, iy);
            prod_b.at(ix, iy) = ud.at(ix, iy) * vxd.at(ix, iy);
        }
    const ScalarField pa = dealias(to_spectral(prod_a));
    const ScalarField pb_y = ddy(dealias(to_spectral(prod_b)));

    ScalarField phat(gp, Rep::XSpectral, BcTag::NeumannTop);
    double residual = 0.0;
    std::vector<Complex> rhs(n);
    for (int k = 0; k < nkx; ++k) {
        const Complex ik{0.0, double(k)};
        for (int j = 0; j < n; ++j)
            rhs[j] = -2.0 * (ik * pa.mode(k, j) + pb_y.mode(k, j));
        ModeSolve ms = solve_mode(k, rhs, ModeBC::neumann({0, 0}, {0, 0}), g);
        if (k == 0) residual = ms.compat_residual;
        for (int j = 0; j < n; ++j) phat.mode(k, j) = ms.solution[j];
    }

    PressureSolve out{to_physical(phat), residual};
    const double mean = mean_value(out.p);
    for (auto& x : out.p.data_physical()) x -= mean;
    return out;
}

namespace {

// Stable mode profile cosh(k(1-y))/sinh(k) and its y-derivative
// -k sinh(k(1-y))/sinh(k), written with non-positive exponents only.
void q_mode_profile(int k, const std::vector<double>& y, std::vector<double>& prof,
                    std::vector<double>* dprof) {
    const double denom = 1.0 - std::exp(-2.0 * k);
    const int n = static_cast<int>(y.size());
    prof.resize(n);
    if (dprof) dprof->resize(n);
    for (int j = 0; j < n; ++j) {
        const double eky = std::exp(-double(k) * y[j]);
        const double tail = std::exp(-2.0 * k * (1.0 - y[j]));
        prof[j] = eky * (1.0 + tail) / denom;
        if (dprof) (*dprof)[j] = -double(k) * eky * (1.0 - tail) / denom;
    }
}

}  // namespace

ScalarField boundary_layer_pressure_exact(std::span<const Complex> uy_wall_hat, double nu2,
                                          const GridPtr& grid) {
    const Grid& g = *grid;
    if (static_cast<int>(uy_wall_hat.size()) != g.nkx())
        throw std::invalid_argument("boundary_layer_pressure_exact: wall data length mismatch");
    if (nu2 < 0.0) throw std::invalid_argument("boundary_layer_pressure_exact: nu2 < 0");
    ScalarField q(grid, Rep::XSpectral, BcTag::NeumannTop);
    std::vector<double> prof;
    for (int k = 1; k < g.nkx(); ++k) {
        q_mode_profile(k, g.y_nodes(), prof, nullptr);
        const Complex amp = Complex{0.0, nu2} * uy_wall_hat[k];
        for (int j = 0; j < g.ny(); ++j) q.mode(k, j) = amp * prof[j];
    }
    return q;
}

ScalarField boundary_layer_pressure_bvp(std::span<const Complex> uy_wall_hat, double nu2,
                                        const GridPtr& grid) {
    const Grid& g = *grid;
    if (static_cast<int>(uy_wall_hat.size()) != g.nkx())
        throw std::invalid_argument("boundary_layer_pressure_bvp: wall data length mismatch");
    if (nu2 < 0.0) throw std::invalid_argument("boundary_layer_pressure_bvp: nu2 < 0");
    ScalarField q(grid, Rep::XSpectral, BcTag::NeumannTop);
    const int n = g.ny();
    std::vector<Complex> rhs(n, Complex{0.0, 0.0}), sol(n);
    for (int k = 1; k < g.nkx(); ++k) {
        const Complex g0 = Complex{0.0, -nu2 * k} * uy_wall_hat[k];
        ModeSolve ms = solve_mode(k, rhs, ModeBC::neumann(g0, {0, 0}), g);
        for (int j = 0; j < n; ++j) q.mode(k, j) = ms.solution[j];
    }
    return q;
}

double grad_q_l2sq_exact(std::span<const Complex> uy_wall_hat, double nu2, const Grid& g) {
    if (static_cast<int>(uy_wall_hat.size()) != g.nkx())
        throw std::invalid_argument("grad_q_l2sq_exact: wall data length mismatch");
    std::vector<double> prof, dprof;
    const auto& w = g.y_weights();
    double acc = 0.0;
    for (int k = 1; k < g.nkx(); ++k) {
        q_mode_profile(k, g.y_nodes(), prof, &dprof);
        const double amp2 = nu2 * nu2 * std::norm(uy_wall_hat[k]);
        if (amp2 == 0.0) continue;
        double modesum = 0.0;
        for (int j = 0; j < g.ny(); ++j)
            modesum += w[j] * (dprof[j] * dprof[j] + double(k) * k * prof[j] * prof[j]);
        const double c = (k == g.nx() / 2) ? 1.0 : 2.0;  // conjugate pair weight
        acc += c * amp2 * modesum;
    }
    return kTwoPi * acc;
}

std::vector<Complex> wall_uy_hat(const FlowState& s) {
    const Grid& g = *s.grid;
    auto [uh, vh] = velocity_spectral(s);
    double b0, b1, b2;
    g.ddy_wall_row(false, b0, b1, b2);
    std::vector<Complex> out(g.nkx());
    for (int k = 0; k < g.nkx(); ++k)
        out[k] = b0 * uh.mode(k, 0) + b1 * uh.mode(k, 1) + b2 * uh.mode(k, 2);
    return out;
}

std::vector<Complex> wall_uy_hat_from_vorticity(const FlowState& s) {
    const Grid& g = *s.grid;
    std::vector<Complex> out(g.nkx());
    for (int k = 0; k < g.nkx(); ++k) out[k] = -s.omega.mode(k, 0);
    return out;
}

PressurePair pressure_decomposition(const FlowState& s) {
    auto [u, v] = velocity_from_state(s);
    PressureSolve ps = solve_flow_pressure(u, v);
    if (s.regime == Regime::Viscous) {
        const auto uy0 = wall_uy_hat(s);
        ScalarField q = to_physical(boundary_layer_pressure_exact(uy0, s.nu2, s.grid));
        return {std::move(ps.p), std::move(q), ps.k0_compat_residual};
    }
    ScalarField q(s.grid, Rep::Physical);
    return {std::move(ps.p), std::move(q), ps.k0_compat_residual};
}

}  // namespace acns
