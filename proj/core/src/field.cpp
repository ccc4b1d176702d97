#include "acns/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "acns/fft.hpp"

namespace acns {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_rep(const ScalarField& f, Rep rep, const char* what) {
    if (f.rep() != rep)
        throw std::invalid_argument(std::string(what) + ": field has the wrong representation");
}
}  // namespace

ScalarField::ScalarField(GridPtr grid, Rep rep, BcTag bc)
    : grid_(std::move(grid)), rep_(rep), bc_(bc) {
    if (rep_ == Rep::Physical)
        phys_.assign(static_cast<size_t>(grid_->nx()) * grid_->ny(), 0.0);
    else
        spec_.assign(static_cast<size_t>(grid_->nkx()) * grid_->ny(), Complex{0.0, 0.0});
}

ScalarField to_spectral(const ScalarField& f) {
    require_rep(f, Rep::Physical, "to_spectral");
    ScalarField out(f.grid_ptr(), Rep::XSpectral, f.bc_tag());
    fft::forward(f.grid(), f.data_physical().data(), out.data_spectral().data());
    return out;
}

ScalarField to_physical(const ScalarField& f) {
    require_rep(f, Rep::XSpectral, "to_physical");
    ScalarField out(f.grid_ptr(), Rep::Physical, f.bc_tag());
    fft::inverse(f.grid(), f.data_spectral().data(), out.data_physical().data());
    return out;
}

ScalarField dealias(const ScalarField& f) {
    require_rep(f, Rep::XSpectral, "dealias");
    ScalarField out = f;
    const Grid& g = f.grid();
    const int cutoff = g.dealias_cutoff();
    for (int iy = 0; iy < g.ny(); ++iy)
        for (int k = cutoff + 1; k < g.nkx(); ++k) out.mode(k, iy) = Complex{0.0, 0.0};
    return out;
}

ScalarField ddx(const ScalarField& f) {
    require_rep(f, Rep::XSpectral, "ddx");
    const Grid& g = f.grid();
    ScalarField out(f.grid_ptr(), Rep::XSpectral, BcTag::None);
    const int nyq = g.nx() / 2;
    for (int iy = 0; iy < g.ny(); ++iy)
        for (int k = 0; k < g.nkx(); ++k)
            out.mode(k, iy) =
                (k == nyq) ? Complex{0.0, 0.0} : Complex{0.0, double(k)} * f.mode(k, iy);
    return out;
}

ScalarField ddy(const ScalarField& f) {
    const Grid& g = f.grid();
    ScalarField out(f.grid_ptr(), f.rep(), BcTag::None);
    if (f.rep() == Rep::Physical)
        g.ddy_rows(f.data_physical().data(), out.data_physical().data(), g.nx());
    else
        g.ddy_rows(f.data_spectral().data(), out.data_spectral().data(), g.nkx());
    return out;
}

ScalarField d2y(const ScalarField& f) {
    const Grid& g = f.grid();
    ScalarField out(f.grid_ptr(), f.rep(), BcTag::None);
    if (f.rep() == Rep::Physical)
        g.d2y_rows(f.data_physical().data(), out.data_physical().data(), g.nx());
    else
        g.d2y_rows(f.data_spectral().data(), out.data_spectral().data(), g.nkx());
    return out;
}

ScalarField ddy_flux(const ScalarField& f) {
    const Grid& g = f.grid();
    ScalarField out(f.grid_ptr(), f.rep(), BcTag::None);
    if (f.rep() == Rep::Physical)
        g.ddy_flux_rows(f.data_physical().data(), out.data_physical().data(), g.nx());
    else
        g.ddy_flux_rows(f.data_spectral().data(), out.data_spectral().data(), g.nkx());
    return out;
}

double norm_lp(const ScalarField& f, double p) {
    require_rep(f, Rep::Physical, "norm_lp");
    if (p < 1.0) throw std::invalid_argument("norm_lp: p must be >= 1");
    const Grid& g = f.grid();
    const auto& w = g.y_weights();
    double acc = 0.0;
    for (int iy = 0; iy < g.ny(); ++iy) {
        double rowsum = 0.0;
        for (int ix = 0; ix < g.nx(); ++ix) rowsum += std::pow(std::abs(f.at(ix, iy)), p);
        acc += w[iy] * rowsum;
    }
    return std::pow(acc * g.dx(), 1.0 / p);
}

double norm_linf(const ScalarField& f) {
    require_rep(f, Rep::Physical, "norm_linf");
    double m = 0.0;
    for (double v : f.data_physical()) m = std::max(m, std::abs(v));
    return m;
}

double spectral_l2sq(const ScalarField& f) {
    require_rep(f, Rep::XSpectral, "spectral_l2sq");
    const Grid& g = f.grid();
    const auto& w = g.y_weights();
    const int nyq = g.nx() / 2;
    double acc = 0.0;
    for (int iy = 0; iy < g.ny(); ++iy) {
        double rowsum = 0.0;
        for (int k = 0; k < g.nkx(); ++k) {
            const double c = (k == 0 || k == nyq) ? 1.0 : 2.0;
            rowsum += c * std::norm(f.mode(k, iy));
        }
        acc += w[iy] * rowsum;
    }
    return kTwoPi * acc;
}

double mean_value(const ScalarField& f) {
    require_rep(f, Rep::Physical, "mean_value");
    const Grid& g = f.grid();
    const auto& w = g.y_weights();
    double acc = 0.0;
    for (int iy = 0; iy < g.ny(); ++iy) {
        double rowsum = 0.0;
        for (int ix = 0; ix < g.nx(); ++ix) rowsum += f.at(ix, iy);
        acc += w[iy] * rowsum;
    }
    return acc / g.nx();
}

FlowState::FlowState(GridPtr g, double nu1_, double nu2_, Regime r)
    : grid(std::move(g)),
      psi(grid, Rep::XSpectral, BcTag::BothWallsZero),
      omega(grid, Rep::XSpectral),
      mean_u(grid->ny(), 0.0),
      nu1(nu1_),
      nu2(nu2_),
      regime(r) {
    if (nu1 <= 0.0) throw std::invalid_argument("FlowState: nu1 must be positive");
    if (regime == Regime::Viscous && !(nu2 > 0.0))
        throw std::invalid_argument("FlowState: viscous regime requires nu2 > 0");
    if (regime == Regime::Limit && nu2 != 0.0)
        throw std::invalid_argument("FlowState: limit regime requires nu2 = 0");
}

std::pair<ScalarField, ScalarField> velocity_spectral(const FlowState& s) {
    const Grid& g = *s.grid;
    ScalarField u = ddy(s.psi);
    for (int iy = 0; iy < g.ny(); ++iy) u.mode(0, iy) += Complex{s.mean_u[iy], 0.0};
    ScalarField v = ddx(s.psi);
    for (auto& z : v.data_spectral()) z = -z;
    u.set_bc_tag(s.regime == Regime::Viscous ? BcTag::DirichletBottom : BcTag::None);
    v.set_bc_tag(BcTag::BothWallsZero);
    return {std::move(u), std::move(v)};
}

std::pair<ScalarField, ScalarField> velocity_from_state(const FlowState& s) {
    auto [uh, vh] = velocity_spectral(s);
    return {to_physical(uh), to_physical(vh)};
}

}  // namespace acns
