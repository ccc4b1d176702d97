#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "acns/grid.hpp"

namespace acns {

using Complex = std::complex<double>;

enum class Rep { Physical, XSpectral };

/// Boundary-condition descriptor carried by a field. Purely informational;
/// operators that need a condition enforce it themselves.
enum class BcTag { None, DirichletBottom, NeumannTop, BothWallsZero };

/// Scalar on the grid with a physical / x-spectral dual representation.
/// Physical data is nx*ny reals, y index slowest; x-spectral data is the
/// conjugate-symmetric half-spectrum, (nx/2+1)*ny complex values, y slowest.
/// Fields are values: transforms and operators return new fields.
class ScalarField {
  public:
    ScalarField(GridPtr grid, Rep rep, BcTag bc = BcTag::None);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    Rep rep() const { return rep_; }
    BcTag bc_tag() const { return bc_; }
    void set_bc_tag(BcTag bc) { bc_ = bc; }

    double& at(int ix, int iy) { return phys_[static_cast<size_t>(iy) * grid_->nx() + ix]; }
    double at(int ix, int iy) const { return phys_[static_cast<size_t>(iy) * grid_->nx() + ix]; }
    Complex& mode(int k, int iy) { return spec_[static_cast<size_t>(iy) * grid_->nkx() + k]; }
    Complex mode(int k, int iy) const {
        return spec_[static_cast<size_t>(iy) * grid_->nkx() + k];
    }

    std::vector<double>& data_physical() { return phys_; }
    const std::vector<double>& data_physical() const { return phys_; }
    std::vector<Complex>& data_spectral() { return spec_; }
    const std::vector<Complex>& data_spectral() const { return spec_; }

  private:
    GridPtr grid_;
    Rep rep_;
    BcTag bc_;
    std::vector<double> phys_;
    std::vector<Complex> spec_;
};

ScalarField to_spectral(const ScalarField& f);
ScalarField to_physical(const ScalarField& f);

/// Zeroes every mode with |k| > floor(nx/3) (2/3 rule). Input x-spectral.
ScalarField dealias(const ScalarField& f);

/// Spectral x-derivative (input and output x-spectral). The Nyquist mode is
/// zeroed, which keeps the operator exactly skew-adjoint on the node grid.
ScalarField ddx(const ScalarField& f);

/// Column-wise application of the grid's y-derivative operators, in either
/// representation.
ScalarField ddy(const ScalarField& f);
ScalarField d2y(const ScalarField& f);
ScalarField ddy_flux(const ScalarField& f);

/// L^p norm over the channel, (sum_x sum_y w_y dx |f|^p)^{1/p}. Physical rep.
double norm_lp(const ScalarField& f, double p);
double norm_linf(const ScalarField& f);

/// ||f||_2^2 evaluated in spectral space: 2*pi * sum_k c_k * int |fhat^k|^2 dy
/// with c_k = 2 off the k=0 and Nyquist columns (conjugate symmetry).
double spectral_l2sq(const ScalarField& f);

/// Domain mean, (1/|Omega|) * integral of f.
double mean_value(const ScalarField& f);

enum class Regime { Viscous, Limit };

/// Full solver state for either system: streamfunction and vorticity carry
/// the k != 0 dynamics, the x-mean of u lives in mean_u. psi and omega are
/// x-spectral.
struct FlowState {
    GridPtr grid;
    ScalarField psi;
    ScalarField omega;
    std::vector<double> mean_u;
    double t = 0.0;
    double nu1 = 0.0;
    double nu2 = 0.0;
    Regime regime = Regime::Viscous;

    FlowState(GridPtr g, double nu1_, double nu2_, Regime r);
};

/// Velocity reconstruction u = ddy(psi) + mean_u, v = -ddx(psi), returned in
/// physical representation. The discrete divergence ddx(u) + ddy(v) vanishes
/// to round-off because the two derivative operators commute entry-wise.
std::pair<ScalarField, ScalarField> velocity_from_state(const FlowState& s);

/// Spectral velocity components (same construction, no inverse transform).
std::pair<ScalarField, ScalarField> velocity_spectral(const FlowState& s);

}  // namespace acns
