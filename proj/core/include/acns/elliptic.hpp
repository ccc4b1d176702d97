#pragma once

#include <span>
#include <vector>

#include "acns/field.hpp"
#include "acns/grid.hpp"

namespace acns {

/// Boundary data for a per-mode two-point boundary value problem.
/// end0 sits at y=0, end1 at y=1.
struct ModeBC {
    enum class Kind { Dirichlet, Neumann };
    Kind kind0 = Kind::Dirichlet;
    Complex value0{0.0, 0.0};
    Kind kind1 = Kind::Dirichlet;
    Complex value1{0.0, 0.0};

    static ModeBC dirichlet(Complex v0, Complex v1) {
        return {Kind::Dirichlet, v0, Kind::Dirichlet, v1};
    }
    static ModeBC neumann(Complex v0, Complex v1) {
        return {Kind::Neumann, v0, Kind::Neumann, v1};
    }
};

struct ModeSolve {
    std::vector<Complex> solution;
    /// integral of rhs minus the flux difference; meaningful for the singular
    /// k=0 Neumann-Neumann case, zero otherwise.
    double compat_residual = 0.0;
};

/// Solves f_yy - k^2 f = rhs on the stretched grid with the given boundary
/// conditions (tridiagonal, second order). For k=0 with Neumann data at both
/// ends the constant nullspace is removed: the rhs is projected onto the
/// compatible range, the solution is normalized to zero y-mean, and the
/// compatibility residual is reported. rhs[0] and rhs[ny-1] are ignored on
/// Dirichlet ends. Safe to call concurrently.
ModeSolve solve_mode(int k, std::span<const Complex> rhs, const ModeBC& bc, const Grid& grid);

/// Reusable tridiagonal Helmholtz solver for alpha*f + beta*f_yy on the
/// interior with a Dirichlet or Neumann row at each wall. Boundary values are
/// supplied at solve time; solve() is const and reentrant.
class Helmholtz1D {
  public:
    Helmholtz1D(const Grid& grid, double alpha, double beta, ModeBC::Kind bottom,
                ModeBC::Kind top);

    /// rhs must have length ny; entries under Dirichlet rows are ignored.
    template <class T>
    void solve(std::span<const T> rhs, T bc0, T bc1, std::span<T> out) const;

  private:
    const Grid* grid_;
    ModeBC::Kind bottom_, top_;
    int n_;
    // Factored tridiagonal system (Thomas algorithm).
    std::vector<double> sub_, cp_, invm_;
    // Neumann elimination couplings: rhs[wall] -= coupling * rhs[neighbor].
    double bot_coupling_ = 0.0;
    double top_coupling_ = 0.0;
};

/// Inverts omega = -laplacian(psi) per mode k != 0 with psi=0 at both walls
/// (wall streamline values in both regimes; the viscous no-slip condition is
/// enforced by the wall-vorticity closure in the stepper, not here).
/// The k=0 row of psi is zero: the mean flow lives elsewhere.
ScalarField streamfunction_from_vorticity(const ScalarField& omega, Regime regime,
                                          const Grid& grid);

struct PressureSolve {
    ScalarField p;  // physical representation, zero mean
    double k0_compat_residual = 0.0;
};

/// Flow-pressure Neumann problem: laplacian(p) = -2(u u_x)_x - 2(u v_x)_y
/// with p_y = 0 at both walls and zero domain mean. Products are formed in
/// physical space from dealiased factors. u, v physical and divergence-free.
PressureSolve solve_flow_pressure(const ScalarField& u, const ScalarField& v);

/// Boundary-layer pressure from the closed form of the per-mode ODE
/// qhat_yy - k^2 qhat = 0, qhat_y(1)=0, qhat_y(0) = -i nu2 k uyhat(0):
///   qhat^k(y) = i nu2 sign(k) uyhat^k(0) cosh(|k|(1-y)) / sinh(|k|),
/// evaluated through exponentials of non-positive arguments so large |k|
/// cannot overflow. The k=0 component is identically zero. Returns q in
/// x-spectral representation with zero domain mean.
ScalarField boundary_layer_pressure_exact(std::span<const Complex> uy_wall_hat, double nu2,
                                          const GridPtr& grid);

/// Same boundary-layer pressure obtained by direct BVP solves of the mode
/// ODE (independent solution path, used to cross-check the closed form).
ScalarField boundary_layer_pressure_bvp(std::span<const Complex> uy_wall_hat, double nu2,
                                        const GridPtr& grid);

/// ||grad q||_2^2 evaluated from the closed-form modes; the y-derivative of
/// the cosh/sinh profile is used analytically, so no finite-difference error
/// enters this quantity.
double grad_q_l2sq_exact(std::span<const Complex> uy_wall_hat, double nu2, const Grid& grid);

/// Wall shear spectrum uyhat^k(0) from the one-sided second-order stencil
/// applied to the spectral velocity.
std::vector<Complex> wall_uy_hat(const FlowState& s);
/// Cross-check variant: u_y(x,0) = -omega(x,0), valid because v_x(x,0) = 0.
std::vector<Complex> wall_uy_hat_from_vorticity(const FlowState& s);

/// Flow pressure and boundary-layer pressure recovered diagnostically from a
/// state. In the limit regime q is identically zero.
struct PressurePair {
    ScalarField p;
    ScalarField q;
    double k0_compat_residual = 0.0;
};
PressurePair pressure_decomposition(const FlowState& s);

}  // namespace acns
