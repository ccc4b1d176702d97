#pragma once

#include <memory>
#include <span>
#include <vector>

namespace acns {

/// Discretization of the channel [-pi,pi] x [0,1]: uniform periodic nodes in
/// x with integer wavenumbers, a wall-refined node set in y, second-order
/// difference operators in y, and trapezoidal quadrature weights.
///
/// Immutable after construction; safe to share read-only across threads.
class Grid {
  public:
    Grid(int nx, int ny, double stretch);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double stretch() const { return stretch_; }

    /// Number of retained complex modes in the half-spectrum, nx/2 + 1.
    int nkx() const { return nx_ / 2 + 1; }

    double dx() const { return dx_; }

    const std::vector<double>& x_nodes() const { return x_; }
    const std::vector<double>& y_nodes() const { return y_; }
    /// Trapezoidal quadrature weights on the y nodes; they sum to 1.
    const std::vector<double>& y_weights() const { return w_; }
    /// Signed integer wavenumbers {-nx/2+1, ..., nx/2} in FFT storage order
    /// (k = 0, 1, ..., nx/2, -nx/2+1, ..., -1).
    const std::vector<int>& wavenumbers() const { return wavenumbers_; }
    /// 2/3-rule mask over the half-spectrum: true iff |k| <= floor(nx/3).
    const std::vector<bool>& dealias_mask() const { return dealias_mask_; }
    int dealias_cutoff() const { return nx_ / 3; }

    double min_dy() const { return min_dy_; }
    /// Spacing of the first cell at the bottom wall, y_1 - y_0.
    double wall_dy() const { return y_[1] - y_[0]; }

    /// d/dy: second-order centered differences on the stretched node set,
    /// one-sided second-order stencils at the walls.
    void ddy(std::span<const double> column, std::span<double> out) const;
    /// d2/dy2: conservative second-order three-point interior stencil
    /// (tridiagonal), one-sided second-order four-point rows at the walls.
    void d2y(std::span<const double> column, std::span<double> out) const;
    /// Negative quadrature adjoint of ddy: -W^{-1} D^T W. Conservative
    /// (divergence-form) derivative; pairing it with ddy makes the split
    /// advection operator exactly skew in the weighted inner product.
    void ddy_flux(std::span<const double> column, std::span<double> out) const;

    std::vector<double> ddy(std::span<const double> column) const;
    std::vector<double> d2y(std::span<const double> column) const;
    std::vector<double> ddy_flux(std::span<const double> column) const;

    /// Quadrature of a single y-column.
    double integrate_y(std::span<const double> column) const;

    /// Coefficients of the interior d2y row j (sub, diag, super), used to
    /// assemble tridiagonal Helmholtz systems. Valid for 0 < j < ny-1.
    void d2y_row(int j, double& sub, double& diag, double& sup) const;
    /// Coefficients of the one-sided ddy row at the bottom (j=0) or top
    /// (j=ny-1) wall; the three weights multiply the three nodes nearest
    /// the wall, ordered away from it.
    void ddy_wall_row(bool top, double& c0, double& c1, double& c2) const;

    /// Row-wise variants of the y-operators for data laid out [iy][col]
    /// with rowlen contiguous columns per y node (physical or spectral rows).
    template <class T>
    void ddy_rows(const T* in, T* out, int rowlen) const {
        const int n = ny_;
        auto row = [&](const T* base, int j) { return base + static_cast<size_t>(j) * rowlen; };
        for (int c = 0; c < rowlen; ++c)
            row(out, 0)[c] = d1_bot_[0] * row(in, 0)[c] + d1_bot_[1] * row(in, 1)[c] +
                             d1_bot_[2] * row(in, 2)[c];
        for (int j = 1; j < n - 1; ++j) {
            const double cm = d1_cm_[j], cp = d1_cp_[j];
            const T* rm = row(in, j - 1);
            const T* rp = row(in, j + 1);
            T* ro = row(out, j);
            for (int c = 0; c < rowlen; ++c) ro[c] = cm * rm[c] + cp * rp[c];
        }
        for (int c = 0; c < rowlen; ++c)
            row(out, n - 1)[c] = d1_top_[0] * row(in, n - 3)[c] + d1_top_[1] * row(in, n - 2)[c] +
                                 d1_top_[2] * row(in, n - 1)[c];
    }

    template <class T>
    void d2y_rows(const T* in, T* out, int rowlen) const {
        const int n = ny_;
        auto row = [&](const T* base, int j) { return base + static_cast<size_t>(j) * rowlen; };
        for (int c = 0; c < rowlen; ++c)
            row(out, 0)[c] = d2_bot_[0] * row(in, 0)[c] + d2_bot_[1] * row(in, 1)[c] +
                             d2_bot_[2] * row(in, 2)[c] + d2_bot_[3] * row(in, 3)[c];
        for (int j = 1; j < n - 1; ++j) {
            const double cs = d2_sub_[j], cd = d2_diag_[j], cp = d2_sup_[j];
            const T* rm = row(in, j - 1);
            const T* r0 = row(in, j);
            const T* rp = row(in, j + 1);
            T* ro = row(out, j);
            for (int c = 0; c < rowlen; ++c) ro[c] = cs * rm[c] + cd * r0[c] + cp * rp[c];
        }
        for (int c = 0; c < rowlen; ++c)
            row(out, n - 1)[c] = d2_top_[0] * row(in, n - 4)[c] + d2_top_[1] * row(in, n - 3)[c] +
                                 d2_top_[2] * row(in, n - 2)[c] + d2_top_[3] * row(in, n - 1)[c];
    }

    template <class T>
    void ddy_flux_rows(const T* in, T* out, int rowlen) const {
        const int n = ny_;
        auto row = [&](const T* base, int j) { return base + static_cast<size_t>(j) * rowlen; };
        for (int j = 0; j < n; ++j) {
            T* ro = row(out, j);
            for (int c = 0; c < rowlen; ++c) ro[c] = T{};
        }
        for (int c = 0; c < rowlen; ++c) {
            const T zb = w_[0] * row(in, 0)[c];
            row(out, 0)[c] -= d1_bot_[0] * zb;
            row(out, 1)[c] -= d1_bot_[1] * zb;
            row(out, 2)[c] -= d1_bot_[2] * zb;
            const T zt = w_[n - 1] * row(in, n - 1)[c];
            row(out, n - 3)[c] -= d1_top_[0] * zt;
            row(out, n - 2)[c] -= d1_top_[1] * zt;
            row(out, n - 1)[c] -= d1_top_[2] * zt;
        }
        for (int j = 1; j < n - 1; ++j) {
            const double cm = d1_cm_[j] * w_[j], cp = d1_cp_[j] * w_[j];
            const T* r0 = row(in, j);
            T* rm = row(out, j - 1);
            T* rp = row(out, j + 1);
            for (int c = 0; c < rowlen; ++c) {
                rm[c] -= cm * r0[c];
                rp[c] -= cp * r0[c];
            }
        }
        for (int j = 0; j < n; ++j) {
            const double inv = 1.0 / w_[j];
            T* ro = row(out, j);
            for (int c = 0; c < rowlen; ++c) ro[c] *= inv;
        }
    }

  private:
    int nx_;
    int ny_;
    double stretch_;
    double dx_;
    double min_dy_;
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> w_;
    std::vector<int> wavenumbers_;
    std::vector<bool> dealias_mask_;

    // ddy stencils: row j applies (cm,c0,cp) to nodes (j-1,j,j+1) in the
    // interior; wall rows apply (b0,b1,b2) to the three nodes nearest the wall.
    std::vector<double> d1_cm_, d1_c0_, d1_cp_;
    double d1_bot_[3];
    double d1_top_[3];
    // d2y: interior (sub,diag,sup); wall rows are 4-point one-sided.
    std::vector<double> d2_sub_, d2_diag_, d2_sup_;
    double d2_bot_[4];
    double d2_top_[4];
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds the grid. nx must be even and >= 8 (real-to-complex transform
/// symmetry), ny >= 16, 0 <= stretch < 1. The y nodes follow
///   y_j = [s_j + stretch * (s_j - sin(pi s_j)/pi)] / (1 + stretch),
/// s_j = j/(ny-1), which clusters nodes toward y=0 as stretch -> 1 and is
/// uniform for stretch = 0.
GridPtr build_grid(int nx, int ny, double stretch);

}  // namespace acns
