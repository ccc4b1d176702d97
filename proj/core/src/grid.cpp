#include "acns/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace acns {

namespace {

constexpr double kPi = std::numbers::pi;

// Fornberg finite-difference weights: derivative of order m at x0 from the
// given nodes. Exact for polynomials of degree nodes.size()-1.
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int m) {
    const int n = static_cast<int>(nodes.size());
    std::vector<double> c(static_cast<size_t>(n) * (m + 1), 0.0);
    auto C = [&](int i, int j) -> double& { return c[static_cast<size_t>(i) * (m + 1) + j]; };

    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    C(0, 0) = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
                C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k)
                C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
            C(j, 0) = c4 * C(j, 0) / c3;
        }
        c1 = c2;
    }

    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = C(i, m);
    return w;
}

}  // namespace

Grid::Grid(int nx, int ny, double stretch) : nx_(nx), ny_(ny), stretch_(stretch) {
    if (nx < 8 || nx % 2 != 0)
        throw std::invalid_argument("Grid: nx must be even and >= 8, got " + std::to_string(nx));
    if (ny < 16)
        throw std::invalid_argument("Grid: ny must be >= 16, got " + std::to_string(ny));
    if (!(stretch >= 0.0 && stretch < 1.0))
        throw std::invalid_argument("Grid: stretch must lie in [0,1), got " + std::to_string(stretch));

    dx_ = 2.0 * kPi / nx;
    x_.resize(nx);
    for (int i = 0; i < nx; ++i) x_[i] = -kPi + i * dx_;

    wavenumbers_.resize(nx);
    dealias_mask_.resize(nx);
    const int cutoff = nx / 3;
    for (int i = 0; i < nx; ++i) {
        const int k = (i <= nx / 2) ? i : i - nx;
        wavenumbers_[i] = k;
        dealias_mask_[i] = std::abs(k) <= cutoff;
    }

    // Wall-clustered mapping, rescaled so y spans [0,1] exactly.
    y_.resize(ny);
    for (int j = 0; j < ny; ++j) {
        const double s = static_cast<double>(j) / (ny - 1);
        y_[j] = (s + stretch * (s - std::sin(kPi * s) / kPi)) / (1.0 + stretch);
    }
    y_.front() = 0.0;
    y_.back() = 1.0;

    min_dy_ = 1.0;
    for (int j = 0; j + 1 < ny; ++j) {
        const double h = y_[j + 1] - y_[j];
        if (h <= 0.0) throw std::invalid_argument("Grid: y nodes not strictly increasing");
        min_dy_ = std::min(min_dy_, h);
    }

    // Trapezoidal weights on the stretched nodes.
    w_.resize(ny);
    w_[0] = 0.5 * (y_[1] - y_[0]);
    for (int j = 1; j < ny - 1; ++j) w_[j] = 0.5 * (y_[j + 1] - y_[j - 1]);
    w_[ny - 1] = 0.5 * (y_[ny - 1] - y_[ny - 2]);

    // First derivative: centered over (j-1, j+1) in the interior. The row has
    // no diagonal entry, which makes the quadrature pairing with ddy_flux
    // telescope exactly away from the walls.
    d1_cm_.assign(ny, 0.0);
    d1_c0_.assign(ny, 0.0);
    d1_cp_.assign(ny, 0.0);
    for (int j = 1; j < ny - 1; ++j) {
        const double span = y_[j + 1] - y_[j - 1];
        d1_cm_[j] = -1.0 / span;
        d1_cp_[j] = 1.0 / span;
    }
    {
        auto wb = fd_weights(y_[0], std::span<const double>(y_.data(), 3), 1);
        d1_bot_[0] = wb[0]; d1_bot_[1] = wb[1]; d1_bot_[2] = wb[2];
        auto wt = fd_weights(y_[ny - 1], std::span<const double>(y_.data() + ny - 3, 3), 1);
        d1_top_[0] = wt[0]; d1_top_[1] = wt[1]; d1_top_[2] = wt[2];
    }

    // Second derivative: conservative flux form on the interior (exact on
    // quadratics for any node placement, symmetric under the trapezoid
    // weights), four-point one-sided rows at the walls.
    d2_sub_.assign(ny, 0.0);
    d2_diag_.assign(ny, 0.0);
    d2_sup_.assign(ny, 0.0);
    for (int j = 1; j < ny - 1; ++j) {
        const double hm = y_[j] - y_[j - 1];
        const double hp = y_[j + 1] - y_[j];
        const double wj = 0.5 * (hm + hp);
        d2_sub_[j] = 1.0 / (hm * wj);
        d2_sup_[j] = 1.0 / (hp * wj);
        d2_diag_[j] = -d2_sub_[j] - d2_sup_[j];
    }
    {
        auto wb = fd_weights(y_[0], std::span<const double>(y_.data(), 4), 2);
        for (int i = 0; i < 4; ++i) d2_bot_[i] = wb[i];
        auto wt = fd_weights(y_[ny - 1], std::span<const double>(y_.data() + ny - 4, 4), 2);
        for (int i = 0; i < 4; ++i) d2_top_[i] = wt[i];
    }
}

void Grid::ddy(std::span<const double> f, std::span<double> out) const {
    if (static_cast<int>(f.size()) != ny_ || static_cast<int>(out.size()) != ny_)
        throw std::invalid_argument("ddy: column length mismatch");
    const int n = ny_;
    out[0] = d1_bot_[0] * f[0] + d1_bot_[1] * f[1] + d1_bot_[2] * f[2];
    for (int j = 1; j < n - 1; ++j)
        out[j] = d1_cm_[j] * f[j - 1] + d1_cp_[j] * f[j + 1];
    out[n - 1] = d1_top_[0] * f[n - 3] + d1_top_[1] * f[n - 2] + d1_top_[2] * f[n - 1];
}

void Grid::d2y(std::span<const double> f, std::span<double> out) const {
    if (static_cast<int>(f.size()) != ny_ || static_cast<int>(out.size()) != ny_)
        throw std::invalid_argument("d2y: column length mismatch");
    const int n = ny_;
    out[0] = d2_bot_[0] * f[0] + d2_bot_[1] * f[1] + d2_bot_[2] * f[2] + d2_bot_[3] * f[3];
    for (int j = 1; j < n - 1; ++j)
        out[j] = d2_sub_[j] * f[j - 1] + d2_diag_[j] * f[j] + d2_sup_[j] * f[j + 1];
    out[n - 1] = d2_top_[0] * f[n - 4] + d2_top_[1] * f[n - 3] + d2_top_[2] * f[n - 2] +
                 d2_top_[3] * f[n - 1];
}

void Grid::ddy_flux(std::span<const double> z, std::span<double> out) const {
    if (static_cast<int>(z.size()) != ny_ || static_cast<int>(out.size()) != ny_)
        throw std::invalid_argument("ddy_flux: column length mismatch");
    const int n = ny_;
    // out = -W^{-1} D^T W z, assembled column by column of D.
    for (int j = 0; j < n; ++j) out[j] = 0.0;
    // Wall rows of D scatter into the three nodes nearest each wall.
    const double zb = w_[0] * z[0];
    out[0] -= d1_bot_[0] * zb;
    out[1] -= d1_bot_[1] * zb;
    out[2] -= d1_bot_[2] * zb;
    const double zt = w_[n - 1] * z[n - 1];
    out[n - 3] -= d1_top_[0] * zt;
    out[n - 2] -= d1_top_[1] * zt;
    out[n - 1] -= d1_top_[2] * zt;
    for (int j = 1; j < n - 1; ++j) {
        const double zj = w_[j] * z[j];
        out[j - 1] -= d1_cm_[j] * zj;
        out[j + 1] -= d1_cp_[j] * zj;
    }
    for (int j = 0; j < n; ++j) out[j] /= w_[j];
}

std::vector<double> Grid::ddy(std::span<const double> column) const {
    std::vector<double> out(ny_);
    ddy(column, out);
    return out;
}

std::vector<double> Grid::d2y(std::span<const double> column) const {
    std::vector<double> out(ny_);
    d2y(column, out);
    return out;
}

std::vector<double> Grid::ddy_flux(std::span<const double> column) const {
    std::vector<double> out(ny_);
    ddy_flux(column, out);
    return out;
}

double Grid::integrate_y(std::span<const double> column) const {
    if (static_cast<int>(column.size()) != ny_)
        throw std::invalid_argument("integrate_y: column length mismatch");
    double s = 0.0;
    for (int j = 0; j < ny_; ++j) s += w_[j] * column[j];
    return s;
}

void Grid::d2y_row(int j, double& sub, double& diag, double& sup) const {
    sub = d2_sub_[j];
    diag = d2_diag_[j];
    sup = d2_sup_[j];
}

void Grid::ddy_wall_row(bool top, double& c0, double& c1, double& c2) const {
    if (top) {
        c0 = d1_top_[2];
        c1 = d1_top_[1];
        c2 = d1_top_[0];
    } else {
        c0 = d1_bot_[0];
        c1 = d1_bot_[1];
        c2 = d1_bot_[2];
    }
}

GridPtr build_grid(int nx, int ny, double stretch) {
    return std::make_shared<const Grid>(nx, ny, stretch);
}

}  // namespace acns
