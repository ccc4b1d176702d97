#include "acns/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace acns::fft {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
};

// Plan creation is not thread-safe in FFTW; execution via the new-array
// interface is. Plans are built once per (nx, ny) with FFTW_UNALIGNED so
// they can run on caller-owned buffers, and FFTW_ESTIMATE so planning is
// deterministic across runs.
const PlanPair& plans_for(int nx, int ny) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({nx, ny});
    if (it != cache.end()) return it->second;

    const int nkx = nx / 2 + 1;
    std::vector<double> rbuf(static_cast<size_t>(nx) * ny);
    std::vector<std::complex<double>> cbuf(static_cast<size_t>(nkx) * ny);
    auto* cptr = reinterpret_cast<fftw_complex*>(cbuf.data());

    PlanPair p;
    const int n[1] = {nx};
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.fwd = fftw_plan_many_dft_r2c(1, n, ny, rbuf.data(), nullptr, 1, nx, cptr, nullptr, 1, nkx,
                                   flags);
    p.inv = fftw_plan_many_dft_c2r(1, n, ny, cptr, nullptr, 1, nkx, rbuf.data(), nullptr, 1, nx,
                                   flags | FFTW_PRESERVE_INPUT);
    return cache.emplace(std::make_pair(nx, ny), p).first->second;
}

}  // namespace

void forward(const Grid& grid, const double* phys, std::complex<double>* spec) {
    const int nx = grid.nx();
    const int ny = grid.ny();
    const int nkx = grid.nkx();
    const PlanPair& p = plans_for(nx, ny);
    fftw_execute_dft_r2c(p.fwd, const_cast<double*>(phys),
                         reinterpret_cast<fftw_complex*>(spec));
    // FFTW sums e^{-2 pi i jk/nx} over node index j; with x_j = -pi + j dx the
    // continuum coefficient picks up a (-1)^k phase and the 1/nx scale.
    for (int iy = 0; iy < ny; ++iy) {
        std::complex<double>* row = spec + static_cast<size_t>(iy) * nkx;
        for (int k = 0; k < nkx; ++k) {
            const double s = (k % 2 == 0) ? 1.0 : -1.0;
            row[k] *= s / nx;
        }
    }
}

void inverse(const Grid& grid, const std::complex<double>* spec, double* phys) {
    const int nx = grid.nx();
    const int ny = grid.ny();
    const int nkx = grid.nkx();
    const PlanPair& p = plans_for(nx, ny);
    std::vector<std::complex<double>> scratch(static_cast<size_t>(nkx) * ny);
    for (int iy = 0; iy < ny; ++iy) {
        const std::complex<double>* row = spec + static_cast<size_t>(iy) * nkx;
        std::complex<double>* srow = scratch.data() + static_cast<size_t>(iy) * nkx;
        for (int k = 0; k < nkx; ++k) {
            const double s = (k % 2 == 0) ? 1.0 : -1.0;
            srow[k] = s * row[k];
        }
    }
    fftw_execute_dft_c2r(p.inv, reinterpret_cast<fftw_complex*>(scratch.data()), phys);
}

}  // namespace acns::fft
