#include "hydrostat/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace hydrostat {
namespace {

// FFTW plan creation is not thread-safe; executing plans on distinct buffers
// is. Plans are cached per (dims, direction) and reused via the new-array
// execute interface.
std::mutex g_plan_mutex;

fftw_plan plan_for(const Grid3& g, int sign, fftw_complex* buf) {
    static std::map<std::tuple<int, int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto key = std::make_tuple(g.nx, g.ny, g.nz, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // Row-major dims (nz, ny, nx): ix is the fastest-varying index.
    fftw_plan p = fftw_plan_dft_3d(g.nz, g.ny, g.nx, buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, p);
    return p;
}

void run_fft(const Grid3& g, int sign, std::vector<Complex>& data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan p = plan_for(g, sign, buf);
    fftw_execute_dft(p, buf, buf);
}

// The vertical basis is exp(i*m*pi*z/h) with z_k = -h + 2h*k/nz, so the DFT
// coefficient picks up a phase exp(-i*m*pi) = (-1)^m relative to the basis
// coefficient. nz is even, so the factor depends only on the storage index.
double z_phase(int iz) { return (iz % 2 == 0) ? 1.0 : -1.0; }

} // namespace

SpectralField3D forward(const PhysicalField3D& f, Parity parity) {
    const Grid3& g = f.grid;
    SpectralField3D out(g, parity);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        out.coeffs[i] = Complex{f.values[i], 0.0};
    run_fft(g, FFTW_FORWARD, out.coeffs);
    const double norm = 1.0 / static_cast<double>(g.size());
    for (int iz = 0; iz < g.nz; ++iz) {
        const double s = z_phase(iz) * norm;
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                out.at(ix, iy, iz) *= s;
    }
    return out;
}

PhysicalField3D inverse(const SpectralField3D& f) {
    const Grid3& g = f.grid;
    std::vector<Complex> work(f.coeffs);
    for (int iz = 0; iz < g.nz; ++iz) {
        const double s = z_phase(iz);
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                work[g.index(ix, iy, iz)] *= s;
    }
    run_fft(g, FFTW_BACKWARD, work);
    PhysicalField3D out(g);
    for (std::size_t i = 0; i < work.size(); ++i)
        out.values[i] = work[i].real();
    return out;
}

} // namespace hydrostat
