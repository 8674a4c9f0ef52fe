#pragma once

#include <cstddef>
#include <stdexcept>

namespace hydrostat {

/// Collocation grid for the periodic box (0,1) x (0,1) x (-h,h).
///
/// Horizontal periods are fixed at 1; the vertical period is 2h. Grid points
/// are x_i = i/nx, y_j = j/ny, z_k = -h + 2h k/nz, so z = -h lies on the grid
/// and restriction to the physical half-domain (-h,0) is exact.
struct Grid3 {
    int nx = 0;
    int ny = 0;
    int nz = 0;
    double h = 1.0;

    Grid3() = default;
    Grid3(int nx_, int ny_, int nz_, double h_) : nx(nx_), ny(ny_), nz(nz_), h(h_) {
        if (nx < 4 || ny < 4 || nz < 4 || nx % 2 || ny % 2 || nz % 2)
            throw std::invalid_argument("Grid3: dimensions must be even and >= 4");
        if (h <= 0.0)
            throw std::invalid_argument("Grid3: half-height h must be positive");
    }

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny * nz; }
    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(iz) * ny + iy) * nx + ix;
    }

    // Signed integer wavenumber for a storage index along one axis.
    static int wavenumber(int i, int n) { return (i <= n / 2) ? i : i - n; }
    // Storage index of the reflected wavenumber -k (Nyquist maps to itself).
    static int reflect(int i, int n) { return (i == 0) ? 0 : n - i; }

    double x(int ix) const { return static_cast<double>(ix) / nx; }
    double y(int iy) const { return static_cast<double>(iy) / ny; }
    double z(int iz) const { return -h + 2.0 * h * iz / nz; }

    double dx() const { return 1.0 / nx; }
    double dy() const { return 1.0 / ny; }
    double dz() const { return 2.0 * h / nz; }

    /// Cell volume of the collocation grid (quadrature weight).
    double cell_volume() const { return dx() * dy() * dz(); }
    /// |Omega| = 1 * 1 * 2h.
    double volume() const { return 2.0 * h; }

    bool operator==(const Grid3&) const = default;
};

} // namespace hydrostat
