#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hydrostat/grid.hpp"

namespace hydrostat {

using Complex = std::complex<double>;

/// z-parity class of a field (evenness/oddness under z -> -z).
enum class Parity { Even, Odd, None };

inline const char* to_string(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        default: return "none";
    }
}

/// Complex Fourier coefficients of a real scalar field on the periodic box.
///
/// Coefficients are indexed by integer wavenumbers (kx, ky, m) with basis
/// exp(2*pi*i*(kx*x + ky*y)) * exp(i*m*pi*z/h); storage uses the usual DFT
/// wrap-around layout (see Grid3::wavenumber). Real fields satisfy
/// c(-k) = conj(c(k)).
struct SpectralField3D {
    Grid3 grid;
    std::vector<Complex> coeffs;
    Parity parity = Parity::None;

    SpectralField3D() = default;
    explicit SpectralField3D(const Grid3& g, Parity p = Parity::None)
        : grid(g), coeffs(g.size(), Complex{0.0, 0.0}), parity(p) {}

    Complex& at(int ix, int iy, int iz) { return coeffs[grid.index(ix, iy, iz)]; }
    const Complex& at(int ix, int iy, int iz) const { return coeffs[grid.index(ix, iy, iz)]; }

    SpectralField3D& operator+=(const SpectralField3D& o);
    SpectralField3D& operator-=(const SpectralField3D& o);
    SpectralField3D& operator*=(double s);

    friend SpectralField3D operator+(SpectralField3D a, const SpectralField3D& b) { return a += b; }
    friend SpectralField3D operator-(SpectralField3D a, const SpectralField3D& b) { return a -= b; }
    friend SpectralField3D operator*(double s, SpectralField3D a) { return a *= s; }
};

/// Real samples of a scalar field at the collocation points.
struct PhysicalField3D {
    Grid3 grid;
    std::vector<double> values;

    PhysicalField3D() = default;
    explicit PhysicalField3D(const Grid3& g) : grid(g), values(g.size(), 0.0) {}

    double& at(int ix, int iy, int iz) { return values[grid.index(ix, iy, iz)]; }
    const double& at(int ix, int iy, int iz) const { return values[grid.index(ix, iy, iz)]; }

    template <typename F>
    static PhysicalField3D sample(const Grid3& g, F&& f) {
        PhysicalField3D out(g);
        for (int iz = 0; iz < g.nz; ++iz)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int ix = 0; ix < g.nx; ++ix)
                    out.at(ix, iy, iz) = f(g.x(ix), g.y(iy), g.z(iz));
        return out;
    }
};

/// Real samples on the physical half-domain M x [-h, 0], including both
/// boundary planes: nzp planes at z_k = -h + h*k/(nzp-1).
struct HalfDomainField {
    int nx = 0;
    int ny = 0;
    int nzp = 0; // number of z planes, z = -h and z = 0 included
    double h = 1.0;
    std::vector<double> values;

    HalfDomainField() = default;
    HalfDomainField(int nx_, int ny_, int nzp_, double h_)
        : nx(nx_), ny(ny_), nzp(nzp_), h(h_),
          values(static_cast<std::size_t>(nx_) * ny_ * nzp_, 0.0) {
        if (nx < 1 || ny < 1 || nzp < 2 || h <= 0.0)
            throw std::invalid_argument("HalfDomainField: bad dimensions");
    }

    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(iz) * ny + iy) * nx + ix;
    }
    double& at(int ix, int iy, int iz) { return values[index(ix, iy, iz)]; }
    const double& at(int ix, int iy, int iz) const { return values[index(ix, iy, iz)]; }
    double z(int iz) const { return -h + h * iz / (nzp - 1); }
};

} // namespace hydrostat
