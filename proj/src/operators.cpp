#include "hydrostat/operators.hpp"

#include <cmath>
#include <numbers>

#include "hydrostat/transform.hpp"

namespace hydrostat {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

SpectralField3D& SpectralField3D::operator+=(const SpectralField3D& o) {
    if (grid != o.grid) throw std::invalid_argument("field grids differ");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    if (parity != o.parity) parity = Parity::None;
    return *this;
}

SpectralField3D& SpectralField3D::operator-=(const SpectralField3D& o) {
    if (grid != o.grid) throw std::invalid_argument("field grids differ");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    if (parity != o.parity) parity = Parity::None;
    return *this;
}

SpectralField3D& SpectralField3D::operator*=(double s) {
    for (auto& c : coeffs) c *= s;
    return *this;
}

double kappa_x(const Grid3& g, int ix) { return two_pi * Grid3::wavenumber(ix, g.nx); }
double kappa_y(const Grid3& g, int iy) { return two_pi * Grid3::wavenumber(iy, g.ny); }
double kappa_z(const Grid3& g, int iz) {
    return std::numbers::pi * Grid3::wavenumber(iz, g.nz) / g.h;
}

SpectralField3D derivative(const SpectralField3D& f, Axis axis, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("derivative: order must be 1 or 2");
    const Grid3& g = f.grid;
    SpectralField3D out(g, f.parity);
    if (axis == Axis::Z && order % 2 == 1) {
        if (f.parity == Parity::Even) out.parity = Parity::Odd;
        else if (f.parity == Parity::Odd) out.parity = Parity::Even;
    }
    const bool odd_order = (order % 2 == 1);
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                double k = 0.0;
                bool nyquist = false;
                switch (axis) {
                    case Axis::X: k = kappa_x(g, ix); nyquist = (ix == g.nx / 2); break;
                    case Axis::Y: k = kappa_y(g, iy); nyquist = (iy == g.ny / 2); break;
                    case Axis::Z: k = kappa_z(g, iz); nyquist = (iz == g.nz / 2); break;
                }
                Complex sym = (order == 1) ? Complex{0.0, k} : Complex{-k * k, 0.0};
                if (odd_order && nyquist) sym = 0.0;
                out.coeffs[g.index(ix, iy, iz)] = sym * f.coeffs[g.index(ix, iy, iz)];
            }
    return out;
}

SpectralField3D vertical_integral_from_bottom(const SpectralField3D& f, double tol) {
    const Grid3& g = f.grid;
    // Zero vertical mean is required so the primitive is 2h-periodic; a
    // violation signals a broken div_H(vbar) = 0 constraint upstream.
    double mean2 = 0.0;
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix)
            mean2 += std::norm(f.at(ix, iy, 0));
    if (std::sqrt(g.volume() * mean2) > tol * std::max(1.0, l2_norm(f)))
        throw PreconditionError("vertical_integral_from_bottom: nonzero vertical mean");

    SpectralField3D out(g);
    if (f.parity == Parity::Even) out.parity = Parity::Odd;
    else if (f.parity == Parity::Odd) out.parity = Parity::Even;

    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            Complex bottom{0.0, 0.0};
            for (int iz = 1; iz < g.nz; ++iz) {
                if (iz == g.nz / 2) continue; // Nyquist: no odd-symbol inverse
                const int m = Grid3::wavenumber(iz, g.nz);
                const Complex prim = f.at(ix, iy, iz) / Complex{0.0, kappa_z(g, iz)};
                out.at(ix, iy, iz) = prim;
                // value of the primitive at z = -h, folded into the constant
                bottom += prim * ((m % 2 == 0) ? 1.0 : -1.0);
            }
            out.at(ix, iy, 0) = -bottom;
        }
    return out;
}

std::pair<SpectralField3D, SpectralField3D> vertical_average_split(const SpectralField3D& f) {
    const Grid3& g = f.grid;
    SpectralField3D bar(g, f.parity), tilde(g, f.parity);
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const auto i = g.index(ix, iy, iz);
                if (iz == 0) bar.coeffs[i] = f.coeffs[i];
                else tilde.coeffs[i] = f.coeffs[i];
            }
    return {bar, tilde};
}

SpectralField3D parity_project(const SpectralField3D& f, Parity parity) {
    if (parity == Parity::None) throw std::invalid_argument("parity_project: even or odd only");
    const Grid3& g = f.grid;
    SpectralField3D out(g, parity);
    const double sign = (parity == Parity::Even) ? 1.0 : -1.0;
    for (int iz = 0; iz < g.nz; ++iz) {
        const int rz = Grid3::reflect(iz, g.nz);
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                out.at(ix, iy, iz) = 0.5 * (f.at(ix, iy, iz) + sign * f.at(ix, iy, rz));
    }
    return out;
}

double parity_residual(const SpectralField3D& f, Parity parity) {
    const Parity other = (parity == Parity::Even) ? Parity::Odd : Parity::Even;
    return l2_norm(parity_project(f, other));
}

bool is_dealiased_mode(const Grid3& g, int ix, int iy, int iz) {
    return 3 * std::abs(Grid3::wavenumber(ix, g.nx)) <= g.nx &&
           3 * std::abs(Grid3::wavenumber(iy, g.ny)) <= g.ny &&
           3 * std::abs(Grid3::wavenumber(iz, g.nz)) <= g.nz;
}

void dealias_in_place(SpectralField3D& f) {
    const Grid3& g = f.grid;
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                if (!is_dealiased_mode(g, ix, iy, iz))
                    f.at(ix, iy, iz) = 0.0;
}

SpectralField3D dealias(const SpectralField3D& f) {
    SpectralField3D out = f;
    dealias_in_place(out);
    return out;
}

double l2_norm(const SpectralField3D& f) {
    double s = 0.0;
    for (const auto& c : f.coeffs) s += std::norm(c);
    return std::sqrt(f.grid.volume() * s);
}

double l2_inner(const SpectralField3D& f, const SpectralField3D& g) {
    if (f.grid != g.grid) throw std::invalid_argument("l2_inner: grids differ");
    double s = 0.0;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        s += std::real(std::conj(f.coeffs[i]) * g.coeffs[i]);
    return f.grid.volume() * s;
}

double sobolev_norm(const SpectralField3D& f, int s) {
    return symbol_norm(f, [s](double kx, double ky, double kz) {
        return std::pow(1.0 + kx * kx + ky * ky + kz * kz, s);
    });
}

double symbol_norm(const SpectralField3D& f,
                   const std::function<double(double, double, double)>& weight) {
    const Grid3& g = f.grid;
    double sum = 0.0;
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                sum += weight(kappa_x(g, ix), kappa_y(g, iy), kappa_z(g, iz)) *
                       std::norm(f.at(ix, iy, iz));
    return std::sqrt(g.volume() * sum);
}

double max_abs(const SpectralField3D& f) {
    PhysicalField3D p = inverse(f);
    double m = 0.0;
    for (double v : p.values) m = std::max(m, std::abs(v));
    return m;
}

} // namespace hydrostat
