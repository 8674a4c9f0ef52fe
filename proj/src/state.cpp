#include "hydrostat/state.hpp"

#include <cmath>

#include "hydrostat/transform.hpp"

namespace hydrostat {

SpectralField3D project_barotropic_divfree(SpectralField3D& f1, SpectralField3D& f2) {
    const Grid3& g = f1.grid;
    SpectralField3D p_s(g, Parity::Even);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            if (ix == 0 && iy == 0) continue;
            const double kx = kappa_x(g, ix);
            const double ky = kappa_y(g, iy);
            const double k2 = kx * kx + ky * ky;
            const Complex div = Complex{0.0, kx} * f1.at(ix, iy, 0) +
                                Complex{0.0, ky} * f2.at(ix, iy, 0);
            // Lap_H(p_s) = div_H(f)  =>  p_s_hat = -div_hat / |kappa|^2
            const Complex ps = -div / k2;
            p_s.at(ix, iy, 0) = ps;
            f1.at(ix, iy, 0) -= Complex{0.0, kx} * ps;
            f2.at(ix, iy, 0) -= Complex{0.0, ky} * ps;
        }
    return p_s;
}

void project_onto_constraints(SpectralField3D& v1, SpectralField3D& v2, SpectralField3D& T) {
    v1 = parity_project(v1, Parity::Even);
    v2 = parity_project(v2, Parity::Even);
    T = parity_project(T, Parity::Odd);
    project_barotropic_divfree(v1, v2);
}

State make_state(const PhysicalField3D& v1_phys, const PhysicalField3D& v2_phys,
                 const PhysicalField3D& T_phys, const Params& params) {
    params.validate();
    if (v1_phys.grid != v2_phys.grid || v1_phys.grid != T_phys.grid)
        throw std::invalid_argument("make_state: fields must share one grid");
    if (std::abs(v1_phys.grid.h - params.h) > 1e-14)
        throw std::invalid_argument("make_state: grid half-height differs from params.h");
    for (const auto* f : {&v1_phys, &v2_phys, &T_phys})
        for (double v : f->values)
            if (!std::isfinite(v)) throw std::invalid_argument("make_state: non-finite input");

    State s;
    s.v1 = forward(v1_phys, Parity::Even);
    s.v2 = forward(v2_phys, Parity::Even);
    s.T = forward(T_phys, Parity::Odd);
    project_onto_constraints(s.v1, s.v2, s.T);
    dealias_in_place(s.v1);
    dealias_in_place(s.v2);
    dealias_in_place(s.T);
    s.params = params;
    s.time = 0.0;
    return s;
}

double barotropic_divergence_norm(const SpectralField3D& v1, const SpectralField3D& v2) {
    const Grid3& g = v1.grid;
    double sum = 0.0;
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const Complex div = Complex{0.0, kappa_x(g, ix)} * v1.at(ix, iy, 0) +
                                Complex{0.0, kappa_y(g, iy)} * v2.at(ix, iy, 0);
            sum += std::norm(div);
        }
    return std::sqrt(g.volume() * sum);
}

SpectralField3D compute_w(const State& state) {
    SpectralField3D div = derivative(state.v1, Axis::X) + derivative(state.v2, Axis::Y);
    div.parity = Parity::Even;
    SpectralField3D w = vertical_integral_from_bottom(div);
    w *= -1.0;
    w.parity = Parity::Odd;
    return w;
}

DerivedFields compute_pressure(const State& state, const SpectralField3D& tendency1,
                               const SpectralField3D& tendency2) {
    DerivedFields out;
    out.w = compute_w(state);
    SpectralField3D t1 = tendency1, t2 = tendency2;
    out.p_s = project_barotropic_divfree(t1, t2);
    // p = p_s - int_{-h}^z T; d_z p = -T holds since p_s is z-independent.
    out.p = out.p_s - vertical_integral_from_bottom(state.T);
    out.p.parity = Parity::Even;
    return out;
}

PhysicalField3D extend_to_full_domain(const HalfDomainField& half, Parity parity, double tol) {
    if (parity == Parity::None)
        throw std::invalid_argument("extend_to_full_domain: even or odd only");
    const int nzh = half.nzp - 1;
    Grid3 g(half.nx, half.ny, 2 * nzh, half.h);
    if (parity == Parity::Odd) {
        for (int iy = 0; iy < half.ny; ++iy)
            for (int ix = 0; ix < half.nx; ++ix)
                if (std::abs(half.at(ix, iy, 0)) > tol || std::abs(half.at(ix, iy, nzh)) > tol)
                    throw IncompatibilityError(
                        "odd extension requires the field to vanish at z = -h and z = 0");
    }
    PhysicalField3D out(g);
    const double sign = (parity == Parity::Even) ? 1.0 : -1.0;
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                out.at(ix, iy, iz) = (iz <= nzh) ? half.at(ix, iy, iz)
                                                 : sign * half.at(ix, iy, g.nz - iz);
    return out;
}

HalfDomainField restrict_to_half(const PhysicalField3D& full) {
    const Grid3& g = full.grid;
    HalfDomainField out(g.nx, g.ny, g.nz / 2 + 1, g.h);
    for (int iz = 0; iz <= g.nz / 2; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                out.at(ix, iy, iz) = full.at(ix, iy, iz);
    return out;
}

HalfDomainField shift_temperature(const HalfDomainField& T_raw, ShiftDirection dir) {
    HalfDomainField out = T_raw;
    const double sign = (dir == ShiftDirection::Shift) ? 1.0 : -1.0;
    for (int iz = 0; iz < out.nzp; ++iz) {
        const double zv = out.z(iz);
        for (int iy = 0; iy < out.ny; ++iy)
            for (int ix = 0; ix < out.nx; ++ix)
                out.at(ix, iy, iz) += sign * zv / out.h;
    }
    return out;
}

} // namespace hydrostat
