#include "hydrostat/mms.hpp"

#include <cmath>
#include <numbers>

#include "hydrostat/transform.hpp"

namespace hydrostat {

namespace {
constexpr double pi = std::numbers::pi;
}

double ManufacturedSolution::v1(double x, double y, double z) const {
    const double h = params.h;
    return a * (std::sin(2 * pi * x) * std::cos(pi * z / h) +
                std::cos(2 * pi * y) * std::cos(3 * pi * z / h));
}

double ManufacturedSolution::v2(double x, double y, double z) const {
    const double h = params.h;
    return a * (std::cos(2 * pi * x) * std::cos(3 * pi * z / h) +
                std::sin(2 * pi * y) * std::cos(pi * z / h));
}

double ManufacturedSolution::T(double x, double y, double z) const {
    const double h = params.h;
    return b * (std::cos(2 * pi * x) * std::sin(pi * z / h) +
                std::sin(2 * pi * y) * std::sin(3 * pi * z / h));
}

double ManufacturedSolution::w(double x, double y, double z) const {
    const double h = params.h;
    // w = -int_{-h}^z div_H v = -2ah (cos 2pi x + cos 2pi y) sin(pi z/h)
    return -2.0 * a * h * (std::cos(2 * pi * x) + std::cos(2 * pi * y)) * std::sin(pi * z / h);
}

double ManufacturedSolution::Qv1(double x, double y, double z) const {
    const double h = params.h;
    const double cx = std::cos(2 * pi * x), sx = std::sin(2 * pi * x);
    const double cy = std::cos(2 * pi * y), sy = std::sin(2 * pi * y);
    const double c1 = std::cos(pi * z / h), s1 = std::sin(pi * z / h);
    const double c3 = std::cos(3 * pi * z / h), s3 = std::sin(3 * pi * z / h);

    const double V1 = v1(x, y, z), V2 = v2(x, y, z);
    const double int_div = 2.0 * a * h * (cx + cy) * s1;

    const double L1v1 = (4.0 * pi * pi / params.R1) * V1 +
                        (a / params.R2) * ((pi / h) * (pi / h) * sx * c1 +
                                           (3 * pi / h) * (3 * pi / h) * cy * c3);
    const double dxv1 = 2 * pi * a * cx * c1;
    const double dyv1 = -2 * pi * a * sy * c3;
    const double dzv1 = -a * (pi / h) * sx * s1 - a * (3 * pi / h) * cy * s3;
    const double dx_intT = 2.0 * b * h * sx * (c1 + 1.0);

    return L1v1 + V1 * dxv1 + V2 * dyv1 - int_div * dzv1 - params.f0 * V2 - dx_intT;
}

double ManufacturedSolution::Qv2(double x, double y, double z) const {
    const double h = params.h;
    const double cx = std::cos(2 * pi * x), sx = std::sin(2 * pi * x);
    const double cy = std::cos(2 * pi * y), sy = std::sin(2 * pi * y);
    const double c1 = std::cos(pi * z / h), s1 = std::sin(pi * z / h);
    const double c3 = std::cos(3 * pi * z / h), s3 = std::sin(3 * pi * z / h);

    const double V1 = v1(x, y, z), V2 = v2(x, y, z);
    const double int_div = 2.0 * a * h * (cx + cy) * s1;

    const double L1v2 = (4.0 * pi * pi / params.R1) * V2 +
                        (a / params.R2) * ((3 * pi / h) * (3 * pi / h) * cx * c3 +
                                           (pi / h) * (pi / h) * sy * c1);
    const double dxv2 = -2 * pi * a * sx * c3;
    const double dyv2 = 2 * pi * a * cy * c1;
    const double dzv2 = -a * (3 * pi / h) * cx * s3 - a * (pi / h) * sy * s1;
    const double dy_intT = -(2.0 * b * h / 3.0) * cy * (c3 + 1.0);

    return L1v2 + V1 * dxv2 + V2 * dyv2 - int_div * dzv2 + params.f0 * V1 - dy_intT;
}

double ManufacturedSolution::QT(double x, double y, double z) const {
    const double h = params.h;
    const double cx = std::cos(2 * pi * x), sx = std::sin(2 * pi * x);
    const double cy = std::cos(2 * pi * y), sy = std::sin(2 * pi * y);
    const double c1 = std::cos(pi * z / h), s1 = std::sin(pi * z / h);
    const double c3 = std::cos(3 * pi * z / h), s3 = std::sin(3 * pi * z / h);

    const double V1 = v1(x, y, z), V2 = v2(x, y, z);
    const double int_div = 2.0 * a * h * (cx + cy) * s1;

    const double L2T = (b / params.R3) * ((pi / h) * (pi / h) * cx * s1 +
                                          (3 * pi / h) * (3 * pi / h) * sy * s3);
    const double dxT = -2 * pi * b * sx * s1;
    const double dyT = 2 * pi * b * cy * s3;
    const double dzT = b * (pi / h) * cx * c1 + b * (3 * pi / h) * sy * c3;

    return L2T + V1 * dxT + V2 * dyT - int_div * (dzT + 1.0 / h);
}

SourceSpec ManufacturedSolution::source() const {
    SourceSpec s;
    s.q_v1 = [*this](double x, double y, double z, double) { return Qv1(x, y, z); };
    s.q_v2 = [*this](double x, double y, double z, double) { return Qv2(x, y, z); };
    s.q_T = [*this](double x, double y, double z, double) { return QT(x, y, z); };
    return s;
}

State ManufacturedSolution::initial_state(const Grid3& grid) const {
    auto sample = [&](auto&& f) {
        return PhysicalField3D::sample(
            grid, [&](double x, double y, double z) { return f(x, y, z); });
    };
    return make_state(sample([&](double x, double y, double z) { return v1(x, y, z); }),
                      sample([&](double x, double y, double z) { return v2(x, y, z); }),
                      sample([&](double x, double y, double z) { return T(x, y, z); }), params);
}

double ManufacturedSolution::error(const State& state) const {
    const Grid3& g = state.grid();
    PhysicalField3D pv1 = inverse(state.v1), pv2 = inverse(state.v2), pT = inverse(state.T);
    double e = 0.0;
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const double x = g.x(ix), y = g.y(iy), z = g.z(iz);
                e = std::max(e, std::abs(pv1.at(ix, iy, iz) - v1(x, y, z)));
                e = std::max(e, std::abs(pv2.at(ix, iy, iz) - v2(x, y, z)));
                e = std::max(e, std::abs(pT.at(ix, iy, iz) - T(x, y, z)));
            }
    return e;
}

} // namespace hydrostat
