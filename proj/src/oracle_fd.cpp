#include "hydrostat/oracle_fd.hpp"

#include <cmath>

#include "hydrostat/timestepper.hpp"
#include "hydrostat/transform.hpp"

namespace hydrostat {

namespace {

double spacing(const Grid3& g, Axis axis) {
    switch (axis) {
        case Axis::X: return g.dx();
        case Axis::Y: return g.dy();
        default: return g.dz();
    }
}

// f shifted by `steps` grid nodes along axis (periodic).
PhysicalField3D shift(const PhysicalField3D& f, Axis axis, int steps) {
    const Grid3& g = f.grid;
    PhysicalField3D out(g);
    auto wrap = [](int i, int n) { return ((i % n) + n) % n; };
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                int jx = ix, jy = iy, jz = iz;
                switch (axis) {
                    case Axis::X: jx = wrap(ix + steps, g.nx); break;
                    case Axis::Y: jy = wrap(iy + steps, g.ny); break;
                    case Axis::Z: jz = wrap(iz + steps, g.nz); break;
                }
                out.at(ix, iy, iz) = f.at(jx, jy, jz);
            }
    return out;
}

PhysicalField3D cdiff(const PhysicalField3D& f, Axis axis) {
    const double d = spacing(f.grid, axis);
    PhysicalField3D plus = shift(f, axis, 1), minus = shift(f, axis, -1);
    PhysicalField3D out(f.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = (plus.values[i] - minus.values[i]) / (2.0 * d);
    return out;
}

PhysicalField3D cdiff2(const PhysicalField3D& f, Axis axis) {
    const double d = spacing(f.grid, axis);
    PhysicalField3D plus = shift(f, axis, 1), minus = shift(f, axis, -1);
    PhysicalField3D out(f.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = (plus.values[i] - 2.0 * f.values[i] + minus.values[i]) / (d * d);
    return out;
}

void symmetrize(PhysicalField3D& f, Parity parity) {
    const Grid3& g = f.grid;
    const double sign = (parity == Parity::Even) ? 1.0 : -1.0;
    PhysicalField3D orig = f;
    for (int iz = 0; iz < g.nz; ++iz) {
        const int rz = (g.nz - iz) % g.nz;
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                f.at(ix, iy, iz) = 0.5 * (orig.at(ix, iy, iz) + sign * orig.at(ix, iy, rz));
    }
}

// 2D scratch plane, row-major (iy, ix).
using Plane = std::vector<double>;

Plane vertical_mean(const PhysicalField3D& f) {
    const Grid3& g = f.grid;
    Plane out(static_cast<std::size_t>(g.nx) * g.ny, 0.0);
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                out[static_cast<std::size_t>(iy) * g.nx + ix] += f.at(ix, iy, iz) / g.nz;
    return out;
}

Plane plane_cdiff(const Plane& p, int nx, int ny, bool x_dir, double d) {
    Plane out(p.size());
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            int ip, im;
            if (x_dir) {
                ip = static_cast<int>(static_cast<std::size_t>(iy) * nx) + (ix + 1) % nx;
                im = static_cast<int>(static_cast<std::size_t>(iy) * nx) + (ix - 1 + nx) % nx;
            } else {
                ip = ((iy + 1) % ny) * nx + ix;
                im = ((iy - 1 + ny) % ny) * nx + ix;
            }
            out[static_cast<std::size_t>(iy) * nx + ix] = (p[ip] - p[im]) / (2.0 * d);
        }
    return out;
}

// Composed central-difference Laplacian Dx*Dx + Dy*Dy (wide stencil).
Plane plane_lap(const Plane& p, int nx, int ny, double dx, double dy) {
    Plane out(p.size());
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            auto idx = [&](int jx, int jy) {
                return static_cast<std::size_t>(((jy % ny) + ny) % ny) * nx + ((jx % nx) + nx) % nx;
            };
            const double lx =
                (p[idx(ix + 2, iy)] - 2.0 * p[idx(ix, iy)] + p[idx(ix - 2, iy)]) / (4.0 * dx * dx);
            const double ly =
                (p[idx(ix, iy + 2)] - 2.0 * p[idx(ix, iy)] + p[idx(ix, iy - 2)]) / (4.0 * dy * dy);
            out[static_cast<std::size_t>(iy) * nx + ix] = lx + ly;
        }
    return out;
}

// Remove components in the null space of the wide-stencil Laplacian:
// constants and the three checkerboard modes.
void remove_null(Plane& p, int nx, int ny) {
    double m[4] = {0, 0, 0, 0};
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const double v = p[static_cast<std::size_t>(iy) * nx + ix];
            const double sx = (ix % 2 == 0) ? 1.0 : -1.0;
            const double sy = (iy % 2 == 0) ? 1.0 : -1.0;
            m[0] += v;
            m[1] += sx * v;
            m[2] += sy * v;
            m[3] += sx * sy * v;
        }
    const double n = static_cast<double>(nx) * ny;
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const double sx = (ix % 2 == 0) ? 1.0 : -1.0;
            const double sy = (iy % 2 == 0) ? 1.0 : -1.0;
            p[static_cast<std::size_t>(iy) * nx + ix] -=
                (m[0] + sx * m[1] + sy * m[2] + sx * sy * m[3]) / n;
        }
}

// Conjugate gradients for -Lap(p) = -rhs on the wide-stencil Laplacian.
Plane solve_poisson(const Plane& rhs_in, int nx, int ny, double dx, double dy) {
    Plane b = rhs_in;
    remove_null(b, nx, ny);
    for (auto& v : b) v = -v;
    Plane x(b.size(), 0.0), r = b, q(b.size());
    Plane d = r;
    double rr = 0.0;
    for (double v : r) rr += v * v;
    const double tol2 = 1e-28 * std::max(1.0, rr);
    const int max_iter = 20 * nx * ny;
    for (int it = 0; it < max_iter && rr > tol2; ++it) {
        q = plane_lap(d, nx, ny, dx, dy);
        for (auto& v : q) v = -v;
        double dq = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) dq += d[i] * q[i];
        const double alpha = rr / dq;
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] += alpha * d[i];
            r[i] -= alpha * q[i];
        }
        double rr_new = 0.0;
        for (double v : r) rr_new += v * v;
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = r[i] + beta * d[i];
    }
    remove_null(x, nx, ny);
    return x;
}

void project_divfree_fd(PhysicalField3D& v1, PhysicalField3D& v2) {
    const Grid3& g = v1.grid;
    Plane b1 = vertical_mean(v1), b2 = vertical_mean(v2);
    Plane rhs = plane_cdiff(b1, g.nx, g.ny, true, g.dx());
    Plane d2 = plane_cdiff(b2, g.nx, g.ny, false, g.dy());
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += d2[i];
    Plane p = solve_poisson(rhs, g.nx, g.ny, g.dx(), g.dy());
    Plane gx = plane_cdiff(p, g.nx, g.ny, true, g.dx());
    Plane gy = plane_cdiff(p, g.nx, g.ny, false, g.dy());
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                v1.at(ix, iy, iz) -= gx[static_cast<std::size_t>(iy) * g.nx + ix];
                v2.at(ix, iy, iz) -= gy[static_cast<std::size_t>(iy) * g.nx + ix];
            }
}

void enforce_constraints(FdState& s) {
    symmetrize(s.v1, Parity::Even);
    symmetrize(s.v2, Parity::Even);
    symmetrize(s.T, Parity::Odd);
    project_divfree_fd(s.v1, s.v2);
}

// Trapezoidal cumulative integral from z = -h (plane iz = 0).
PhysicalField3D cumulative_z(const PhysicalField3D& f) {
    const Grid3& g = f.grid;
    PhysicalField3D out(g);
    const double hz = g.dz();
    for (int iz = 1; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                out.at(ix, iy, iz) = out.at(ix, iy, iz - 1) +
                                     0.5 * hz * (f.at(ix, iy, iz - 1) + f.at(ix, iy, iz));
    return out;
}

struct FdTendency {
    PhysicalField3D dv1, dv2, dT;
};

FdTendency fd_tendency(const FdState& s) {
    const Grid3& g = s.grid();
    const Params& p = s.params;
    PhysicalField3D w = fd_w(s);
    PhysicalField3D intT = cumulative_z(s.T);

    PhysicalField3D dxv1 = cdiff(s.v1, Axis::X), dyv1 = cdiff(s.v1, Axis::Y),
                    dzv1 = cdiff(s.v1, Axis::Z);
    PhysicalField3D dxv2 = cdiff(s.v2, Axis::X), dyv2 = cdiff(s.v2, Axis::Y),
                    dzv2 = cdiff(s.v2, Axis::Z);
    PhysicalField3D dxT = cdiff(s.T, Axis::X), dyT = cdiff(s.T, Axis::Y),
                    dzT = cdiff(s.T, Axis::Z);
    PhysicalField3D lapH_v1 = cdiff2(s.v1, Axis::X), tmp = cdiff2(s.v1, Axis::Y);
    for (std::size_t i = 0; i < lapH_v1.values.size(); ++i) lapH_v1.values[i] += tmp.values[i];
    PhysicalField3D lapH_v2 = cdiff2(s.v2, Axis::X);
    tmp = cdiff2(s.v2, Axis::Y);
    for (std::size_t i = 0; i < lapH_v2.values.size(); ++i) lapH_v2.values[i] += tmp.values[i];
    PhysicalField3D lapH_T = cdiff2(s.T, Axis::X);
    tmp = cdiff2(s.T, Axis::Y);
    for (std::size_t i = 0; i < lapH_T.values.size(); ++i) lapH_T.values[i] += tmp.values[i];
    PhysicalField3D dzzv1 = cdiff2(s.v1, Axis::Z), dzzv2 = cdiff2(s.v2, Axis::Z),
                    dzzT = cdiff2(s.T, Axis::Z);
    PhysicalField3D gxT = cdiff(intT, Axis::X), gyT = cdiff(intT, Axis::Y);

    FdTendency out{PhysicalField3D(g), PhysicalField3D(g), PhysicalField3D(g)};
    const double inv_h = 1.0 / p.h;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double u = s.v1.values[i], v = s.v2.values[i], ww = w.values[i];
        out.dv1.values[i] = -(u * dxv1.values[i] + v * dyv1.values[i] + ww * dzv1.values[i]) +
                            p.f0 * v + gxT.values[i] + lapH_v1.values[i] / p.R1 +
                            dzzv1.values[i] / p.R2;
        out.dv2.values[i] = -(u * dxv2.values[i] + v * dyv2.values[i] + ww * dzv2.values[i]) -
                            p.f0 * u + gyT.values[i] + lapH_v2.values[i] / p.R1 +
                            dzzv2.values[i] / p.R2;
        out.dT.values[i] = -(u * dxT.values[i] + v * dyT.values[i] +
                             ww * (dzT.values[i] + inv_h)) +
                           dzzT.values[i] / p.R3 + p.epsilon * lapH_T.values[i];
    }
    symmetrize(out.dv1, Parity::Even);
    symmetrize(out.dv2, Parity::Even);
    symmetrize(out.dT, Parity::Odd);
    project_divfree_fd(out.dv1, out.dv2);
    return out;
}

void axpy(PhysicalField3D& y, double a, const PhysicalField3D& x) {
    for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += a * x.values[i];
}

double grid_l2(const PhysicalField3D& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return std::sqrt(s * f.grid.cell_volume());
}

} // namespace

PhysicalField3D difference_quotient(const PhysicalField3D& f, Axis axis, double l) {
    if (l == 0.0) throw std::invalid_argument("difference_quotient: l must be nonzero");
    const double d = spacing(f.grid, axis);
    const double ratio = l / d;
    const int steps = static_cast<int>(std::lround(ratio));
    if (std::abs(ratio - steps) > 1e-9 || steps == 0)
        throw std::invalid_argument("difference_quotient: l must be a grid-spacing multiple");
    PhysicalField3D shifted = shift(f, axis, steps);
    PhysicalField3D out(f.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = (shifted.values[i] - f.values[i]) / l;
    return out;
}

FdState make_fd_state(const PhysicalField3D& v1, const PhysicalField3D& v2,
                      const PhysicalField3D& T, const Params& params) {
    params.validate();
    if (v1.grid != v2.grid || v1.grid != T.grid)
        throw std::invalid_argument("make_fd_state: fields must share one grid");
    FdState s{v1, v2, T, params, 0.0};
    enforce_constraints(s);
    return s;
}

PhysicalField3D fd_w(const FdState& state) {
    PhysicalField3D div = cdiff(state.v1, Axis::X);
    PhysicalField3D d2 = cdiff(state.v2, Axis::Y);
    for (std::size_t i = 0; i < div.values.size(); ++i) div.values[i] += d2.values[i];
    PhysicalField3D w = cumulative_z(div);
    for (auto& v : w.values) v = -v;
    return w;
}

FdState fd_step(const FdState& state, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("fd_step: dt must be positive");
    FdTendency k1 = fd_tendency(state);

    FdState s2 = state;
    axpy(s2.v1, 0.5 * dt, k1.dv1);
    axpy(s2.v2, 0.5 * dt, k1.dv2);
    axpy(s2.T, 0.5 * dt, k1.dT);
    FdTendency k2 = fd_tendency(s2);

    FdState s3 = state;
    axpy(s3.v1, 0.5 * dt, k2.dv1);
    axpy(s3.v2, 0.5 * dt, k2.dv2);
    axpy(s3.T, 0.5 * dt, k2.dT);
    FdTendency k3 = fd_tendency(s3);

    FdState s4 = state;
    axpy(s4.v1, dt, k3.dv1);
    axpy(s4.v2, dt, k3.dv2);
    axpy(s4.T, dt, k3.dT);
    FdTendency k4 = fd_tendency(s4);

    FdState out = state;
    const double c = dt / 6.0;
    for (std::size_t i = 0; i < out.v1.values.size(); ++i) {
        out.v1.values[i] += c * (k1.dv1.values[i] + 2.0 * k2.dv1.values[i] +
                                 2.0 * k3.dv1.values[i] + k4.dv1.values[i]);
        out.v2.values[i] += c * (k1.dv2.values[i] + 2.0 * k2.dv2.values[i] +
                                 2.0 * k3.dv2.values[i] + k4.dv2.values[i]);
        out.T.values[i] += c * (k1.dT.values[i] + 2.0 * k2.dT.values[i] +
                                2.0 * k3.dT.values[i] + k4.dT.values[i]);
    }
    enforce_constraints(out);
    out.time = state.time + dt;

    double n = 0.0;
    for (double v : out.v1.values) n = std::max(n, std::abs(v));
    for (double v : out.T.values) n = std::max(n, std::abs(v));
    if (!std::isfinite(n) || n > 1e12)
        throw std::runtime_error("fd_step: blow-up at t = " + std::to_string(out.time));
    return out;
}

PhysicalField3D restrict_grid(const PhysicalField3D& fine, const Grid3& coarse) {
    const Grid3& g = fine.grid;
    if (g.nx % coarse.nx || g.ny % coarse.ny || g.nz % coarse.nz ||
        std::abs(g.h - coarse.h) > 1e-14)
        throw std::invalid_argument("restrict_grid: coarse grid nodes must nest in the fine grid");
    const int fx = g.nx / coarse.nx, fy = g.ny / coarse.ny, fz = g.nz / coarse.nz;
    PhysicalField3D out(coarse);
    for (int iz = 0; iz < coarse.nz; ++iz)
        for (int iy = 0; iy < coarse.ny; ++iy)
            for (int ix = 0; ix < coarse.nx; ++ix)
                out.at(ix, iy, iz) = fine.at(ix * fx, iy * fy, iz * fz);
    return out;
}

CrossValidationReport cross_validate(const FdState& fd_initial, const State& sp_initial,
                                     double t_end, double dt_fd, double dt_sp) {
    FdState fd = fd_initial;
    const long n_fd = std::lround(t_end / dt_fd);
    for (long i = 0; i < n_fd; ++i) fd = fd_step(fd, t_end / n_fd);

    State sp = sp_initial;
    const long n_sp = std::lround(t_end / dt_sp);
    for (long i = 0; i < n_sp; ++i) sp = step(sp, t_end / n_sp, Scheme::ImexRk2);

    const Grid3& cg = fd.grid();
    PhysicalField3D sv1 = restrict_grid(inverse(sp.v1), cg);
    PhysicalField3D sv2 = restrict_grid(inverse(sp.v2), cg);
    PhysicalField3D sT = restrict_grid(inverse(sp.T), cg);
    PhysicalField3D sw = restrict_grid(inverse(compute_w(sp)), cg);
    PhysicalField3D fw = fd_w(fd);

    auto rel = [&](const PhysicalField3D& a, const PhysicalField3D& b, double extra_ref = 0.0) {
        PhysicalField3D d = a;
        for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
        const double num = grid_l2(d);
        const double den = std::sqrt(grid_l2(b) * grid_l2(b) + extra_ref * extra_ref);
        return den > 0.0 ? num / den : num;
    };
    CrossValidationReport r;
    const double vref = std::hypot(grid_l2(sv1), grid_l2(sv2));
    {
        PhysicalField3D d1 = fd.v1, d2 = fd.v2;
        for (std::size_t i = 0; i < d1.values.size(); ++i) {
            d1.values[i] -= sv1.values[i];
            d2.values[i] -= sv2.values[i];
        }
        const double num = std::hypot(grid_l2(d1), grid_l2(d2));
        r.rel_v = vref > 0.0 ? num / vref : num;
    }
    r.rel_T = rel(fd.T, sT);
    r.rel_w = rel(fw, sw);
    return r;
}

} // namespace hydrostat
