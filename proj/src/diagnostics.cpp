#include "hydrostat/diagnostics.hpp"

#include <cmath>

#include "hydrostat/transform.hpp"

namespace hydrostat {

namespace {

double sq(double x) { return x * x; }

// Squared seminorm with a polynomial symbol weight w(kH^2, kz^2).
template <typename W>
double weighted_sq(const SpectralField3D& f, W&& w) {
    const Grid3& g = f.grid;
    double sum = 0.0;
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const double kx = kappa_x(g, ix), ky = kappa_y(g, iy), kz = kappa_z(g, iz);
                sum += w(kx * kx + ky * ky, kz * kz) * std::norm(f.at(ix, iy, iz));
            }
    return g.volume() * sum;
}

double grad_H_sq(const SpectralField3D& f) {
    return weighted_sq(f, [](double kh2, double) { return kh2; });
}
double dz_sq(const SpectralField3D& f) {
    return weighted_sq(f, [](double, double kz2) { return kz2; });
}
double h_norm_sq(const SpectralField3D& f, int s) {
    return weighted_sq(f, [s](double kh2, double kz2) { return std::pow(1.0 + kh2 + kz2, s); });
}

} // namespace

EnergyReport norms(const State& state) {
    const Params& p = state.params;
    EnergyReport r;
    r.time = state.time;
    r.v_L2 = std::sqrt(sq(l2_norm(state.v1)) + sq(l2_norm(state.v2)));
    r.v_H1 = std::sqrt(h_norm_sq(state.v1, 1) + h_norm_sq(state.v2, 1));
    r.v_H2 = std::sqrt(h_norm_sq(state.v1, 2) + h_norm_sq(state.v2, 2));
    r.T_L2 = l2_norm(state.T);
    r.T_H1 = std::sqrt(h_norm_sq(state.T, 1));
    r.T_H2 = std::sqrt(h_norm_sq(state.T, 2));

    r.diss_v_H = (grad_H_sq(state.v1) + grad_H_sq(state.v2)) / p.R1;
    r.diss_v_z = (dz_sq(state.v1) + dz_sq(state.v2)) / p.R2;
    r.diss_T_z = dz_sq(state.T) / p.R3;
    r.diss_T_H = p.epsilon * grad_H_sq(state.T);

    SpectralField3D intT = vertical_integral_from_bottom(state.T);
    r.coupling = l2_inner(derivative(intT, Axis::X), state.v1) +
                 l2_inner(derivative(intT, Axis::Y), state.v2);

    SpectralField3D div = derivative(state.v1, Axis::X) + derivative(state.v2, Axis::Y);
    div.parity = Parity::Even;
    r.source_T = l2_inner(vertical_integral_from_bottom(div), state.T) / p.h;

    Tendency e = tendency(state);
    const double lhs_v = l2_inner(e.dv1, state.v1) + l2_inner(e.dv2, state.v2);
    const double lhs_T = l2_inner(e.dT, state.T);
    const double den_v = std::max({std::abs(lhs_v), std::abs(r.coupling), r.diss_v_H + r.diss_v_z});
    const double den_T = std::max({std::abs(lhs_T), std::abs(r.source_T), r.diss_T_z + r.diss_T_H});
    r.residual_v = den_v > 0.0 ? std::abs(lhs_v - r.coupling) / den_v : 0.0;
    r.residual_T = den_T > 0.0 ? std::abs(lhs_T - r.source_T) / den_T : 0.0;
    return r;
}

std::pair<SpectralField3D, SpectralField3D> eta_theta(const State& state) {
    SpectralField3D u1 = derivative(state.v1, Axis::Z);
    SpectralField3D u2 = derivative(state.v2, Axis::Z);
    SpectralField3D eta = derivative(u2, Axis::X) - derivative(u1, Axis::Y);
    SpectralField3D theta =
        derivative(u1, Axis::X) + derivative(u2, Axis::Y) + state.params.R1 * state.T;
    eta.parity = Parity::Odd;
    theta.parity = Parity::Odd;
    return {eta, theta};
}

RegularityReport regularity_functionals(const State& state, double t) {
    const Params& p = state.params;
    RegularityReport r;
    r.time = t;
    auto [eta, theta] = eta_theta(state);
    r.eta_L2 = l2_norm(eta);
    r.eta_H1 = std::sqrt(h_norm_sq(eta, 1));
    r.eta_H2 = std::sqrt(h_norm_sq(eta, 2));
    r.theta_L2 = l2_norm(theta);
    r.theta_H1 = std::sqrt(h_norm_sq(theta, 1));
    r.theta_H2 = std::sqrt(h_norm_sq(theta, 2));

    r.C_R = 2.0 * sq(p.R1) * (p.R1 + p.R2) * sq(p.R2 - p.R3) / (sq(p.R2) * p.R3);

    auto [bar1, tilde1] = vertical_average_split(state.v1);
    auto [bar2, tilde2] = vertical_average_split(state.v2);
    (void)tilde1;
    (void)tilde2;

    auto gradH_lapH = [](double kh2, double kz2) { (void)kz2; return kh2 * kh2 * kh2; };
    auto lapH = [](double kh2, double) { return kh2 * kh2; };
    auto gradH_dz = [](double kh2, double kz2) { return kh2 * kz2; };
    auto lapH2 = [](double kh2, double) { return kh2 * kh2 * kh2 * kh2; };
    auto lapH_dz = [](double kh2, double kz2) { return kh2 * kh2 * kz2; };
    auto gradH_dzz = [](double kh2, double kz2) { return kh2 * kz2 * kz2; };

    r.X = 1.0 + weighted_sq(bar1, gradH_lapH) + weighted_sq(bar2, gradH_lapH) +
          r.C_R * weighted_sq(state.T, lapH) + r.C_R * weighted_sq(state.T, gradH_dz) +
          weighted_sq(eta, lapH) + weighted_sq(eta, gradH_dz) + weighted_sq(theta, lapH) +
          weighted_sq(theta, gradH_dz);
    r.Y = weighted_sq(bar1, lapH2) + weighted_sq(bar2, lapH2) +
          weighted_sq(state.T, lapH_dz) + weighted_sq(state.T, gradH_dzz) +
          weighted_sq(eta, gradH_lapH) + weighted_sq(eta, lapH_dz) +
          weighted_sq(theta, gradH_lapH) + weighted_sq(theta, lapH_dz);
    r.Z = std::log(r.X);

    r.t2_eta_theta_H2 = t * t * (sq(r.eta_H2) + sq(r.theta_H2));
    const double u_H2_sq =
        h_norm_sq(derivative(state.v1, Axis::Z), 2) + h_norm_sq(derivative(state.v2, Axis::Z), 2);
    r.t_u_H2 = t * u_H2_sq;

    auto [a1, a2] = anisotropic_ratio(eta, state.v1, theta);
    r.aniso_ratio1 = a1;
    r.aniso_ratio2 = a2;
    return r;
}

std::pair<double, double> anisotropic_ratio(const SpectralField3D& f, const SpectralField3D& g,
                                            const SpectralField3D& hh) {
    const Grid3& gr = f.grid;
    if (g.grid != gr || hh.grid != gr)
        throw std::invalid_argument("anisotropic_ratio: grids differ");
    const double H2 = gr.volume(); // 2h

    // int g*hh dz as a 2D spectral field: m = 0 plane of the product, times 2h
    PhysicalField3D gp = inverse(g), hp = inverse(hh);
    PhysicalField3D prod(gr);
    for (std::size_t i = 0; i < gr.size(); ++i) prod.values[i] = gp.values[i] * hp.values[i];
    SpectralField3D prod_hat = forward(prod, Parity::None);

    double lhs = 0.0;
    for (int iy = 0; iy < gr.ny; ++iy)
        for (int ix = 0; ix < gr.nx; ++ix)
            lhs += std::real(H2 * f.at(ix, iy, 0) * std::conj(H2 * prod_hat.at(ix, iy, 0)));
    lhs = std::abs(lhs);
    if (lhs == 0.0) return {0.0, 0.0};

    auto half = [](double x) { return std::sqrt(x); };
    const double nf = l2_norm(f), ng = l2_norm(g), nh = l2_norm(hh);
    const double gf = std::sqrt(grad_H_sq(f));
    const double gg = std::sqrt(grad_H_sq(g));
    const double gh = std::sqrt(grad_H_sq(hh));
    const double rhs1 =
        half(nf) * (half(nf) + half(gf)) * ng * half(nh) * (half(nh) + half(gh));
    const double rhs2 =
        nf * half(ng) * (half(ng) + half(gg)) * half(nh) * (half(nh) + half(gh));
    return {rhs1 > 0.0 ? lhs / rhs1 : 0.0, rhs2 > 0.0 ? lhs / rhs2 : 0.0};
}

IdentityResiduals energy_identity_residual(const std::vector<EnergyReport>& samples) {
    if (samples.size() < 3)
        throw std::invalid_argument("energy_identity_residual: need at least 3 samples");
    const double dt = samples[1].time - samples[0].time;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double d = samples[i].time - samples[i - 1].time;
        if (std::abs(d - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw std::invalid_argument("energy_identity_residual: nonuniform sampling");
    }
    IdentityResiduals out;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        const EnergyReport& s = samples[i];
        const double dEv =
            (0.5 * sq(samples[i + 1].v_L2) - 0.5 * sq(samples[i - 1].v_L2)) / (2.0 * dt);
        const double dET =
            (0.5 * sq(samples[i + 1].T_L2) - 0.5 * sq(samples[i - 1].T_L2)) / (2.0 * dt);
        const double rv = std::abs(dEv + s.diss_v_H + s.diss_v_z - s.coupling);
        const double rT = std::abs(dET + s.diss_T_z + s.diss_T_H - s.source_T);
        out.time.push_back(s.time);
        out.residual_v.push_back(rv);
        out.residual_T.push_back(rT);
        out.max_residual_v = std::max(out.max_residual_v, rv);
        out.max_residual_T = std::max(out.max_residual_T, rT);
    }
    return out;
}

GronwallReport difference_gronwall(const std::vector<State>& trajA,
                                   const std::vector<State>& trajB, double multiplier) {
    if (trajA.size() != trajB.size() || trajA.empty())
        throw std::invalid_argument("difference_gronwall: mismatched sampling");
    GronwallReport out;
    std::vector<double> integrand;
    for (std::size_t i = 0; i < trajA.size(); ++i) {
        const State& a = trajA[i];
        const State& b = trajB[i];
        if (a.grid() != b.grid() || std::abs(a.time - b.time) > 1e-12 * std::max(1.0, b.time))
            throw std::invalid_argument("difference_gronwall: mismatched sampling");
        const double d = sq(l2_norm(a.v1 - b.v1)) + sq(l2_norm(a.v2 - b.v2)) +
                         sq(l2_norm(a.T - b.T));
        const double vH2 = h_norm_sq(b.v1, 2) + h_norm_sq(b.v2, 2);
        const double TH2 = h_norm_sq(b.T, 2);
        out.time.push_back(a.time);
        out.d.push_back(d);
        integrand.push_back(1.0 + sq(vH2) + sq(TH2));
    }
    double acc = 0.0;
    out.envelope.push_back(out.d[0]);
    for (std::size_t i = 1; i < out.d.size(); ++i) {
        acc += 0.5 * (integrand[i - 1] + integrand[i]) * (out.time[i] - out.time[i - 1]);
        out.envelope.push_back(out.d[0] * std::exp(acc));
    }
    for (std::size_t i = 0; i < out.d.size(); ++i)
        if (out.d[i] > multiplier * out.envelope[i] + 1e-30) out.within_envelope = false;
    return out;
}

} // namespace hydrostat
