#include "hydrostat/dynamics.hpp"

#include "hydrostat/transform.hpp"

namespace hydrostat {

namespace {

PhysicalField3D phys(const SpectralField3D& f) { return inverse(f); }

SpectralField3D sample_source(const Grid3& g, const SourceSpec::Field& f, double t,
                              Parity parity) {
    if (!f) return SpectralField3D(g, parity);
    PhysicalField3D p = PhysicalField3D::sample(
        g, [&](double x, double y, double z) { return f(x, y, z, t); });
    SpectralField3D s = forward(p, parity);
    dealias_in_place(s);
    return parity_project(s, parity);
}

} // namespace

Tendency tendency(const State& state, const SourceSpec* source) {
    const Grid3& g = state.grid();
    const Params& pr = state.params;

    SpectralField3D w = compute_w(state);

    PhysicalField3D v1p = phys(state.v1), v2p = phys(state.v2), wp = phys(w);
    PhysicalField3D dxv1 = phys(derivative(state.v1, Axis::X));
    PhysicalField3D dyv1 = phys(derivative(state.v1, Axis::Y));
    PhysicalField3D dzv1 = phys(derivative(state.v1, Axis::Z));
    PhysicalField3D dxv2 = phys(derivative(state.v2, Axis::X));
    PhysicalField3D dyv2 = phys(derivative(state.v2, Axis::Y));
    PhysicalField3D dzv2 = phys(derivative(state.v2, Axis::Z));
    PhysicalField3D dxT = phys(derivative(state.T, Axis::X));
    PhysicalField3D dyT = phys(derivative(state.T, Axis::Y));
    PhysicalField3D dzT = phys(derivative(state.T, Axis::Z));

    PhysicalField3D adv1(g), adv2(g), advT(g);
    const double inv_h = 1.0 / pr.h;
    for (std::size_t i = 0; i < g.size(); ++i) {
        adv1.values[i] = v1p.values[i] * dxv1.values[i] + v2p.values[i] * dyv1.values[i] +
                         wp.values[i] * dzv1.values[i];
        adv2.values[i] = v1p.values[i] * dxv2.values[i] + v2p.values[i] * dyv2.values[i] +
                         wp.values[i] * dzv2.values[i];
        advT.values[i] = v1p.values[i] * dxT.values[i] + v2p.values[i] * dyT.values[i] +
                         wp.values[i] * (dzT.values[i] + inv_h);
    }

    SpectralField3D n1 = forward(adv1, Parity::Even);
    SpectralField3D n2 = forward(adv2, Parity::Even);
    SpectralField3D nT = forward(advT, Parity::Odd);
    dealias_in_place(n1);
    dealias_in_place(n2);
    dealias_in_place(nT);

    SpectralField3D intT = vertical_integral_from_bottom(state.T);

    Tendency out;
    // dv = -advection - f0 k x v + grad_H(int T); k x v = (-v2, v1)
    out.dv1 = derivative(intT, Axis::X) - n1 + pr.f0 * state.v2;
    out.dv2 = derivative(intT, Axis::Y) - n2 - pr.f0 * state.v1;
    out.dT = -1.0 * nT;

    if (source && !source->empty()) {
        out.dv1 += sample_source(g, source->q_v1, state.time, Parity::Even);
        out.dv2 += sample_source(g, source->q_v2, state.time, Parity::Even);
        out.dT += sample_source(g, source->q_T, state.time, Parity::Odd);
    }

    out.dv1 = parity_project(out.dv1, Parity::Even);
    out.dv2 = parity_project(out.dv2, Parity::Even);
    out.dT = parity_project(out.dT, Parity::Odd);

    out.p_s = project_barotropic_divfree(out.dv1, out.dv2);

    auto [b1, t1] = vertical_average_split(out.dv1);
    auto [b2, t2] = vertical_average_split(out.dv2);
    out.bar_dv1 = std::move(b1);
    out.tilde_dv1 = std::move(t1);
    out.bar_dv2 = std::move(b2);
    out.tilde_dv2 = std::move(t2);
    return out;
}

TendencySplit barotropic_baroclinic_split(const Tendency& t) {
    TendencySplit out;
    auto [b1, t1] = vertical_average_split(t.dv1);
    auto [b2, t2] = vertical_average_split(t.dv2);
    auto [bT, tT] = vertical_average_split(t.dT);
    out.bar_dv1 = std::move(b1);
    out.tilde_dv1 = std::move(t1);
    out.bar_dv2 = std::move(b2);
    out.tilde_dv2 = std::move(t2);
    out.bar_dT = std::move(bT);
    out.tilde_dT = std::move(tT);
    return out;
}

} // namespace hydrostat
