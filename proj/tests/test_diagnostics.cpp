#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "hydrostat/diagnostics.hpp"
#include "hydrostat/timestepper.hpp"
#include "hydrostat/transform.hpp"

using namespace hydrostat;
namespace {
constexpr double pi = std::numbers::pi;

State zero_state(const Grid3& g, const Params& p) {
    PhysicalField3D zero(g);
    return make_state(zero, zero, zero, p);
}

State nonlinear_state(const Grid3& g, const Params& p) {
    auto v1 = PhysicalField3D::sample(g, [&](double x, double y, double z) {
        return 0.3 * std::sin(2 * pi * x) * std::cos(pi * z / p.h) +
               0.2 * std::cos(2 * pi * y) * std::cos(2 * pi * z / p.h);
    });
    auto v2 = PhysicalField3D::sample(g, [&](double x, double y, double z) {
        return 0.25 * std::cos(2 * pi * x) * std::cos(2 * pi * z / p.h) +
               0.1 * std::sin(2 * pi * y) * std::cos(pi * z / p.h);
    });
    auto T = PhysicalField3D::sample(g, [&](double x, double y, double z) {
        return 0.2 * std::cos(2 * pi * x) * std::sin(pi * z / p.h) +
               0.15 * std::sin(2 * pi * y) * std::sin(2 * pi * z / p.h);
    });
    return make_state(v1, v2, T, p);
}

SpectralField3D random_band_limited(const Grid3& g, Parity parity, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PhysicalField3D f(g);
    for (auto& v : f.values) v = u(rng);
    SpectralField3D s = parity_project(forward(f, parity), parity);
    dealias_in_place(s);
    return s;
}
} // namespace

TEST_CASE("zero state: all norms vanish, X = 1, Z = 0") {
    Grid3 g(8, 8, 8, 1.0);
    State s = zero_state(g, Params{});
    EnergyReport e = norms(s);
    CHECK(e.v_L2 == 0.0);
    CHECK(e.T_H2 == 0.0);
    CHECK(e.diss_v_H == 0.0);
    CHECK(e.coupling == 0.0);
    CHECK(e.residual_v == 0.0);
    RegularityReport r = regularity_functionals(s, 0.5);
    CHECK(r.X == 1.0);
    CHECK(r.Z == 0.0);
    CHECK(r.Y == 0.0);
    CHECK(r.aniso_ratio1 == 0.0);
}

TEST_CASE("single-mode norms match quadrature") {
    Grid3 g(16, 16, 8, 1.0);
    auto v1 = PhysicalField3D::sample(g, [](double, double y, double) {
        return std::sin(2 * pi * y);
    });
    PhysicalField3D zero(g);
    State s = make_state(v1, zero, zero, Params{});
    EnergyReport e = norms(s);
    CHECK(e.v_L2 == doctest::Approx(1.0).epsilon(1e-13)); // ||sin||^2 = 2h/2 = 1
    // dissipation: (1/R1) ||grad_H v||^2 = 4 pi^2
    CHECK(e.diss_v_H == doctest::Approx(4 * pi * pi).epsilon(1e-12));
    CHECK(e.diss_v_z == 0.0);
}

TEST_CASE("eta and theta definitions") {
    Params p;
    p.R1 = 2.0;
    Grid3 g(16, 16, 16, 1.0);

    SUBCASE("z-independent v gives eta = 0 and theta = R1 T") {
        auto v1 = PhysicalField3D::sample(g, [](double, double y, double) {
            return std::sin(2 * pi * y);
        });
        auto T = PhysicalField3D::sample(g, [](double x, double, double z) {
            return std::cos(2 * pi * x) * std::sin(pi * z);
        });
        PhysicalField3D zero(g);
        State s = make_state(v1, zero, T, p);
        auto [eta, theta] = eta_theta(s);
        CHECK(l2_norm(eta) < 1e-13);
        CHECK(l2_norm(theta - p.R1 * s.T) < 1e-13);
    }
    SUBCASE("v = (cos(pi z/h) sin(2 pi y), 0): eta = (2 pi^2 / h) sin(pi z/h) cos(2 pi y)") {
        auto v1 = PhysicalField3D::sample(g, [](double, double y, double z) {
            return std::cos(pi * z) * std::sin(2 * pi * y);
        });
        PhysicalField3D zero(g);
        State s = make_state(v1, zero, zero, p);
        auto [eta, theta] = eta_theta(s);
        CHECK(l2_norm(theta) < 1e-12);
        PhysicalField3D ep = inverse(eta);
        for (int iz = 0; iz < g.nz; ++iz)
            for (int iy = 0; iy < g.ny; ++iy)
                CHECK(ep.at(3, iy, iz) ==
                      doctest::Approx(2 * pi * pi * std::sin(pi * g.z(iz)) *
                                      std::cos(2 * pi * g.y(iy))).epsilon(1e-10));
    }
    SUBCASE("theta - R1 T = div_H u as fields") {
        State s = nonlinear_state(g, p);
        auto [eta, theta] = eta_theta(s);
        SpectralField3D u1 = derivative(s.v1, Axis::Z);
        SpectralField3D u2 = derivative(s.v2, Axis::Z);
        SpectralField3D div_u = derivative(u1, Axis::X) + derivative(u2, Axis::Y);
        CHECK(l2_norm(theta - p.R1 * s.T - div_u) < 1e-12);
        CHECK(parity_residual(eta, Parity::Odd) < 1e-10);
        CHECK(parity_residual(theta, Parity::Odd) < 1e-10);
    }
}

TEST_CASE("regularity functional term values") {
    Params p;
    p.R1 = 2.0;
    p.R2 = 3.0;
    p.R3 = 2.5;
    Grid3 g(16, 16, 8, 1.0);

    SUBCASE("C_R formula and the R2 = R3 degeneracy") {
        State s = zero_state(g, p);
        RegularityReport r = regularity_functionals(s, 0.0);
        const double expect =
            2.0 * p.R1 * p.R1 * (p.R1 + p.R2) * (p.R2 - p.R3) * (p.R2 - p.R3) /
            (p.R2 * p.R2 * p.R3);
        CHECK(r.C_R == doctest::Approx(expect).epsilon(1e-14));
        Params q = p;
        q.R3 = q.R2;
        State s2 = zero_state(g, q);
        CHECK(regularity_functionals(s2, 0.0).C_R == 0.0);
    }
    SUBCASE("single-mode barotropic v: ||grad_H lap_H vbar||^2 = (2 pi)^6 ||vbar||^2") {
        auto v2f = PhysicalField3D::sample(g, [](double x, double, double) {
            return std::sin(2 * pi * x);
        });
        PhysicalField3D zero(g);
        State s = make_state(zero, v2f, zero, p);
        RegularityReport r = regularity_functionals(s, 0.0);
        const double vbar2 = 1.0; // ||sin(2 pi x)||_2^2 on the box
        CHECK(r.X - 1.0 == doctest::Approx(std::pow(2 * pi, 6) * vbar2).epsilon(1e-12));
        CHECK(r.Y == doctest::Approx(std::pow(2 * pi, 8) * vbar2).epsilon(1e-12));
    }
    SUBCASE("X >= 1 and Z = log X on a generic state") {
        State s = nonlinear_state(Grid3(16, 16, 16, 1.0), p);
        RegularityReport r = regularity_functionals(s, 0.3);
        CHECK(r.X >= 1.0);
        CHECK(r.Z == std::log(r.X));
        CHECK(r.t2_eta_theta_H2 ==
              doctest::Approx(0.09 * (r.eta_H2 * r.eta_H2 + r.theta_H2 * r.theta_H2)));
    }
}

TEST_CASE("anisotropic ratio") {
    Grid3 g(16, 16, 16, 1.0);

    SUBCASE("zero field gives ratio 0") {
        SpectralField3D z(g, Parity::Even), f = random_band_limited(g, Parity::Even, 1);
        auto [r1, r2] = anisotropic_ratio(z, f, f);
        CHECK(r1 == 0.0);
        CHECK(r2 == 0.0);
    }
    SUBCASE("constants: LHS = 4h^2 and both ratios are finite") {
        const double h = 0.7;
        Grid3 gh(8, 8, 8, h);
        PhysicalField3D one(gh);
        for (auto& v : one.values) v = 1.0;
        SpectralField3D c = forward(one, Parity::Even);
        // LHS = int_M (int 1 dz)(int 1*1 dz) = (2h)(2h)|M| = 4h^2
        // RHS1 = (2h)^(1/4) * ((2h)^(1/4)+0) * (2h)^(1/2) * ... = (2h)^(3/2)
        const double lhs = 4.0 * h * h;
        const double rhs = std::pow(2.0 * h, 1.5);
        auto [r1, r2] = anisotropic_ratio(c, c, c);
        CHECK(r1 == doctest::Approx(lhs / rhs).epsilon(1e-12));
        CHECK(r2 == doctest::Approx(lhs / rhs).epsilon(1e-12));
    }
    SUBCASE("ratios stay bounded under refinement (sampled)") {
        double m16 = 0.0, m32 = 0.0;
        for (unsigned seed = 0; seed < 20; ++seed) {
            Grid3 a(16, 16, 16, 1.0), b(32, 32, 32, 1.0);
            auto ra = anisotropic_ratio(random_band_limited(a, Parity::Odd, 3 * seed),
                                        random_band_limited(a, Parity::Even, 3 * seed + 1),
                                        random_band_limited(a, Parity::Odd, 3 * seed + 2));
            auto rb = anisotropic_ratio(random_band_limited(b, Parity::Odd, 3 * seed),
                                        random_band_limited(b, Parity::Even, 3 * seed + 1),
                                        random_band_limited(b, Parity::Odd, 3 * seed + 2));
            m16 = std::max({m16, ra.first, ra.second});
            m32 = std::max({m32, rb.first, rb.second});
        }
        CHECK(m32 <= 1.5 * m16);
    }
}

TEST_CASE("energy identity residuals on trajectories") {
    Params p;
    p.R1 = 2.0;
    p.R2 = 3.0;
    p.R3 = 2.5;
    p.f0 = 0.7;
    Grid3 g(16, 16, 16, 1.0);

    SUBCASE("window validation") {
        std::vector<EnergyReport> two(2);
        CHECK_THROWS_AS(energy_identity_residual(two), std::invalid_argument);
        std::vector<EnergyReport> bad(4);
        bad[0].time = 0.0;
        bad[1].time = 0.1;
        bad[2].time = 0.3;
        bad[3].time = 0.4;
        CHECK_THROWS_AS(energy_identity_residual(bad), std::invalid_argument);
    }
    SUBCASE("stationary zero solution has zero residual") {
        State s = zero_state(g, p);
        std::vector<EnergyReport> rep;
        for (int i = 0; i < 4; ++i) {
            rep.push_back(norms(s));
            s = step(s, 1e-3, Scheme::ImexRk2);
        }
        auto res = energy_identity_residual(rep);
        CHECK(res.max_residual_v == 0.0);
        CHECK(res.max_residual_T == 0.0);
    }
    SUBCASE("residual decreases at the scheme's order under dt halving") {
        auto max_res = [&](Scheme sch, double dt) {
            State s = nonlinear_state(g, p);
            std::vector<EnergyReport> rep{norms(s)};
            const int n = static_cast<int>(std::lround(0.02 / dt));
            for (int i = 0; i < n; ++i) {
                s = step(s, dt, sch);
                rep.push_back(norms(s));
            }
            auto r = energy_identity_residual(rep);
            return std::max(r.max_residual_v, r.max_residual_T);
        };
        const double e1 = max_res(Scheme::ImexEuler, 2e-3);
        const double e2 = max_res(Scheme::ImexEuler, 1e-3);
        CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.2));
        const double r1 = max_res(Scheme::ImexRk2, 2e-3);
        const double r2 = max_res(Scheme::ImexRk2, 1e-3);
        CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
    }
}

TEST_CASE("semi-discrete pairing is exact for the spectral discretization") {
    Params p;
    p.R1 = 2.0;
    p.R2 = 3.0;
    p.R3 = 2.5;
    p.f0 = 0.7;
    State s = nonlinear_state(Grid3(16, 16, 16, 1.0), p);
    EnergyReport e = norms(s);
    CHECK(e.residual_v < 1e-8);
    CHECK(e.residual_T < 1e-8);
}

TEST_CASE("difference_gronwall") {
    Params p;
    Grid3 g(8, 8, 8, 1.0);
    auto v1 = PhysicalField3D::sample(g, [](double x, double, double z) {
        return 0.2 * std::sin(2 * pi * x) * std::cos(pi * z);
    });
    PhysicalField3D zero(g);
    State s = make_state(v1, zero, zero, p);

    SUBCASE("identical trajectories give d == 0") {
        std::vector<State> traj;
        for (int i = 0; i < 4; ++i) {
            traj.push_back(s);
            s = step(s, 1e-3, Scheme::ImexRk2);
        }
        GronwallReport r = difference_gronwall(traj, traj);
        for (double d : r.d) CHECK(d == 0.0);
        CHECK(r.within_envelope);
    }
    SUBCASE("envelope is nondecreasing") {
        std::vector<State> a, b;
        State s2 = s;
        s2.v1 *= 1.001;
        for (int i = 0; i < 5; ++i) {
            a.push_back(s);
            b.push_back(s2);
            s = step(s, 1e-3, Scheme::ImexRk2);
            s2 = step(s2, 1e-3, Scheme::ImexRk2);
        }
        GronwallReport r = difference_gronwall(a, b);
        for (std::size_t i = 1; i < r.envelope.size(); ++i)
            CHECK(r.envelope[i] >= r.envelope[i - 1]);
    }
    SUBCASE("mismatched sampling is rejected") {
        std::vector<State> a{s}, b{s, s};
        CHECK_THROWS_AS(difference_gronwall(a, b), std::invalid_argument);
    }
}
