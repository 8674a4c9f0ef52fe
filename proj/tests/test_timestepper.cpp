#include <cmath>
#include <numbers>

#include <doctest.h>

#include "hydrostat/mms.hpp"
#include "hydrostat/timestepper.hpp"
#include "hydrostat/transform.hpp"

using namespace hydrostat;
namespace {
constexpr double pi = std::numbers::pi;

State diffusion_state(const Grid3& g, const Params& p) {
    PhysicalField3D zero(g);
    auto T = PhysicalField3D::sample(g, [&](double, double, double z) {
        return std::sin(pi * z / p.h);
    });
    return make_state(zero, zero, T, p);
}
} // namespace

TEST_CASE("implicit symbols") {
    Params p;
    p.R1 = 2.0;
    p.R2 = 3.0;
    p.R3 = 2.5;
    p.epsilon = 0.1;
    CHECK(lambda_v(p, 2 * pi, 0.0, pi) ==
          doctest::Approx(4 * pi * pi / 2.0 + pi * pi / 3.0).epsilon(1e-14));
    CHECK(lambda_T(p, 2 * pi, 0.0, pi) ==
          doctest::Approx(pi * pi / 2.5 + 0.1 * 4 * pi * pi).epsilon(1e-14));
    // epsilon = 0: no horizontal temperature dissipation
    p.epsilon = 0.0;
    CHECK(lambda_T(p, 2 * pi, 2 * pi, 0.0) == 0.0);
}

TEST_CASE("zero state is a fixed point of both schemes") {
    Grid3 g(8, 8, 8, 1.0);
    PhysicalField3D zero(g);
    State s = make_state(zero, zero, zero, Params{});
    for (Scheme sch : {Scheme::ImexEuler, Scheme::ImexRk2}) {
        State n = step(s, 1e-2, sch);
        CHECK(l2_norm(n.v1) == 0.0);
        CHECK(l2_norm(n.T) == 0.0);
        CHECK(n.time == doctest::Approx(1e-2));
    }
}

TEST_CASE("vertical diffusion decay: accuracy and order") {
    Params p;
    Grid3 g(8, 8, 16, 1.0);
    auto error_at = [&](Scheme sch, double dt) {
        State s = diffusion_state(g, p);
        const int n = static_cast<int>(std::lround(0.1 / dt));
        for (int i = 0; i < n; ++i) s = step(s, dt, sch);
        const double exact = std::exp(-pi * pi * s.time);
        PhysicalField3D T = inverse(s.T);
        double e = 0.0;
        for (int iz = 0; iz < g.nz; ++iz)
            e = std::max(e, std::abs(T.at(2, 2, iz) - exact * std::sin(pi * g.z(iz))));
        return e;
    };
    SUBCASE("rk2 meets the tight bound at dt = 1e-4") {
        CHECK(error_at(Scheme::ImexRk2, 1e-4) < 1e-8);
    }
    SUBCASE("euler converges at first order") {
        const double e1 = error_at(Scheme::ImexEuler, 2e-3);
        const double e2 = error_at(Scheme::ImexEuler, 1e-3);
        CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.15));
    }
    SUBCASE("rk2 amplification matches its stability function exactly") {
        // with zero explicit tendency one step is multiplication by
        // R(z) = (1 + (1-2g)z + (g^2-2g+1/2)z^2) / (1 - g z)^2, z = -lambda dt
        const double gm = 0.78519, dt = 4e-3, z = -pi * pi * dt;
        const double R = (1.0 + (1 - 2 * gm) * z + (gm * gm - 2 * gm + 0.5) * z * z) /
                         ((1.0 - gm * z) * (1.0 - gm * z));
        State s = diffusion_state(g, p);
        const double before = std::abs(s.T.at(0, 0, 1));
        State n = step(s, dt, Scheme::ImexRk2);
        CHECK(before > 0.0);
        CHECK(std::abs(n.T.at(0, 0, 1)) / before == doctest::Approx(R).epsilon(1e-13));
        // ...which is second-order accurate in dt
        CHECK(R == doctest::Approx(std::exp(z)).epsilon(5e-6));
    }
}

TEST_CASE("steady manufactured state is a fixed point with sources") {
    ManufacturedSolution m;
    m.params.R1 = 2.0;
    m.params.R2 = 3.0;
    m.params.R3 = 2.5;
    m.params.f0 = 0.7;
    Grid3 g(32, 32, 32, 1.0);
    State s = m.initial_state(g);
    SourceSpec src = m.source();
    for (int i = 0; i < 20; ++i) s = step(s, 1e-3, Scheme::ImexRk2, &src);
    CHECK(m.error(s) < 1e-12);
}

TEST_CASE("cfl_dt respects the advective limit and the cap") {
    Grid3 g(16, 16, 16, 1.0);
    Params p;
    auto v1 = PhysicalField3D::sample(g, [](double, double y, double) {
        return 2.0 * std::sin(2 * pi * y);
    });
    PhysicalField3D zero(g);
    State s = make_state(v1, zero, zero, p);
    const double dt = cfl_dt(s, 0.5, 1.0);
    CHECK(dt == doctest::Approx(0.5 * g.dx() / 2.0).epsilon(1e-12));
    // zero velocity: capped at dt_max
    State z = make_state(zero, zero, zero, p);
    CHECK(cfl_dt(z, 0.5, 0.25) == 0.25);
}

TEST_CASE("step rejects nonpositive dt and config validates") {
    Grid3 g(8, 8, 8, 1.0);
    PhysicalField3D zero(g);
    State s = make_state(zero, zero, zero, Params{});
    CHECK_THROWS_AS(step(s, 0.0, Scheme::ImexRk2), std::invalid_argument);
    StepperConfig c;
    c.cfl_safety = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = StepperConfig{};
    c.dt_max = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK_THROWS_AS(scheme_from_string("rk4"), std::invalid_argument);
    CHECK(scheme_from_string("imex_euler") == Scheme::ImexEuler);
    CHECK(to_string(Scheme::ImexRk2) == "imex_rk2");
}

TEST_CASE("integrate lands exactly on t_end and drives the observer") {
    Grid3 g(8, 8, 8, 1.0);
    Params p;
    State s = diffusion_state(g, p);
    StepperConfig c;
    c.dt = 3e-3; // not a divisor of t_end: the final step is shortened
    c.t_end = 0.01;
    int calls = 0;
    State out = integrate(s, c, nullptr, [&](const State& st) {
        ++calls;
        CHECK(st.time <= c.t_end + 1e-12);
    });
    CHECK(out.time == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(calls == 5); // initial state + 4 steps (3 full + 1 short)
}

TEST_CASE("gross instability raises BlowupError with the last valid state") {
    Grid3 g(16, 16, 16, 1.0);
    Params p;
    p.R1 = p.R2 = p.R3 = 1e6; // essentially inviscid
    auto v1 = PhysicalField3D::sample(g, [](double x, double, double z) {
        return 40.0 * std::sin(2 * pi * x) * std::cos(pi * z);
    });
    auto v2 = PhysicalField3D::sample(g, [](double, double y, double z) {
        return 40.0 * std::sin(2 * pi * y) * std::cos(pi * z);
    });
    PhysicalField3D zero(g);
    State s = make_state(v1, v2, zero, p);
    bool blew = false;
    try {
        for (int i = 0; i < 400; ++i) s = step(s, 0.05, Scheme::ImexRk2); // CFL-violating
    } catch (const BlowupError& e) {
        blew = true;
        CHECK(std::isfinite(l2_norm(e.last_valid.v1)));
    }
    CHECK(blew);
}

TEST_CASE("adaptive integration stays stable where the fixed step blows up") {
    Grid3 g(16, 16, 16, 1.0);
    Params p;
    auto v1 = PhysicalField3D::sample(g, [](double x, double, double z) {
        return 4.0 * std::sin(2 * pi * x) * std::cos(pi * z);
    });
    PhysicalField3D zero(g);
    State s = make_state(v1, zero, zero, p);
    StepperConfig c;
    c.dt = 0.0; // adaptive
    c.cfl_safety = 0.4;
    c.dt_max = 5e-3;
    c.t_end = 0.05;
    State out = integrate(s, c);
    CHECK(out.time == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(std::isfinite(l2_norm(out.v1)));
}
