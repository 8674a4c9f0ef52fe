#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "hydrostat/operators.hpp"
#include "hydrostat/transform.hpp"

using namespace hydrostat;
namespace {
constexpr double pi = std::numbers::pi;

SpectralField3D random_band_limited(const Grid3& g, Parity parity, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PhysicalField3D f(g);
    for (auto& v : f.values) v = u(rng);
    SpectralField3D s = forward(f, parity);
    if (parity != Parity::None) s = parity_project(s, parity);
    dealias_in_place(s);
    return s;
}
} // namespace

TEST_CASE("grid wavenumber and reflection indexing") {
    CHECK(Grid3::wavenumber(0, 8) == 0);
    CHECK(Grid3::wavenumber(3, 8) == 3);
    CHECK(Grid3::wavenumber(4, 8) == 4);  // Nyquist kept positive
    CHECK(Grid3::wavenumber(5, 8) == -3);
    CHECK(Grid3::wavenumber(7, 8) == -1);
    CHECK(Grid3::reflect(0, 8) == 0);
    CHECK(Grid3::reflect(3, 8) == 5);
    CHECK(Grid3::reflect(4, 8) == 4);
    CHECK_THROWS_AS(Grid3(7, 8, 8, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid3(8, 8, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid3(8, 8, 8, -1.0), std::invalid_argument);
}

TEST_CASE("forward/inverse round trip") {
    Grid3 g(16, 12, 8, 0.7);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PhysicalField3D f(g);
    for (auto& v : f.values) v = u(rng);
    PhysicalField3D back = inverse(forward(f, Parity::None));
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(f.values[i] == doctest::Approx(back.values[i]).epsilon(1e-12));
}

TEST_CASE("single-mode coefficients and Parseval norm") {
    // f = sin(2 pi x) on h = 1: ||f||_2^2 = |M| * 2h / 2 = 1
    Grid3 g(16, 16, 16, 1.0);
    auto f = PhysicalField3D::sample(g, [](double x, double, double) {
        return std::sin(2 * pi * x);
    });
    SpectralField3D F = forward(f, Parity::Even);
    CHECK(std::abs(F.at(1, 0, 0) - Complex{0.0, -0.5}) < 1e-14);
    CHECK(std::abs(F.at(g.nx - 1, 0, 0) - Complex{0.0, 0.5}) < 1e-14);
    CHECK(l2_norm(F) == doctest::Approx(1.0).epsilon(1e-13));

    // vertical mode: cos(pi z / h) with phase anchored at z = -h
    Grid3 gh(8, 8, 16, 0.5);
    auto c = PhysicalField3D::sample(gh, [](double, double, double z) {
        return std::cos(pi * z / 0.5);
    });
    SpectralField3D C = forward(c, Parity::Even);
    CHECK(std::abs(C.at(0, 0, 1) - Complex{0.5, 0.0}) < 1e-14);
    CHECK(std::abs(C.at(0, 0, gh.nz - 1) - Complex{0.5, 0.0}) < 1e-14);
}

TEST_CASE("spectral derivative: single-mode scaling") {
    Grid3 g(16, 16, 16, 1.0);
    auto f = PhysicalField3D::sample(g, [](double x, double, double) {
        return std::sin(2 * pi * x);
    });
    SpectralField3D F = forward(f, Parity::Even);
    CHECK(l2_norm(derivative(F, Axis::X)) == doctest::Approx(2 * pi * l2_norm(F)).epsilon(1e-13));
    CHECK(l2_norm(derivative(F, Axis::X, 2)) ==
          doctest::Approx(4 * pi * pi * l2_norm(F)).epsilon(1e-13));
    // d/dx sin = 2 pi cos, pointwise
    PhysicalField3D d = inverse(derivative(F, Axis::X));
    for (int ix = 0; ix < g.nx; ++ix)
        CHECK(d.at(ix, 3, 5) == doctest::Approx(2 * pi * std::cos(2 * pi * g.x(ix))).epsilon(1e-12));
}

TEST_CASE("z-derivative uses the physical wavevector m pi / h") {
    const double h = 0.7;
    Grid3 g(8, 8, 16, h);
    auto f = PhysicalField3D::sample(g, [h](double, double, double z) {
        return std::sin(pi * z / h);
    });
    SpectralField3D F = forward(f, Parity::Odd);
    SpectralField3D dF = derivative(F, Axis::Z);
    CHECK(dF.parity == Parity::Even);
    PhysicalField3D d = inverse(dF);
    for (int iz = 0; iz < g.nz; ++iz)
        CHECK(d.at(2, 2, iz) ==
              doctest::Approx((pi / h) * std::cos(pi * g.z(iz) / h)).epsilon(1e-12));
}

TEST_CASE("parity projection and residual") {
    Grid3 g(8, 8, 16, 1.0);
    SpectralField3D f = random_band_limited(g, Parity::None, 11);
    SpectralField3D even = parity_project(f, Parity::Even);
    SpectralField3D odd = parity_project(f, Parity::Odd);
    CHECK(parity_residual(even, Parity::Even) < 1e-13);
    CHECK(parity_residual(odd, Parity::Odd) < 1e-13);
    // decomposition is exact and orthogonal
    CHECK(l2_norm(even + odd - f) < 1e-13);
    CHECK(std::abs(l2_inner(even, odd)) < 1e-12);
    // projection is idempotent
    CHECK(l2_norm(parity_project(even, Parity::Even) - even) < 1e-14);
    CHECK_THROWS_AS(parity_project(f, Parity::None), std::invalid_argument);
}

TEST_CASE("vertical integral from the bottom") {
    const double h = 0.8;
    Grid3 g(8, 8, 16, h);
    auto f = PhysicalField3D::sample(g, [h](double x, double, double z) {
        return std::cos(2 * pi * x) * std::cos(pi * z / h);
    });
    SpectralField3D F = forward(f, Parity::Even);
    SpectralField3D I = vertical_integral_from_bottom(F);
    CHECK(I.parity == Parity::Odd);
    // d/dz of the integral recovers the integrand
    CHECK(l2_norm(derivative(I, Axis::Z) - F) < 1e-12);
    // I(-h) = 0 (the integral from -h to -h)
    PhysicalField3D Ip = inverse(I);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) CHECK(std::abs(Ip.at(ix, iy, 0)) < 1e-13);
    // analytic value: (h/pi) cos(2 pi x) (sin(pi z/h) + sin(pi)) = (h/pi) cos sin
    for (int iz = 0; iz < g.nz; ++iz)
        CHECK(Ip.at(1, 0, iz) ==
              doctest::Approx((h / pi) * std::cos(2 * pi * g.x(1)) *
                              std::sin(pi * g.z(iz) / h)).epsilon(1e-12));
    // nonzero vertical mean violates the precondition
    auto bad = PhysicalField3D::sample(g, [](double x, double, double) {
        return std::cos(2 * pi * x);
    });
    CHECK_THROWS_AS(vertical_integral_from_bottom(forward(bad, Parity::Even)),
                    PreconditionError);
}

TEST_CASE("2/3-rule dealiasing") {
    Grid3 g(16, 16, 16, 1.0);
    CHECK(is_dealiased_mode(g, 0, 0, 0));
    CHECK(is_dealiased_mode(g, 5, 0, 0));  // 3*5 = 15 <= 16: kept
    CHECK(!is_dealiased_mode(g, 6, 0, 0)); // 3*6 = 18 > 16: truncated
    CHECK(is_dealiased_mode(g, g.nx - 5, 0, 0)); // k = -5 kept
    SpectralField3D f = random_band_limited(g, Parity::Even, 3);
    SpectralField3D once = dealias(f);
    CHECK(l2_norm(dealias(once) - once) == 0.0); // idempotent
}

TEST_CASE("dealiased mode predicate matches |k| <= n/3") {
    Grid3 g(16, 16, 16, 1.0);
    for (int i = 0; i < g.nx; ++i) {
        const int k = Grid3::wavenumber(i, g.nx);
        CHECK(is_dealiased_mode(g, i, 0, 0) == (3 * std::abs(k) <= g.nx));
    }
}

TEST_CASE("vertical average split is L2-orthogonal and reconstructs") {
    Grid3 g(8, 8, 8, 1.0);
    SpectralField3D f = random_band_limited(g, Parity::Even, 5);
    auto [bar, tilde] = vertical_average_split(f);
    CHECK(l2_norm(bar + tilde - f) < 1e-14);
    CHECK(std::abs(l2_inner(bar, tilde)) < 1e-13);
    CHECK(std::abs(l2_norm(f) * l2_norm(f) -
                   (l2_norm(bar) * l2_norm(bar) + l2_norm(tilde) * l2_norm(tilde))) < 1e-12);
}

TEST_CASE("Sobolev norm uses the physical wavevector") {
    const double h = 0.5;
    Grid3 g(8, 8, 16, h);
    auto f = PhysicalField3D::sample(g, [h](double, double, double z) {
        return std::sin(pi * z / h);
    });
    SpectralField3D F = forward(f, Parity::Odd);
    const double kz = pi / h;
    CHECK(sobolev_norm(F, 1) ==
          doctest::Approx(std::sqrt(1.0 + kz * kz) * l2_norm(F)).epsilon(1e-12));
}

TEST_CASE("max_abs matches the analytic maximum") {
    Grid3 g(16, 16, 8, 1.0);
    auto f = PhysicalField3D::sample(g, [](double x, double, double) {
        return 0.3 * std::sin(2 * pi * x);
    });
    CHECK(max_abs(forward(f, Parity::Even)) == doctest::Approx(0.3).epsilon(1e-10));
}
