#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "vcorr/error.hpp"
#include "vcorr/oracle.hpp"

using namespace vcorr;
using Catch::Approx;
constexpr double pi = std::numbers::pi;

namespace {
const UnitSystem nat = UnitSystem::natural();
}

TEST_CASE("polarization basis spans the transverse plane")
{
    for (const Vec3 k : {Vec3{0, 0, 1}, Vec3{1, 1, 0}, Vec3{0.3, -0.2, 0.9}, Vec3{1, 0, 0}}) {
        const Vec3 n = k.unit();
        const auto [e1, e2] = polarization_basis(n);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double sum = e1[i] * e1[j] + e2[i] * e2[j];
                CHECK(sum == Approx((i == j) - n[i] * n[j]).margin(1e-12));
            }
    }
}

TEST_CASE("grid validation and aliasing guard")
{
    ModeGrid g{10.0, 8, 0.5};
    CHECK_NOTHROW(g.validate());
    g.n_max = 0;
    CHECK_THROWS_AS(g.validate(), Error);
    CHECK_THROWS_AS(mode_sum_scalar_corr({10.0, 8, 0.5}, {0, 0, 0}, {0, 0, 4}, nat), Error);
}

TEST_CASE("coincident points give a finite positive regulated sum")
{
    const auto s = mode_sum_scalar_corr({20.0, 24, 0.5, true}, {0, 0, 0}, {0, 0, 0}, nat);
    CHECK(std::isfinite(s.value));
    CHECK(s.value > 0.0);
}

TEST_CASE("scalar sum decreases with the regulator")
{
    double prev = std::numeric_limits<double>::infinity();
    for (double eta : {0.3, 0.5, 0.8, 1.2}) {
        const double v = mode_sum_scalar_corr({30.0, 48, eta, true}, {0, 0, 0}, {0, 0, 1}, nat).value;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("scalar sum converges to hbar c / (4 pi^2 R^2), cutoff independent and isotropic")
{
    const std::vector<double> etas = {1.6, 1.2, 0.9, 0.7};
    const auto a = mode_sum_scalar_extrapolated(60.0, 144, etas, {0, 0, 0}, {0, 0, 1}, nat, true);
    CHECK(a.value == Approx(1.0 / (4 * pi * pi)).epsilon(0.01));
    const auto b = mode_sum_scalar_extrapolated(60.0, 288, etas, {0, 0, 0}, {0, 0, 1}, nat, true);
    CHECK(std::abs(b.value - a.value) < 1e-3 * std::abs(a.value));
    const auto c = mode_sum_scalar_extrapolated(60.0, 144, etas, {0, 0, 0}, {1, 0, 0}, nat, true);
    CHECK(std::abs(c.value - a.value) < 5e-3 * std::abs(a.value));
    const auto s = mode_sum_scalar_corr({60.0, 144, 0.7, true}, {0, 0, 0}, {0, 0, 1}, nat);
    CHECK(std::abs(s.imag_residue) < 1e-10 * std::abs(s.value));
}

TEST_CASE("EE sum approaches the vacuum tensor, BB equals EE, EB is antisymmetric")
{
    const std::vector<double> etas = {0.9, 0.7, 0.55, 0.45, 0.35};
    const auto ee = mode_sum_em_extrapolated(16.0, 96, etas, FieldPair::EE, {0, 0, 0}, {0, 0, 1}, nat);
    CHECK(ee.value(0, 0).real() == Approx(-4 / pi).epsilon(0.02));
    CHECK(ee.value(2, 2).real() == Approx(4 / pi).epsilon(0.02));
    const ModeGrid g{16.0, 48, 0.5};
    const Tensor3 e = mode_sum_em_corr(g, FieldPair::EE, {0, 0, 0}, {0.3, 0, 1}, nat);
    const Tensor3 b = mode_sum_em_corr(g, FieldPair::BB, {0, 0, 0}, {0.3, 0, 1}, nat);
    CHECK(max_abs_diff(e, b) <= 1e-12 * e.max_abs());
    const Tensor3 eb = mode_sum_em_corr(g, FieldPair::EB, {0, 0, 0}, {0.3, 0, 1}, nat);
    // <E_i B_j> + <B_j E_i> = 2 Re <E_i B_j>
    CHECK(eb.max_abs_real() < 1e-10 * eb.max_abs());
    CHECK(max_abs_diff(eb, -eb.transpose()) < 1e-12 * eb.max_abs());
}

TEST_CASE("mode-pair sums: zero dipole, t = 0 and the static dressing")
{
    Atom a;
    a.dipole = {0, 0, 0};
    const ModeGrid g{12.0, 16, 0.4, true};
    const auto z = mode_pair_dressed_corr(g, a, {0, 0, 1}, {0, 0, 2}, nat);
    CHECK(z.part("dressing").max_abs() == 0.0);
    a.dipole = {0, 0, 1};
    const auto t0 = mode_pair_dressed_corr(g, a, {0, 0, 1}, {0, 0, 2}, nat, 0.0);
    CHECK(t0.part("dressing").max_abs() == 0.0);
    CHECK(max_abs_diff(t0.entries, t0.part("bare")) == 0.0);

    const auto ex = mode_pair_dressed_extrapolated(12.0, 32, {0.4, 0.3, 0.2, 0.15}, a, {0, 0, 1}, {0, 0, 2}, nat);
    const Tensor3 ref = dressed_ground_corr({a, {0, 0, 1}, {0, 0, 2}, false}, nat).entries;
    CHECK(ex.value(2, 2).real() == Approx(ref(2, 2).real()).epsilon(0.05));
}

TEST_CASE("oracle sums are deterministic")
{
    const ModeGrid g{20.0, 32, 0.5, true};
    const auto a = mode_sum_scalar_corr(g, {0, 0, 0}, {0.2, 0.1, 1}, nat);
    const auto b = mode_sum_scalar_corr(g, {0, 0, 0}, {0.2, 0.1, 1}, nat);
    CHECK(a.value == b.value);
}

TEST_CASE("rational extrapolation reproduces a rational function")
{
    std::vector<double> x, y;
    for (double h : {0.8, 0.4, 0.2, 0.1}) {
        x.push_back(h);
        y.push_back((2 + h) / (1 + 3 * h));
    }
    CHECK(rational_extrapolate(x, y) == Approx(2.0).epsilon(1e-12));
}
