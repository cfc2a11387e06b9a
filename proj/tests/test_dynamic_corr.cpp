#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "vcorr/dynamic_corr.hpp"
#include "vcorr/error.hpp"

using namespace vcorr;
using Catch::Approx;
constexpr double pi = std::numbers::pi;

namespace {

const UnitSystem nat = UnitSystem::natural();

Atom ground_atom(Vec3 mu = {0.3, 0, 1})
{
    Atom a;
    a.dipole = mu;
    return a;
}

Tensor3 dressing(const CorrTensor& c) { return c.part("first_first") + c.part("zeroth_second"); }

} // namespace

TEST_CASE("window function")
{
    CHECK(window_F(0.0, 2.5) == cplx(2.5));
    CHECK(std::abs(window_F(2 * pi, 1.0)) < 1e-15);
    CHECK(std::abs(window_F(pi, 1.0) - cplx(0, 2 / pi)) < 1e-15);
    for (double x : {-3.0, 1e-7, 0.4, 10.0}) CHECK(std::abs(window_F(x, 1.7)) <= 1.7 + 1e-15);
    // small-x branch joins the closed form: F = (sin x)/x + i 2 sin^2(x/2)/x at t = 1
    for (double x : {0.999e-5, 1.001e-5, 3e-3}) {
        const cplx ref(std::sin(x) / x, 2 * std::sin(x / 2) * std::sin(x / 2) / x);
        CHECK(std::abs(window_F(x, 1.0) - ref) < 1e-15);
    }
    CHECK_THROWS_AS(window_F(1.0, -1.0), Error);
}

TEST_CASE("causality flags")
{
    const auto a = causality_flags({0, 0, 0}, {0, 0, 2}, {0, 0, 0.5}, 1.0);
    CHECK_FALSE(a.in_cone_r);
    const auto b = causality_flags({0, 0, 0}, {0, 0, 0.5}, {0, 0, -0.5}, 1.1);
    CHECK(b.in_cone_r);
    CHECK(b.in_cone_rprime);
    CHECK(b.pair_connected);
    const auto c = causality_flags({0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, 1.5);
    CHECK(c.in_cone_r);
    CHECK(c.in_cone_rprime);
    CHECK_FALSE(c.pair_connected);
    const auto z = causality_flags({0, 0, 0}, {0, 0, 1}, {0, 1, 0}, 0.0);
    CHECK_FALSE((z.in_cone_r || z.in_cone_rprime || z.pair_connected));
}

TEST_CASE("t = 0 gives the bare vacuum exactly")
{
    const Vec3 r{0, 0.3, 1}, rp{0.2, 0, 1.5};
    const auto c = dynamic_ground_corr(ground_atom(), r, rp, 0.0, nat);
    CHECK(max_abs_diff(c.entries, vacuum_em_corr(FieldPair::EE, r, rp, nat).entries) == 0.0);
}

TEST_CASE("gates give exact zeros")
{
    const Vec3 r{0, 0, 2}, rp{0, 0.5, 0};
    // R' < ct < R: first_first gated off, zeroth_second on
    const auto c = dynamic_ground_corr(ground_atom(), r, rp, 1.0, nat);
    CHECK(c.part("first_first").max_abs() == 0.0);
    CHECK(c.part("zeroth_second").max_abs() > 0.0);
    // both outside
    const auto d = dynamic_ground_corr(ground_atom(), r, {0, 3, 0}, 1.0, nat);
    CHECK(dressing(d).max_abs() == 0.0);
    Atom ex = ground_atom();
    ex.state = StateTag::excited;
    const auto e = dynamic_excited_corr(ex, r, rp, 1.0, nat);
    CHECK(e.part("resonant").max_abs() == 0.0);
}

TEST_CASE("nonlocality witness: both points in the cone, pair disconnected")
{
    // R = R' = 0.6 ct on opposite sides, so |r - r'| = 1.2 ct
    const double t = 1.0;
    const auto c = dynamic_ground_corr(ground_atom({0, 0, 1}), {0.6, 0, 0}, {-0.6, 0, 0}, t, nat);
    CHECK(c.flags.in_cone_r);
    CHECK(c.flags.in_cone_rprime);
    CHECK_FALSE(c.flags.pair_connected);
    CHECK(c.part("first_first").max_abs() > 0.0);
}

TEST_CASE("half-cone witness for the zeroth-second part")
{
    const auto c = dynamic_ground_corr(ground_atom(), {0, 0, 0.5}, {0, 3, 0}, 1.0, nat);
    CHECK(c.flags.in_cone_r);
    CHECK_FALSE(c.flags.in_cone_rprime);
    CHECK(c.part("zeroth_second").max_abs() > 0.0);
}

TEST_CASE("Hermiticity C_ij(r, r', t) = C_ji(r', r, t)*")
{
    const Vec3 r{0, 0.3, 1}, rp{0.2, 0, 1.5};
    for (double t : {1.2, 3.0}) {
        const Tensor3 a = dynamic_ground_corr(ground_atom(), r, rp, t, nat).entries;
        const Tensor3 b = dynamic_ground_corr(ground_atom(), rp, r, t, nat).entries;
        CHECK(max_abs_diff(a, b.transpose().conj()) < 1e-10 * a.max_abs());
    }
}

TEST_CASE("excited atom: nonresonant part is the negated ground dressing")
{
    Atom ex = ground_atom();
    ex.state = StateTag::excited;
    const Vec3 r{0, 0.3, 1}, rp{0.2, 0, 1.5};
    const auto e = dynamic_excited_corr(ex, r, rp, 2.0, nat);
    const auto g = dynamic_ground_corr(ground_atom(), r, rp, 2.0, nat);
    CHECK(max_abs_diff(e.part("nonresonant"), -dressing(g)) == 0.0);
    CHECK(e.part("resonant").max_abs() > 0.0);
}

TEST_CASE("resonant profile changes sign across half a wavelength")
{
    // 2 cos(kA (R - R'))/(R R') with R - R' = pi/kA
    const double kA = 1.0, R = 2.0 + pi, Rp = 2.0;
    const double flipped = 2 * std::cos(kA * (R - Rp)) / (R * Rp);
    CHECK(flipped == Approx(-2.0 / (R * Rp)).epsilon(1e-15));
}

TEST_CASE("light-cone surfaces are refused")
{
    CHECK_THROWS_AS(dynamic_ground_corr(ground_atom(), {0, 0, 1}, {0, 2, 0}, 1.0, nat), Error);
}

TEST_CASE("late times settle to the static dressed correlation")
{
    const Atom a = ground_atom({0, 0, 1});
    const Vec3 r{0, 0.3, 1}, rp{0.2, 0, 1.5};
    const Tensor3 stat = dressed_ground_corr({a, r, rp, false}, nat).entries;
    const Tensor3 late = window_average([&](double t) { return dressing(dynamic_ground_corr(a, r, rp, t, nat)); },
                                        200.0, 2 * pi / a.omega);
    CHECK(max_abs_diff(late, stat) < 1e-4 * stat.max_abs());
}
