#include <catch_amalgamated.hpp>

#include <cmath>

#include "vcorr/atom.hpp"
#include "vcorr/error.hpp"
#include "vcorr/units.hpp"

using namespace vcorr;
using Catch::Approx;

namespace {

Atom two_level(double omega, Vec3 mu)
{
    Atom a;
    a.omega = omega;
    a.dipole = mu;
    return a;
}

bool throws_kind(ErrorKind kind, auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

} // namespace

TEST_CASE("unit systems validate their constants")
{
    CHECK_NOTHROW(UnitSystem::gaussian().validate());
    CHECK_NOTHROW(UnitSystem::natural().validate());
    UnitSystem bad = UnitSystem::natural();
    bad.c = 2.0;
    CHECK(throws_kind(ErrorKind::config, [&] { bad.validate(); }));
    UnitSystem neg;
    neg.hbar = -1.0;
    CHECK(throws_kind(ErrorKind::config, [&] { neg.validate(); }));
}

TEST_CASE("natural conversions round-trip in every dimension")
{
    const NaturalScale s{UnitSystem::gaussian(), 3.1e15};
    for (auto tag : {"length", "time", "frequency", "energy", "correlation", "polarizability"}) {
        const Dimension d = parse_dimension(tag);
        CHECK(to_string(d) == tag);
        const double x = 3.7;
        CHECK(from_natural(to_natural(x, d, s), d, s) == Approx(x).epsilon(1e-14));
    }
    CHECK(throws_kind(ErrorKind::unit, [] { parse_dimension("mass"); }));
}

TEST_CASE("natural scale definitions")
{
    const NaturalScale one{UnitSystem::gaussian(), 1.0};
    CHECK(to_natural(2.99792458e10, Dimension::length, one) == Approx(1.0).epsilon(1e-15));
    const NaturalScale nat{UnitSystem::natural(), 2.0};
    CHECK(from_natural(1.0, Dimension::energy, nat) == 2.0);
}

TEST_CASE("two-level polarizability closed forms")
{
    const auto u = UnitSystem::natural();
    const auto a = make_polarizability(two_level(1.0, {0, 0, 1}), u);
    CHECK(a.imaginary(0.0) == Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(a.imaginary(1.0) == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(a(0.5) == Approx(2.0 / 3.0 / 0.75).epsilon(1e-15));
    CHECK(a.at(std::complex<double>(0.0, 1.0)).real() == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(throws_kind(ErrorKind::pole, [&] { (void)a(1.0); }));
}

TEST_CASE("zero dipole gives zero polarizability")
{
    const auto a = make_polarizability(two_level(1.0, {0, 0, 0}), UnitSystem::natural());
    CHECK(a.is_zero());
    for (double w : {0.0, 0.3, 2.0}) CHECK(a(w) == 0.0);
}

TEST_CASE("imaginary-axis polarizability is positive and strictly decreasing")
{
    Atom atom = two_level(1.0, {0.3, 0, 1});
    atom.extra.push_back({2.5, {0, 0.4, 0}});
    const auto a = make_polarizability(atom, UnitSystem::natural());
    double prev = a.static_value();
    CHECK(a.imaginary(1e-9) == Approx(prev).epsilon(1e-12));
    for (double uu = 0.01; uu < 1e4; uu *= 1.7) {
        const double v = a.imaginary(uu);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(a.imaginary(1e8) < 1e-15);
}

TEST_CASE("Gaussian units carry 1/hbar")
{
    const auto g = UnitSystem::gaussian();
    const auto a = make_polarizability(two_level(2.0e15, {0, 0, 1e-18}), g);
    CHECK(a.static_value() == Approx(2.0 / 3.0 / g.hbar * 1e-36 / 2.0e15).epsilon(1e-14));
}

TEST_CASE("atom validation")
{
    CHECK(throws_kind(ErrorKind::config, [] { two_level(0.0, {0, 0, 1}).validate(); }));
    CHECK(throws_kind(ErrorKind::config, [] { two_level(1.0, {NAN, 0, 1}).validate(); }));
    CHECK_NOTHROW(two_level(1.0, {0, 0, 1}).validate());
}

TEST_CASE("triplet distances permute with the labels")
{
    const Vec3 a{0, 0, 0}, b{3, 0, 0}, c{0, 4, 0};
    const GeometryTriplet t{a, b, c};
    CHECK(t.alpha() == Approx(5.0));
    CHECK(t.beta() == Approx(4.0));
    CHECK(t.gamma() == Approx(3.0));
    const GeometryTriplet s{b, a, c}; // swap A and B: alpha <-> beta
    CHECK(s.alpha() == t.beta());
    CHECK(s.beta() == t.alpha());
    CHECK(s.gamma() == t.gamma());
    CHECK(throws_kind(ErrorKind::singular, [&] { GeometryTriplet{a, a, c}.validate(); }));
}
