#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "vcorr/error.hpp"
#include "vcorr/tensorops.hpp"

using namespace vcorr;
using Catch::Approx;

namespace {

double rel_diff(const Tensor3& a, const Tensor3& b) { return max_abs_diff(a, b) / std::max(b.max_abs(), 1e-300); }

} // namespace

TEST_CASE("F of 1/R on the z axis")
{
    const Tensor3 F = apply_F(radial_inverse(2.0), Vec3{0, 0, 2});
    const Tensor3 expect = Tensor3::diag(-1.0 / 8, -1.0 / 8, 2.0 / 8);
    CHECK(max_abs_diff(F, expect) < 1e-15);
}

TEST_CASE("F of a constant vanishes")
{
    const Tensor3 F = apply_F(profile_constant(3.0), Vec3{0.3, -1, 2});
    CHECK(F.max_abs() == 0.0);
}

TEST_CASE("F matches finite differences on smooth profiles")
{
    const Vec3 probes[] = {{0.3, -0.7, 1.1}, {2.0, 1.0, -0.5}, {0, 0, 1.5}};
    for (double k : {0.4, 1.0, 2.5}) {
        for (const Vec3& x : probes) {
            const auto h_exp = [k](const Vec3& y) { return std::exp(cplx(0, k * y.norm())) / y.norm(); };
            const auto h_sin = [k](const Vec3& y) { return cplx(std::sin(k * y.norm()) / y.norm()); };
            const auto h_cos = [k](const Vec3& y) { return cplx(std::cos(k * y.norm()) / y.norm()); };
            const auto h_dec = [k](const Vec3& y) { return cplx(std::exp(-k * y.norm()) / y.norm()); };
            const double step = 1e-3;
            CHECK(rel_diff(apply_F(radial_exp(k, x.norm()), x), oracle::fd_F(h_exp, x, step)) < 1e-6);
            CHECK(rel_diff(apply_F(radial_sin(k, x.norm()), x), oracle::fd_F(h_sin, x, step)) < 1e-6);
            CHECK(rel_diff(apply_F(radial_cos(k, x.norm()), x), oracle::fd_F(h_cos, x, step)) < 1e-6);
            CHECK(rel_diff(apply_F(profile_exp_decay(k), x), oracle::fd_F(h_dec, x, step)) < 1e-6);
        }
    }
}

TEST_CASE("F output is symmetric")
{
    const Vec3 x{0.4, 1.3, -0.2};
    const Tensor3 F = apply_F(radial_exp(cplx(1.2, 0.3), x.norm()), x);
    CHECK(max_abs_diff(F, F.transpose()) < 1e-15);
}

TEST_CASE("radial profiles match their own finite differences")
{
    const double h = 1e-4;
    for (const auto& p : {profile_exp(1.3), profile_sin(0.7), profile_cos(2.0), profile_exp_decay(0.5)}) {
        for (double R : {0.5, 1.7, 4.0}) {
            const cplx fd1 = (p.value(R + h) - p.value(R - h)) / (2 * h);
            const cplx fd2 = (p.value(R + h) - 2.0 * p.value(R) + p.value(R - h)) / (h * h);
            CHECK(std::abs(fd1 - p.d1(R)) < 1e-6 * std::abs(p.d1(R)) + 1e-9);
            CHECK(std::abs(fd2 - p.d2(R)) < 1e-6 * std::abs(p.d2(R)) + 1e-6);
        }
    }
}

TEST_CASE("e^{ikR}/R field is transverse away from the origin")
{
    const double k = 1.1, h = 1e-3;
    const Vec3 x{0.8, -0.4, 1.3};
    auto F_at = [k](const Vec3& y) { return apply_F(radial_exp(k, y.norm()), y); };
    const Vec3 e[3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
    double scale = F_at(x).max_abs() * k;
    for (int q = 0; q < 3; ++q) {
        cplx div = 0.0;
        for (int p = 0; p < 3; ++p) {
            const Tensor3 a = F_at(x + e[p] * 2), b = F_at(x + e[p]), c = F_at(x - e[p]), d = F_at(x - e[p] * 2);
            div += (-a(p, q) + 8.0 * b(p, q) - 8.0 * c(p, q) + d(p, q)) / (12 * h);
        }
        CHECK(std::abs(div) < 1e-6 * scale);
    }
}

TEST_CASE("apply_F at the origin is singular")
{
    CHECK_THROWS_AS(apply_F(profile_inverse(), Vec3{0, 0, 0}), Error);
    CHECK_THROWS_AS(potential_tensor(Channel::ee, 1.0, Vec3{0, 0, 0}), Error);
}

TEST_CASE("ee potential tensor equals -F cos(kR)/R and the bracket expansion")
{
    const double k = 1.0;
    const Vec3 R{0, 0, 1};
    const Tensor3 V = potential_tensor(Channel::ee, k, R);
    const Tensor3 mF = -apply_F(radial_cos(k, 1.0), R);
    CHECK(max_abs_diff(V, mF) < 1e-12);
    // (delta - RR)(-k^2 cos/R - ...) written out along and across R
    const double r = 1.0, c = std::cos(k * r), s = std::sin(k * r);
    const double perp = (c + k * r * s - k * k * r * r * c) / (r * r * r);
    const double para = -2.0 * (c + k * r * s) / (r * r * r);
    CHECK(V(0, 0).real() == Approx(perp).margin(1e-10));
    CHECK(V(1, 1).real() == Approx(perp).margin(1e-10));
    CHECK(V(2, 2).real() == Approx(para).margin(1e-10));
}

TEST_CASE("ee static limit and mm identity")
{
    const Tensor3 V0 = potential_tensor(Channel::ee, 0.0, Vec3{0, 0, 2});
    CHECK(max_abs_diff(V0, Tensor3::diag(1.0 / 8, 1.0 / 8, -0.25)) < 1e-15);
    const Vec3 R{1, 1, 0};
    const Tensor3 ee = potential_tensor(Channel::ee, 1.3, R), mm = potential_tensor(Channel::mm, 1.3, R);
    CHECK(max_abs_diff(ee, mm) == 0.0);
}

TEST_CASE("em potential tensor")
{
    CHECK(potential_tensor(Channel::em, 0.0, Vec3{0.2, 0.5, 1}).max_abs() == 0.0);
    const double k = 0.9;
    const Vec3 R{0.3, -1.2, 0.8};
    const double r = R.norm();
    const Tensor3 V = potential_tensor(Channel::em, k, R);
    const Tensor3 expect = levi_civita(R.unit()) * cplx(k * std::sin(k * r) / (r * r) - k * k * std::sin(k * r) / r);
    CHECK(max_abs_diff(V, expect) < 1e-14);
    CHECK(max_abs_diff(V, -V.transpose()) < 1e-15);
}

TEST_CASE("symmetrized potential tensor")
{
    const Vec3 R{0.4, 0.1, -1.0};
    CHECK(max_abs_diff(potential_tensor_symmetrized(0.7, 0.7, R), potential_tensor(Channel::ee, 0.7, R)) < 1e-15);
    CHECK(max_abs_diff(potential_tensor_symmetrized(0.5, 2.0, R), potential_tensor_symmetrized(2.0, 0.5, R)) == 0.0);
    CHECK(max_abs_diff(potential_tensor_symmetrized(0.0, 0.0, Vec3{0, 0, 2}), Tensor3::diag(0.125, 0.125, -0.25)) <
          1e-15);
}

TEST_CASE("ee potential tensor decay laws")
{
    std::vector<double> Rs, near, far;
    for (int i = 0; i < 12; ++i) Rs.push_back(std::pow(10.0, i / 11.0));
    for (double s : Rs) {
        near.push_back(potential_tensor(Channel::ee, 1e-4, Vec3{s, 0, 0}).max_abs());
        // average out the oscillation by using the transverse envelope k^2/R
        const double k = 50.0;
        const Tensor3 a = potential_tensor(Channel::ee, k, Vec3{0, 0, 1e2 * s});
        const Tensor3 b = potential_tensor(Channel::ee, k, Vec3{0, 0, 1e2 * s + std::numbers::pi / (2 * k)});
        far.push_back(std::hypot(a(0, 0).real(), b(0, 0).real()));
    }
    CHECK(oracle::loglog_slope(Rs, near) == Approx(-3.0).margin(0.05));
    CHECK(oracle::loglog_slope(Rs, far) == Approx(-1.0).margin(0.05));
}

TEST_CASE("apply_FF on a product profile factorizes")
{
    const double k = 0.8;
    const Vec3 R{0.3, 0.9, -0.4}, Rp{-1.1, 0.2, 0.7}, m1{0, 0.6, 1}, m2{1, 0, 0.2};
    const RadialDerivs u = radial_exp(k, R.norm()), v = radial_sin(k, Rp.norm());
    const Tensor3 T = apply_FF(biradial_product(u, v), R, Rp, m1, m2);
    const auto a = apply_F_vec(u, R, m1), b = apply_F_vec(v, Rp, m2);
    CHECK(max_abs_diff(T, Tensor3::outer(a, b)) < 1e-14);
}

TEST_CASE("biradial phi(R+R')/(RR') derivatives match finite differences")
{
    const double k = 0.7;
    const std::array<cplx, 5> phi = {std::cos(k * 3.0), -k * std::sin(k * 3.0), -k * k * std::cos(k * 3.0),
                                     k * k * k * std::sin(k * 3.0), k * k * k * k * std::cos(k * 3.0)};
    const double R = 1.2, Rp = 1.8; // R + R' = 3
    const auto d = biradial_sum_over_product(phi, R, Rp);
    const auto fd = oracle::fd_biradial(
        [k](double a, double b) { return std::cos(k * (a + b)) / (a * b); }, R, Rp, 1e-2);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(std::abs(d.d[a][b] - fd.d[a][b]) < 1e-6 * (1 + std::abs(d.d[a][b])));
}

TEST_CASE("levi-civita contraction")
{
    const Tensor3 e = levi_civita(Vec3{0, 0, 1});
    CHECK(e(0, 1) == cplx(1.0));
    CHECK(e(1, 0) == cplx(-1.0));
    CHECK(e(2, 2) == cplx(0.0));
    CHECK(parse_channel("em") == Channel::em);
    CHECK(std::string(to_string(Channel::mm)) == "mm");
}
