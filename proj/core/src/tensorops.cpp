#include "vcorr/tensorops.hpp"

#include <cmath>

#include "vcorr/error.hpp"

namespace vcorr {

namespace {

double checked_norm(const Vec3& R)
{
    const double r = R.norm();
    if (!(r > 0.0)) throw Error(ErrorKind::singular, "F applied at R = 0");
    if (!std::isfinite(r)) throw Error(ErrorKind::domain, "non-finite separation");
    return r;
}

constexpr cplx I{0.0, 1.0};

} // namespace

RadialDerivs radial_exp(cplx k, double R)
{
    const cplx e = std::exp(I * k * R);
    return {e / R, e * (I * k / R - 1.0 / (R * R)),
            e * (-k * k / R - 2.0 * I * k / (R * R) + 2.0 / (R * R * R))};
}

RadialDerivs radial_sin(cplx k, double R)
{
    const cplx s = std::sin(k * R), c = std::cos(k * R);
    return {s / R, k * c / R - s / (R * R),
            -k * k * s / R - 2.0 * k * c / (R * R) + 2.0 * s / (R * R * R)};
}

RadialDerivs radial_cos(cplx k, double R)
{
    const cplx s = std::sin(k * R), c = std::cos(k * R);
    return {c / R, -k * s / R - c / (R * R),
            -k * k * c / R + 2.0 * k * s / (R * R) + 2.0 * c / (R * R * R)};
}

RadialDerivs radial_inverse(double R) { return {1.0 / R, -1.0 / (R * R), 2.0 / (R * R * R)}; }

RadialProfile profile_inverse()
{
    return {[](double R) { return cplx(1.0 / R); }, [](double R) { return cplx(-1.0 / (R * R)); },
            [](double R) { return cplx(2.0 / (R * R * R)); }};
}

RadialProfile profile_constant(cplx c)
{
    return {[c](double) { return c; }, [](double) { return cplx(0.0); }, [](double) { return cplx(0.0); }};
}

namespace {

template <class Fn>
RadialProfile from_derivs(Fn fn)
{
    return {[fn](double R) { return fn(R).h; }, [fn](double R) { return fn(R).d1; },
            [fn](double R) { return fn(R).d2; }};
}

} // namespace

RadialProfile profile_exp(cplx k) { return from_derivs([k](double R) { return radial_exp(k, R); }); }
RadialProfile profile_sin(cplx k) { return from_derivs([k](double R) { return radial_sin(k, R); }); }
RadialProfile profile_cos(cplx k) { return from_derivs([k](double R) { return radial_cos(k, R); }); }
RadialProfile profile_exp_decay(double u) { return profile_exp(cplx(0.0, u)); }

Tensor3 apply_F(const RadialDerivs& d, const Vec3& Rvec)
{
    const double R = checked_norm(Rvec);
    return Tensor3::radial(-d.d2 - d.d1 / R, d.d2 - d.d1 / R, Rvec / R);
}

Tensor3 apply_F(const RadialProfile& h, const Vec3& Rvec)
{
    return apply_F(h.at(checked_norm(Rvec)), Rvec);
}

std::array<cplx, 3> apply_F_vec(const RadialDerivs& d, const Vec3& Rvec, const Vec3& m)
{
    const double R = checked_norm(Rvec);
    const Vec3 n = Rvec / R;
    const cplx A = -d.d2 - d.d1 / R, B = d.d2 - d.d1 / R;
    const double mn = dot(m, n);
    return {A * m.x + B * mn * n.x, A * m.y + B * mn * n.y, A * m.z + B * mn * n.z};
}

// F^R = sum_X P^X (s2 d^2 + s1 d/R) with P^A = delta, P^B = nn and
// (s2, s1) = (-1, -1), (1, -1). The FF contraction splits into four
// separable pieces.
Tensor3 apply_FF(const BiradialDerivs& d, const Vec3& Rvec, const Vec3& Rpvec, const Vec3& m1,
                 const Vec3& m2)
{
    const double R = checked_norm(Rvec), Rp = checked_norm(Rpvec);
    const Vec3 n = Rvec / R, np = Rpvec / Rp;
    const Vec3 u[2] = {m1, n * dot(m1, n)};
    const Vec3 w[2] = {m2, np * dot(m2, np)};
    const double s2[2] = {-1.0, 1.0};
    const double s1[2] = {-1.0, -1.0};

    Tensor3 T;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const cplx c = s2[x] * s2[y] * d.d[2][2] + s2[x] * s1[y] * d.d[2][1] / Rp +
                           s1[x] * s2[y] * d.d[1][2] / R + s1[x] * s1[y] * d.d[1][1] / (R * Rp);
            T += Tensor3::outer(u[x], w[y]) * c;
        }
    return T;
}

BiradialDerivs biradial_sum_over_product(const std::array<cplx, 5>& phi, double R, double Rp)
{
    const double a[3] = {1.0 / R, -1.0 / (R * R), 2.0 / (R * R * R)};
    const double b[3] = {1.0 / Rp, -1.0 / (Rp * Rp), 2.0 / (Rp * Rp * Rp)};
    const double binom[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
    BiradialDerivs out;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            cplx s = 0.0;
            for (int i = 0; i <= p; ++i)
                for (int j = 0; j <= q; ++j)
                    s += binom[p][i] * binom[q][j] * phi[i + j] * a[p - i] * b[q - j];
            out.d[p][q] = s;
        }
    return out;
}

BiradialDerivs biradial_product(const RadialDerivs& u, const RadialDerivs& v)
{
    const cplx uu[3] = {u.h, u.d1, u.d2}, vv[3] = {v.h, v.d1, v.d2};
    BiradialDerivs out;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) out.d[p][q] = uu[p] * vv[q];
    return out;
}

Channel parse_channel(const std::string& s)
{
    if (s == "ee") return Channel::ee;
    if (s == "mm") return Channel::mm;
    if (s == "em") return Channel::em;
    throw Error(ErrorKind::config, "unknown channel '" + s + "'");
}

const char* to_string(Channel c)
{
    switch (c) {
    case Channel::ee: return "ee";
    case Channel::mm: return "mm";
    case Channel::em: return "em";
    }
    return "?";
}

Tensor3 levi_civita(const Vec3& n)
{
    Tensor3 T;
    T(0, 1) = n.z;
    T(1, 0) = -n.z;
    T(0, 2) = -n.y;
    T(2, 0) = n.y;
    T(1, 2) = n.x;
    T(2, 1) = -n.x;
    return T;
}

Tensor3 potential_tensor(Channel ch, double k, const Vec3& Rvec)
{
    if (!(k >= 0.0)) throw Error(ErrorKind::domain, "wavenumber must be non-negative");
    const double R = checked_norm(Rvec);
    if (ch == Channel::em) {
        const double s = std::sin(k * R);
        return levi_civita(Rvec / R) * cplx(k * s / (R * R) - k * k * s / R);
    }
    return -apply_F(radial_cos(k, R), Rvec);
}

Tensor3 potential_tensor_symmetrized(Channel ch, double k, double kprime, const Vec3& Rvec)
{
    return (potential_tensor(ch, k, Rvec) + potential_tensor(ch, kprime, Rvec)) * cplx(0.5);
}

} // namespace vcorr
