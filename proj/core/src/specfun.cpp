#include "vcorr/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "vcorr/error.hpp"

namespace vcorr {

namespace {

constexpr double switch_point = 4.0;

void check_domain(double z)
{
    if (!(z > 0.0) || !std::isfinite(z))
        throw Error(ErrorKind::domain, "sine/cosine integrals need finite z > 0");
}

SiCi series(double z)
{
    const double z2 = z * z;
    double term = z, si = z;
    for (int n = 1; n < 60; ++n) {
        term *= -z2 / ((2.0 * n) * (2.0 * n + 1.0));
        const double add = term / (2.0 * n + 1.0);
        si += add;
        if (std::abs(add) < 1e-17 * std::abs(si)) break;
    }
    double t = 1.0, cs = 0.0;
    for (int n = 1; n < 60; ++n) {
        t *= -z2 / ((2.0 * n - 1.0) * (2.0 * n));
        const double add = t / (2.0 * n);
        cs += add;
        if (std::abs(add) < 1e-17 * (std::abs(cs) + 1e-300)) break;
    }
    return {si - std::numbers::pi / 2.0, std::numbers::egamma + std::log(z) + cs};
}

// Modified Lentz for e^{iz} E1(iz) = g - i f.
std::complex<double> e1_cf(double z)
{
    using C = std::complex<double>;
    constexpr double tiny = 1e-300;
    C b(1.0, z);
    C c = 1.0 / tiny;
    C d = 1.0 / b;
    C h = d;
    for (int i = 2; i < 200; ++i) {
        const double a = -static_cast<double>((i - 1) * (i - 1));
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const C del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
    }
    return h;
}

} // namespace

SiCi sine_cosine_integrals(double z)
{
    check_domain(z);
    if (z < switch_point) return series(z);
    const auto h = std::exp(std::complex<double>(0.0, -z)) * e1_cf(z);
    return {h.imag(), -h.real()};
}

AuxFG auxiliary_fg(double z)
{
    check_domain(z);
    if (z < switch_point) {
        const SiCi s = series(z);
        const double sn = std::sin(z), cs = std::cos(z);
        return {s.ci * sn - s.si * cs, -s.ci * cs - s.si * sn};
    }
    const auto h = e1_cf(z);
    return {-h.imag(), h.real()};
}

double auxiliary_f(double z) { return auxiliary_fg(z).f; }
double auxiliary_g(double z) { return auxiliary_fg(z).g; }

std::array<double, 5> auxiliary_f_derivs(double z)
{
    const AuxFG fg = auxiliary_fg(z);
    const double iz = 1.0 / z;
    return {fg.f, -fg.g, -fg.f + iz, fg.g - iz * iz, fg.f - iz + 2.0 * iz * iz * iz};
}

double pv_sine_kernel(double z) { return std::numbers::pi * std::cos(z) - auxiliary_f(z); }

std::array<double, 5> pv_sine_kernel_derivs(double z)
{
    const auto f = auxiliary_f_derivs(z);
    const double pc = std::numbers::pi * std::cos(z), ps = std::numbers::pi * std::sin(z);
    return {pc - f[0], -ps - f[1], -pc - f[2], ps - f[3], pc - f[4]};
}

} // namespace vcorr
