#include "vcorr/static_corr.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "vcorr/error.hpp"
#include "vcorr/specfun.hpp"
#include "vcorr/tensorops.hpp"

namespace vcorr {

namespace {

constexpr double pi = std::numbers::pi;

double separation(const Vec3& r, const Vec3& rp)
{
    const double R = (r - rp).norm();
    if (!(R > 0.0)) throw Error(ErrorKind::singular, "coincident field points");
    return R;
}

} // namespace

FieldPair parse_field_pair(const std::string& s)
{
    if (s == "EE") return FieldPair::EE;
    if (s == "BB") return FieldPair::BB;
    if (s == "EB") return FieldPair::EB;
    if (s == "scalar") return FieldPair::scalar;
    throw Error(ErrorKind::config, "unknown field pair '" + s + "'");
}

const char* to_string(FieldPair p)
{
    switch (p) {
    case FieldPair::EE: return "EE";
    case FieldPair::BB: return "BB";
    case FieldPair::EB: return "EB";
    case FieldPair::scalar: return "scalar";
    }
    return "?";
}

const Tensor3& CorrTensor::part(const std::string& name) const
{
    for (const auto& [n, t] : parts)
        if (n == name) return t;
    throw Error(ErrorKind::config, "correlation has no part '" + name + "'");
}

bool CorrTensor::has_part(const std::string& name) const
{
    for (const auto& p : parts)
        if (p.first == name) return true;
    return false;
}

double vacuum_scalar_corr(const Vec3& r, const Vec3& rprime, const UnitSystem& u)
{
    u.validate();
    const double R = separation(r, rprime);
    return u.hbar * u.c / (4.0 * pi * R * R);
}

CorrTensor vacuum_em_corr(FieldPair pair, const Vec3& r, const Vec3& rprime, const UnitSystem& u)
{
    u.validate();
    const double R = separation(r, rprime);
    CorrTensor out;
    out.pair = pair;
    switch (pair) {
    case FieldPair::EE:
    case FieldPair::BB: {
        const double pref = -4.0 * u.hbar * u.c / (pi * R * R * R * R);
        out.entries = Tensor3::radial(pref, -2.0 * pref, (r - rprime) / R);
        break;
    }
    case FieldPair::EB:
        // The mode integrand is eps_ijl R_l times k^3 j1(kR); its Abel
        // limit is zero at every R > 0, so only the structure survives.
        out.entries = Tensor3::zero();
        break;
    case FieldPair::scalar:
        out.entries = Tensor3::identity() * cplx(vacuum_scalar_corr(r, rprime, u));
        break;
    }
    return out;
}

Tensor3 vacuum_eb_symmetrized(const Vec3& r, const Vec3& rprime, const UnitSystem& u)
{
    // <B_j(r') E_i(r)> is the EB form with k -> -k, i.e. the negative.
    const Tensor3 eb = vacuum_em_corr(FieldPair::EB, r, rprime, u).entries;
    return eb + (-eb);
}

void DressedCorrRequest::validate() const
{
    atom.validate();
    if (!((r - atom.position).norm() > 0.0) || !((rprime - atom.position).norm() > 0.0))
        throw Error(ErrorKind::singular, "field point coincides with the atom");
    if (!((r - rprime).norm() > 0.0)) throw Error(ErrorKind::singular, "coincident field points");
}

double dressed_ground_profile(double k, double R, double Rp)
{
    return 2.0 / pi * auxiliary_f(k * (R + Rp)) / (R * Rp);
}

double dressed_excited_pv_profile(double kA, double R, double Rp)
{
    return 2.0 / pi * pv_sine_kernel(kA * (R + Rp)) / (R * Rp);
}

double dressed_excited_resonant_profile(double kA, double R, double Rp)
{
    return 4.0 * std::sin(kA * R) * std::sin(kA * Rp) / (R * Rp);
}

CorrTensor dressed_ground_corr(const DressedCorrRequest& req, const UnitSystem& u)
{
    req.validate();
    u.validate();
    const Vec3 Rv = req.r - req.atom.position, Rpv = req.rprime - req.atom.position;
    const double R = Rv.norm(), Rp = Rpv.norm();

    Tensor3 dress;
    for (const auto& tr : req.atom.transitions()) {
        if (tr.dipole.norm2() == 0.0) continue;
        const double k = tr.omega / u.c;
        const auto f = auxiliary_f_derivs(k * (R + Rp));
        std::array<cplx, 5> phi;
        double km = 2.0 / pi;
        for (int m = 0; m < 5; ++m, km *= k) phi[m] = km * f[m];
        dress += apply_FF(biradial_sum_over_product(phi, R, Rp), Rv, Rpv, tr.dipole, tr.dipole);
    }

    CorrTensor out;
    out.pair = FieldPair::EE;
    out.entries = dress;
    if (req.include_bare) {
        const Tensor3 bare = vacuum_em_corr(FieldPair::EE, req.r, req.rprime, u).entries;
        out.parts.emplace_back("bare", bare);
        out.entries += bare;
    }
    out.parts.emplace_back("dressing", dress);
    return out;
}

namespace {

// d^m/dS^m PV int_0^inf sin(kS)/(k - kA) dk, m = 0..4, by quadrature of
// the two bounded kernels and Abel moments of the polynomial remainder.
std::array<double, 5> pv_kernel_derivs_numeric(double kA, double S)
{
    QuadratureSpec spec = QuadratureSpec::principal_value(kA);
    const auto Ps = integrate_pv([S, kA](double k) { return cplx(std::sin(k * S) / (k - kA)); }, kA, spec, 0.0,
                                 std::numeric_limits<double>::infinity(), S);
    const auto Pc = integrate_pv([S, kA](double k) { return cplx(std::cos(k * S) / (k - kA)); }, kA, spec, 0.0,
                                 std::numeric_limits<double>::infinity(), S);
    const double ps = Ps.value.real(), pc = Pc.value.real();
    // int k^j e^{ikS} dk = j! i^{j+1} / S^{j+1}
    auto moment = [S](int j, double theta) {
        double fact = 1.0;
        for (int i = 2; i <= j; ++i) fact *= i;
        const cplx ij = std::pow(cplx(0.0, 1.0), j + 1);
        return (std::polar(1.0, theta) * ij * fact / std::pow(S, j + 1)).imag();
    };
    std::array<double, 5> out{};
    for (int m = 0; m < 5; ++m) {
        const double theta = m * pi / 2.0;
        // sin(kS + m pi/2) = sin cos(theta) + cos sin(theta)
        double v = std::pow(kA, m) * (ps * std::cos(theta) + pc * std::sin(theta));
        for (int j = 0; j < m; ++j) v += std::pow(kA, m - 1 - j) * moment(j, theta);
        out[m] = v;
    }
    return out;
}

} // namespace

CorrTensor dressed_excited_corr(const DressedCorrRequest& req, const UnitSystem& u, ExcitedPvRoute route)
{
    req.validate();
    u.validate();
    const Vec3 Rv = req.r - req.atom.position, Rpv = req.rprime - req.atom.position;
    const double R = Rv.norm(), Rp = Rpv.norm();
    const Vec3& mu = req.atom.dipole;
    const double kA = req.atom.omega / u.c;

    Tensor3 pv, res;
    if (mu.norm2() != 0.0) {
        std::array<double, 5> P;
        if (route == ExcitedPvRoute::closed_form) {
            const auto d = pv_sine_kernel_derivs(kA * (R + Rp));
            double km = 1.0;
            for (int m = 0; m < 5; ++m, km *= kA) P[m] = km * d[m];
        } else {
            P = pv_kernel_derivs_numeric(kA, R + Rp);
        }
        std::array<cplx, 5> phi;
        for (int m = 0; m < 5; ++m) phi[m] = 2.0 / pi * P[m];
        pv = apply_FF(biradial_sum_over_product(phi, R, Rp), Rv, Rpv, mu, mu);
        BiradialDerivs rd = biradial_product(radial_sin(kA, R), radial_sin(kA, Rp));
        for (auto& row : rd.d)
            for (auto& x : row) x *= 4.0;
        res = apply_FF(rd, Rv, Rpv, mu, mu);
    }

    CorrTensor out;
    out.pair = FieldPair::EE;
    out.entries = pv + res;
    if (req.include_bare) {
        const Tensor3 bare = vacuum_em_corr(FieldPair::EE, req.r, req.rprime, u).entries;
        out.parts.emplace_back("bare", bare);
        out.entries += bare;
    }
    out.parts.emplace_back("pv_part", pv);
    out.parts.emplace_back("resonant_part", res);
    return out;
}

namespace {

// Inner wavenumber integral J(k, X) = PV int 2k' sin(k'X)/(k'^2 - k^2) dk'.
// Its value pi cos(kX) is confirmed by quadrature at sample points and then
// used inside the outer integral; returns the largest deviation seen.
double inner_pv_check(double kA, std::initializer_list<double> Xs)
{
    double worst = 0.0;
    for (double k : {0.5 * kA, kA, 2.0 * kA})
        for (double X : Xs) {
            const auto J = integrate_pv(
                [k, X](double kp) { return cplx(2.0 * kp * std::sin(kp * X) / ((kp - k) * (kp + k))); }, k,
                QuadratureSpec::principal_value(k), 0.0, std::numeric_limits<double>::infinity(), X);
            worst = std::max(worst, std::abs(J.value.real() - pi * std::cos(k * X)));
        }
    return worst;
}

void note_inner(QuadResult& out, double worst)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "inner PV check max deviation %.2e", worst);
    out.note = out.note.empty() ? buf : out.note + "; " + buf;
    if (worst > 1e-6) out.converged = false;
}

} // namespace

QuadResult dressed_ground_profile_double_integral(double kA, double R, double Rp, const QuadratureSpec& spec)
{
    if (!(kA > 0.0) || !(R > 0.0) || !(Rp > 0.0))
        throw Error(ErrorKind::domain, "double-integral kernel needs kA, R, R' > 0");
    const double worst = inner_pv_check(kA, {R, Rp});
    const double S = R + Rp;
    auto outer = [=](double k) {
        const double bracket = std::sin(k * R) * pi * std::cos(k * Rp) + std::sin(k * Rp) * pi * std::cos(k * R);
        return cplx(2.0 / (k + kA) * bracket / (pi * pi * R * Rp));
    };
    QuadResult out = integrate_oscillatory(outer, S, spec);
    note_inner(out, worst);
    return out;
}

BiradialDerivs dressed_ground_biradial_double_integral(double kA, double R, double Rp, const QuadratureSpec& spec,
                                                       QuadResult* report)
{
    if (!(kA > 0.0) || !(R > 0.0) || !(Rp > 0.0))
        throw Error(ErrorKind::domain, "double-integral kernel needs kA, R, R' > 0");
    const double worst = inner_pv_check(kA, {R, Rp});
    // After the inner integral the bracket is pi sin(kS) / (R R'), S = R + R'.
    // S-derivatives under the outer integral grow like k^n; split
    // k^n / (k + kA) into a polynomial, whose Abel-summed moments are
    // n! (i/S)^(n+1), and (-kA)^n / (k + kA), which stays bounded.
    const double S = R + Rp;
    QuadResult rs = integrate_oscillatory([=](double k) { return cplx(std::sin(k * S) / (k + kA)); }, S, spec);
    QuadResult rc = integrate_oscillatory([=](double k) { return cplx(std::cos(k * S) / (k + kA)); }, S, spec);
    const cplx rem(rc.value.real(), rs.value.real()); // int e^{ikS} / (k + kA)
    auto moment = [S](int m) { // int_0^inf k^m e^{ikS} dk
        return std::tgamma(m + 1.0) * std::pow(cplx(0.0, 1.0 / S), m + 1);
    };
    std::array<cplx, 5> phi;
    for (int n = 0; n < 5; ++n) {
        cplx e = std::pow(-kA, n) * rem;
        for (int j = 0; j < n; ++j) e += std::pow(-kA, j) * moment(n - 1 - j);
        // d^n/dS^n sin(kS) = Im[(ik)^n e^{ikS}]
        phi[n] = 2.0 / pi * (std::pow(cplx(0.0, 1.0), n) * e).imag();
    }
    QuadResult rep;
    rep.est_error = std::max(rs.est_error, rc.est_error) * std::pow(kA, 4);
    rep.evals = rs.evals + rc.evals;
    rep.converged = rs.converged && rc.converged;
    note_inner(rep, worst);
    if (report) *report = rep;
    return biradial_sum_over_product(phi, R, Rp);
}

CorrTensor dressed_ground_corr_double_integral(const DressedCorrRequest& req, const UnitSystem& u,
                                               const QuadratureSpec& spec, QuadResult* report)
{
    req.validate();
    u.validate();
    const Vec3 Rv = req.r - req.atom.position, Rpv = req.rprime - req.atom.position;
    Tensor3 dress;
    QuadResult rep;
    for (const auto& tr : req.atom.transitions()) {
        if (tr.dipole.norm2() == 0.0) continue;
        QuadResult r;
        const auto d = dressed_ground_biradial_double_integral(tr.omega / u.c, Rv.norm(), Rpv.norm(), spec, &r);
        dress += apply_FF(d, Rv, Rpv, tr.dipole, tr.dipole);
        rep.est_error = std::max(rep.est_error, r.est_error);
        rep.evals += r.evals;
        rep.converged = rep.converged && r.converged;
        rep.note = r.note;
    }
    CorrTensor out;
    out.pair = FieldPair::EE;
    out.entries = dress;
    if (req.include_bare) {
        const Tensor3 bare = vacuum_em_corr(FieldPair::EE, req.r, req.rprime, u).entries;
        out.parts.emplace_back("bare", bare);
        out.entries += bare;
    }
    out.parts.emplace_back("dressing", dress);
    if (report) *report = rep;
    return out;
}

} // namespace vcorr
