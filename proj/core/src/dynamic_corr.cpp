#include "vcorr/dynamic_corr.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "vcorr/error.hpp"
#include "vcorr/tensorops.hpp"

namespace vcorr {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

// One radial side of a biradial integrand. Either a k-dependent
// exponential e^{i sigma k X}/X, expanded as c[a][n] k^n after factoring the
// phase, or a k-independent radial function (sigma = 0, c[a][0] only).
struct Side {
    int sigma = 0;
    std::array<std::array<cplx, 3>, 3> c{};
};

Side exp_side(int sigma, double X)
{
    Side s;
    s.sigma = sigma;
    const double sg = sigma;
    s.c[0] = {1.0 / X, 0.0, 0.0};
    s.c[1] = {-1.0 / (X * X), I * sg / X, 0.0};
    s.c[2] = {2.0 / (X * X * X), -2.0 * I * sg / (X * X), -1.0 / X};
    return s;
}

Side fixed_side(const RadialDerivs& d)
{
    Side s;
    s.c[0] = {d.h, 0.0, 0.0};
    s.c[1] = {d.d1, 0.0, 0.0};
    s.c[2] = {d.d2, 0.0, 0.0};
    return s;
}

// coef * int dk/(k + kA) [left(R) right(R')] e^{i k phi}
struct Term {
    cplx coef;
    Side left, right;
    double phi = 0.0;
};

class KernelCache {
public:
    KernelCache(double kA, const QuadratureSpec& spec) : kA_(kA), spec_(spec) {}

    // int_0^inf k^m e^{iks}/(k + kA) dk as an Abel limit.
    cplx K(int m, double s)
    {
        cplx v = std::pow(-kA_, m) * base(s);
        double fact = 1.0;
        for (int j = 0; j < m; ++j) {
            if (j > 0) fact *= j;
            v += std::pow(-kA_, m - 1 - j) * fact * std::pow(I / s, j + 1);
        }
        return v;
    }

private:
    cplx base(double s)
    {
        if (!(std::abs(s) > 0.0)) throw Error(ErrorKind::singular, "non-oscillatory mode integral");
        auto it = cache_.find(s);
        if (it != cache_.end()) return it->second;
        const double kA = kA_;
        const auto r = integrate_oscillatory([kA, s](double k) { return std::exp(I * (k * s)) / (k + kA); },
                                             std::abs(s), spec_);
        cache_.emplace(s, r.value);
        return r.value;
    }

    double kA_;
    QuadratureSpec spec_;
    std::map<double, cplx> cache_;
};

BiradialDerivs integrate_terms(const std::vector<Term>& terms, double R, double Rp, KernelCache& kc)
{
    // Coefficients of k^n per (a, b), merged by phase so that exact
    // cancellations (the R - R' pieces when both gates are open) never
    // reach the quadrature.
    using Poly = std::array<std::array<std::array<cplx, 5>, 3>, 3>;
    std::map<double, Poly> poly;
    for (const auto& t : terms) {
        const double s = t.left.sigma * R + t.right.sigma * Rp + t.phi;
        auto& P = poly[s];
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int n1 = 0; n1 < 3; ++n1)
                    for (int n2 = 0; n2 < 3; ++n2)
                        P[a][b][n1 + n2] += t.coef * t.left.c[a][n1] * t.right.c[b][n2];
    }
    BiradialDerivs out;
    for (const auto& [s, P] : poly) {
        std::array<cplx, 5> Kv{};
        bool have = false;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int m = 0; m < 5; ++m) {
                    if (P[a][b][m] == cplx(0.0)) continue;
                    if (!have) {
                        for (int j = 0; j < 5; ++j) Kv[j] = kc.K(j, s);
                        have = true;
                    }
                    out.d[a][b] += P[a][b][m] * Kv[m];
                }
    }
    return out;
}

void guard(double ct, double X, const char* what)
{
    if (std::abs(ct - X) < light_cone_guard * X)
        throw Error(ErrorKind::light_cone, std::string(what) + " lies on the light cone of the atom");
}

struct Geometry {
    Vec3 Rv, Rpv;
    double R, Rp;
};

Geometry geometry(const Atom& atom, const Vec3& r, const Vec3& rp)
{
    Geometry g{r - atom.position, rp - atom.position, 0.0, 0.0};
    g.R = g.Rv.norm();
    g.Rp = g.Rpv.norm();
    if (!(g.R > 0.0) || !(g.Rp > 0.0)) throw Error(ErrorKind::singular, "field point coincides with the atom");
    if (!((r - rp).norm() > 0.0)) throw Error(ErrorKind::singular, "coincident field points");
    return g;
}

struct GroundParts {
    Tensor3 first_first, zeroth_second;
};

GroundParts ground_parts(const Atom& atom, const Geometry& g, double t, const UnitSystem& u,
                         const DynamicOptions& opt)
{
    GroundParts out;
    const Vec3& mu = atom.dipole;
    if (mu.norm2() == 0.0) return out;
    const double ct = u.c * t, kA = atom.omega / u.c;
    guard(ct, g.R, "r");
    guard(ct, g.Rp, "r'");
    const bool inR = ct > g.R, inRp = ct > g.Rp;

    if (inR && inRp)
        out.first_first = apply_FF(biradial_product(radial_exp(kA, g.R), radial_exp(-kA, g.Rp)), g.Rv, g.Rpv, mu, mu);

    if (!inR && !inRp) return out;

    // (1/pi) int dk/(k + kA) F^R[sin kR / R] F^R'[(e^{-ikR'} - e^{-i(ck + wA)t} e^{ikA R'})/R'],
    // gated by theta(ct - R'), plus the conjugate mirror (r <-> r', i <-> j)
    // gated by theta(ct - R).
    std::vector<Term> terms;
    const cplx half = 1.0 / (2.0 * I);
    const cplx phase_t = std::exp(-I * (atom.omega * t));
    if (inRp) {
        terms.push_back({half, exp_side(1, g.R), exp_side(-1, g.Rp), 0.0});
        terms.push_back({-half, exp_side(-1, g.R), exp_side(-1, g.Rp), 0.0});
        if (opt.include_transient) {
            const Side fixed = fixed_side(radial_exp(kA, g.Rp));
            terms.push_back({-phase_t * half, exp_side(1, g.R), fixed, -ct});
            terms.push_back({phase_t * half, exp_side(-1, g.R), fixed, -ct});
        }
    }
    if (inR) {
        // conj of the swapped term: sin kR' e^{+ikR} and its transient.
        terms.push_back({half, exp_side(1, g.R), exp_side(1, g.Rp), 0.0});
        terms.push_back({-half, exp_side(1, g.R), exp_side(-1, g.Rp), 0.0});
        if (opt.include_transient) {
            const Side fixed = fixed_side(radial_exp(-kA, g.R));
            // conj(-e^{-iwt} sin(kR') e^{-ickt}) = -e^{iwt} sin(kR') e^{ickt}
            terms.push_back({-std::conj(phase_t) * half, fixed, exp_side(1, g.Rp), ct});
            terms.push_back({std::conj(phase_t) * half, fixed, exp_side(-1, g.Rp), ct});
        }
    }
    for (auto& tm : terms) tm.coef /= pi;

    KernelCache kc(kA, opt.quad);
    out.zeroth_second = apply_FF(integrate_terms(terms, g.R, g.Rp, kc), g.Rv, g.Rpv, mu, mu);
    return out;
}

} // namespace

cplx window_F(double x, double t)
{
    if (t < 0.0) throw Error(ErrorKind::domain, "window function needs t >= 0");
    // t [sin th / th + i 2 sin^2(th/2) / th], th = x t, free of cancellation.
    const double th = x * t;
    if (th == 0.0) return t;
    const double sh = std::sin(0.5 * th);
    return t * cplx(std::sin(th) / th, 2.0 * sh * sh / th);
}

CausalityFlags causality_flags(const Vec3& atom_pos, const Vec3& r, const Vec3& rprime, double t,
                               const UnitSystem& u)
{
    const double ct = u.c * t;
    return {ct > (r - atom_pos).norm(), ct > (rprime - atom_pos).norm(), ct > (r - rprime).norm()};
}

CorrTensor dynamic_ground_corr(const Atom& atom, const Vec3& r, const Vec3& rprime, double t, const UnitSystem& u,
                               const DynamicOptions& opt)
{
    atom.validate();
    u.validate();
    if (t < 0.0) throw Error(ErrorKind::domain, "time must be non-negative");
    const Geometry g = geometry(atom, r, rprime);
    const GroundParts p = ground_parts(atom, g, t, u, opt);

    CorrTensor out;
    out.pair = FieldPair::EE;
    const Tensor3 bare = vacuum_em_corr(FieldPair::EE, r, rprime, u).entries;
    out.entries = bare + p.first_first + p.zeroth_second;
    out.parts = {{"zeroth", bare}, {"first_first", p.first_first}, {"zeroth_second", p.zeroth_second}};
    out.flags = causality_flags(atom.position, r, rprime, t, u);
    out.has_flags = true;
    return out;
}

CorrTensor dynamic_excited_corr(const Atom& atom, const Vec3& r, const Vec3& rprime, double t, const UnitSystem& u,
                                const DynamicOptions& opt)
{
    atom.validate();
    u.validate();
    if (t < 0.0) throw Error(ErrorKind::domain, "time must be non-negative");
    const Geometry g = geometry(atom, r, rprime);
    const GroundParts p = ground_parts(atom, g, t, u, opt);
    const Tensor3 nonres = -(p.first_first + p.zeroth_second);

    Tensor3 res;
    const double ct = u.c * t, kA = atom.omega / u.c;
    if (atom.dipole.norm2() != 0.0 && ct > g.R && ct > g.Rp) {
        // 2 cos(kA(R - R'))/(R R') = 2 [cos cos + sin sin]/(R R')
        BiradialDerivs d = biradial_product(radial_cos(kA, g.R), radial_cos(kA, g.Rp));
        const BiradialDerivs s = biradial_product(radial_sin(kA, g.R), radial_sin(kA, g.Rp));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) d.d[a][b] = 2.0 * (d.d[a][b] + s.d[a][b]);
        res = apply_FF(d, g.Rv, g.Rpv, atom.dipole, atom.dipole);
    }

    CorrTensor out;
    out.pair = FieldPair::EE;
    const Tensor3 bare = vacuum_em_corr(FieldPair::EE, r, rprime, u).entries;
    out.entries = bare + nonres + res;
    out.parts = {{"zeroth", bare}, {"nonresonant", nonres}, {"resonant", res}};
    out.flags = causality_flags(atom.position, r, rprime, t, u);
    out.has_flags = true;
    return out;
}

Tensor3 window_average(const std::function<Tensor3(double)>& f, double t, double period, int points)
{
    if (!(period > 0.0) || points < 1) throw Error(ErrorKind::config, "window needs a positive period and points");
    Tensor3 acc;
    for (int i = 0; i < points; ++i) acc += f(t - 0.5 * period + period * i / points);
    return acc * cplx(1.0 / points);
}

double window_average(const std::function<double(double)>& f, double t, double period, int points)
{
    if (!(period > 0.0) || points < 1) throw Error(ErrorKind::config, "window needs a positive period and points");
    double acc = 0.0;
    for (int i = 0; i < points; ++i) acc += f(t - 0.5 * period + period * i / points);
    return acc / points;
}

} // namespace vcorr
