#include "vcorr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vcorr/error.hpp"

namespace vcorr {

namespace {

constexpr double pi = std::numbers::pi;

struct GaussRule {
    std::vector<double> x, w; // on [-1, 1]
};

GaussRule gauss_legendre(int n)
{
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return r;
}

// Compensated complex sum.
struct KahanC {
    double sr = 0, cr = 0, si = 0, ci = 0;
    static void add(double& s, double& c, double v)
    {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    void operator+=(cplx v)
    {
        add(sr, cr, v.real());
        add(si, ci, v.imag());
    }
    cplx value() const { return {sr + cr, si + ci}; }
};

// Accumulates int g(w) e^{-eta_k w} dw for every ladder level in one pass.
class LadderAccumulator {
public:
    // The regulator is e^{-eta (w - origin)}; measuring from the lower limit
    // keeps a large lower limit from putting e^{-eta lower} into the ladder.
    LadderAccumulator(std::vector<double> etas, const ComplexIntegrand& g, std::size_t max_evals, double origin)
        : etas_(std::move(etas)), sums_(etas_.size()), g_(g), max_evals_(max_evals), origin_(origin)
    {
        // etas_ halve from level to level; the smallest is etas_.back().
        eta_min_ = etas_.back();
    }

    void node(cplx w, cplx weight)
    {
        if (++evals_ > max_evals_)
            throw Error(ErrorKind::convergence, "quadrature evaluation budget exceeded");
        const cplx gw = g_(w) * weight;
        if (gw == cplx(0.0)) return;
        if (!std::isfinite(gw.real()) || !std::isfinite(gw.imag()))
            throw Error(ErrorKind::convergence, "integrand returned a non-finite value");
        cplx damp = std::exp(-eta_min_ * (w - origin_));
        for (std::size_t k = etas_.size(); k-- > 0;) {
            sums_[k] += gw * damp;
            damp *= damp;
        }
    }

    // Straight panel [a, b] on the real axis.
    void panel(const GaussRule& r, double a, double b)
    {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (std::size_t i = 0; i < r.x.size(); ++i) node(c + h * r.x[i], h * r.w[i]);
    }

    // Arc p + rho e^{i theta}, theta from t0 to t1.
    void arc(const GaussRule& r, double p, double rho, double t0, double t1, double scale)
    {
        const double c = 0.5 * (t0 + t1), h = 0.5 * (t1 - t0);
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            const double th = c + h * r.x[i];
            const cplx e = std::polar(1.0, th);
            node(p + rho * e, scale * h * r.w[i] * cplx(0.0, rho) * e);
        }
    }

    // Counter-clockwise circle around p, unregulated: 2 pi i times the residue
    // of g at p. Trapezoid on a periodic integrand.
    cplx circle(double p, double rho, int n = 64)
    {
        cplx s = 0.0;
        for (int i = 0; i < n; ++i) {
            const cplx e = std::polar(1.0, 2.0 * pi * i / n);
            s += g_(p + rho * e) * e;
        }
        evals_ += std::size_t(n);
        return s * cplx(0.0, 2.0 * pi * rho / n);
    }

    std::vector<cplx> values() const
    {
        std::vector<cplx> v;
        for (const auto& s : sums_) v.push_back(s.value());
        return v;
    }
    std::size_t evals() const { return evals_; }

private:
    std::vector<double> etas_;
    std::vector<KahanC> sums_;
    const ComplexIntegrand& g_;
    std::size_t max_evals_;
    std::size_t evals_ = 0;
    double origin_;
    double eta_min_;
};

// Panels over [a, b]; ends flagged graded start at width `base` there and
// double until the regular width h is reached.
void segment(LadderAccumulator& acc, const GaussRule& r, double a, double b, double h,
             double left_base, double right_base)
{
    if (!(b > a)) return;
    std::vector<double> left{a}, right{b};
    if (left_base > 0.0) {
        double w = left_base;
        while (w < h && left.back() + w < 0.5 * (a + b)) {
            left.push_back(left.back() + w);
            w *= 2.0;
        }
    }
    if (right_base > 0.0) {
        double w = right_base;
        while (w < h && right.back() - w > 0.5 * (a + b)) {
            right.push_back(right.back() - w);
            w *= 2.0;
        }
    }
    for (std::size_t i = 0; i + 1 < left.size(); ++i) acc.panel(r, left[i], left[i + 1]);
    for (std::size_t i = 0; i + 1 < right.size(); ++i) acc.panel(r, right[i + 1], right[i]);
    const double lo = left.back(), hi = right.back();
    if (hi > lo) {
        const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h));
        const double step = (hi - lo) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) acc.panel(r, lo + i * step, i + 1 == n ? hi : lo + (i + 1) * step);
    }
}

QuadResult finish_ladder(const std::vector<double>& etas, const std::vector<cplx>& ladder,
                         std::size_t evals, const QuadratureSpec& spec, cplx exact_part = 0.0)
{
    QuadResult out;
    out.etas = etas;
    out.ladder = ladder;
    out.evals = evals;
    out.value = extrapolate_to_zero(etas, ladder) + exact_part;
    const std::size_t L = etas.size();
    if (L >= 3) {
        // Highest-order diagonal difference: drop the coarsest regulator.
        const std::vector<double> e2(etas.begin() + 1, etas.end());
        const std::vector<cplx> l2(ladder.begin() + 1, ladder.end());
        out.est_error = std::abs(out.value - exact_part - extrapolate_to_zero(e2, l2));
        // A ladder that stops contracting signals a non-integrable tail. A
        // log-divergent tail gives equal steps, so ask for two in a row in
        // the same direction; a single flat step happens where I(eta) turns over.
        const cplx s2 = ladder[L - 1] - ladder[L - 2], s1 = ladder[L - 2] - ladder[L - 3];
        const double d1 = std::abs(s2), d0 = std::abs(s1);
        bool stalled = d1 > 0.75 * d0 && (s2 * std::conj(s1)).real() > 0.0;
        if (L >= 4) {
            const cplx s0 = ladder[L - 3] - ladder[L - 4];
            stalled = stalled && d0 > 0.75 * std::abs(s0) && (s1 * std::conj(s0)).real() > 0.0;
        }
        const double scale = std::max({spec.abs_tol, spec.rel_tol * std::abs(out.value), 1e-300});
        if (stalled && d1 > 1e3 * scale) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "eta ladder diverges: last steps %.3e, %.3e", d0, d1);
            throw Error(ErrorKind::convergence, buf);
        }
    }
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
    out.converged = out.est_error <= tol;
    if (!out.converged) out.note = "ladder spread above tolerance";
    return out;
}

std::vector<double> ladder_etas(const QuadratureSpec& spec, double slow)
{
    const double eta0 = spec.regulator_eta > 0.0 ? spec.regulator_eta : 0.5 * slow;
    std::vector<double> etas;
    for (int k = 0; k < spec.ladder_levels; ++k) etas.push_back(eta0 * std::ldexp(1.0, -k));
    return etas;
}

void check_scales(PhaseScales s)
{
    if (!(s.slow > 0.0) || !(s.fast >= s.slow) || !std::isfinite(s.fast))
        throw Error(ErrorKind::config, "phase scales need 0 < slow <= fast");
}

} // namespace

void QuadratureSpec::validate() const
{
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw Error(ErrorKind::config, "tolerances must be positive");
    if (regulator_eta < 0.0) throw Error(ErrorKind::config, "regulator_eta must be non-negative");
    if (ladder_levels < 3 || ladder_levels > 24) throw Error(ErrorKind::config, "ladder_levels must be in [3, 24]");
    if (panel_points < 4 || panel_points > 64) throw Error(ErrorKind::config, "panel_points must be in [4, 64]");
    if (!(tail_factor > 5.0)) throw Error(ErrorKind::config, "tail_factor must exceed 5");
    if (method == QuadMethod::principal_value && !(pole > 0.0))
        throw Error(ErrorKind::config, "principal_value needs a positive pole");
    if (max_evals == 0) throw Error(ErrorKind::config, "max_evals must be positive");
}

cplx extrapolate_to_zero(const std::vector<double>& x, const std::vector<cplx>& y)
{
    if (x.size() != y.size() || x.empty()) throw Error(ErrorKind::config, "extrapolation needs matching samples");
    std::vector<cplx> p = y;
    const std::size_t n = x.size();
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i)
            p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
    return p[0];
}

QuadResult integrate_indented(const ComplexIntegrand& g, const std::vector<double>& poles_in,
                              double radius, PoleSide side, PhaseScales scales,
                              const QuadratureSpec& spec, double lower, int phase_sign)
{
    if (phase_sign != 1 && phase_sign != -1) throw Error(ErrorKind::config, "phase_sign must be +1 or -1");
    spec.validate();
    check_scales(scales);
    const auto etas = ladder_etas(spec, scales.slow);
    const double upper = lower + spec.tail_factor / etas.back();
    const double h = pi / (2.0 * scales.fast);

    std::vector<double> poles;
    for (double p : poles_in)
        if (p > lower && p < upper) poles.push_back(p);
    std::sort(poles.begin(), poles.end());
    if (!poles.empty()) {
        if (!(radius > 0.0)) throw Error(ErrorKind::config, "indentation radius must be positive");
        // e^{iks} grows like e^{radius s} on the far arc.
        if (radius * scales.fast > 2.0) throw Error(ErrorKind::config, "indentation radius too large for the phase rate");
        if (poles.front() - radius <= lower) throw Error(ErrorKind::config, "indentation crosses the lower limit");
        for (std::size_t i = 1; i < poles.size(); ++i)
            if (poles[i] - poles[i - 1] <= 2.0 * radius)
                throw Error(ErrorKind::config, "indentations overlap; reduce the radius");
    }

    const GaussRule rule = gauss_legendre(spec.panel_points);
    LadderAccumulator acc(etas, g, spec.max_evals, lower);

    const double lower_base = h / 4096.0;
    double a = lower, abase = lower_base;
    cplx residue_terms = 0.0;
    for (double p : poles) {
        segment(acc, rule, a, p - radius, h, abase, radius);
        // The ladder runs on the side where e^{i k s} decays (above for
        // phase_sign > 0). The other prescriptions add the closed circle
        // exactly: the regulated residue term carries e^{-eta p}, which the
        // eta extrapolation cannot follow once eta p is not small.
        if (phase_sign > 0) {
            acc.arc(rule, p, radius, pi, 0.5 * pi, 1.0);
            acc.arc(rule, p, radius, 0.5 * pi, 0.0, 1.0);
        } else {
            acc.arc(rule, p, radius, -pi, -0.5 * pi, 1.0);
            acc.arc(rule, p, radius, -0.5 * pi, 0.0, 1.0);
        }
        const double w = side == PoleSide::mean ? 0.5 : 1.0;
        if (phase_sign > 0 && side != PoleSide::above) residue_terms += w * acc.circle(p, radius);
        if (phase_sign < 0 && side != PoleSide::below) residue_terms -= w * acc.circle(p, radius);
        a = p + radius;
        abase = radius;
    }
    segment(acc, rule, a, upper, h, abase, 0.0);
    return finish_ladder(etas, acc.values(), acc.evals(), spec, residue_terms);
}

QuadResult integrate_oscillatory(const RealIntegrand& g, PhaseScales scales, const QuadratureSpec& spec,
                                 double lower)
{
    const ComplexIntegrand gc = [&g](cplx w) { return g(w.real()); };
    return integrate_indented(gc, {}, 0.0, PoleSide::mean, scales, spec, lower);
}

QuadResult integrate_oscillatory(const RealIntegrand& g, double phase_scale, const QuadratureSpec& spec,
                                 double lower)
{
    return integrate_oscillatory(g, PhaseScales{phase_scale, phase_scale}, spec, lower);
}

QuadResult integrate_finite(const RealIntegrand& g, double a, double b, double rel_tol)
{
    QuadResult out;
    if (a == b) return out;
    std::size_t evals = 0;
    auto f = [&](double x) {
        ++evals;
        return g(x);
    };
    double err = 0.0, l1 = 0.0;
    out.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, rel_tol, &err, &l1);
    out.est_error = err;
    out.evals = evals;
    out.converged = err <= std::max(1e-14 * l1, rel_tol * std::max(std::abs(out.value), 1e-300)) || err < 1e-300;
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
        throw Error(ErrorKind::convergence, "finite quadrature produced a non-finite value");
    return out;
}

namespace {

// int_0^D s(x) dx with s(x) = g(a + x) + g(a - x), excising [0, eps_k]
// and extrapolating eps -> 0 in odd powers.
QuadResult symmetric_core_excision(const RealIntegrand& g, double a, double D, int points)
{
    const GaussRule rule = gauss_legendre(points);
    std::size_t evals = 0;
    auto s = [&](double x) {
        evals += 2;
        return g(a + x) + g(a - x);
    };
    auto panel = [&](double lo, double hi) {
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        cplx acc = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) acc += h * rule.w[i] * s(c + h * rule.x[i]);
        return acc;
    };
    // Geometric panels [D 2^{-j-1}, D 2^{-j}].
    constexpr int levels = 6;
    constexpr int first = 3;
    std::vector<cplx> tail(levels + first + 1);
    cplx run = 0.0;
    std::vector<cplx> partial; // integral over [eps_k, D]
    std::vector<double> eps;
    for (int j = 0; j < first + levels; ++j) {
        run += panel(D * std::ldexp(1.0, -j - 1), D * std::ldexp(1.0, -j));
        if (j + 1 >= first) {
            partial.push_back(run);
            eps.push_back(D * std::ldexp(1.0, -j - 1));
        }
    }
    // Richardson in eps, eps^3, eps^5, ... with ratio 2.
    std::vector<cplx> T = partial;
    double err = 0.0;
    for (std::size_t m = 0; m + 1 < T.size(); ++m) {
        const double f = std::ldexp(1.0, static_cast<int>(2 * m + 1));
        const cplx before = T[T.size() - 1];
        for (std::size_t i = 0; i + m + 1 < T.size(); ++i) T[i] = (f * T[i + 1] - T[i]) / (f - 1.0);
        err = std::abs(T[T.size() - m - 2] - before);
    }
    QuadResult out;
    out.value = T[0];
    out.est_error = std::min(err, std::abs(T[0] - T[1]));
    out.evals = evals;
    return out;
}

void detect_higher_order_pole(const RealIntegrand& g, double a, double D)
{
    auto xs = [&](double x) { return x * std::abs(g(a + x) + g(a - x)); };
    auto xr = [&](double x) { return x * std::abs(g(a + x) - g(a - x)); };
    const double ref = D * (std::abs(g(a + D)) + std::abs(g(a - D))) + 1e-300;
    const double x1 = D * 1e-3, x2 = D * 1e-4;
    // Even part of a double pole survives in s(x) ~ 2c/x^2.
    const double r1 = xs(x1), r2 = xs(x2);
    if (r2 > 1e-6 * ref && r2 > 0.5 * r1)
        throw Error(ErrorKind::pole, "higher-order pole detected at the principal-value point");
    (void)xr;
}

} // namespace

QuadResult integrate_pv(const RealIntegrand& g, double a, const QuadratureSpec& spec, double lo, double hi,
                        double phase_scale)
{
    spec.validate();
    if (!(a > 0.0)) throw Error(ErrorKind::domain, "principal-value pole must be positive");
    if (!(hi > lo)) throw Error(ErrorKind::config, "empty integration range");
    const bool infinite = std::isinf(hi);
    const double s = phase_scale > 0.0 ? phase_scale : 1.0;

    QuadResult out;
    auto add = [&](const QuadResult& r) {
        out.value += r.value;
        out.est_error += r.est_error;
        out.evals += r.evals;
        out.converged = out.converged && r.converged;
        if (!r.note.empty()) out.note += (out.note.empty() ? "" : "; ") + r.note;
        if (!r.etas.empty()) {
            out.etas = r.etas;
            out.ladder = r.ladder;
        }
    };

    if (!(a > lo && a < hi)) {
        if (infinite)
            add(integrate_oscillatory(g, s, spec, lo));
        else
            add(integrate_finite(g, lo, hi, spec.rel_tol));
        out.note = "pole outside range; plain quadrature";
        return out;
    }

    double D = std::min(a - lo, infinite ? a - lo : hi - a);
    if (spec.pv_method == PvMethod::excision) D = std::min(D, pi / (2.0 * s));
    detect_higher_order_pole(g, a, D);

    if (spec.pv_method == PvMethod::excision) {
        add(symmetric_core_excision(g, a, D, spec.panel_points));
    } else {
        // Residue of the simple pole by Richardson in x^2.
        std::vector<cplx> R;
        for (int j = 0; j < 6; ++j) {
            const double x = D * std::ldexp(1.0, -j - 2);
            R.push_back(0.5 * x * (g(a + x) - g(a - x)));
        }
        for (std::size_t m = 0; m + 1 < R.size(); ++m) {
            const double f = std::ldexp(1.0, static_cast<int>(2 * m + 2));
            for (std::size_t i = 0; i + m + 1 < R.size(); ++i) R[i] = (f * R[i + 1] - R[i]) / (f - 1.0);
        }
        const cplx res = R[0];
        // The subtracted pole integrates to zero over the symmetric window.
        const RealIntegrand smooth = [&](double w) { return g(w) - res / (w - a); };
        add(integrate_finite(smooth, a - D, a, spec.rel_tol));
        add(integrate_finite(smooth, a, a + D, spec.rel_tol));
    }

    if (a - D > lo) add(integrate_finite(g, lo, a - D, spec.rel_tol));
    if (infinite)
        add(integrate_oscillatory(g, s, spec, a + D));
    else if (a + D < hi)
        add(integrate_finite(g, a + D, hi, spec.rel_tol));
    return out;
}

QuadResult integrate_imaginary_frequency(const std::function<double(double)>& g, const QuadratureSpec& spec)
{
    spec.validate();
    QuadResult out;
    std::size_t evals = 0;
    auto f = [&](double u) {
        ++evals;
        const double v = g(u);
        return std::isfinite(v) ? v : 0.0;
    };
    const double tol = std::min(spec.rel_tol, 1e-10);
    bool ok = false;
    try {
        boost::math::quadrature::exp_sinh<double> es;
        double err = 0.0, l1 = 0.0;
        std::size_t levels = 0;
        const double v = es.integrate(f, tol, &err, &l1, &levels);
        out.value = v;
        out.est_error = err;
        ok = std::isfinite(v) && err <= std::max(spec.abs_tol, 10.0 * tol * std::max(std::abs(v), l1 * 1e-3));
    } catch (const std::exception&) {
        ok = false;
    }
    if (!ok) {
        double err = 0.0, l1 = 0.0;
        const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            f, 0.0, std::numeric_limits<double>::infinity(), 30, tol, &err, &l1);
        out.value = v;
        out.est_error = err;
        out.note = "slow decay detected; adaptive Gauss-Kronrod fallback";
        if (!std::isfinite(v)) throw Error(ErrorKind::convergence, "imaginary-frequency integral diverges");
    }
    out.evals = evals;
    out.converged = out.est_error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value)) * 10.0;
    return out;
}

} // namespace vcorr
