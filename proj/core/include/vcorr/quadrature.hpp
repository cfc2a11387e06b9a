#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace vcorr {

using cplx = std::complex<double>;

enum class QuadMethod { oscillatory_semi_infinite, principal_value, imaginary_frequency };
enum class PvMethod { excision, subtraction };

struct QuadratureSpec {
    QuadMethod method = QuadMethod::oscillatory_semi_infinite;
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    // Largest regulator of the eta ladder; 0 picks 0.5 * slow scale.
    double regulator_eta = 0.0;
    double pole = 0.0; // principal_value only
    std::size_t max_evals = 40'000'000;
    int ladder_levels = 8;
    double tail_factor = 60.0; // integrate out to tail_factor / eta_min
    int panel_points = 16;
    PvMethod pv_method = PvMethod::excision;

    void validate() const;
    static QuadratureSpec oscillatory() { return {}; }
    static QuadratureSpec principal_value(double a)
    {
        QuadratureSpec s;
        s.method = QuadMethod::principal_value;
        s.pole = a;
        return s;
    }
    static QuadratureSpec imaginary_frequency()
    {
        QuadratureSpec s;
        s.method = QuadMethod::imaginary_frequency;
        return s;
    }
};

struct QuadResult {
    cplx value{};
    double est_error = 0.0;
    std::size_t evals = 0;
    bool converged = true;
    std::string note;
    std::vector<double> etas;
    std::vector<cplx> ladder;
};

// Frequencies of the integrand: `slow` bounds the analyticity radius of
// the regulated integral (smallest nonzero phase rate), `fast` sets the
// panel width (largest phase rate).
struct PhaseScales {
    double slow;
    double fast;
};

using RealIntegrand = std::function<cplx(double)>;
using ComplexIntegrand = std::function<cplx(cplx)>;

// lim_{eta->0+} int_lower^inf g(w) e^{-eta w} dw via an eta ladder and
// polynomial extrapolation.
QuadResult integrate_oscillatory(const RealIntegrand& g, double phase_scale,
                                 const QuadratureSpec& spec = {}, double lower = 0.0);
QuadResult integrate_oscillatory(const RealIntegrand& g, PhaseScales scales,
                                 const QuadratureSpec& spec = {}, double lower = 0.0);

enum class PoleSide { above, below, mean };

// Same regulated integral along the real axis indented around `poles`
// by semicircles of radius `radius`. `mean` averages the two indentations,
// which is the principal value for simple poles. `phase_sign` is the sign
// of s in the integrand's e^{iks} behaviour; integrands mixing both signs
// must be split by the caller.
QuadResult integrate_indented(const ComplexIntegrand& g, const std::vector<double>& poles,
                              double radius, PoleSide side, PhaseScales scales,
                              const QuadratureSpec& spec = {}, double lower = 0.0,
                              int phase_sign = 1);

// PV int_lo^hi g; hi may be +inf (oscillatory tail through the eta ladder).
QuadResult integrate_pv(const RealIntegrand& g, double a, const QuadratureSpec& spec,
                        double lo = 0.0, double hi = std::numeric_limits<double>::infinity(),
                        double phase_scale = 0.0);

QuadResult integrate_imaginary_frequency(const std::function<double(double)>& g,
                                         const QuadratureSpec& spec = QuadratureSpec::imaginary_frequency());

// Plain adaptive Gauss-Kronrod on a finite interval.
QuadResult integrate_finite(const RealIntegrand& g, double a, double b, double rel_tol = 1e-12);

// Neville extrapolation of (x_k, y_k) to x = 0.
cplx extrapolate_to_zero(const std::vector<double>& x, const std::vector<cplx>& y);

} // namespace vcorr
