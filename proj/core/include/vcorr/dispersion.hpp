#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vcorr/atom.hpp"
#include "vcorr/quadrature.hpp"
#include "vcorr/tensorops.hpp"

namespace vcorr {

enum class Regime { near, far, mixed };
const char* to_string(Regime r);

struct EnergyResult {
    double value = 0.0; // erg (or hbar omega_ref units in natural mode)
    Channel channel = Channel::ee;
    Regime regime_hint = Regime::mixed;
    std::vector<std::pair<std::string, bool>> causality;
    std::size_t evals = 0;
    double est_error = 0.0;
    bool converged = true;
    std::string route;
};

enum class TwoBodyRoute { imaginary_frequency, real_axis };

EnergyResult two_body_energy(const PolarizableBody& B, const PolarizableBody& C, Channel ch,
                             const UnitSystem& u,
                             TwoBodyRoute route = TwoBodyRoute::imaginary_frequency,
                             const QuadratureSpec& spec = {});
EnergyResult two_body_energy(const Atom& B, const Atom& C, Channel ch, const UnitSystem& u,
                             TwoBodyRoute route = TwoBodyRoute::imaginary_frequency,
                             const QuadratureSpec& spec = {});

EnergyResult three_body_static(const PolarizableBody& A, const PolarizableBody& B,
                               const PolarizableBody& C, const UnitSystem& u,
                               const QuadratureSpec& spec = QuadratureSpec::imaginary_frequency());
EnergyResult three_body_static(const Atom& A, const Atom& B, const Atom& C, const UnitSystem& u,
                               const QuadratureSpec& spec = QuadratureSpec::imaginary_frequency());

enum class DipoleAverage { fixed, isotropic };

struct DynamicEnergyOptions {
    DipoleAverage average = DipoleAverage::fixed;
    bool include_transient = true; // false: t -> infinity limit
    // The k^1 growth of the bracket after F costs about a digit against the
    // plain ladder; 1e-8 is what the default ladder certifies here.
    QuadratureSpec quad = [] {
        QuadratureSpec q;
        q.rel_tol = 1e-8;
        return q;
    }();
};

// Delta E_A(B, C; t); A is the atom dressing itself from the bare ground
// state, B and C the interacting pair.
EnergyResult three_body_dynamic_partial(const Atom& A, const Atom& B, const Atom& C, double t,
                                        const UnitSystem& u, const DynamicEnergyOptions& opt = {});

// (2/3)(dE_A(B,C) + dE_B(A,C) + dE_C(A,B))
EnergyResult three_body_dynamic_symmetrized(const Atom& A, const Atom& B, const Atom& C, double t,
                                            const UnitSystem& u,
                                            const DynamicEnergyOptions& opt = {});

// Extra contribution when A starts in its bare excited state.
EnergyResult three_body_resonant(const Atom& A, const Atom& B, const Atom& C, double t,
                                 const UnitSystem& u);

enum class SweepFamily { two_body_distance, equilateral_side, triangle_time };

struct SweepSpec {
    SweepFamily family = SweepFamily::two_body_distance;
    double lo = 1.0;
    double hi = 10.0;
    int points = 16;

    void validate() const;
    std::vector<double> grid() const; // log-spaced
};

struct ExponentFit {
    double exponent;
    double stderr_;
    double prefactor;
};

// Least-squares slope of log|E| against log R.
ExponentFit scaling_exponent_fit(const std::vector<double>& R, const std::vector<double>& E);
ExponentFit scaling_exponent_fit(const SweepSpec& sweep, const std::vector<double>& E);

} // namespace vcorr
