#pragma once

#include <complex>
#include <vector>

#include "vcorr/units.hpp"
#include "vcorr/vec3.hpp"

namespace vcorr {

enum class StateTag { ground, excited };

// Two-level atom: position, transition frequency (rad/s), real dipole
// matrix element (statC cm).
struct Transition {
    double omega; // rad/s
    Vec3 dipole;  // statC cm, real
};

// Atom at `position` with its lowest transition (omega, dipole). Further
// transitions from the same lower level go in `extra`; the dynamical
// formulas use the two-level truncation and ignore them.
struct Atom {
    Vec3 position;
    double omega = 1.0;
    Vec3 dipole;
    StateTag state = StateTag::ground;
    std::vector<Transition> extra;

    std::vector<Transition> transitions() const;
    void validate() const;
};

struct Resonance {
    double omega;     // rad/s
    double dipole_sq; // statC^2 cm^2
};

// Isotropic Kramers-Heisenberg polarizability,
// alpha(w) = sum_n (2/3hbar) w_n |mu_n|^2 / (w_n^2 - w^2).
class PolarizabilityModel {
public:
    PolarizabilityModel() = default;
    PolarizabilityModel(std::vector<Resonance> res, UnitSystem u);

    // Real frequency; throws ErrorKind::pole on a resonance.
    double operator()(double omega) const;
    // Complex frequency, no pole check beyond exact hits.
    std::complex<double> at(std::complex<double> omega) const;
    // alpha(i u), u an angular frequency.
    double imaginary(double u) const;
    double static_value() const { return imaginary(0.0); }
    bool is_zero() const;

    const std::vector<Resonance>& resonances() const { return res_; }
    const UnitSystem& units() const { return units_; }
    bool isotropic() const { return true; }

private:
    std::vector<Resonance> res_;
    UnitSystem units_;
};

PolarizabilityModel make_polarizability(const Atom& atom, const UnitSystem& u);

// Body with separate electric and magnetic responses, used by the
// two-body channels.
struct PolarizableBody {
    Vec3 position;
    PolarizabilityModel electric;
    PolarizabilityModel magnetic;
};

PolarizableBody make_body(const Atom& atom, const UnitSystem& u);

struct GeometryTriplet {
    Vec3 rA, rB, rC;

    double alpha() const { return (rC - rB).norm(); }
    double beta() const { return (rC - rA).norm(); }
    double gamma() const { return (rB - rA).norm(); }
    void validate() const;
};

} // namespace vcorr
