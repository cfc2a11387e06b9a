#include "vcorr/units.hpp"

#include <cmath>
#include <string>

#include "vcorr/error.hpp"

namespace vcorr {

const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::singular: return "singular";
    case ErrorKind::pole: return "pole";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::light_cone: return "light_cone";
    case ErrorKind::aliasing: return "aliasing";
    case ErrorKind::config: return "config";
    case ErrorKind::unit: return "unit";
    }
    return "unknown";
}

void UnitSystem::validate() const
{
    if (!(hbar > 0.0) || !(c > 0.0))
        throw Error(ErrorKind::config, "hbar and c must be positive");
    if (natural_mode && (hbar != 1.0 || c != 1.0))
        throw Error(ErrorKind::config, "natural mode requires hbar = c = 1");
}

Dimension parse_dimension(std::string_view tag)
{
    if (tag == "length") return Dimension::length;
    if (tag == "time") return Dimension::time;
    if (tag == "frequency") return Dimension::frequency;
    if (tag == "energy") return Dimension::energy;
    if (tag == "correlation") return Dimension::correlation;
    if (tag == "polarizability") return Dimension::polarizability;
    throw Error(ErrorKind::unit, "unknown dimension tag '" + std::string(tag) + "'");
}

std::string_view to_string(Dimension d)
{
    switch (d) {
    case Dimension::length: return "length";
    case Dimension::time: return "time";
    case Dimension::frequency: return "frequency";
    case Dimension::energy: return "energy";
    case Dimension::correlation: return "correlation";
    case Dimension::polarizability: return "polarizability";
    }
    return "?";
}

namespace {

double unit_of(Dimension d, const NaturalScale& s)
{
    if (!(s.omega_ref > 0.0))
        throw Error(ErrorKind::config, "omega_ref must be positive");
    const double len = s.units.c / s.omega_ref;
    switch (d) {
    case Dimension::length: return len;
    case Dimension::time: return 1.0 / s.omega_ref;
    case Dimension::frequency: return s.omega_ref;
    case Dimension::energy: return s.units.hbar * s.omega_ref;
    case Dimension::correlation: return s.units.hbar * s.omega_ref / (len * len * len);
    case Dimension::polarizability: return len * len * len;
    }
    throw Error(ErrorKind::unit, "unknown dimension");
}

} // namespace

double to_natural(double value, Dimension d, const NaturalScale& s) { return value / unit_of(d, s); }
double from_natural(double value, Dimension d, const NaturalScale& s) { return value * unit_of(d, s); }

} // namespace vcorr
