#include "vcorr/atom.hpp"

#include <cmath>

#include "vcorr/error.hpp"

namespace vcorr {

std::vector<Transition> Atom::transitions() const
{
    std::vector<Transition> out{{omega, dipole}};
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

void Atom::validate() const
{
    for (const auto& tr : transitions()) {
        if (!(tr.omega > 0.0) || !std::isfinite(tr.omega))
            throw Error(ErrorKind::config, "transition frequency must be positive");
        if (!std::isfinite(tr.dipole.norm2()))
            throw Error(ErrorKind::config, "dipole components must be finite reals");
    }
    if (!std::isfinite(position.norm2()))
        throw Error(ErrorKind::config, "atom position must be finite");
}

PolarizabilityModel::PolarizabilityModel(std::vector<Resonance> res, UnitSystem u)
    : res_(std::move(res)), units_(u)
{
    units_.validate();
    for (const auto& r : res_) {
        if (!(r.omega > 0.0)) throw Error(ErrorKind::config, "resonance frequency must be positive");
        if (!(r.dipole_sq >= 0.0)) throw Error(ErrorKind::config, "dipole_sq must be non-negative");
    }
}

double PolarizabilityModel::operator()(double w) const
{
    double sum = 0.0;
    for (const auto& r : res_) {
        if (r.dipole_sq == 0.0) continue;
        if (std::abs(w) == r.omega)
            throw Error(ErrorKind::pole, "polarizability evaluated on a resonance; use a PV path");
        sum += r.omega * r.dipole_sq / (r.omega * r.omega - w * w);
    }
    return 2.0 * sum / (3.0 * units_.hbar);
}

std::complex<double> PolarizabilityModel::at(std::complex<double> w) const
{
    std::complex<double> sum = 0.0;
    for (const auto& r : res_) {
        if (r.dipole_sq == 0.0) continue;
        const auto den = r.omega * r.omega - w * w;
        if (den == 0.0) throw Error(ErrorKind::pole, "polarizability evaluated on a resonance");
        sum += r.omega * r.dipole_sq / den;
    }
    return 2.0 * sum / (3.0 * units_.hbar);
}

double PolarizabilityModel::imaginary(double u) const
{
    double sum = 0.0;
    for (const auto& r : res_) sum += r.omega * r.dipole_sq / (r.omega * r.omega + u * u);
    return 2.0 * sum / (3.0 * units_.hbar);
}

bool PolarizabilityModel::is_zero() const
{
    for (const auto& r : res_)
        if (r.dipole_sq != 0.0) return false;
    return true;
}

PolarizabilityModel make_polarizability(const Atom& atom, const UnitSystem& u)
{
    atom.validate();
    std::vector<Resonance> res;
    for (const auto& tr : atom.transitions()) res.push_back({tr.omega, tr.dipole.norm2()});
    return PolarizabilityModel(std::move(res), u);
}

PolarizableBody make_body(const Atom& atom, const UnitSystem& u)
{
    return {atom.position, make_polarizability(atom, u), PolarizabilityModel({}, u)};
}

void GeometryTriplet::validate() const
{
    if (!(alpha() > 0.0) || !(beta() > 0.0) || !(gamma() > 0.0))
        throw Error(ErrorKind::singular, "coincident atoms in triplet");
}

} // namespace vcorr
