#pragma once

#include <string_view>

namespace vcorr {

// Gaussian units by default. Natural mode pins hbar = c = 1.
struct UnitSystem {
    double hbar = 1.054571817e-27; // erg s
    double c = 2.99792458e10;      // cm / s
    bool natural_mode = false;

    static UnitSystem gaussian() { return {}; }
    static UnitSystem natural() { return {1.0, 1.0, true}; }
    void validate() const;
};

enum class Dimension { length, time, frequency, energy, correlation, polarizability };

Dimension parse_dimension(std::string_view tag);
std::string_view to_string(Dimension d);

// Scale set by a reference angular frequency: lengths in c/omega_ref,
// times in 1/omega_ref, energies in hbar*omega_ref.
struct NaturalScale {
    UnitSystem units;
    double omega_ref = 1.0;
};

double to_natural(double value, Dimension d, const NaturalScale& s);
double from_natural(double value, Dimension d, const NaturalScale& s);

} // namespace vcorr
