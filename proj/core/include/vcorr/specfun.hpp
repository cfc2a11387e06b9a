#pragma once

#include <array>

namespace vcorr {

// si(z) = Si(z) - pi/2, ci(z) = Ci(z).
struct SiCi {
    double si;
    double ci;
};

SiCi sine_cosine_integrals(double z);

// f(z) = ci(z) sin z - si(z) cos z,  g(z) = -ci(z) cos z - si(z) sin z.
double auxiliary_f(double z);
double auxiliary_g(double z);

struct AuxFG {
    double f, g;
};
AuxFG auxiliary_fg(double z);

// f, f', f'', f''', f'''' using f' = -g, g' = f - 1/z.
std::array<double, 5> auxiliary_f_derivs(double z);

// PV int_0^inf sin(w s)/(w - a) dw = pi cos z - f(z), z = a s, and its
// z-derivatives up to fourth order.
double pv_sine_kernel(double z);
std::array<double, 5> pv_sine_kernel_derivs(double z);

} // namespace vcorr
