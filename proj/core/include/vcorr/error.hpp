#pragma once

#include <stdexcept>
#include <string>

namespace vcorr {

enum class ErrorKind {
    domain,        // argument outside the mathematical domain
    singular,      // coincident points, R = 0
    pole,          // evaluation on a real resonance
    convergence,   // quadrature or extrapolation did not converge
    light_cone,    // too close to a light-cone surface
    aliasing,      // separation comparable to the mode box
    config,        // invalid configuration
    unit           // unknown dimension tag
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace vcorr
