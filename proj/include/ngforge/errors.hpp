// Error types shared across the library.
#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace ngforge {

namespace detail {
inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}
} // namespace detail

// A state (or an operator applied to one) carries too much amplitude near the
// truncation boundary for the requested tolerance.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double tail)
        : std::runtime_error(what + " (tail mass " + detail::sci(tail) + ")"),
          tail_mass(tail) {}
    double tail_mass;
};

// Postselection succeeded with probability below the representable floor; the
// raw squared norm is kept for diagnostics.
class DegenerateCancellation : public std::runtime_error {
public:
    explicit DegenerateCancellation(double raw)
        : std::runtime_error("degenerate cancellation: channel norm " + detail::sci(raw)
                             + " below 1e-15"),
          raw_norm_sq(raw) {}
    double raw_norm_sq;
};

} // namespace ngforge
