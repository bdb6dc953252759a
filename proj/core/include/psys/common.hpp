#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace psys {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A state or argument left the admissible region (e.g. tau <= 0, p_tau >= 0).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// An integral failed to converge, or diverged where convergence is required.
class QuadratureError : public Error {
public:
    explicit QuadratureError(const std::string& what) : Error(what) {}
};

/// Configuration file or key problems; carries the offending key/line in the message.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Format a double with 17 significant digits (round-trip safe, deterministic).
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline bool nearly_equal(double a, double b, double rel, double abs_floor = 0.0) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= std::max(rel * scale, abs_floor);
}

/// Closed interval in (tau, x) used for hypothesis checks and threshold sampling.
struct StateBox {
    double tau_lo = 0.0;
    double tau_hi = 0.0;
    double x_lo = 0.0;
    double x_hi = 0.0;
};

} // namespace psys
