#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace zyg {

using Point = std::array<double, 3>;

inline Point operator+(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Point operator-(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

inline double sign(double v) { return (v > 0.0) - (v < 0.0); }

// Error hierarchy. Every failure mode named by an operation contract gets its
// own type so callers (and the CLI exit-code mapping) can dispatch on it.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : Error { using Error::Error; };
struct SingularityError : Error { using Error::Error; };
struct WitnessFailure : Error { using Error::Error; };
struct SeparationError : Error { using Error::Error; };
struct AdmissibilityError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };
struct CalibrationFailure : Error { using Error::Error; };
struct DivisionHazard : Error { using Error::Error; };
struct GeometryError : Error { using Error::Error; };
struct SelectionFailure : Error { using Error::Error; };
struct ClearanceError : Error { using Error::Error; };
struct PositivityError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace zyg
