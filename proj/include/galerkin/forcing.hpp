#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace galerkin {

using RealFunction = std::function<double(double)>;

/// Built-in right-hand sides on [0, 1].
namespace forcing {

inline double one(double) { return 1.0; }
inline double linear(double x) { return x; }
inline double sinpi(double x) { return std::sin(std::numbers::pi * x); }
inline double sin2pi(double x) { return std::sin(2.0 * std::numbers::pi * x); }
/// Unit step switching on at x = 1/2.
inline double step(double x) { return x > 0.5 ? 1.0 : 0.0; }
inline double zero(double) { return 0.0; }

/// Forcing whose solution of -u'' - lambda u + u^3 = f with zero boundary values is sin(pi x).
inline RealFunction manufactured_cubic(double lambda) {
    return [lambda](double x) {
        const double s = std::sin(std::numbers::pi * x);
        return (std::numbers::pi * std::numbers::pi - lambda) * s + s * s * s;
    };
}

inline std::optional<RealFunction> by_name(std::string_view name) {
    if (name == "one") return RealFunction(one);
    if (name == "linear") return RealFunction(linear);
    if (name == "sinpi") return RealFunction(sinpi);
    if (name == "sin2pi") return RealFunction(sin2pi);
    if (name == "step") return RealFunction(step);
    if (name == "zero") return RealFunction(zero);
    return std::nullopt;
}

}  // namespace forcing
}  // namespace galerkin
