#pragma once

#include <stdexcept>
#include <string>

namespace harmap {

// Base for every library-specific failure, so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisorVanishesAtOrigin final : Error {
    DivisorVanishesAtOrigin() : Error("series division: divisor vanishes at the origin") {}
};

struct OutsideEvaluationDisk final : Error {
    explicit OutsideEvaluationDisk(double r, double r_max)
        : Error("evaluation point |z| = " + std::to_string(r) +
                " exceeds the evaluation radius " + std::to_string(r_max)) {}
};

struct ScaleExceedsUnit final : Error {
    ScaleExceedsUnit() : Error("compose_scale: |c| > 1 would leave the unit disk") {}
};

struct OutsideDisk final : Error {
    OutsideDisk() : Error("closed-form evaluation requires |z| < 1") {}
};

struct PoleHit final : Error {
    explicit PoleHit(const std::string& what) : Error("pole hit: " + what) {}
};

struct NotNormalizedP final : Error {
    NotNormalizedP() : Error("Herglotz-class argument must satisfy p(0) = 1") {}
};

struct ParamOutOfRange final : Error {
    explicit ParamOutOfRange(const std::string& what) : Error("parameter out of range: " + what) {}
};

struct PhiNotNormalized final : Error {
    PhiNotNormalized() : Error("shear target must satisfy phi(0) = 0, phi'(0) = 1") {}
};

struct DilatationNotSubunit final : Error {
    DilatationNotSubunit() : Error("dilatation must satisfy |omega(0)| < 1") {}
};

struct HypothesisViolated final : Error {
    explicit HypothesisViolated(const std::string& what) : Error("hypothesis violated: " + what) {}
};

struct SpecAmbiguous final : Error {
    explicit SpecAmbiguous(const std::string& what) : Error("ambiguous harness spec: " + what) {}
};

struct DegenerateDenominator final : Error {
    DegenerateDenominator() : Error("convolution positivity: denominator vanishes on the grid") {}
};

struct TooFewPoints final : Error {
    TooFewPoints() : Error("simple-curve check needs a closed polyline with at least 16 points") {}
};

struct WriteFailed final : Error {
    explicit WriteFailed(const std::string& path) : Error("could not write " + path) {}
};

}  // namespace harmap
