#pragma once

#include <stdexcept>
#include <string>

namespace levysu2 {

// Domain-specific failures. Everything derives from std::runtime_error so the
// CLI can map them to exit codes in one place.

struct NotPSD : std::runtime_error {
    explicit NotPSD(const std::string& msg) : std::runtime_error(msg) {}
};

struct HypothesisHViolated : std::runtime_error {
    explicit HypothesisHViolated(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotConjugateInvariant : std::runtime_error {
    explicit NotConjugateInvariant(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularTorusPoint : std::runtime_error {
    explicit SingularTorusPoint(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonDominantWeight : std::runtime_error {
    explicit NonDominantWeight(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonIntegerDimension : std::runtime_error {
    explicit NonIntegerDimension(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyLevyMeasure : std::runtime_error {
    explicit EmptyLevyMeasure(const std::string& msg) : std::runtime_error(msg) {}
};

struct TimeMismatch : std::runtime_error {
    explicit TimeMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct SmallTimeUnresolved : std::runtime_error {
    explicit SmallTimeUnresolved(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotStable : std::runtime_error {
    explicit NotStable(const std::string& msg) : std::runtime_error(msg) {}
};

struct InconsistencyDetected : std::runtime_error {
    explicit InconsistencyDetected(const std::string& msg) : std::runtime_error(msg) {}
};

struct BadInput : std::runtime_error {
    explicit BadInput(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace levysu2
