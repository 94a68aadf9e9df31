#ifndef KRATZER_ERRORS_HPP
#define KRATZER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kratzer {

// Base class for all numerical / domain failures raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Gamma/digamma evaluated at a non-positive integer.
struct PoleError : Error {
    explicit PoleError(const std::string& msg) : Error(msg) {}
};

// A series or iteration exceeded its term/step budget.
struct NonConvergence : Error {
    explicit NonConvergence(const std::string& msg) : Error(msg) {}
};

// Argument outside the principal branch sector.
struct BranchError : Error {
    explicit BranchError(const std::string& msg) : Error(msg) {}
};

struct InvalidCoupling : Error {
    explicit InvalidCoupling(const std::string& msg) : Error(msg) {}
};

// Solution id incompatible with the coupling range.
struct InvalidSolution : Error {
    explicit InvalidSolution(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct IllConditioned : Error {
    explicit IllConditioned(const std::string& msg) : Error(msg) {}
};

// (range, extension) sits at its threshold and E = 0 was requested.
struct ThresholdCase : Error {
    explicit ThresholdCase(const std::string& msg) : Error(msg) {}
};

struct NotApplicable : Error {
    explicit NotApplicable(const std::string& msg) : Error(msg) {}
};

// Characteristic function queried within guard distance of one of its poles.
struct PoleProximity : Error {
    explicit PoleProximity(const std::string& msg) : Error(msg) {}
};

struct BracketFailure : Error {
    explicit BracketFailure(const std::string& msg) : Error(msg) {}
};

// Green function requested at a point of the discrete spectrum.
struct OnSpectrum : Error {
    explicit OnSpectrum(const std::string& msg) : Error(msg) {}
};

// ODE integrator could not meet its local tolerance.
struct StepFailure : Error {
    explicit StepFailure(const std::string& msg) : Error(msg) {}
};

} // namespace kratzer

#endif
