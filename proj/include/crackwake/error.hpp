#pragma once

#include <stdexcept>
#include <string>

namespace crackwake {

// Input that violates a contract. The CLI maps these to exit status 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation that could not reach its accuracy target or hit a singular
// configuration. The CLI maps these to exit status 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnbalancedLoading : public ValidationError {
public:
    UnbalancedLoading(const std::string& what, double residual)
        : ValidationError(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

class LoadTooCloseToTip : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidPreset : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidDefect : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class QuadratureFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ContourTruncationFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class OnCrackFaceUnderLoad : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateA0 : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class TipReachesLoad : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class TipReachesDefect : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace crackwake
