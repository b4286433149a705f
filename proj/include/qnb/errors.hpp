#pragma once

#include <stdexcept>
#include <string>

namespace qnb {

// Invalid physical parameters or malformed configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Failures of a numerical evaluation (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Readout quadrature carries no displacement signal.
class ZeroResponseError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Evaluation at Omega = 0 or exactly on a real pole.
class SingularFrequencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Lossless cavity driven exactly on resonance.
class UndampedResonanceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Parameter combination outside the modelled regime.
class UnsupportedRegimeError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

}  // namespace qnb
