#pragma once

#include <stdexcept>
#include <string>

namespace dop {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// mesh
struct NonPositiveSpacing : Error { using Error::Error; };
struct RadiusExceedsCollar : Error { using Error::Error; };
struct NonIntegerRadius : Error { using Error::Error; };
struct NotInterior : Error { using Error::Error; };

// fields / expressions
struct EvalDomainError : Error { using Error::Error; };
struct UnknownDataset : Error { using Error::Error; };
struct ExprParseError : Error { using Error::Error; };

// operators / solver / game
struct ShapeMismatch : Error { using Error::Error; };
struct NonFiniteInput : Error { using Error::Error; };
struct ExponentOutOfRange : Error { using Error::Error; };
struct NonSolvedInput : Error { using Error::Error; };
struct DegenerateGradient : Error { using Error::Error; };

// config / io
struct ConfigError : Error { using Error::Error; };
struct UnknownKey : ConfigError { using ConfigError::ConfigError; };
struct BadValueType : ConfigError { using ConfigError::ConfigError; };
struct MissingRequired : ConfigError { using ConfigError::ConfigError; };
struct IoError : Error { using Error::Error; };

}  // namespace dop
