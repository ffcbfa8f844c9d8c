#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace gf {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// One finite real value per node, indexed by the graph's dense node order.
using NodeFunction = Eigen::VectorXd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicateNode : Error { using Error::Error; };
struct NonPositiveMeasure : Error { using Error::Error; };
struct NonPositiveWeight : Error { using Error::Error; };
struct SelfLoop : Error { using Error::Error; };
struct AsymmetricDuplicate : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };
struct EmptyGraph : Error { using Error::Error; };
struct UnknownNode : Error { using Error::Error; };
struct Unreachable : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct AlphaOutOfRange : Error { using Error::Error; };
struct EmptyExterior : Error { using Error::Error; };
struct ParameterOutOfRange : Error { using Error::Error; };
struct TruncationTooSmall : Error { using Error::Error; };
struct NonPositiveValue : Error { using Error::Error; };
struct TooFewSamples : Error { using Error::Error; };
struct SyntaxError : Error { using Error::Error; };
struct ProductTooLarge : Error { using Error::Error; };
struct NegativeArgument : Error { using Error::Error; };
struct NonFiniteState : Error { using Error::Error; };
struct InsufficientCoverage : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };

}  // namespace gf
