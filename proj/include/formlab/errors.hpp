#pragma once

#include <stdexcept>
#include <string>

namespace formlab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested jet order outside [0, kMaxJetOrder], or an operation that
/// would need derivatives beyond the order a jet carries.
struct JetOrderError : Error {
    using Error::Error;
};

/// Division by a jet whose constant term vanishes, or an elementary
/// function evaluated outside its real domain.
struct SingularJetError : Error {
    using Error::Error;
};

/// Surface constructed with parameters outside their valid range.
struct InvalidParameterError : Error {
    using Error::Error;
};

/// Evaluation requested outside the declared regular domain.
struct SingularDomainError : Error {
    using Error::Error;
};

/// |x_u x x_v| below threshold: the patch is not regular there.
struct DegeneratePointError : Error {
    using Error::Error;
};

/// Gauss curvature below threshold; the third form degenerates.
struct FlatPointError : Error {
    using Error::Error;
};

/// Parallel offset too close to a focal point (1 - 2muH + mu^2 K ~ 0).
struct FocalDegeneracyError : Error {
    using Error::Error;
};

/// Fundamental form matrix not invertible at the evaluation point.
struct DegenerateFormError : Error {
    using Error::Error;
};

/// Profile violates positivity, unit speed, or regularity requirements.
struct InvalidProfileError : Error {
    using Error::Error;
};

/// Turning angle could not be continued as a single continuous branch.
struct UnwrapError : Error {
    using Error::Error;
};

/// Malformed surface/profile spec string or expression.
struct SpecParseError : Error {
    using Error::Error;
};

} // namespace formlab
