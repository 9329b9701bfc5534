#pragma once

#include <stdexcept>
#include <string>

namespace skewbm {

/// Argument outside the mathematical domain of an operation (t <= 0, ell < 0, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Parameter combination the numerical scheme cannot honour.
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Quadrature could not certify its result (tail mass or error estimate too large).
class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Sampler exhausted its rejection budget.
class InternalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed verification or CLI configuration.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

template <class Error>
inline void require(bool condition, const char* what) {
    if (!condition) throw Error(what);
}

inline void require_positive_time(double t) {
    if (!(t > 0.0)) throw DomainError("elapsed time t must be > 0, got " + std::to_string(t));
}

inline void require_nonnegative_level(double ell) {
    if (!(ell >= 0.0)) throw DomainError("local-time level ell must be >= 0, got " + std::to_string(ell));
}

}  // namespace detail
}  // namespace skewbm
