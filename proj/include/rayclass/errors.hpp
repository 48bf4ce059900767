#ifndef RAYCLASS_ERRORS_HPP
#define RAYCLASS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rayclass {

/* Base class of every error raised by the library.  Input-validation
 * errors derive from usage_error; failures of a numerical certification
 * (precision, integrality, separation) derive from math_failure.
 */
class error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
    /* short CamelCase tag used in diagnostics */
    virtual char const * name() const noexcept { return "Error"; }
};

class usage_error : public error
{
  public:
    using error::error;
    char const * name() const noexcept override { return "UsageError"; }
};

class math_failure : public error
{
  public:
    using error::error;
    char const * name() const noexcept override { return "MathFailure"; }
};

/* Internal consistency failure: a result that cannot occur for valid
 * inputs (e.g. a non-invertible u_Q).  Signals a bug, not bad input.
 */
class internal_error : public error
{
  public:
    using error::error;
    char const * name() const noexcept override { return "InternalError"; }
};

struct not_imaginary : usage_error {
    explicit not_imaginary(std::string const & m) : usage_error(m) {}
    char const * name() const noexcept override { return "NotImaginary"; }
};
struct excluded_field : usage_error {
    explicit excluded_field(std::string const & m) : usage_error(m) {}
    char const * name() const noexcept override { return "ExcludedField"; }
};
struct not_fundamental : usage_error {
    explicit not_fundamental(std::string const & m) : usage_error(m) {}
    char const * name() const noexcept override { return "NotFundamental"; }
};
struct precision_unachievable : usage_error {
    explicit precision_unachievable(std::string const & m) : usage_error(m) {}
    char const * name() const noexcept override { return "PrecisionUnachievable"; }
};

struct non_invertible : internal_error {
    explicit non_invertible(std::string const & m) : internal_error(m) {}
    char const * name() const noexcept override { return "NonInvertible"; }
};
struct zero_index : internal_error {
    explicit zero_index(std::string const & m) : internal_error(m) {}
    char const * name() const noexcept override { return "ZeroIndex"; }
};

struct precision_exhausted : math_failure {
    explicit precision_exhausted(std::string const & m) : math_failure(m) {}
    char const * name() const noexcept override { return "PrecisionExhausted"; }
};
struct integrality_failure : math_failure {
    explicit integrality_failure(std::string const & m) : math_failure(m) {}
    char const * name() const noexcept override { return "IntegralityFailure"; }
};
struct separation_failure : math_failure {
    explicit separation_failure(std::string const & m) : math_failure(m) {}
    char const * name() const noexcept override { return "SeparationFailure"; }
};

} // namespace rayclass

#endif
