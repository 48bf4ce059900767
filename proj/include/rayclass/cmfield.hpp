#ifndef RAYCLASS_CMFIELD_HPP
#define RAYCLASS_CMFIELD_HPP

#include <cstdint>

#include <gmpxx.h>

namespace rayclass {

/* A validated fundamental discriminant d <= -7 of an imaginary
 * quadratic field other than Q(sqrt(-1)) and Q(sqrt(-3)).  Only
 * validate_discriminant() creates one.  Values are bounded by
 * |d| < 2^63.
 */
class Discriminant
{
    std::int64_t value_;
    explicit Discriminant(std::int64_t d) : value_(d) {}

    friend Discriminant validate_discriminant(std::int64_t d);

  public:
    std::int64_t value() const { return value_; }

    /* d mod 4, either 0 or 1 */
    int residue() const { return static_cast<int>(((value_ % 4) + 4) % 4); }

    bool operator==(Discriminant const &) const = default;
};

/* Throws not_imaginary (d >= 0), excluded_field (d = -3, -4) or
 * not_fundamental.
 */
Discriminant validate_discriminant(std::int64_t d);

/* True when d is a fundamental discriminant (of either sign). */
bool is_fundamental(std::int64_t d);

/* The generator theta of the ring of integers, O_K = Z[theta], and its
 * minimal polynomial X^2 + b_theta X + c_theta.
 *
 *   d = 0 mod 4:  theta = sqrt(d)/2,        (b, c) = (0, -d/4)
 *   d = 1 mod 4:  theta = (-1 + sqrt(d))/2, (b, c) = (1, (1-d)/4)
 *
 * theta = theta_re + i * sqrt(theta_im_sq).
 */
struct ThetaParams {
    std::int64_t b_theta;
    std::int64_t c_theta;
    mpq_class theta_re;
    mpq_class theta_im_sq;
};

ThetaParams theta_params(Discriminant d);

} // namespace rayclass

#endif
