#ifndef RAYCLASS_BIGFLOAT_HPP
#define RAYCLASS_BIGFLOAT_HPP

#include <cstdint>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace rayclass {

using bits_t = mpfr_prec_t;

/* Owning wrapper around an mpfr_t.  Binary operations produce a result
 * at the larger of the two operand precisions, rounded to nearest.
 */
class BigFloat
{
    mpfr_t v_;

  public:
    explicit BigFloat(bits_t prec = 64);
    BigFloat(bits_t prec, long value);
    BigFloat(bits_t prec, double value);
    BigFloat(bits_t prec, mpz_class const & value);
    BigFloat(bits_t prec, mpq_class const & value);
    /* value rounded to prec bits */
    BigFloat(bits_t prec, BigFloat const & value);

    BigFloat(BigFloat const & o);
    BigFloat(BigFloat && o) noexcept;
    BigFloat & operator=(BigFloat const & o);
    BigFloat & operator=(BigFloat && o) noexcept;
    ~BigFloat();

    bits_t precision() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /* log2 |x| as a double (also for values outside the double range);
     * -infinity for zero */
    double log2_abs() const;
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    /* nearest integer, ties away from zero */
    mpz_class round() const;

    /* scientific notation with the given number of significant digits */
    std::string to_string(int digits = 6) const;

    BigFloat & operator+=(BigFloat const & o);
    BigFloat & operator-=(BigFloat const & o);
    BigFloat & operator*=(BigFloat const & o);
    BigFloat & operator/=(BigFloat const & o);

    friend bool operator<(BigFloat const & x, BigFloat const & y) { return mpfr_less_p(x.v_, y.v_); }
    friend bool operator>(BigFloat const & x, BigFloat const & y) { return mpfr_greater_p(x.v_, y.v_); }
    friend bool operator<=(BigFloat const & x, BigFloat const & y) { return mpfr_lessequal_p(x.v_, y.v_); }
    friend bool operator>=(BigFloat const & x, BigFloat const & y) { return mpfr_greaterequal_p(x.v_, y.v_); }
    friend bool operator==(BigFloat const & x, BigFloat const & y) { return mpfr_equal_p(x.v_, y.v_); }
};

BigFloat operator+(BigFloat const & x, BigFloat const & y);
BigFloat operator-(BigFloat const & x, BigFloat const & y);
BigFloat operator*(BigFloat const & x, BigFloat const & y);
BigFloat operator/(BigFloat const & x, BigFloat const & y);
BigFloat operator-(BigFloat const & x);

BigFloat abs(BigFloat const & x);
BigFloat sqrt(BigFloat const & x);
BigFloat exp(BigFloat const & x);
BigFloat log(BigFloat const & x);
BigFloat sin(BigFloat const & x);
BigFloat cos(BigFloat const & x);
BigFloat max(BigFloat const & x, BigFloat const & y);
BigFloat min(BigFloat const & x, BigFloat const & y);
/* 2^k at the given precision */
BigFloat exp2i(bits_t prec, long k);
BigFloat const_pi(bits_t prec);

/* cos(pi * phase) and sin(pi * phase) for an exact rational phase;
 * the phase is reduced modulo 2 exactly before any rounding */
void cos_sin_pi(mpq_class const & phase, BigFloat & c, BigFloat & s);

class BigComplex
{
    BigFloat re_;
    BigFloat im_;

  public:
    explicit BigComplex(bits_t prec = 64) : re_(prec), im_(prec) {}
    BigComplex(BigFloat re, BigFloat im);

    BigFloat const & re() const { return re_; }
    BigFloat const & im() const { return im_; }
    BigFloat & re() { return re_; }
    BigFloat & im() { return im_; }
    bits_t precision() const;

    BigComplex & operator+=(BigComplex const & o);
    BigComplex & operator-=(BigComplex const & o);
    BigComplex & operator*=(BigComplex const & o);

    friend BigComplex operator+(BigComplex x, BigComplex const & y) { return x += y; }
    friend BigComplex operator-(BigComplex x, BigComplex const & y) { return x -= y; }
    friend BigComplex operator*(BigComplex x, BigComplex const & y) { return x *= y; }
    friend BigComplex operator/(BigComplex const & x, BigComplex const & y);
    friend BigComplex operator-(BigComplex const & x);
};

BigComplex conj(BigComplex const & z);
/* |z|^2 */
BigFloat norm(BigComplex const & z);
BigFloat abs(BigComplex const & z);
/* z^e by binary powering, e >= 0 */
BigComplex pow(BigComplex const & z, std::uint64_t e);
/* exp(i pi phase) for an exact rational phase */
BigComplex exp_i_pi(mpq_class const & phase, bits_t prec);
/* modulus * exp(i pi phase) */
BigComplex polar_pi(BigFloat const & modulus, mpq_class const & phase);

} // namespace rayclass

#endif
