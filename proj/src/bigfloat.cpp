#include "rayclass/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace rayclass {

namespace {

constexpr mpfr_rnd_t rnd = MPFR_RNDN;

bits_t pmax(BigFloat const & x, BigFloat const & y)
{
    return std::max(x.precision(), y.precision());
}

} // namespace

BigFloat::BigFloat(bits_t prec)
{
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(bits_t prec, long value)
{
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, value, rnd);
}

BigFloat::BigFloat(bits_t prec, double value)
{
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, value, rnd);
}

BigFloat::BigFloat(bits_t prec, mpz_class const & value)
{
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, value.get_mpz_t(), rnd);
}

BigFloat::BigFloat(bits_t prec, mpq_class const & value)
{
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, value.get_mpq_t(), rnd);
}

BigFloat::BigFloat(bits_t prec, BigFloat const & value)
{
    mpfr_init2(v_, prec);
    mpfr_set(v_, value.v_, rnd);
}

BigFloat::BigFloat(BigFloat const & o)
{
    mpfr_init2(v_, o.precision());
    mpfr_set(v_, o.v_, rnd);
}

BigFloat::BigFloat(BigFloat && o) noexcept
{
    // leave o as a valid minimal-precision zero
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat & BigFloat::operator=(BigFloat const & o)
{
    if (this != &o) {
        mpfr_set_prec(v_, o.precision());
        mpfr_set(v_, o.v_, rnd);
    }
    return *this;
}

BigFloat & BigFloat::operator=(BigFloat && o) noexcept
{
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat()
{
    mpfr_clear(v_);
}

double BigFloat::log2_abs() const
{
    if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
    long e = 0;
    double m = mpfr_get_d_2exp(&e, v_, rnd);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

mpz_class BigFloat::round() const
{
    mpz_class z;
    mpfr_t t;
    mpfr_init2(t, precision());
    mpfr_round(t, v_);
    mpfr_get_z(z.get_mpz_t(), t, rnd);
    mpfr_clear(t);
    return z;
}

std::string BigFloat::to_string(int digits) const
{
    char * buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits > 0 ? digits - 1 : 0, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

BigFloat & BigFloat::operator+=(BigFloat const & o)
{
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), rnd);
    mpfr_add(v_, v_, o.v_, rnd);
    return *this;
}

BigFloat & BigFloat::operator-=(BigFloat const & o)
{
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), rnd);
    mpfr_sub(v_, v_, o.v_, rnd);
    return *this;
}

BigFloat & BigFloat::operator*=(BigFloat const & o)
{
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), rnd);
    mpfr_mul(v_, v_, o.v_, rnd);
    return *this;
}

BigFloat & BigFloat::operator/=(BigFloat const & o)
{
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), rnd);
    mpfr_div(v_, v_, o.v_, rnd);
    return *this;
}

BigFloat operator+(BigFloat const & x, BigFloat const & y)
{
    BigFloat r(pmax(x, y));
    mpfr_add(r.get(), x.get(), y.get(), rnd);
    return r;
}

BigFloat operator-(BigFloat const & x, BigFloat const & y)
{
    BigFloat r(pmax(x, y));
    mpfr_sub(r.get(), x.get(), y.get(), rnd);
    return r;
}

BigFloat operator*(BigFloat const & x, BigFloat const & y)
{
    BigFloat r(pmax(x, y));
    mpfr_mul(r.get(), x.get(), y.get(), rnd);
    return r;
}

BigFloat operator/(BigFloat const & x, BigFloat const & y)
{
    BigFloat r(pmax(x, y));
    mpfr_div(r.get(), x.get(), y.get(), rnd);
    return r;
}

BigFloat operator-(BigFloat const & x)
{
    BigFloat r(x.precision());
    mpfr_neg(r.get(), x.get(), rnd);
    return r;
}

#define RAYCLASS_UNARY(name, fn)                                                             \
    BigFloat name(BigFloat const & x)                                                        \
    {                                                                                        \
        BigFloat r(x.precision());                                                           \
        fn(r.get(), x.get(), rnd);                                                           \
        return r;                                                                            \
    }

RAYCLASS_UNARY(abs, mpfr_abs)
RAYCLASS_UNARY(sqrt, mpfr_sqrt)
RAYCLASS_UNARY(exp, mpfr_exp)
RAYCLASS_UNARY(log, mpfr_log)
RAYCLASS_UNARY(sin, mpfr_sin)
RAYCLASS_UNARY(cos, mpfr_cos)

#undef RAYCLASS_UNARY

BigFloat max(BigFloat const & x, BigFloat const & y)
{
    return x < y ? y : x;
}

BigFloat min(BigFloat const & x, BigFloat const & y)
{
    return y < x ? y : x;
}

BigFloat exp2i(bits_t prec, long k)
{
    BigFloat r(prec, 1L);
    mpfr_mul_2si(r.get(), r.get(), k, rnd);
    return r;
}

BigFloat const_pi(bits_t prec)
{
    BigFloat r(prec);
    mpfr_const_pi(r.get(), rnd);
    return r;
}

void cos_sin_pi(mpq_class const & phase, BigFloat & c, BigFloat & s)
{
    // reduce to (-1, 1]
    mpz_class const two_den = 2 * mpz_class(phase.get_den());
    mpz_class num = phase.get_num() % two_den;
    if (num < 0) num += two_den;
    if (num > phase.get_den()) num -= two_den;
    mpq_class reduced(num, phase.get_den());
    reduced.canonicalize();

    bits_t const prec = std::max(c.precision(), s.precision());
    if (reduced == 0 || reduced == 1) {
        c = BigFloat(prec, reduced == 0 ? 1L : -1L);
        s = BigFloat(prec, 0L);
        return;
    }
    if (reduced == mpq_class(1, 2) || reduced == mpq_class(-1, 2)) {
        c = BigFloat(prec, 0L);
        s = BigFloat(prec, reduced > 0 ? 1L : -1L);
        return;
    }
    // a few extra bits for the multiplication by pi
    BigFloat x = const_pi(prec + 8) * BigFloat(prec + 8, reduced);
    BigFloat cc(prec), ss(prec);
    mpfr_sin_cos(ss.get(), cc.get(), x.get(), rnd);
    c = std::move(cc);
    s = std::move(ss);
}

BigComplex::BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}

bits_t BigComplex::precision() const
{
    return std::max(re_.precision(), im_.precision());
}

BigComplex & BigComplex::operator+=(BigComplex const & o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

BigComplex & BigComplex::operator-=(BigComplex const & o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

BigComplex & BigComplex::operator*=(BigComplex const & o)
{
    bits_t const p = std::max(precision(), o.precision());
    BigFloat t1(p), t2(p), re(p), im(p);
    mpfr_mul(t1.get(), re_.get(), o.re_.get(), rnd);
    mpfr_mul(t2.get(), im_.get(), o.im_.get(), rnd);
    mpfr_sub(re.get(), t1.get(), t2.get(), rnd);
    mpfr_mul(t1.get(), re_.get(), o.im_.get(), rnd);
    mpfr_mul(t2.get(), im_.get(), o.re_.get(), rnd);
    mpfr_add(im.get(), t1.get(), t2.get(), rnd);
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

BigComplex operator/(BigComplex const & x, BigComplex const & y)
{
    BigFloat const n = norm(y);
    BigComplex r = x * conj(y);
    r.re() /= n;
    r.im() /= n;
    return r;
}

BigComplex operator-(BigComplex const & x)
{
    return BigComplex(-x.re(), -x.im());
}

BigComplex conj(BigComplex const & z)
{
    return BigComplex(z.re(), -z.im());
}

BigFloat norm(BigComplex const & z)
{
    return z.re() * z.re() + z.im() * z.im();
}

BigFloat abs(BigComplex const & z)
{
    BigFloat r(z.precision());
    mpfr_hypot(r.get(), z.re().get(), z.im().get(), rnd);
    return r;
}

BigComplex pow(BigComplex const & z, std::uint64_t e)
{
    bits_t const p = z.precision();
    BigComplex result(BigFloat(p, 1L), BigFloat(p, 0L));
    BigComplex base = z;
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

BigComplex exp_i_pi(mpq_class const & phase, bits_t prec)
{
    BigFloat c(prec), s(prec);
    cos_sin_pi(phase, c, s);
    return BigComplex(std::move(c), std::move(s));
}

BigComplex polar_pi(BigFloat const & modulus, mpq_class const & phase)
{
    BigComplex z = exp_i_pi(phase, modulus.precision());
    z.re() *= modulus;
    z.im() *= modulus;
    return z;
}

} // namespace rayclass
