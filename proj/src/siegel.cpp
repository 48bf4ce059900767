#include "rayclass/siegel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "rayclass/errors.hpp"

namespace rayclass {

bits_t default_precision_cap()
{
    if (char const * env = std::getenv("RAYCLASS_PRECISION_CAP")) {
        char * end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0' && v >= 64) return static_cast<bits_t>(v);
    }
    return builtin_precision_cap;
}

mpq_class bernoulli2(mpq_class const & x)
{
    mpq_class r = x * x - x + mpq_class(1, 6);
    r.canonicalize();
    return r;
}

std::int64_t truncation_cutoff_log(double log_q, bits_t precision)
{
    if (!(log_q < 0)) throw std::domain_error("truncation_cutoff needs 0 < q < 1");
    // log(2) + n log q - 2 log(1 - q) < -(precision + guard) log 2
    double const log_one_minus_q = std::log1p(-std::exp(log_q));
    double const target = -static_cast<double>(precision + guard_bits) * std::numbers::ln2;
    double const n = (target - std::numbers::ln2 + 2 * log_one_minus_q) / log_q;
    auto n_max = static_cast<std::int64_t>(std::floor(n)) + 1;
    return std::max<std::int64_t>(n_max, 1);
}

std::int64_t truncation_cutoff(double q_abs, bits_t precision)
{
    if (!(q_abs > 0 && q_abs < 1)) throw std::domain_error("truncation_cutoff needs 0 < q < 1");
    return truncation_cutoff_log(std::log(q_abs), precision);
}

namespace {

/* pi sqrt(-disc) / a, so that |q_tau| = exp(-m) */
BigFloat decay_rate(CmPoint const & tau, bits_t prec)
{
    BigFloat m = sqrt(BigFloat(prec, mpz_class(std::to_string(-tau.disc))));
    m *= const_pi(prec);
    m /= BigFloat(prec, static_cast<long>(tau.a));
    return m;
}

double decay_rate_double(CmPoint const & tau)
{
    return std::numbers::pi * std::sqrt(-static_cast<double>(tau.disc)) / static_cast<double>(tau.a);
}

/* z rounded to prec bits */
BigComplex rounded(BigComplex const & z, bits_t prec)
{
    if (z.precision() == prec) return z;
    return BigComplex(BigFloat(prec, z.re()), BigFloat(prec, z.im()));
}

bits_t ceil_log2(std::uint64_t x)
{
    return x <= 1 ? 0 : static_cast<bits_t>(std::bit_width(x - 1));
}

void check_point(CmPoint const & tau)
{
    if (tau.a <= 0 || tau.disc >= 0)
        throw std::invalid_argument("CM point is not in the upper half plane");
}

} // namespace

BigFloat q_tau_abs(CmPoint const & tau, bits_t prec)
{
    check_point(tau);
    return exp(-decay_rate(tau, prec));
}

namespace detail {

bits_t working_precision(SiegelIndex const & idx, CmPoint const & tau, bits_t precision)
{
    std::int64_t const n_max = truncation_cutoff_log(-decay_rate_double(tau), precision);
    // |1 - q_z| may be as small as about 2 pi / N, and each of the
    // 2 n_max + 1 factors costs a few roundings
    return precision + guard_bits + ceil_log2(static_cast<std::uint64_t>(idx.level()))
           + ceil_log2(static_cast<std::uint64_t>(8 * n_max + 16));
}

BigComplex siegel_product(SiegelIndex const & idx, CmPoint const & tau, bits_t wp,
                          std::int64_t n_terms)
{
    check_point(tau);
    mpq_class const r1 = idx.r1();
    mpq_class const r2 = idx.r2();
    mpq_class bq(mpz_class(std::to_string(tau.b)), mpz_class(std::to_string(tau.a)));
    bq.canonicalize();
    mpq_class const b2 = bernoulli2(r1);

    BigFloat const m = decay_rate(tau, wp);

    // Phases in units of pi, all exact:
    //   -1                      -> 1
    //   e^(pi i r2 (r1 - 1))    -> r2 (r1 - 1)
    //   q_tau^(B2/2) phase      -> -(b / 2a) B2(r1)
    mpq_class lead_phase = 1 + r2 * (r1 - 1) - bq * b2 / 2;
    lead_phase.canonicalize();
    BigFloat lead_mod = exp(-(m * BigFloat(wp, mpq_class(b2 / 2))));
    BigComplex value = polar_pi(lead_mod, lead_phase);

    // q_tau = e^-m e^(-i pi b/a)
    BigComplex const q_tau = polar_pi(exp(-m), mpq_class(-bq));
    // q_z = e^(-m r1) e^(2 pi i x),  x = r2 - r1 b / 2a
    mpq_class x2 = 2 * r2 - r1 * bq;
    x2.canonicalize();
    BigFloat const r1m = m * BigFloat(wp, r1);
    BigComplex const q_z = polar_pi(exp(-r1m), x2);
    BigComplex const q_z_inv = polar_pi(exp(r1m), mpq_class(-x2));

    BigComplex const one(BigFloat(wp, 1L), BigFloat(wp, 0L));
    BigComplex prod = one - q_z;
    BigComplex pw = one;
    // |q_tau^n q_z^(+-1)| <= |q_tau|^(n-1) = 2^-(beta (n-1)), so the
    // correction prod * t in prod * (1 - t) only needs wp - beta (n-1)
    // bits for an absolute error of 2^-(wp+8) |prod|
    double const beta = decay_rate_double(tau) / std::numbers::ln2;
    for (std::int64_t n = 1; n <= n_terms; ++n) {
        double const small_bits = std::floor(beta * static_cast<double>(n - 1));
        bits_t const lp = std::clamp<bits_t>(
            wp + 8 - static_cast<bits_t>(std::min(small_bits, static_cast<double>(wp))), 64, wp);
        pw = rounded(pw * rounded(q_tau, lp), lp);
        for (BigComplex const * z : {&q_z, &q_z_inv}) {
            BigComplex const t = pw * rounded(*z, lp);
            prod -= rounded(prod, lp) * t;
        }
    }
    value *= prod;
    return value;
}

} // namespace detail

BigComplex siegel_eval(SiegelIndex const & idx, CmPoint const & tau, bits_t precision,
                       bits_t max_precision)
{
    if (precision > max_precision)
        throw precision_unachievable(
            fmt::format("requested {} bits exceeds the cap of {} bits", precision, max_precision));
    if (precision < 1) throw std::invalid_argument("precision must be positive");
    check_point(tau);
    std::int64_t const n_max = truncation_cutoff_log(-decay_rate_double(tau), precision);
    return detail::siegel_product(idx, tau, detail::working_precision(idx, tau, precision), n_max);
}

BigComplex siegel_power(EvalRequest const & req)
{
    if (req.exponent == 0) throw std::invalid_argument("exponent must be positive");
    if (req.precision > req.max_precision)
        throw precision_unachievable(fmt::format("requested {} bits exceeds the cap of {} bits",
                                                 req.precision, req.max_precision));
    if (req.exponent == 1)
        return siegel_eval(req.index, req.tau, req.precision, req.max_precision);
    // relative error grows by the exponent through the power
    bits_t const extra = ceil_log2(req.exponent) + 8;
    BigComplex v = siegel_eval(req.index, req.tau, req.precision + extra,
                               std::numeric_limits<bits_t>::max());
    return pow(v, req.exponent);
}

} // namespace rayclass
