#ifndef RAYCLASS_SIEGEL_HPP
#define RAYCLASS_SIEGEL_HPP

#include <cstdint>

#include <gmpxx.h>

#include "rayclass/bigfloat.hpp"
#include "rayclass/shimura.hpp"

namespace rayclass {

/* Siegel functions
 *
 *   g_(r1,r2)(tau) = -q_tau^(B2(r1)/2) e^(pi i r2 (r1 - 1)) (1 - q_z)
 *                    * prod_{n >= 1} (1 - q_tau^n q_z)(1 - q_tau^n / q_z)
 *
 * with q_tau = e^(2 pi i tau), z = r1 tau + r2, q_z = e^(2 pi i z), evaluated
 * at exact CM points for indices (r/N, s/N) with 0 <= r, s < N.
 */

/* Fixed guard bits added to every evaluation. */
inline constexpr bits_t guard_bits = 32;

/* Default hard cap on requested precision.  RAYCLASS_PRECISION_CAP (in
 * bits) overrides the built-in 1048576. */
inline constexpr bits_t builtin_precision_cap = bits_t(1) << 20;
bits_t default_precision_cap();

struct EvalRequest {
    SiegelIndex index;
    CmPoint tau;
    std::uint64_t exponent = 1;
    bits_t precision = 128;
    bits_t max_precision = default_precision_cap();
};

/* B2(x) = x^2 - x + 1/6 */
mpq_class bernoulli2(mpq_class const & x);

/* Smallest n_max >= 1 with sum_{n > n_max} 2 q^(n-1) / (1 - q)
 * = 2 q^n_max / (1 - q)^2 < 2^-(precision + guard_bits), 0 < q < 1. */
std::int64_t truncation_cutoff(double q_abs, bits_t precision);
/* same, taking log(q) < 0 so that tiny q do not underflow */
std::int64_t truncation_cutoff_log(double log_q, bits_t precision);

/* |q_tau| = exp(-pi sqrt(-disc) / a) */
BigFloat q_tau_abs(CmPoint const & tau, bits_t prec);

/* g_idx(tau) with relative error below 2^-precision.  Throws
 * precision_unachievable above max_precision. */
BigComplex siegel_eval(SiegelIndex const & idx, CmPoint const & tau, bits_t precision,
                       bits_t max_precision = default_precision_cap());

/* g_idx(tau)^exponent with relative error below 2^-precision */
BigComplex siegel_power(EvalRequest const & req);

namespace detail {

/* The product truncated after n_terms factors, at working precision wp
 * and with no guard bits of its own. */
BigComplex siegel_product(SiegelIndex const & idx, CmPoint const & tau, bits_t wp,
                          std::int64_t n_terms);

/* working precision used by siegel_eval */
bits_t working_precision(SiegelIndex const & idx, CmPoint const & tau, bits_t precision);

} // namespace detail

} // namespace rayclass

#endif
