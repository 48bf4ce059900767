#ifndef RAYCLASS_BOUNDS_HPP
#define RAYCLASS_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rayclass/bigfloat.hpp"
#include "rayclass/cmfield.hpp"

namespace rayclass {

/* Outcome of scanning one inequality over a finite grid.
 *
 * worst_margin is the smallest noise-adjusted margin seen: for a strict
 * bound it is (bound - value) - noise, for a non-strict one
 * (bound - value) + noise, where noise is 2^8 times the evaluation error
 * bound.  Bounds of the form 1 + tiny report that margin divided by
 * (bound - 1) so it stays representable as a double.  pass holds exactly
 * when worst_margin > 0.  Empty domains report +infinity.
 */
struct LemmaReport {
    std::string lemma;
    std::string range;
    double worst_margin = 0;
    double worst_value = 0;
    std::string worst_at;
    bool pass = false;
    std::size_t samples = 0;
    std::string note;
};

/* The scalar estimates used by the comparison arguments.  With
 * B = exp(-pi sqrt(-d)) and D = sqrt(-d/3):
 *
 *   i    2 sin(pi/N) / (1 - e^(-sqrt3 pi/N)) < 1.306, decreasing, N >= 21
 *   ii   |sin(pi/N) / sin(pi s/N)| <= 1,          N >= 2, s not in NZ
 *   iii  |sin(pi/N) / sin(pi s/N)| <= 1/sqrt2,    N >= 4, 2 <= s <= N/2
 *   iv   e^(-(sqrt7 pi/2)(1/N - 1/N^2)) 2 sin(pi/N) / (1 - e^(-sqrt7 pi/N)) < 0.76
 *   v    1/(1 - B^(X/D)) < 1 + B^(X/1.03D),      X >= 1/2
 *   vi   1/(1 - B^X) < 1 + B^(X/1.03),            X >= 1/2
 */
enum class ScalarBound { i, ii, iii, iv, v, vi };

std::string_view to_string(ScalarBound p);
std::optional<ScalarBound> parse_scalar_bound(std::string_view s);

struct ScalarScan {
    /* N range; n_min below a part's hypothesis is raised to it */
    std::int64_t n_min = 2;
    std::int64_t n_max = 10000;
    /* parts ii and iii visit every s, so they get their own cap */
    std::int64_t n_max_quadratic = 1000;
    /* X = k / x_den for k in [x_num_min, x_num_max] */
    std::int64_t x_num_min = 50;
    std::int64_t x_num_max = 1000;
    std::int64_t x_den = 100;
    std::vector<std::int64_t> discriminants = {-7, -40, -163};
    bits_t precision = 128;
    unsigned threads = 0;
};

LemmaReport lemma31_check(ScalarBound part, ScalarScan const & scan = {});

/* Comparisons |g_(0,1/N)(theta)| < |g_(r/N,s/N)(theta_Q)| over:
 *   nonprincipal_forms  every reduced Q with a >= 2, (r, s) != (0, 0) mod N
 *   shifted_row         Q principal, r != 0 mod N, any s
 *   zero_row            Q principal, r = 0, s != 0, +-1 mod N
 * Together with the base index these cover every conjugate candidate.
 */
enum class ComparisonLemma { nonprincipal_forms, shifted_row, zero_row };

std::string_view to_string(ComparisonLemma c);
std::optional<ComparisonLemma> parse_comparison_lemma(std::string_view s);

LemmaReport lemma_comparison_scan(Discriminant d, std::int64_t level, ComparisonLemma which,
                                  bits_t precision = 128, unsigned threads = 0);

} // namespace rayclass

#endif
