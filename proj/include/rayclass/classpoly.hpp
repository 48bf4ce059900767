#ifndef RAYCLASS_CLASSPOLY_HPP
#define RAYCLASS_CLASSPOLY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "rayclass/bigfloat.hpp"
#include "rayclass/cmfield.hpp"
#include "rayclass/siegel.hpp"

namespace rayclass {

/* full: 12 N n, reduced: 12 N n / gcd(6, N) */
enum class ExponentMode { full, reduced };

std::string_view to_string(ExponentMode m);
std::optional<ExponentMode> parse_exponent_mode(std::string_view s);

/* 12 N or 12 N / gcd(6, N) */
std::uint64_t base_exponent(ExponentMode mode, std::int64_t level);

/* Parameter ranges where the generator property is known:
 *   main      N >= 21
 *   extended  (N = 2, d <= -43), (N = 3, d <= -39), (N >= 4, d <= -31)
 *   finite    (N = 2, d >= -40), (N = 3, d >= -35), (4 <= N <= 20, d >= -24)
 *   unknown   anything else (computation still runs)
 */
enum class Region { main, extended, finite, unknown };

std::string_view to_string(Region r);
Region classify_region(Discriminant d, std::int64_t level);

struct ClassPolyMeta {
    std::int64_t discriminant = 0;
    std::int64_t level = 0;
    ExponentMode mode = ExponentMode::reduced;
    std::uint64_t exponent = 0; // total exponent, power included
    std::uint64_t power = 1;
    bits_t precision_bits = 0;
    BigFloat max_rounding_residual;
    BigFloat max_imaginary_residual;
    Region region = Region::unknown;
};

/* Monic polynomial with exact integer coefficients, leading first. */
struct ClassPolynomial {
    std::vector<mpz_class> coefficients;
    ClassPolyMeta meta;

    std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

struct ClassPolyOptions {
    /* starting precision; adaptive estimate when empty */
    std::optional<bits_t> precision;
    double tolerance = 1e-10;
    bits_t max_precision = default_precision_cap();
    unsigned threads = 0;
};

/* Product over all Galois conjugates of g_(0,1/N)^e(theta), rounded to
 * integers.  Precision doubles until the rounding residuals are below
 * tolerance and two consecutive precisions give the same integers.
 * Throws precision_exhausted when the cap is hit first.
 */
ClassPolynomial class_polynomial(Discriminant d, std::int64_t level, ExponentMode mode,
                                 std::uint64_t power, ClassPolyOptions const & opts = {});

struct RoundResult {
    std::vector<mpz_class> integers;
    BigFloat max_residual;
    BigFloat max_imaginary;
};

/* Rounds real parts to the nearest integer.  Throws integrality_failure
 * if any distance to the nearest integer or any |imaginary part| is
 * >= tol. */
RoundResult integrality_round(std::span<BigComplex const> coeffs, double tol);

/* constant term is +1 or -1 */
bool is_unit(ClassPolynomial const & p);

/* Conjugate values g^exponent in conjugate_set order, with relative
 * error below 2^-precision. */
std::vector<BigComplex> conjugate_values(Discriminant d, std::int64_t level,
                                         std::uint64_t exponent, bits_t precision,
                                         unsigned threads = 0);

/* prod (X - root), leading coefficient first, by a balanced product tree */
std::vector<BigComplex> product_from_roots(std::span<BigComplex const> roots,
                                           unsigned threads = 0);

struct GeneratorReport {
    std::int64_t discriminant = 0;
    std::int64_t level = 0;
    std::uint64_t exponent = 0;
    std::size_t conjugates = 0;
    bits_t precision = 0;
    /* +infinity when there is a single conjugate */
    BigFloat min_gap;
    BigFloat threshold;
    Region region = Region::unknown;
};

/* Evaluates every conjugate at the reduced exponent and requires all
 * pairwise distances to exceed 2^-(precision/2).  Throws
 * separation_failure otherwise. */
GeneratorReport verify_generator(Discriminant d, std::int64_t level, bits_t precision,
                                 unsigned threads = 0);

/* |P(x0)| / max |coefficient| where x0 = g_(0,1/N)^e(theta) at the given
 * precision. */
BigFloat root_membership_residual(ClassPolynomial const & p, Discriminant d,
                                  bits_t precision);

} // namespace rayclass

#endif
