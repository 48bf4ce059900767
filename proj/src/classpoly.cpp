#include "rayclass/classpoly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "rayclass/errors.hpp"
#include "rayclass/parallel.hpp"
#include "rayclass/quadforms.hpp"
#include "rayclass/shimura.hpp"

namespace rayclass {

std::string_view to_string(ExponentMode m)
{
    return m == ExponentMode::full ? "full" : "reduced";
}

std::optional<ExponentMode> parse_exponent_mode(std::string_view s)
{
    if (s == "full") return ExponentMode::full;
    if (s == "reduced") return ExponentMode::reduced;
    return std::nullopt;
}

std::uint64_t base_exponent(ExponentMode mode, std::int64_t level)
{
    if (level < 2) throw std::invalid_argument("level must be at least 2");
    auto const e = static_cast<std::uint64_t>(12 * level);
    if (mode == ExponentMode::full) return e;
    return e / static_cast<std::uint64_t>(std::gcd<std::int64_t>(6, level));
}

std::string_view to_string(Region r)
{
    switch (r) {
    case Region::main: return "main";
    case Region::extended: return "extended";
    case Region::finite: return "finite";
    case Region::unknown: break;
    }
    return "unknown";
}

Region classify_region(Discriminant d, std::int64_t level)
{
    std::int64_t const v = d.value();
    if (level >= 21) return Region::main;
    if ((level == 2 && v <= -43) || (level == 3 && v <= -39) || (level >= 4 && v <= -31))
        return Region::extended;
    if ((level == 2 && v >= -40) || (level == 3 && v >= -35) || (level >= 4 && v >= -24))
        return Region::finite;
    return Region::unknown;
}

namespace {

bits_t ceil_log2(std::uint64_t x)
{
    return x <= 1 ? 0 : static_cast<bits_t>(std::bit_width(x - 1));
}

using Poly = std::vector<BigComplex>; // lowest degree first

Poly multiply(Poly const & f, Poly const & g)
{
    bits_t const p = f.front().precision();
    Poly h(f.size() + g.size() - 1, BigComplex(p));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) h[i + j] += f[i] * g[j];
    return h;
}

Poly product_range(std::span<BigComplex const> roots, int spawn_depth)
{
    if (roots.size() == 1) {
        bits_t const p = roots[0].precision();
        return {-roots[0], BigComplex(BigFloat(p, 1L), BigFloat(p, 0L))};
    }
    auto const mid = roots.size() / 2;
    if (spawn_depth > 0) {
        auto left = std::async(std::launch::async, product_range, roots.first(mid), spawn_depth - 1);
        Poly right = product_range(roots.subspan(mid), spawn_depth - 1);
        return multiply(left.get(), right);
    }
    return multiply(product_range(roots.first(mid), 0), product_range(roots.subspan(mid), 0));
}

/* First guess for the working precision: enough bits for the largest
 * possible coefficient, prod (1 + |root|) <= 2^deg prod max(1, |root|),
 * plus 64 bits below the unit digit. */
bits_t estimate_precision(Discriminant d, std::int64_t level, std::uint64_t exponent,
                          unsigned threads)
{
    auto const vals = conjugate_values(d, level, exponent, 64, threads);
    double bits = 0;
    for (auto const & v : vals) bits += std::max(0.0, abs(v).log2_abs());
    bits += static_cast<double>(vals.size()) + 64 + 2 * ceil_log2(vals.size() + 1);
    auto const p = static_cast<bits_t>(std::ceil(bits / 64) * 64);
    return std::max<bits_t>(256, p);
}

} // namespace

std::vector<BigComplex> conjugate_values(Discriminant d, std::int64_t level,
                                         std::uint64_t exponent, bits_t precision,
                                         unsigned threads)
{
    auto const conj = conjugate_set(d, level);
    std::vector<BigComplex> out(conj.size());
    detail::parallel_for(
        conj.size(),
        [&](std::size_t i) {
            EvalRequest req{conj[i].index, conj[i].tau, exponent, precision,
                            std::numeric_limits<bits_t>::max()};
            out[i] = siegel_power(req);
        },
        threads);
    return out;
}

std::vector<BigComplex> product_from_roots(std::span<BigComplex const> roots, unsigned threads)
{
    if (roots.empty()) return {BigComplex(BigFloat(64, 1L), BigFloat(64, 0L))};
    if (threads == 0) threads = detail::default_threads();
    int const depth = std::bit_width(threads) - 1;
    Poly p = product_range(roots, depth);
    std::reverse(p.begin(), p.end());
    return p;
}

RoundResult integrality_round(std::span<BigComplex const> coeffs, double tol)
{
    RoundResult out{{}, BigFloat(64, 0L), BigFloat(64, 0L)};
    out.integers.reserve(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        BigComplex const & c = coeffs[i];
        mpz_class z = c.re().round();
        BigFloat const res = abs(c.re() - BigFloat(c.re().precision(), z));
        BigFloat const im = abs(c.im());
        out.max_residual = max(out.max_residual, BigFloat(64, res));
        out.max_imaginary = max(out.max_imaginary, BigFloat(64, im));
        out.integers.push_back(std::move(z));
    }
    BigFloat const t(64, tol);
    if (!(out.max_residual < t) || !(out.max_imaginary < t))
        throw integrality_failure(fmt::format(
            "coefficients are not within {} of integers (rounding residual {}, imaginary {})", tol,
            out.max_residual.to_string(), out.max_imaginary.to_string()));
    return out;
}

bool is_unit(ClassPolynomial const & p)
{
    if (p.coefficients.empty()) return false;
    mpz_class const & c0 = p.coefficients.back();
    return c0 == 1 || c0 == -1;
}

ClassPolynomial class_polynomial(Discriminant d, std::int64_t level, ExponentMode mode,
                                 std::uint64_t power, ClassPolyOptions const & opts)
{
    if (level < 2) throw std::invalid_argument("level must be at least 2");
    if (power < 1) throw std::invalid_argument("power must be positive");
    std::uint64_t const e = base_exponent(mode, level);

    std::size_t const degree = class_number(d) * w_group(d, level).size();

    bits_t prec = opts.precision ? *opts.precision
                                 : estimate_precision(d, level, e * power, opts.threads);
    if (prec > opts.max_precision)
        throw precision_unachievable(
            fmt::format("starting precision {} exceeds the cap of {} bits", prec, opts.max_precision));

    std::optional<std::vector<mpz_class>> previous;
    for (;;) {
        if (prec > opts.max_precision)
            throw precision_exhausted(fmt::format(
                "no stable integer coefficients below the cap of {} bits", opts.max_precision));

        std::vector<BigComplex> roots =
            conjugate_values(d, level, e, prec + ceil_log2(power) + 8, opts.threads);
        if (power > 1)
            for (auto & r : roots) r = pow(r, power);
        if (roots.size() != degree)
            throw internal_error(fmt::format("{} conjugates, expected {}", roots.size(), degree));

        auto const coeffs = product_from_roots(roots, opts.threads);
        std::optional<RoundResult> rounded;
        try {
            rounded = integrality_round(coeffs, opts.tolerance);
        } catch (integrality_failure const &) {
            previous.reset();
            prec *= 2;
            continue;
        }
        if (previous && *previous == rounded->integers) {
            ClassPolynomial out;
            out.coefficients = std::move(rounded->integers);
            out.meta.discriminant = d.value();
            out.meta.level = level;
            out.meta.mode = mode;
            out.meta.exponent = e * power;
            out.meta.power = power;
            out.meta.precision_bits = prec;
            out.meta.max_rounding_residual = rounded->max_residual;
            out.meta.max_imaginary_residual = rounded->max_imaginary;
            out.meta.region = classify_region(d, level);
            if (out.coefficients.front() != 1) throw internal_error("class polynomial is not monic");
            return out;
        }
        previous = std::move(rounded->integers);
        prec *= 2;
    }
}

GeneratorReport verify_generator(Discriminant d, std::int64_t level, bits_t precision,
                                 unsigned threads)
{
    GeneratorReport rep;
    rep.discriminant = d.value();
    rep.level = level;
    rep.exponent = base_exponent(ExponentMode::reduced, level);
    rep.precision = precision;
    rep.region = classify_region(d, level);
    rep.threshold = exp2i(64, -static_cast<long>(precision / 2));

    auto const vals = conjugate_values(d, level, rep.exponent, precision, threads);
    rep.conjugates = vals.size();
    BigFloat gap(precision);
    mpfr_set_inf(gap.get(), 1);
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j) gap = min(gap, abs(vals[i] - vals[j]));
    rep.min_gap = gap;
    if (!(rep.min_gap > rep.threshold))
        throw separation_failure(fmt::format(
            "two of the {} conjugates for d = {}, N = {} are within {} (threshold {})",
            rep.conjugates, rep.discriminant, level, rep.min_gap.to_string(),
            rep.threshold.to_string()));
    return rep;
}

BigFloat root_membership_residual(ClassPolynomial const & p, Discriminant d, bits_t precision)
{
    std::int64_t const level = p.meta.level;
    EvalRequest req{SiegelIndex(0, 1, level), theta_point(unit_form(d), d), p.meta.exponent,
                    precision, std::numeric_limits<bits_t>::max()};
    BigComplex const x = siegel_power(req);
    bits_t const wp = x.precision();
    BigComplex acc(wp);
    BigFloat biggest(wp, 0L);
    for (auto const & c : p.coefficients) {
        acc *= x;
        acc.re() += BigFloat(wp, c);
        biggest = max(biggest, abs(BigFloat(wp, c)));
    }
    return abs(acc) / biggest;
}

} // namespace rayclass
