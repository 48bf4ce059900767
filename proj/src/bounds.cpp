#include "rayclass/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "rayclass/parallel.hpp"
#include "rayclass/quadforms.hpp"
#include "rayclass/shimura.hpp"
#include "rayclass/siegel.hpp"

namespace rayclass {

std::string_view to_string(ScalarBound p)
{
    switch (p) {
    case ScalarBound::i: return "i";
    case ScalarBound::ii: return "ii";
    case ScalarBound::iii: return "iii";
    case ScalarBound::iv: return "iv";
    case ScalarBound::v: return "v";
    case ScalarBound::vi: return "vi";
    }
    return "?";
}

std::optional<ScalarBound> parse_scalar_bound(std::string_view s)
{
    for (auto p : {ScalarBound::i, ScalarBound::ii, ScalarBound::iii, ScalarBound::iv,
                   ScalarBound::v, ScalarBound::vi})
        if (s == to_string(p)) return p;
    return std::nullopt;
}

std::string_view to_string(ComparisonLemma c)
{
    switch (c) {
    case ComparisonLemma::nonprincipal_forms: return "nonprincipal-forms";
    case ComparisonLemma::shifted_row: return "shifted-row";
    case ComparisonLemma::zero_row: return "zero-row";
    }
    return "?";
}

std::optional<ComparisonLemma> parse_comparison_lemma(std::string_view s)
{
    for (auto c : {ComparisonLemma::nonprincipal_forms, ComparisonLemma::shifted_row,
                   ComparisonLemma::zero_row})
        if (s == to_string(c)) return c;
    return std::nullopt;
}

namespace {

struct Point {
    BigFloat margin;       // noise adjusted, scaled
    double value = 0;
    std::string at;
};

/* 2^8 times a relative error of 2^-prec on the larger side */
BigFloat noise_floor(BigFloat const & value, BigFloat const & bound, bits_t prec)
{
    return max(abs(value), abs(bound)) * exp2i(64, 8 - static_cast<long>(prec));
}

Point judge(BigFloat const & value, BigFloat const & bound, bool strict, bits_t prec,
            std::string at, BigFloat const * scale = nullptr)
{
    BigFloat const noise = noise_floor(value, bound, prec);
    BigFloat m = bound - value;
    m = strict ? m - noise : m + noise;
    if (scale) m /= *scale;
    return {std::move(m), value.to_double(), std::move(at)};
}

LemmaReport reduce(std::string lemma, std::string range, std::vector<Point> const & pts)
{
    LemmaReport rep;
    rep.lemma = std::move(lemma);
    rep.range = std::move(range);
    rep.samples = pts.size();
    if (pts.empty()) {
        rep.worst_margin = std::numeric_limits<double>::infinity();
        rep.pass = true;
        rep.note = "empty domain";
        return rep;
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].margin < pts[worst].margin) worst = i;
    rep.pass = pts[worst].margin.sign() > 0;
    rep.worst_margin = pts[worst].margin.to_double();
    rep.worst_value = pts[worst].value;
    rep.worst_at = pts[worst].at;
    return rep;
}

/* 2 sin(pi/N) / (1 - exp(-c pi / N)) with c = sqrt(k) */
BigFloat chord_ratio(std::int64_t n, long k, bits_t prec)
{
    BigFloat const pi = const_pi(prec);
    BigFloat const nn(prec, static_cast<long>(n));
    BigFloat const num = BigFloat(prec, 2L) * sin(pi / nn);
    BigFloat const den = BigFloat(prec, 1L) - exp(-(sqrt(BigFloat(prec, k)) * pi / nn));
    return num / den;
}

LemmaReport check_decreasing_bound(ScalarScan const & scan)
{
    bits_t const prec = std::max<bits_t>(scan.precision, 64);
    std::int64_t const lo = std::max<std::int64_t>(scan.n_min, 21);
    std::int64_t const hi = scan.n_max;
    std::string const range = fmt::format("N in [{}, {}]", lo, hi);
    if (hi < lo) return reduce("scalar-i", range, {});

    auto const count = static_cast<std::size_t>(hi - lo + 1);
    std::vector<BigFloat> vals(count);
    detail::parallel_for(count, [&](std::size_t k) {
        vals[k] = chord_ratio(lo + static_cast<std::int64_t>(k), 3, prec);
    }, scan.threads);

    BigFloat const bound(prec, mpq_class(1306, 1000));
    std::vector<Point> pts;
    pts.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        pts.push_back(judge(vals[k], bound, true, prec, fmt::format("N={}", lo + std::int64_t(k))));
    LemmaReport rep = reduce("scalar-i", range, pts);

    std::size_t argmax = 0;
    for (std::size_t k = 1; k < count; ++k)
        if (vals[k] > vals[argmax]) argmax = k;
    // strictly decreasing in N, beyond evaluation noise
    for (std::size_t k = 0; k + 1 < count; ++k) {
        BigFloat const gap = vals[k] - vals[k + 1];
        BigFloat const noise = noise_floor(vals[k], vals[k + 1], prec);
        if (!(gap > noise)) {
            rep.pass = false;
            rep.worst_margin = (gap - noise).to_double();
            rep.worst_at = fmt::format("N={}", lo + std::int64_t(k));
            rep.note = fmt::format("not decreasing between N={} and N={}",
                                   lo + std::int64_t(k), lo + std::int64_t(k) + 1);
            return rep;
        }
    }
    rep.note = fmt::format("decreasing; maximum {} at N={}", vals[argmax].to_string(8),
                           lo + static_cast<std::int64_t>(argmax));
    return rep;
}

LemmaReport check_sine_ratio(ScalarBound part, ScalarScan const & scan)
{
    bits_t const prec = std::max<bits_t>(scan.precision, 64);
    bool const narrow = part == ScalarBound::iii;
    std::int64_t const lo = std::max<std::int64_t>(scan.n_min, narrow ? 4 : 2);
    std::int64_t const hi = std::min(scan.n_max, scan.n_max_quadratic);
    std::string const name = narrow ? "scalar-iii" : "scalar-ii";
    std::string const range = narrow ? fmt::format("N in [{}, {}], 2 <= s <= N/2", lo, hi)
                                     : fmt::format("N in [{}, {}], 1 <= s <= N-1", lo, hi);
    if (hi < lo) return reduce(name, range, {});

    BigFloat const bound = narrow ? BigFloat(prec, 1L) / sqrt(BigFloat(prec, 2L)) : BigFloat(prec, 1L);
    auto const count = static_cast<std::size_t>(hi - lo + 1);
    std::vector<Point> per_n(count);
    detail::parallel_for(count, [&](std::size_t k) {
        std::int64_t const n = lo + static_cast<std::int64_t>(k);
        BigFloat const pi = const_pi(prec);
        BigFloat const nn(prec, static_cast<long>(n));
        BigFloat const top = sin(pi / nn);
        std::int64_t const s_lo = narrow ? 2 : 1;
        std::int64_t const s_hi = narrow ? n / 2 : n - 1;
        std::optional<Point> worst;
        for (std::int64_t s = s_lo; s <= s_hi; ++s) {
            // |sin(pi s/N)| = |sin(pi (N-s)/N)|; the folded argument keeps full relative accuracy
            std::int64_t const folded = std::min(s, n - s);
            BigFloat const v = abs(top / sin(pi * BigFloat(prec, static_cast<long>(folded)) / nn));
            Point p = judge(v, bound, false, prec, fmt::format("N={}, s={}", n, s));
            if (!worst || p.margin < worst->margin) worst = std::move(p);
        }
        per_n[k] = std::move(*worst);
    }, scan.threads);
    LemmaReport rep = reduce(name, range, per_n);
    std::size_t samples = 0;
    for (std::int64_t n = lo; n <= hi; ++n) samples += static_cast<std::size_t>(narrow ? n / 2 - 1 : n - 1);
    rep.samples = samples;
    return rep;
}

LemmaReport check_damped_ratio(ScalarScan const & scan)
{
    bits_t const prec = std::max<bits_t>(scan.precision, 64);
    std::int64_t const lo = std::max<std::int64_t>(scan.n_min, 2);
    std::int64_t const hi = scan.n_max;
    std::string const range = fmt::format("N in [{}, {}]", lo, hi);
    if (hi < lo) return reduce("scalar-iv", range, {});

    BigFloat const bound(prec, mpq_class(76, 100));
    auto const count = static_cast<std::size_t>(hi - lo + 1);
    std::vector<Point> pts(count);
    detail::parallel_for(count, [&](std::size_t k) {
        std::int64_t const n = lo + static_cast<std::int64_t>(k);
        BigFloat const pi = const_pi(prec);
        BigFloat const nn(prec, static_cast<long>(n));
        BigFloat const one(prec, 1L);
        // (1/2)(B2(0) - B2(1/N)) = (1/N - 1/N^2) / 2
        BigFloat const expo = -(sqrt(BigFloat(prec, 7L)) * pi / BigFloat(prec, 2L))
                              * (one / nn - one / (nn * nn));
        BigFloat const v = exp(expo) * chord_ratio(n, 7, prec);
        pts[k] = judge(v, bound, true, prec, fmt::format("N={}", n));
    }, scan.threads);
    LemmaReport rep = reduce("scalar-iv", range, pts);
    double sup = 0;
    for (auto const & p : pts) sup = std::max(sup, p.value);
    rep.note = fmt::format("supremum on grid {:.10f}", sup);
    return rep;
}

/* 1/(1 - B^(X/c)) < 1 + B^(X/(1.03 c)), c = D for part v and 1 for vi.
 * For part v, log(B)/D = -pi sqrt 3 whatever d is. */
LemmaReport check_geometric_tail(ScalarBound part, ScalarScan const & scan)
{
    bool const scaled = part == ScalarBound::v;
    std::string const name = scaled ? "scalar-v" : "scalar-vi";
    std::string discs;
    for (auto d : scan.discriminants) discs += (discs.empty() ? "" : ",") + std::to_string(d);
    std::string const range = fmt::format("X in [{}/{}, {}/{}] step 1/{}, d in {{{}}}",
                                          scan.x_num_min, scan.x_den, scan.x_num_max,
                                          scan.x_den, scan.x_den, discs);
    for (auto d : scan.discriminants)
        if (d > -7) throw std::invalid_argument("tail bounds need d <= -7");
    if (scan.x_num_min * 2 < scan.x_den)
        throw std::invalid_argument("tail bounds need X >= 1/2");

    struct Job {
        std::int64_t d;
        std::int64_t k;
    };
    std::vector<Job> jobs;
    for (auto d : scan.discriminants)
        for (std::int64_t k = scan.x_num_min; k <= scan.x_num_max; ++k) jobs.push_back({d, k});

    std::vector<Point> pts(jobs.size());
    detail::parallel_for(jobs.size(), [&](std::size_t j) {
        auto const [d, k] = jobs[j];
        double const ad = -static_cast<double>(d);
        double const x_val = static_cast<double>(k) / static_cast<double>(scan.x_den);
        // |log2 y|, so that 1 + y is resolved with `precision` bits to spare
        double const logb = std::numbers::pi * std::sqrt(ad) / std::numbers::ln2;
        double const c_val = scaled ? std::sqrt(ad / 3) : 1.0;
        auto const extra = static_cast<bits_t>(std::ceil(logb * x_val / (1.03 * c_val))) + 16;
        bits_t const prec = std::max<bits_t>(scan.precision, 64) + extra;

        BigFloat const one(prec, 1L);
        BigFloat const log_b = -(const_pi(prec) * sqrt(BigFloat(prec, static_cast<long>(-d))));
        BigFloat const c = scaled ? sqrt(BigFloat(prec, mpq_class(-d, 3))) : one;
        BigFloat const xx(prec, mpq_class(k, scan.x_den));
        BigFloat const x_pow = exp(log_b * xx / c);
        BigFloat const y_pow = exp(log_b * xx / (BigFloat(prec, mpq_class(103, 100)) * c));
        BigFloat const value = one / (one - x_pow);
        BigFloat const bound = one + y_pow;
        pts[j] = judge(value, bound, true, prec, fmt::format("d={}, X={}/{}", d, k, scan.x_den),
                       &y_pow);
    }, scan.threads);
    LemmaReport rep = reduce(name, range, pts);
    rep.note = "margin relative to bound - 1";
    return rep;
}

} // namespace

LemmaReport lemma31_check(ScalarBound part, ScalarScan const & scan)
{
    switch (part) {
    case ScalarBound::i: return check_decreasing_bound(scan);
    case ScalarBound::ii:
    case ScalarBound::iii: return check_sine_ratio(part, scan);
    case ScalarBound::iv: return check_damped_ratio(scan);
    case ScalarBound::v:
    case ScalarBound::vi: return check_geometric_tail(part, scan);
    }
    throw std::invalid_argument("unknown scalar bound");
}

LemmaReport lemma_comparison_scan(Discriminant d, std::int64_t level, ComparisonLemma which,
                                  bits_t precision, unsigned threads)
{
    if (level < 2) throw std::invalid_argument("level must be at least 2");
    QuadForm const principal = unit_form(d);
    struct Job {
        QuadForm q;
        std::int64_t r;
        std::int64_t s;
    };
    std::vector<Job> jobs;
    std::string range;
    std::string note;
    switch (which) {
    case ComparisonLemma::nonprincipal_forms: {
        std::size_t nforms = 0;
        for (auto const & q : reduced_forms(d)) {
            if (q.a < 2) continue;
            ++nforms;
            for (std::int64_t r = 0; r < level; ++r)
                for (std::int64_t s = 0; s < level; ++s)
                    if (r || s) jobs.push_back({q, r, s});
        }
        range = fmt::format("{} forms with a >= 2, (r, s) != (0, 0) mod {}", nforms, level);
        if (nforms == 0) note = "skipped: no reduced form with a >= 2";
        else if (level < 21) note = "N < 21: outside the general range, checked numerically";
        break;
    }
    case ComparisonLemma::shifted_row:
        for (std::int64_t r = 1; r < level; ++r)
            for (std::int64_t s = 0; s < level; ++s) jobs.push_back({principal, r, s});
        range = fmt::format("principal form, r != 0 mod {}, all s", level);
        break;
    case ComparisonLemma::zero_row:
        for (std::int64_t s = 2; s <= level - 2; ++s) jobs.push_back({principal, 0, s});
        range = fmt::format("principal form, r = 0, s != 0, +-1 mod {}", level);
        break;
    }

    std::string const name(to_string(which));
    LemmaReport rep;
    if (jobs.empty()) {
        rep = reduce(name, range, {});
        if (!note.empty()) rep.note = note;
        return rep;
    }

    CmPoint const theta = theta_point(principal, d);
    BigFloat const base = abs(siegel_eval(SiegelIndex(0, 1, level), theta, precision));
    std::vector<Point> pts(jobs.size());
    detail::parallel_for(jobs.size(), [&](std::size_t j) {
        auto const & [q, r, s] = jobs[j];
        BigFloat const other = abs(siegel_eval(SiegelIndex(r, s, level), theta_point(q, d), precision));
        BigFloat const ratio = base / other;
        // each modulus carries relative error < 2^-precision
        pts[j] = judge(ratio, BigFloat(precision, 1L), true, precision - 1,
                       fmt::format("Q=[{},{},{}], (r,s)=({},{})", q.a, q.b, q.c, r, s));
    }, threads);
    rep = reduce(name, range, pts);
    rep.note = note;
    return rep;
}

} // namespace rayclass
