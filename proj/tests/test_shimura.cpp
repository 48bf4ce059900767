#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "rayclass/errors.hpp"
#include "rayclass/shimura.hpp"

using namespace rayclass;

namespace {

std::int64_t md(std::int64_t x, std::int64_t m)
{
    return ((x % m) + m) % m;
}

/* Kronecker symbol (d / p) for a prime p */
int kronecker_prime(std::int64_t d, std::int64_t p)
{
    if (p == 2) {
        if (d % 2 == 0) return 0;
        return md(d, 8) == 1 || md(d, 8) == 7 ? 1 : -1;
    }
    std::int64_t base = md(d, p);
    if (base == 0) return 0;
    std::int64_t e = (p - 1) / 2, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return acc == 1 ? 1 : -1;
}

/* |(O_K / N O_K)^*| = N^2 prod_{p | N} (1 - 1/p)(1 - (d/p)/p) */
std::int64_t unit_group_order(std::int64_t d, std::int64_t n)
{
    std::int64_t order = n * n;
    std::int64_t m = n;
    for (std::int64_t p = 2; p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        order = order / (p * p) * (p - 1) * (p - kronecker_prime(d, p));
    }
    return order;
}

/* the case matrices for one prime p, selected by whether p divides a and c */
Mat2N local_case(QuadForm const & q, std::int64_t d, std::int64_t p, std::int64_t modulus)
{
    std::int64_t const a = q.a, b = q.b, c = q.c;
    if (md(d, 4) == 0) {
        if (a % p) return Mat2N(a, b / 2, 0, 1, modulus);
        if (c % p) return Mat2N(-b / 2, -c, 1, 0, modulus);
        return Mat2N(-a - b / 2, -c - b / 2, 1, -1, modulus);
    }
    if (a % p) return Mat2N(a, (b - 1) / 2, 0, 1, modulus);
    if (c % p) return Mat2N(-(b + 1) / 2, -c, 1, 0, modulus);
    return Mat2N(-a - (b + 1) / 2, -c + (1 - b) / 2, 1, -1, modulus);
}

/* CRT by exhaustive search over [0, N) entry by entry */
Mat2N u_oracle(QuadForm const & q, std::int64_t d, std::int64_t n)
{
    std::vector<std::pair<std::int64_t, Mat2N>> locals;
    std::int64_t m = n;
    for (std::int64_t p = 2; p <= m; ++p) {
        if (m % p) continue;
        std::int64_t pe = 1;
        while (m % p == 0) {
            m /= p;
            pe *= p;
        }
        locals.emplace_back(pe, local_case(q, d, p, pe >= 2 ? pe : 2));
    }
    std::array<std::int64_t, 4> e{};
    for (int k = 0; k < 4; ++k) {
        for (std::int64_t x = 0; x < n; ++x) {
            bool ok = true;
            for (auto const & [pe, loc] : locals)
                if (md(x, pe) != loc.entries()[k]) ok = false;
            if (ok) {
                e[k] = x;
                break;
            }
        }
    }
    return Mat2N(e[0], e[1], e[2], e[3], n);
}

/* W group from the definition with the determinant computed from entries */
std::set<Mat2N> w_oracle(std::int64_t d, std::int64_t n)
{
    std::int64_t const bt = md(d, 4) == 0 ? 0 : 1;
    std::int64_t const ct = md(d, 4) == 0 ? -d / 4 : (1 - d) / 4;
    std::set<Mat2N> out;
    for (std::int64_t s = 0; s < n; ++s)
        for (std::int64_t t = 0; t < n; ++t) {
            Mat2N const m(t - bt * s, -ct * s, s, t, n);
            std::int64_t const det = md(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0), n);
            if (std::gcd(det, n) != 1) continue;
            Mat2N const neg(-m(0, 0), -m(0, 1), -m(1, 0), -m(1, 1), n);
            out.insert(std::min(m, neg));
        }
    return out;
}

Mat2N random_invertible(std::mt19937_64 & rng, std::int64_t n)
{
    for (;;) {
        Mat2N const m(rng() % n, rng() % n, rng() % n, rng() % n, n);
        if (m.is_invertible()) return m;
    }
}

std::vector<std::int64_t> fundamentals(std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int64_t> out;
    for (std::int64_t d = hi; d >= lo; --d)
        if (d <= -7 && is_fundamental(d)) out.push_back(d);
    return out;
}

} // namespace

TEST_CASE("CM points of the worked example")
{
    Discriminant const d = validate_discriminant(-40);
    CmPoint const t1 = theta_point({1, 0, 10}, d);
    CHECK(t1.re() == 0);
    CHECK(t1.im_sq() == 10);
    CmPoint const t2 = theta_point({2, 0, 5}, d);
    CHECK(t2.re() == 0);
    CHECK(t2.im_sq() == mpq_class(5, 2));

    for (auto dv : fundamentals(-500, -7)) {
        Discriminant const dd = validate_discriminant(dv);
        auto const th = theta_params(dd);
        CmPoint const t = theta_point(unit_form(dd), dd);
        CHECK(t.re() == th.theta_re);
        CHECK(t.im_sq() == th.theta_im_sq);
    }
}

TEST_CASE("u_Q fixtures")
{
    Discriminant const d40 = validate_discriminant(-40);
    CHECK(u_matrix({2, 0, 5}, d40, 6) == Mat2N(2, 3, 3, 4, 6));
    CHECK(u_matrix({2, 0, 5}, d40, 6) == Mat2N(2, -3, 3, 4, 6));
    CHECK(u_matrix({1, 0, 10}, d40, 6) == Mat2N::identity(6));
    CHECK(u_matrix({2, 1, 3}, validate_discriminant(-23), 5) == Mat2N(2, 0, 0, 1, 5));
}

TEST_CASE("u_Q agrees with the exhaustive CRT oracle and is invertible")
{
    for (auto dv : fundamentals(-300, -7))
        for (std::int64_t n = 2; n <= 60; ++n) {
            Discriminant const d = validate_discriminant(dv);
            for (auto const & q : reduced_forms(d)) {
                Mat2N const u = u_matrix(q, d, n);
                CHECK(u == u_oracle(q, dv, n));
                CHECK(u.is_invertible());
            }
        }
}

TEST_CASE("u_Q reduces to exactly one case matrix at each prime")
{
    for (auto dv : fundamentals(-400, -7)) {
        Discriminant const d = validate_discriminant(dv);
        for (std::int64_t n : {2, 3, 4, 6, 10, 12, 15, 30, 49}) {
            for (auto const & q : reduced_forms(d)) {
                Mat2N const u = u_matrix(q, d, n);
                for (auto const & f : arith::factor(n)) {
                    auto const & e = u.entries();
                    Mat2N const red(e[0], e[1], e[2], e[3], std::max<std::int64_t>(f.pe, 2));
                    CHECK(red == local_case(q, dv, f.p, std::max<std::int64_t>(f.pe, 2)));
                }
            }
        }
    }
}

TEST_CASE("W group of the worked example")
{
    auto const w = w_group(validate_discriminant(-40), 6);
    REQUIRE(w.size() == 8);
    std::set<Mat2N> const got(w.begin(), w.end());
    // the listed matrices, compared as classes modulo +-1
    std::set<Mat2N> listed;
    for (auto const & m : {Mat2N(1, 0, 0, 1, 6), Mat2N(1, 2, 1, 1, 6), Mat2N(1, 4, 2, 1, 6),
                           Mat2N(1, 0, 3, 1, 6), Mat2N(1, 2, 4, 1, 6), Mat2N(1, 4, 5, 1, 6),
                           Mat2N(3, 2, 1, 3, 6), Mat2N(3, 4, 2, 3, 6)})
        listed.insert(m.canonical());
    CHECK(got == listed);
    CHECK(std::is_sorted(w.begin(), w.end()));
}

TEST_CASE("W group at level 2 for d = -7 is trivial")
{
    // (s, t) in {0,1}^2 with t^2 + s t + 2 s^2 odd: only (0, 1)
    auto const w = w_group(validate_discriminant(-7), 2);
    REQUIRE(w.size() == 1);
    CHECK(w[0] == Mat2N::identity(2));
}

TEST_CASE("W group against the definition and the unit-group order")
{
    for (auto dv : fundamentals(-200, -7))
        for (std::int64_t n = 2; n <= 30; ++n) {
            auto const w = w_group(validate_discriminant(dv), n);
            std::set<Mat2N> const got(w.begin(), w.end());
            CHECK(got == w_oracle(dv, n));
            CHECK(got.size() == w.size());
            std::int64_t const order = unit_group_order(dv, n);
            CHECK(static_cast<std::int64_t>(w.size()) == (n == 2 ? order : order / 2));
            CHECK(got.count(Mat2N::identity(n)) == 1);
            for (auto const & m : w) {
                CHECK(m.is_invertible());
                CHECK(m == m.canonical());
            }
        }
}

TEST_CASE("W group is closed under multiplication up to sign")
{
    std::mt19937_64 rng(21);
    for (auto dv : {-7L, -8L, -15L, -40L, -163L, -231L})
        for (std::int64_t n : {2, 5, 6, 9, 12, 21, 24}) {
            auto const w = w_group(validate_discriminant(dv), n);
            std::set<Mat2N> const set(w.begin(), w.end());
            for (int k = 0; k < 50; ++k) {
                Mat2N const & x = w[rng() % w.size()];
                Mat2N const & y = w[rng() % w.size()];
                CHECK(set.count((x * y).canonical()) == 1);
            }
        }
}

TEST_CASE("index action fixtures")
{
    SiegelIndex const base(0, 1, 6);
    CHECK(act_on_index(base, Mat2N(2, 3, 3, 4, 6)) == SiegelIndex(3, 4, 6).canonical());
    CHECK(act_on_index(base, Mat2N(1, 2, 1, 1, 6)) == SiegelIndex(1, 1, 6));
    CHECK(act_on_index(base, Mat2N::identity(6)) == base);
    CHECK_THROWS_AS(SiegelIndex(6, 12, 6), zero_index);
}

TEST_CASE("index canonicalization")
{
    SiegelIndex const x(5, 5, 6);
    CHECK(x.canonical() == SiegelIndex(1, 1, 6));
    CHECK(x.negated() == SiegelIndex(1, 1, 6));
    CHECK(SiegelIndex(3, 0, 6).canonical() == SiegelIndex(3, 0, 6));
    CHECK(SiegelIndex(-1, 2, 7).r() == 6);
    CHECK(x.r1() == mpq_class(5, 6));
    CHECK(SiegelIndex(3, 2, 6).r1() == mpq_class(1, 2));
    CHECK(SiegelIndex(3, 2, 6).r2() == mpq_class(1, 3));
}

TEST_CASE("action is compatible with matrix products (1000+ random triples)")
{
    std::mt19937_64 rng(2024);
    int triples = 0;
    for (std::int64_t n = 2; n <= 24; ++n)
        for (int k = 0; k < 60; ++k) {
            std::int64_t r = 0, s = 0;
            while (r == 0 && s == 0) {
                r = static_cast<std::int64_t>(rng() % n);
                s = static_cast<std::int64_t>(rng() % n);
            }
            SiegelIndex const idx(r, s, n);
            Mat2N const m1 = random_invertible(rng, n);
            Mat2N const m2 = random_invertible(rng, n);
            CHECK(act_on_index(act_on_index(idx, m1), m2) == act_on_index(idx, m1 * m2));
            CHECK(act_on_index(idx, Mat2N::identity(n)) == idx.canonical());
            // sign of the matrix is invisible after canonicalization
            CHECK(act_on_index(idx, m1.negated()) == act_on_index(idx, m1));
            ++triples;
        }
    CHECK(triples >= 1000);
}

TEST_CASE("conjugate set of the worked example")
{
    Discriminant const d = validate_discriminant(-40);
    auto const cs = conjugate_set(d, 6);
    REQUIRE(cs.size() == 16);
    CHECK(cs[0].index == SiegelIndex(0, 1, 6));
    CHECK(cs[0].tau == theta_point(unit_form(d), d));

    using Entry = std::tuple<std::int64_t, std::int64_t, std::int64_t>; // r, s, a
    std::multiset<Entry> got;
    for (auto const & c : cs) {
        CHECK(c.index.is_canonical());
        got.insert({c.index.r(), c.index.s(), c.tau.a});
    }
    // the sixteen factors of the printed product, (r, s) in sixths
    std::multiset<Entry> expected;
    std::int64_t const listed[16][3] = {{0, 1, 1}, {1, 1, 1}, {2, 1, 1}, {3, 1, 1}, {4, 1, 1},
                                        {5, 1, 1}, {1, 3, 1}, {2, 3, 1}, {3, 4, 2}, {5, 1, 2},
                                        {1, 4, 2}, {3, 1, 2}, {5, 4, 2}, {1, 1, 2}, {5, 3, 2},
                                        {1, 0, 2}};
    for (auto const & e : listed) {
        SiegelIndex const c = SiegelIndex(e[0], e[1], 6).canonical();
        expected.insert({c.r(), c.s(), e[2]});
    }
    CHECK(got == expected);
}

TEST_CASE("conjugate set order and size")
{
    for (auto dv : fundamentals(-120, -7))
        for (std::int64_t n : {2, 3, 4, 5, 6, 7, 8, 12}) {
            Discriminant const d = validate_discriminant(dv);
            auto const cs = conjugate_set(d, n);
            auto const forms = reduced_forms(d);
            auto const w = w_group(d, n);
            REQUIRE(cs.size() == forms.size() * w.size());
            for (std::size_t i = 0; i < cs.size(); ++i) {
                QuadForm const & q = forms[i / w.size()];
                Mat2N const & alpha = w[i % w.size()];
                CHECK(cs[i].form == q);
                CHECK(cs[i].w_elt == alpha);
                CHECK(cs[i].tau == theta_point(q, d));
                CHECK(cs[i].index == act_on_index(SiegelIndex(0, 1, n), alpha * u_matrix(q, d, n)));
            }
        }
}
