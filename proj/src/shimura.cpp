#include "rayclass/shimura.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "rayclass/arith.hpp"
#include "rayclass/errors.hpp"

namespace rayclass {

namespace {

void check_level(std::int64_t level)
{
    if (level < 2)
        throw std::invalid_argument("level must be at least 2, got " + std::to_string(level));
}

} // namespace

Mat2N::Mat2N(std::int64_t m00, std::int64_t m01, std::int64_t m10, std::int64_t m11,
             std::int64_t level)
    : m_{arith::mod(m00, level), arith::mod(m01, level), arith::mod(m10, level),
         arith::mod(m11, level)}
    , level_(level)
{
    check_level(level);
}

Mat2N Mat2N::identity(std::int64_t level)
{
    return Mat2N(1, 0, 0, 1, level);
}

std::int64_t Mat2N::det() const
{
    int128 d = static_cast<int128>(m_[0]) * m_[3] - static_cast<int128>(m_[1]) * m_[2];
    return arith::mod(d, level_);
}

bool Mat2N::is_invertible() const
{
    return arith::gcd(det(), level_) == 1;
}

Mat2N Mat2N::negated() const
{
    return Mat2N(-m_[0], -m_[1], -m_[2], -m_[3], level_);
}

Mat2N Mat2N::canonical() const
{
    return std::min(*this, negated());
}

Mat2N operator*(Mat2N const & x, Mat2N const & y)
{
    if (x.level_ != y.level_) throw std::invalid_argument("matrix levels differ");
    std::int64_t const n = x.level_;
    auto dot = [&](int i, int j) {
        int128 s = static_cast<int128>(x(i, 0)) * y(0, j)
                     + static_cast<int128>(x(i, 1)) * y(1, j);
        return arith::mod(s, n);
    };
    return Mat2N(dot(0, 0), dot(0, 1), dot(1, 0), dot(1, 1), n);
}

std::ostream & operator<<(std::ostream & os, Mat2N const & m)
{
    return os << fmt::format("[[{}, {}], [{}, {}]] mod {}", m(0, 0), m(0, 1), m(1, 0),
                             m(1, 1), m.level());
}

SiegelIndex::SiegelIndex(std::int64_t r, std::int64_t s, std::int64_t level)
    : r_(0), s_(0), level_(level)
{
    check_level(level);
    r_ = arith::mod(r, level);
    s_ = arith::mod(s, level);
    if (r_ == 0 && s_ == 0)
        throw zero_index(fmt::format("Siegel index ({}, {}) is zero mod {}", r, s, level));
    canonical_ = std::pair(r_, s_) <= std::pair(arith::mod(-r_, level_), arith::mod(-s_, level_));
}

SiegelIndex SiegelIndex::negated() const
{
    return SiegelIndex(-r_, -s_, level_);
}

SiegelIndex SiegelIndex::canonical() const
{
    return canonical_ ? *this : negated();
}

std::ostream & operator<<(std::ostream & os, SiegelIndex const & x)
{
    return os << '(' << x.r() << '/' << x.level() << ", " << x.s() << '/' << x.level() << ')';
}

namespace {

mpq_class rational(std::int64_t num, std::int64_t den)
{
    mpq_class q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
    q.canonicalize();
    return q;
}

} // namespace

mpq_class SiegelIndex::r1() const
{
    return rational(r_, level_);
}

mpq_class SiegelIndex::r2() const
{
    return rational(s_, level_);
}

mpq_class CmPoint::re() const
{
    return rational(-b, 2 * a);
}

mpq_class CmPoint::im_sq() const
{
    mpq_class v(-mpz_class(std::to_string(disc)), 4 * mpz_class(std::to_string(a)) * a);
    v.canonicalize();
    return v;
}

std::ostream & operator<<(std::ostream & os, CmPoint const & t)
{
    return os << fmt::format("({} + sqrt({}))/{}", -t.b, t.disc, 2 * t.a);
}

CmPoint theta_point(QuadForm const & q, Discriminant d)
{
    return CmPoint{q.a, q.b, d.value()};
}

namespace {

/* Local component u_p of u_Q, entries as plain integers. */
std::array<std::int64_t, 4> u_local(QuadForm const & q, Discriminant d, std::int64_t p)
{
    auto const [a, b, c] = q;
    bool const pa = a % p == 0;
    bool const pc = c % p == 0;
    if (d.residue() == 0) {
        if (b % 2 != 0)
            throw internal_error(fmt::format("odd b in form [{}, {}, {}] for d = 0 mod 4", a, b, c));
        std::int64_t const h = b / 2;
        if (!pa) return {a, h, 0, 1};
        if (!pc) return {-h, -c, 1, 0};
        return {-a - h, -c - h, 1, -1};
    }
    // b is odd here
    if (!pa) return {a, (b - 1) / 2, 0, 1};
    if (!pc) return {-(b + 1) / 2, -c, 1, 0};
    return {-a - (b + 1) / 2, -c + (1 - b) / 2, 1, -1};
}

} // namespace

Mat2N u_matrix(QuadForm const & q, Discriminant d, std::int64_t level)
{
    check_level(level);
    auto const primes = arith::factor(level);
    std::array<std::int64_t, 4> out{};
    for (int k = 0; k < 4; ++k) {
        std::vector<std::pair<std::int64_t, std::int64_t>> rm;
        for (auto const & pp : primes) {
            auto const loc = u_local(q, d, pp.p);
            rm.emplace_back(arith::mod(loc[k], pp.pe), pp.pe);
        }
        out[k] = arith::crt(rm);
    }
    Mat2N m(out[0], out[1], out[2], out[3], level);
    if (!m.is_invertible())
        throw non_invertible(fmt::format("u_Q for [{}, {}, {}] is singular mod {}", q.a, q.b,
                                         q.c, level));
    return m;
}

std::vector<Mat2N> w_group(Discriminant d, std::int64_t level)
{
    check_level(level);
    auto const th = theta_params(d);
    std::int64_t const bt = th.b_theta;
    std::int64_t const ct = arith::mod(th.c_theta, level);
    std::vector<Mat2N> out;
    for (std::int64_t s = 0; s < level; ++s) {
        for (std::int64_t t = 0; t < level; ++t) {
            Mat2N m(t - bt * s, -arith::mulmod(ct, s, level), s, t, level);
            if (!m.is_invertible()) continue;
            if (m.canonical() == m) out.push_back(m);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SiegelIndex act_on_index(SiegelIndex const & idx, Mat2N const & m)
{
    std::int64_t const n = m.level();
    if (idx.level() != n) throw std::invalid_argument("index and matrix levels differ");
    int128 r = static_cast<int128>(idx.r()) * m(0, 0) + static_cast<int128>(idx.s()) * m(1, 0);
    int128 s = static_cast<int128>(idx.r()) * m(0, 1) + static_cast<int128>(idx.s()) * m(1, 1);
    return SiegelIndex(arith::mod(r, n), arith::mod(s, n), n).canonical();
}

std::vector<ConjugateDescriptor> conjugate_set(Discriminant d, std::int64_t level)
{
    auto const forms = reduced_forms(d);
    auto const w = w_group(d, level);
    SiegelIndex const base(0, 1, level);
    std::vector<ConjugateDescriptor> out;
    out.reserve(forms.size() * w.size());
    for (auto const & q : forms) {
        Mat2N const u = u_matrix(q, d, level);
        CmPoint const tau = theta_point(q, d);
        for (auto const & alpha : w)
            out.push_back({act_on_index(base, alpha * u), tau, q, alpha});
    }
    return out;
}

} // namespace rayclass
