#ifndef RAYCLASS_SHIMURA_HPP
#define RAYCLASS_SHIMURA_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "rayclass/cmfield.hpp"
#include "rayclass/quadforms.hpp"

namespace rayclass {

/* 2x2 matrix over Z/NZ, entries stored row-major in [0, N).
 * Matrices act on row vectors from the right: v -> v * M.
 */
class Mat2N
{
    std::array<std::int64_t, 4> m_;
    std::int64_t level_;

  public:
    Mat2N(std::int64_t m00, std::int64_t m01, std::int64_t m10, std::int64_t m11,
          std::int64_t level);

    static Mat2N identity(std::int64_t level);

    std::int64_t operator()(int i, int j) const { return m_[2 * i + j]; }
    std::array<std::int64_t, 4> const & entries() const { return m_; }
    std::int64_t level() const { return level_; }

    std::int64_t det() const;
    bool is_invertible() const;

    Mat2N negated() const;
    /* lexicographically smaller entry tuple of {M, -M} */
    Mat2N canonical() const;

    friend Mat2N operator*(Mat2N const & x, Mat2N const & y);

    bool operator==(Mat2N const &) const = default;
    auto operator<=>(Mat2N const & o) const { return m_ <=> o.m_; }
};

std::ostream & operator<<(std::ostream & os, Mat2N const & m);

/* Siegel index (r/N, s/N) with (r, s) != (0, 0) mod N, components in
 * [0, N).  The canonical form picks the lexicographically smaller of
 * (r, s) and (-r, -s); 12N-th powers of Siegel functions do not see the
 * difference.
 */
class SiegelIndex
{
    std::int64_t r_;
    std::int64_t s_;
    std::int64_t level_;
    bool canonical_ = false;

  public:
    /* Reduces (r, s) mod level; throws zero_index for (0, 0). */
    SiegelIndex(std::int64_t r, std::int64_t s, std::int64_t level);

    std::int64_t r() const { return r_; }
    std::int64_t s() const { return s_; }
    std::int64_t level() const { return level_; }
    bool is_canonical() const { return canonical_; }

    SiegelIndex canonical() const;
    SiegelIndex negated() const;

    mpq_class r1() const;
    mpq_class r2() const;

    /* equality and ordering on (r, s, level); the flag is derived */
    bool operator==(SiegelIndex const & o) const
    {
        return r_ == o.r_ && s_ == o.s_ && level_ == o.level_;
    }
    auto operator<=>(SiegelIndex const & o) const
    {
        return std::tie(level_, r_, s_) <=> std::tie(o.level_, o.r_, o.s_);
    }
};

std::ostream & operator<<(std::ostream & os, SiegelIndex const & x);

/* Exact CM point tau = (-b + sqrt(disc)) / (2a) in the upper half plane. */
struct CmPoint {
    std::int64_t a;
    std::int64_t b;
    std::int64_t disc;

    mpq_class re() const;
    /* Im(tau)^2 = -disc / (4 a^2) */
    mpq_class im_sq() const;

    bool operator==(CmPoint const &) const = default;
};

std::ostream & operator<<(std::ostream & os, CmPoint const & t);

/* theta_Q = (-b + sqrt(d)) / 2a */
CmPoint theta_point(QuadForm const & q, Discriminant d);

/* The matrix u_Q mod N: for each prime p | N the local matrix is chosen
 * by whether p divides a and c, then the pieces are glued by CRT.
 * Throws non_invertible if the result is singular mod N (a bug).
 */
Mat2N u_matrix(QuadForm const & q, Discriminant d, std::int64_t level);

/* W_{N,theta} / {+-1}: the matrices (t - B s, -C s; s, t) with unit
 * determinant t^2 + B s t + C s^2, one canonical representative per
 * {M, -M}, sorted by entries.
 */
std::vector<Mat2N> w_group(Discriminant d, std::int64_t level);

/* canonical representative of the row vector (r, s) * M */
SiegelIndex act_on_index(SiegelIndex const & idx, Mat2N const & m);

struct ConjugateDescriptor {
    SiegelIndex index;
    CmPoint tau;
    QuadForm form;
    Mat2N w_elt;
};

/* One descriptor per (alpha, Q) in W/{+-1} x C(d): index is
 * (0, 1/N) * alpha * u_Q and tau is theta_Q.  Outer loop over forms,
 * inner over W representatives; the first entry is the identity pair.
 */
std::vector<ConjugateDescriptor> conjugate_set(Discriminant d, std::int64_t level);

} // namespace rayclass

#endif
