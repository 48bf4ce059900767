#ifndef RAYCLASS_ARITH_HPP
#define RAYCLASS_ARITH_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rayclass {

__extension__ typedef __int128 int128;

} // namespace rayclass

namespace rayclass::arith {

/* Small exact integer helpers.  All inputs are 64-bit; intermediate
 * products are carried in 128 bits so nothing here overflows for
 * moduli below 2^63.
 */

/* Least non-negative residue of x modulo m (m > 0). */
std::int64_t mod(std::int64_t x, std::int64_t m);
std::int64_t mod(int128 x, std::int64_t m);

std::int64_t mulmod(std::int64_t x, std::int64_t y, std::int64_t m);

std::int64_t gcd(std::int64_t x, std::int64_t y);

bool is_squarefree(std::uint64_t n);

struct prime_power {
    std::int64_t p;
    int e;
    std::int64_t pe; // p^e
};

/* Trial-division factorization of n >= 1, primes in increasing order. */
std::vector<prime_power> factor(std::int64_t n);

/* The unique x in [0, prod m_i) with x = r_i (mod m_i), for pairwise
 * coprime moduli.
 */
std::int64_t crt(std::span<std::pair<std::int64_t, std::int64_t> const> residues_and_moduli);

/* Floor of the square root of n >= 0. */
std::int64_t isqrt(std::int64_t n);

} // namespace rayclass::arith

#endif
