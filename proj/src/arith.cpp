#include "rayclass/arith.hpp"

#include <cmath>
#include <stdexcept>

namespace rayclass::arith {

std::int64_t mod(std::int64_t x, std::int64_t m)
{
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

std::int64_t mod(int128 x, std::int64_t m)
{
    auto r = static_cast<std::int64_t>(x % m);
    return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t x, std::int64_t y, std::int64_t m)
{
    return mod(static_cast<int128>(x) * y, m);
}

std::int64_t gcd(std::int64_t x, std::int64_t y)
{
    if (x < 0) x = -x;
    if (y < 0) y = -y;
    while (y) {
        std::int64_t t = x % y;
        x = y;
        y = t;
    }
    return x;
}

std::int64_t isqrt(std::int64_t n)
{
    if (n < 0) throw std::domain_error("isqrt of a negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<int128>(r) * r > n) --r;
    while (static_cast<int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_squarefree(std::uint64_t n)
{
    if (n == 0) return false;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

std::vector<prime_power> factor(std::int64_t n)
{
    if (n < 1) throw std::domain_error("factor expects a positive integer");
    std::vector<prime_power> out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        prime_power pp{p, 0, 1};
        while (n % p == 0) {
            n /= p;
            ++pp.e;
            pp.pe *= p;
        }
        out.push_back(pp);
    }
    if (n > 1) out.push_back({n, 1, n});
    return out;
}

namespace {

/* Inverse of x modulo m, requires gcd(x, m) = 1. */
std::int64_t invmod(std::int64_t x, std::int64_t m)
{
    int128 r0 = m, r1 = mod(x, m), s0 = 0, s1 = 1;
    while (r1) {
        int128 q = r0 / r1;
        int128 t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw std::domain_error("invmod: not invertible");
    return mod(s0, m);
}

} // namespace

std::int64_t crt(std::span<std::pair<std::int64_t, std::int64_t> const> rm)
{
    std::int64_t x = 0, modulus = 1;
    for (auto [r, m] : rm) {
        // x + modulus * k = r (mod m)
        std::int64_t k = mulmod(mod(r - x, m), invmod(modulus % m, m), m);
        x = static_cast<std::int64_t>(x + static_cast<int128>(modulus) * k);
        modulus *= m;
        x = mod(x, modulus);
    }
    return x;
}

} // namespace rayclass::arith
