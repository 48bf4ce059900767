#include "rayclass/quadforms.hpp"

#include <ostream>

#include "rayclass/arith.hpp"

namespace rayclass {

std::ostream & operator<<(std::ostream & os, QuadForm const & q)
{
    return os << '[' << q.a << ", " << q.b << ", " << q.c << ']';
}

bool is_primitive(QuadForm const & q)
{
    return arith::gcd(arith::gcd(q.a, q.b), q.c) == 1;
}

bool is_reduced(QuadForm const & q)
{
    if (q.a <= 0) return false;
    if (-q.a < q.b && q.b <= q.a && q.a < q.c) return true;
    return 0 <= q.b && q.b <= q.a && q.a == q.c;
}

std::vector<QuadForm> reduced_forms(Discriminant d)
{
    std::int64_t const v = d.value();
    std::int64_t const amax = arith::isqrt(-v / 3);
    std::vector<QuadForm> out;
    for (std::int64_t a = 1; a <= amax; ++a) {
        // b = d (mod 2)
        std::int64_t b0 = -a + 1;
        if (arith::mod(b0 - v, 2) != 0) ++b0;
        for (std::int64_t b = b0; b <= a; b += 2) {
            int128 num = static_cast<int128>(b) * b - v;
            int128 den = static_cast<int128>(4) * a;
            if (num % den) continue;
            QuadForm q{a, b, static_cast<std::int64_t>(num / den)};
            if (is_reduced(q) && is_primitive(q)) out.push_back(q);
        }
    }
    // the scan already produces (a, b) ascending, hence sorted output
    return out;
}

QuadForm unit_form(Discriminant d)
{
    std::int64_t const v = d.value();
    if (d.residue() == 0) return {1, 0, -v / 4};
    return {1, 1, (1 - v) / 4};
}

std::size_t class_number(Discriminant d)
{
    return reduced_forms(d).size();
}

} // namespace rayclass
