#ifndef RAYCLASS_QUADFORMS_HPP
#define RAYCLASS_QUADFORMS_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rayclass/arith.hpp"
#include "rayclass/cmfield.hpp"

namespace rayclass {

/* Binary quadratic form a X^2 + b XY + c Y^2.  Ordering is
 * lexicographic on (a, b, c).
 */
struct QuadForm {
    std::int64_t a;
    std::int64_t b;
    std::int64_t c;

    int128 discriminant() const
    {
        return static_cast<int128>(b) * b - static_cast<int128>(4) * a * c;
    }

    auto operator<=>(QuadForm const &) const = default;
};

std::ostream & operator<<(std::ostream & os, QuadForm const & q);

bool is_primitive(QuadForm const & q);

/* -a < b <= a < c, or 0 <= b <= a = c (positive definite, a > 0). */
bool is_reduced(QuadForm const & q);

/* Every reduced primitive form of discriminant d, exactly once, sorted
 * by (a, b, c).  One form per class of C(d); the size is h(d).
 * Work is O(|d|): a scan over a <= sqrt(-d/3), -a < b <= a.
 */
std::vector<QuadForm> reduced_forms(Discriminant d);

/* [1, 0, -d/4] or [1, 1, (1-d)/4], the principal form. */
QuadForm unit_form(Discriminant d);

std::size_t class_number(Discriminant d);

} // namespace rayclass

#endif
