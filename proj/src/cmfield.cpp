#include "rayclass/cmfield.hpp"

#include <string>

#include "rayclass/arith.hpp"
#include "rayclass/errors.hpp"

namespace rayclass {

bool is_fundamental(std::int64_t d)
{
    if (d == 0 || d == 1) return false;
    auto absval = [](std::int64_t x) {
        return static_cast<std::uint64_t>(x < 0 ? -static_cast<int128>(x) : x);
    };
    std::int64_t r = arith::mod(d, 4);
    if (r == 1) return arith::is_squarefree(absval(d));
    if (r != 0) return false;
    std::int64_t m = d / 4;
    std::int64_t rm = arith::mod(m, 4);
    return (rm == 2 || rm == 3) && arith::is_squarefree(absval(m));
}

Discriminant validate_discriminant(std::int64_t d)
{
    if (d >= 0)
        throw not_imaginary("discriminant " + std::to_string(d) + " is not negative");
    if (d == -3 || d == -4)
        throw excluded_field("discriminant " + std::to_string(d)
                             + " belongs to Q(sqrt(-1)) or Q(sqrt(-3)), which are excluded");
    if (!is_fundamental(d))
        throw not_fundamental("discriminant " + std::to_string(d) + " is not fundamental");
    return Discriminant(d);
}

ThetaParams theta_params(Discriminant d)
{
    std::int64_t const v = d.value();
    ThetaParams t;
    if (d.residue() == 0) {
        t.b_theta = 0;
        t.c_theta = -v / 4;
        t.theta_re = 0;
    } else {
        t.b_theta = 1;
        t.c_theta = (1 - v) / 4;
        t.theta_re = mpq_class(-1, 2);
    }
    // Im(theta) = sqrt(-d)/2 in both cases
    t.theta_im_sq = mpq_class(-mpz_class(std::to_string(v)), 4);
    t.theta_im_sq.canonicalize();
    return t;
}

} // namespace rayclass
