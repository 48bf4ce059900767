#ifndef RAYCLASS_CLI_HPP
#define RAYCLASS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rayclass/classpoly.hpp"

namespace rayclass::cli {

/* exit statuses */
inline constexpr int exit_ok = 0;
inline constexpr int exit_math_failure = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_internal = 3;

/* args excludes the program name */
int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err);

/* The machine-readable form of a class polynomial.  Keys appear in a fixed
 * order and big integers are decimal strings, so identical inputs give
 * byte-identical documents. */
nlohmann::ordered_json to_json(ClassPolynomial const & p);

} // namespace rayclass::cli

#endif
