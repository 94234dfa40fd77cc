#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace metabbo {

// Shortest decimal text that round-trips the exact double (printf %.17g then
// trimmed); used for machine-readable CSVs and checkpoints so that
// parse(render(x)) == x bit-for-bit.
std::string fmt_g17(double x);

// Scientific notation with three decimals and an unpadded exponent,
// e.g. 7.689E-9, 2.010E+4. Used for human-facing report tables.
std::string fmt_sci3(double x);

// Fixed-point with the given number of decimals, e.g. fmt_fixed(2.2219, 3)
// == "2.222".
std::string fmt_fixed(double x, int decimals);

// Parse helpers: throw DataError naming the offending field on failure.
double parse_double(std::string_view text, std::string_view field);
long long parse_int(std::string_view text, std::string_view field);

std::vector<std::string> split(std::string_view line, char sep);
std::string join(const std::vector<std::string>& parts, char sep);
std::string trim(std::string_view s);

} // namespace metabbo
