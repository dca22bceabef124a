#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mlfc {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

// Whole-string parse; throws ParseError naming `what` on failure.
double parse_double(std::string_view s, std::string_view what = "number");
long parse_long(std::string_view s, std::string_view what = "integer");

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

}  // namespace mlfc
