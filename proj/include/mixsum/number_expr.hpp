#pragma once

#include <string_view>

#include "mixsum/bigint.hpp"

namespace mixsum {

/// Exact evaluation of decimal literals with ^ (right-assoc), *, +, - and parentheses.
/// Throws ParseError with the offending position.
BigInt parse_number_expr(std::string_view text);

/// parse_number_expr restricted to [0, 2^64).
std::uint64_t parse_u64_expr(std::string_view text);

}  // namespace mixsum
