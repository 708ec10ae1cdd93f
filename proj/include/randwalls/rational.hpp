#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace randwalls {

using Rational = boost::rational<std::int64_t>;

// Accepts "p/q", "p" or a decimal such as "0.01".
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

}  // namespace randwalls
