#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "nqp/wide_int.hpp"

namespace nqp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& v);

/// Exact conversion of a Wide accumulator.
BigInt to_big(Wide v);

/// floor(r) for any sign of r.
BigInt floor_rational(const Rational& r);

}  // namespace nqp
