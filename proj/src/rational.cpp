#include "nqp/rational.hpp"

namespace nqp {

std::string to_string(const BigInt& v)
{
    return v.str();
}

std::string to_string(const Rational& r)
{
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

BigInt to_big(Wide v)
{
    const bool negative = v < 0;
    const auto mag = negative ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(v)
                              : static_cast<unsigned __int128>(v);
    BigInt r = BigInt(static_cast<std::uint64_t>(mag >> 64)) << 64;
    r += static_cast<std::uint64_t>(mag);
    return negative ? BigInt(-r) : r;
}

BigInt floor_rational(const Rational& r)
{
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);  // always positive
    BigInt q = num / den;               // truncates toward zero
    if (num < 0 && q * den != num) q -= 1;
    return q;
}

}  // namespace nqp
