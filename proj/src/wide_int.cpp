#include "nqp/wide_int.hpp"

#include <algorithm>

namespace nqp {

std::string to_string(Wide value)
{
    if (value == 0) return "0";
    const bool negative = value < 0;
    // Work on the negative side so that the minimum value does not overflow.
    Wide v = negative ? value : -value;
    std::string digits;
    while (v != 0) {
        digits.push_back(static_cast<char>('0' - static_cast<int>(v % 10)));
        v /= 10;
    }
    if (negative) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

}  // namespace nqp
