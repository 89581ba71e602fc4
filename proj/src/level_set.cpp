#include "nqp/level_set.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "nqp/errors.hpp"

namespace nqp {

LevelSet::LevelSet(std::vector<Int> values) : values_(std::move(values))
{
    auto problems = check(values_);
    if (!problems.empty()) throw InvalidInstance("level set: " + problems.front());
}

std::vector<std::string> LevelSet::check(std::span<const Int> values)
{
    std::vector<std::string> problems;
    if (values.size() < 2)
        problems.push_back("needs at least 2 levels, got " + std::to_string(values.size()));
    for (std::size_t j = 0; j + 1 < values.size(); ++j) {
        if (values[j] >= values[j + 1]) {
            problems.push_back("not strictly increasing at position " + std::to_string(j + 1) + " (" +
                               std::to_string(values[j]) + " >= " + std::to_string(values[j + 1]) + ")");
            break;
        }
    }
    return problems;
}

std::optional<std::size_t> LevelSet::index_of(Int v) const
{
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - values_.begin());
}

Int LevelSet::max_abs() const
{
    Int best = 0;
    for (Int v : values_) best = std::max(best, v < 0 ? -v : v);
    return best;
}

LevelSet parse_level_list(const std::string& text)
{
    std::vector<Int> values;
    const char* p = text.data();
    const char* end = p + text.size();
    while (p < end) {
        if (*p == ',' || *p == ' ' || *p == '\t') {
            ++p;
            continue;
        }
        Int v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc{}) throw InvalidInstance("level list: cannot parse '" + text + "'");
        values.push_back(v);
        p = next;
    }
    return LevelSet(std::move(values));
}

}  // namespace nqp
