#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nqp {

using Int = std::int64_t;

/// Ordered finite set of admissible integer weight values, s_1 < ... < s_n, n >= 2.
class LevelSet {
public:
    /// Throws InvalidInstance unless `values` is strictly increasing with at least two entries.
    explicit LevelSet(std::vector<Int> values);

    /// Returns a description of every ordering/size violation in `values`, empty if valid.
    static std::vector<std::string> check(std::span<const Int> values);

    std::size_t size() const noexcept { return values_.size(); }
    Int operator[](std::size_t j) const { return values_[j]; }
    Int front() const { return values_.front(); }
    Int back() const { return values_.back(); }
    std::span<const Int> values() const noexcept { return values_; }

    /// Position of `v` in the set, or nullopt if `v` is not a level.
    std::optional<std::size_t> index_of(Int v) const;
    bool contains(Int v) const { return index_of(v).has_value(); }

    /// Largest |s| over the set.
    Int max_abs() const;

    friend bool operator==(const LevelSet&, const LevelSet&) = default;

private:
    std::vector<Int> values_;
};

/// Parses "s1,s2,...,sn" (commas and/or whitespace) into a level set.
LevelSet parse_level_list(const std::string& text);

}  // namespace nqp
