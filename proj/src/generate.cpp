#include "nqp/generate.hpp"

#include <algorithm>
#include <random>

#include "nqp/errors.hpp"

namespace nqp {

IntInstance generate_random_instance(std::size_t n, const LevelSet& levels, std::uint64_t seed,
                                     Int entry_bound)
{
    if (n == 0) throw InvalidInstance("generate_random_instance: N must be positive");
    if (entry_bound < 1) throw InvalidInstance("generate_random_instance: entry_bound must be >= 1");
    if (entry_bound > (Int(1) << 20) || n > (std::size_t(1) << 20))
        throw OverflowError("generate_random_instance: entry_bound or N too large for 64-bit Q");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Int> entry(-entry_bound, entry_bound);
    std::vector<Int> a(n * n);
    for (auto& v : a) v = entry(rng);

    std::vector<Int> q(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Int s = 0;
            for (std::size_t k = 0; k < n; ++k) s += a[k * n + i] * a[k * n + j];
            q[i * n + j] = s;
            q[j * n + i] = s;
        }
    }

    const Int c_bound = 2 * entry_bound * entry_bound;
    std::uniform_int_distribution<Int> lin(-c_bound, c_bound);
    std::vector<Int> c(n);
    for (auto& v : c) v = lin(rng);

    return make_instance(n, std::move(q), std::move(c), levels, true);
}

LevelSet generate_random_level_set(std::size_t count, Int lo, Int hi, std::uint64_t seed)
{
    if (count < 2 || hi < lo || static_cast<std::uint64_t>(hi - lo) + 1 < count)
        throw InvalidInstance("generate_random_level_set: range too small");
    std::vector<Int> pool;
    for (Int v = lo; v <= hi; ++v) pool.push_back(v);
    std::mt19937_64 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return LevelSet(std::move(pool));
}

}  // namespace nqp
