#include "maxai/random.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace maxai {

std::vector<std::size_t> DeterministicRng::subset(std::size_t n, std::size_t k) {
    if (k > n) throw std::invalid_argument("cannot draw more elements than the population holds");
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{1});
    // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    std::uint64_t s = 0;
    while (s == 0) s = (std::uint64_t{rd()} << 32) ^ rd();
    return s;
}

}  // namespace maxai
