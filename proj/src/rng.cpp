#include "impsel/rng.hpp"

#include <limits>
#include <stdexcept>

namespace impsel {

std::uint64_t Prng::uniform_below(std::uint64_t m) {
    if (m == 0) throw std::domain_error("uniform_below: m must be positive");
    // 2^64 mod m; draws at or above 2^64 - rem fall in the truncated top
    // interval and are rejected.
    std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % m + 1) % m;
    for (;;) {
        std::uint64_t x = next_u64();
        if (rem == 0 || x <= std::numeric_limits<std::uint64_t>::max() - rem) return x % m;
    }
}

std::vector<std::vector<int>> BlockAssignment::blocks() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(k));
    for (int v = 1; v < static_cast<int>(block_of.size()); ++v)
        out[static_cast<std::size_t>(block_of[v] - 1)].push_back(v);
    return out;
}

BlockAssignment assign_blocks(Prng& rng, int n, int k) {
    if (k < 2) throw std::domain_error("assign_blocks: k must be at least 2");
    if (n < 1) throw std::domain_error("assign_blocks: n must be positive");
    BlockAssignment a;
    a.k = k;
    a.block_of.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 1; v <= n; ++v)
        a.block_of[static_cast<std::size_t>(v)] =
            static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k))) + 1;
    return a;
}

}  // namespace impsel
