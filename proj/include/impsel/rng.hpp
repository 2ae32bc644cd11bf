#ifndef IMPSEL_RNG_HPP
#define IMPSEL_RNG_HPP

#include <cstdint>
#include <vector>

namespace impsel {

// Deterministic 64-bit generator (splitmix64). The whole project draws its
// randomness through this type so that every run, sample corpus, and Monte
// Carlo estimate is bit-reproducible from a seed on any platform.
//
// Stream discipline, fixed so golden outputs stay portable:
//   - uniform_below(m) rejects raw draws >= floor(2^64/m)*m, then reduces mod m;
//     it always consumes at least one draw, exactly one when no rejection occurs.
//   - shuffle runs Fisher-Yates from the back: i = len-1 .. 1, swap with
//     uniform_below(i+1).
//   - assign_blocks draws one uniform_below(k) per vertex in ascending order.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Exactly uniform on [0, m) via rejection sampling.
    std::uint64_t uniform_below(std::uint64_t m);

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    // Independent stream for parallel workloads: seed XOR stream-index, pushed
    // through one splitmix64 step.
    static Prng derive(std::uint64_t seed, std::uint64_t stream_index) {
        Prng mix(seed ^ stream_index);
        return Prng(mix.next_u64());
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

// Random partition of the vertices 1..n into blocks 1..k.
// block_of[v] is the block of vertex v; index 0 is unused.
struct BlockAssignment {
    int k = 0;
    std::vector<int> block_of;

    // Blocks as ascending member lists, indexed 0..k-1.
    std::vector<std::vector<int>> blocks() const;
};

// Assigns each vertex independently and uniformly to one of k blocks,
// drawing for vertices in ascending order. k >= 2 required.
BlockAssignment assign_blocks(Prng& rng, int n, int k);

}  // namespace impsel

#endif
