#ifndef IMPSEL_VERIFY_HPP
#define IMPSEL_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "impsel/exact.hpp"
#include "impsel/guards.hpp"

namespace impsel {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Seeded deterministic corpus: graph i has n cycling n_min..n_max, edge
// probability cycling 0.1..0.9, and stream Prng::derive(seed, i).
std::vector<Graph> random_graph_corpus(int count, int n_min, int n_max, std::uint64_t seed);

// Mechanism set the verification sweeps run: 2-partition, k-partition for
// k = 2 and 3, permutation.
const std::vector<MechanismSpec>& verified_mechanisms();

// Formula identities and monotonicity: the binomial sum against its closed
// form, the k = 2 collapse, the degree-1 and degree-2 evaluations, the 7/12
// limit trend, and the upper-bound table spot values.
std::vector<CheckResult> verify_formulas(const Guards& guards = {});

// Exhaustive impartiality for every vertex and every outgoing-set replacement
// on all graphs with n <= min(max_n, 3), plus 200 seeded random graphs at
// n = 4 when max_n >= 4.
std::vector<CheckResult> verify_impartiality(int max_n, std::uint64_t seed,
                                             const Guards& guards = {});

// Candidate-scan facts: the final-score identity on a seeded 500-graph corpus
// with 200 assignments each, and the fixed-assignment lower bound
// E[X | assignment] >= a + [z > a](delta - a), exhaustive at n <= 3 and on
// seeded corpora at n = 4, 5.
std::vector<CheckResult> verify_lemmas(std::uint64_t seed, const Guards& guards = {});

}  // namespace impsel

#endif
