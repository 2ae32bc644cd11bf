#ifndef IMPSEL_MECHANISMS_HPP
#define IMPSEL_MECHANISMS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "impsel/graph.hpp"
#include "impsel/rng.hpp"

namespace impsel {

enum class MechanismKind { TwoPartition, KPartition, Permutation };

// Which mechanism to run; k only for the k-partition family (k >= 2).
struct MechanismSpec {
    MechanismKind kind = MechanismKind::TwoPartition;
    int k = 0;

    static MechanismSpec two_partition() { return {MechanismKind::TwoPartition, 0}; }
    static MechanismSpec k_partition(int k);
    static MechanismSpec permutation() { return {MechanismKind::Permutation, 0}; }

    std::string name() const;
    bool operator==(const MechanismSpec&) const = default;
};

// "two-partition" | "k-partition" (k supplied separately) | "permutation"
MechanismSpec mechanism_from_name(std::string_view name, int k = 0);

// Leading vertex of a candidate scan and the prefix indegree recorded when it
// took the lead. candidate == 0 means no candidate yet (empty first block).
struct CandidateState {
    int candidate = 0;
    int score = 0;
};

enum class TieBreak { Uniform, LastWins };

// Shared inner loop of the partition and permutation mechanisms. Processes
// the given blocks in order, keeping one candidate. A block's challenger
// comparison ignores edges leaving the current candidate; on an update the
// new candidate's score counts the full prefix again, previous candidate
// included. This asymmetric exclusion rule is load-bearing and covered by a
// dedicated regression test.
//
// Blocks must be disjoint subsets of 1..n. The initial candidate comes from
// the first block (uniform or last member, per tie rule); empty blocks are
// skipped. rng is required for TieBreak::Uniform, ignored for LastWins.
CandidateState candidate_scan(const Graph& g, const std::vector<std::vector<int>>& blocks,
                              TieBreak tie, Prng* rng);

// Random 2-block split; winner is a uniform pick among the second block's
// vertices with maximum indegree from the first block, or uniform over all
// vertices when the second block is empty.
int run_two_partition(const Graph& g, Prng& rng);

// Random k-block split followed by a uniform-tie candidate scan.
int run_k_partition(const Graph& g, int k, Prng& rng);

// Uniform random ordering followed by a singleton-block scan (the later
// vertex displaces an equal-scoring candidate).
int run_permutation(const Graph& g, Prng& rng);

int run_mechanism(const Graph& g, const MechanismSpec& mech, Prng& rng);

}  // namespace impsel

#endif
