#ifndef IMPSEL_EXACT_HPP
#define IMPSEL_EXACT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "impsel/graph.hpp"
#include "impsel/guards.hpp"
#include "impsel/mechanisms.hpp"
#include "impsel/rational.hpp"

namespace impsel {

// Exact law of a mechanism on a graph: one rational probability per vertex,
// summing to exactly 1.
struct SelectionDistribution {
    std::vector<Rational> probs;  // probs[v-1] is the probability of vertex v

    int size() const { return static_cast<int>(probs.size()); }
    const Rational& prob(int v) const { return probs.at(static_cast<std::size_t>(v - 1)); }
    bool sums_to_one() const;
};

// Exact selection law by exhaustive enumeration of the mechanism's
// randomness: all k^n assignments for the partition mechanisms (tie-break
// branches folded in by expectation over candidate states, never
// materialized), all n! orderings for the permutation mechanism.
SelectionDistribution exact_distribution(const Graph& g, const MechanismSpec& mech,
                                         const Guards& guards = {});

// Law of the candidate scan for one fixed block sequence (uniform ties).
SelectionDistribution scan_distribution(const Graph& g,
                                        const std::vector<std::vector<int>>& blocks);

Rational expected_degree(const SelectionDistribution& d, const Graph& g);

struct RatioReport {
    std::string graph_id;
    MechanismSpec mech;
    Rational expected_degree;
    int delta = 0;
    std::optional<Rational> ratio;  // empty iff delta == 0
};

RatioReport ratio(const Graph& g, const MechanismSpec& mech, const Guards& guards = {},
                  std::string graph_id = "");

// Checks that vertex i's exact selection probability is identical across
// replacements of i's outgoing edge set. Exhaustive over all 2^(n-1) subsets
// up to the guard, seeded spot-check beyond it. Outgoing sets are reported as
// bitmasks over the non-self vertices in ascending order.
struct ImpartialityReport {
    int vertex = 0;
    bool exhaustive = true;
    std::uint64_t variants_checked = 0;
    bool ok = true;
    Rational probability;  // common selection probability of the vertex
    std::optional<std::array<std::uint64_t, 2>> violating_masks;
    std::optional<std::array<Rational, 2>> violating_probs;
};

ImpartialityReport impartiality_check(const MechanismSpec& mech, const Graph& g, int vertex,
                                      const Guards& guards = {},
                                      std::uint64_t spot_check_seed = 0,
                                      int spot_check_samples = 16);

// Law of the mechanism averaged over all n! vertex relabelings. Impartial
// alpha-optimal mechanisms stay impartial and alpha-optimal under this
// averaging, and anonymous mechanisms are fixed points.
SelectionDistribution symmetrize(const MechanismSpec& mech, const Graph& g,
                                 const Guards& guards = {});

// Exact minimum of the ratio over all class-c graphs at size n with at least
// one edge; the reported graph is the first attaining the minimum in
// enumeration order, independent of thread count.
struct WorstCase {
    bool found = false;  // false when every graph in the class is edgeless
    Rational min_ratio;
    std::uint64_t argmin_index = 0;
    Graph argmin;
    std::uint64_t graphs_examined = 0;
    std::uint64_t graphs_skipped = 0;  // delta == 0
};

WorstCase worst_case_search(int n, const MechanismSpec& mech, GraphClass c,
                            const Guards& guards = {}, int threads = 0);

}  // namespace impsel

#endif
