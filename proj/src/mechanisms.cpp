#include "impsel/mechanisms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace impsel {

MechanismSpec MechanismSpec::k_partition(int k) {
    if (k < 2) throw std::domain_error("k-partition needs k >= 2");
    return {MechanismKind::KPartition, k};
}

std::string MechanismSpec::name() const {
    switch (kind) {
        case MechanismKind::TwoPartition: return "two-partition";
        case MechanismKind::KPartition: return "k-partition(k=" + std::to_string(k) + ")";
        case MechanismKind::Permutation: return "permutation";
    }
    return "?";
}

MechanismSpec mechanism_from_name(std::string_view name, int k) {
    if (name == "two-partition") return MechanismSpec::two_partition();
    if (name == "k-partition") return MechanismSpec::k_partition(k);
    if (name == "permutation") return MechanismSpec::permutation();
    throw std::invalid_argument("unknown mechanism: " + std::string(name));
}

CandidateState candidate_scan(const Graph& g, const std::vector<std::vector<int>>& blocks,
                              TieBreak tie, Prng* rng) {
    const int n = g.vertex_count();
    if (tie == TieBreak::Uniform && rng == nullptr)
        throw std::invalid_argument("candidate_scan: uniform tie-break needs an rng");
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& blk : blocks)
        for (int v : blk) {
            if (v < 1 || v > n) throw std::out_of_range("candidate_scan: vertex out of range");
            if (seen[static_cast<std::size_t>(v)])
                throw std::domain_error("candidate_scan: overlapping blocks");
            seen[static_cast<std::size_t>(v)] = 1;
        }

    CandidateState state;
    std::vector<char> in_prefix(static_cast<std::size_t>(n) + 1, 0);
    std::size_t start = 0;
    if (!blocks.empty()) {
        const auto& first = blocks[0];
        if (!first.empty()) {
            state.candidate = (tie == TieBreak::Uniform)
                                  ? first[rng->uniform_below(first.size())]
                                  : first.back();
        }
        for (int v : first) in_prefix[static_cast<std::size_t>(v)] = 1;
        start = 1;
    }

    std::vector<int> arg_max;
    for (std::size_t j = start; j < blocks.size(); ++j) {
        const auto& blk = blocks[j];
        if (blk.empty()) continue;
        // Challenger degrees from the prefix, with and without the current
        // candidate's outgoing edges.
        int best_full = -1, best_excl = -1;
        arg_max.clear();
        for (int v : blk) {
            int full = 0;
            for (int src : g.in_neighbors(v))
                if (in_prefix[static_cast<std::size_t>(src)]) ++full;
            int excl = full;
            if (state.candidate != 0 && g.has_edge(state.candidate, v)) --excl;
            best_excl = std::max(best_excl, excl);
            if (full > best_full) {
                best_full = full;
                arg_max.clear();
            }
            if (full == best_full) arg_max.push_back(v);
        }
        if (best_excl >= state.score) {
            state.candidate = (tie == TieBreak::Uniform)
                                  ? arg_max[rng->uniform_below(arg_max.size())]
                                  : arg_max.back();
            state.score = best_full;
        }
        for (int v : blk) in_prefix[static_cast<std::size_t>(v)] = 1;
    }
    return state;
}

// The run_* bodies below duplicate the assign-then-scan composition with
// thread_local scratch: they sit on the Monte Carlo hot path (~10^9 calls in
// the calibration sweep). Stream consumption is identical to the composable
// path, which a regression test pins down.

int run_two_partition(const Graph& g, Prng& rng) {
    const int n = g.vertex_count();
    thread_local std::vector<char> in_first;
    thread_local std::vector<int> arg_max;
    in_first.assign(static_cast<std::size_t>(n) + 1, 0);
    bool second_empty = true;
    for (int v = 1; v <= n; ++v) {
        if (rng.uniform_below(2) == 0)
            in_first[static_cast<std::size_t>(v)] = 1;
        else
            second_empty = false;
    }
    if (second_empty) return static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n))) + 1;

    int best = -1;
    arg_max.clear();
    for (int v = 1; v <= n; ++v) {
        if (in_first[static_cast<std::size_t>(v)]) continue;
        int deg = 0;
        for (int src : g.in_neighbors(v))
            if (in_first[static_cast<std::size_t>(src)]) ++deg;
        if (deg > best) {
            best = deg;
            arg_max.clear();
        }
        if (deg == best) arg_max.push_back(v);
    }
    return arg_max[rng.uniform_below(arg_max.size())];
}

int run_k_partition(const Graph& g, int k, Prng& rng) {
    if (k < 2) throw std::domain_error("run_k_partition: k must be at least 2");
    const int n = g.vertex_count();
    thread_local std::vector<int> block_of, members, arg_max;
    thread_local std::vector<char> in_prefix;
    block_of.assign(static_cast<std::size_t>(n) + 1, 0);
    in_prefix.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 1; v <= n; ++v)
        block_of[static_cast<std::size_t>(v)] =
            static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k))) + 1;

    int candidate = 0, score = 0;
    for (int j = 1; j <= k; ++j) {
        members.clear();
        for (int v = 1; v <= n; ++v)
            if (block_of[static_cast<std::size_t>(v)] == j) members.push_back(v);
        if (members.empty()) continue;
        if (j == 1) {
            candidate = members[rng.uniform_below(members.size())];
        } else {
            int best_full = -1, best_excl = -1;
            arg_max.clear();
            for (int v : members) {
                int full = 0;
                for (int src : g.in_neighbors(v))
                    if (in_prefix[static_cast<std::size_t>(src)]) ++full;
                int excl = full;
                if (candidate != 0 && g.has_edge(candidate, v)) --excl;
                best_excl = std::max(best_excl, excl);
                if (full > best_full) {
                    best_full = full;
                    arg_max.clear();
                }
                if (full == best_full) arg_max.push_back(v);
            }
            if (best_excl >= score) {
                candidate = arg_max[rng.uniform_below(arg_max.size())];
                score = best_full;
            }
        }
        for (int v : members) in_prefix[static_cast<std::size_t>(v)] = 1;
    }
    return candidate;
}

int run_permutation(const Graph& g, Prng& rng) {
    const int n = g.vertex_count();
    thread_local std::vector<int> order;
    thread_local std::vector<char> in_prefix;
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    rng.shuffle(order);

    int candidate = order[0];
    int score = 0;
    in_prefix.assign(static_cast<std::size_t>(n) + 1, 0);
    in_prefix[static_cast<std::size_t>(order[0])] = 1;
    for (int j = 1; j < n; ++j) {
        int v = order[static_cast<std::size_t>(j)];
        int full = 0;
        for (int src : g.in_neighbors(v))
            if (in_prefix[static_cast<std::size_t>(src)]) ++full;
        int excl = full - (g.has_edge(candidate, v) ? 1 : 0);
        if (excl >= score) {
            candidate = v;
            score = full;
        }
        in_prefix[static_cast<std::size_t>(v)] = 1;
    }
    return candidate;
}

int run_mechanism(const Graph& g, const MechanismSpec& mech, Prng& rng) {
    switch (mech.kind) {
        case MechanismKind::TwoPartition: return run_two_partition(g, rng);
        case MechanismKind::KPartition: return run_k_partition(g, mech.k, rng);
        case MechanismKind::Permutation: return run_permutation(g, rng);
    }
    throw std::logic_error("run_mechanism: bad kind");
}

}  // namespace impsel
