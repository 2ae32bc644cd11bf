#include "impsel/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "impsel/rng.hpp"

namespace impsel {

bool SelectionDistribution::sums_to_one() const {
    Rational total;
    for (const auto& p : probs) total += p;
    return total == Rational(1);
}

namespace {

// Candidate state of a scan in progress, with its exact weight. Tie-break
// randomness is folded in by splitting a state's weight across the argmax
// set; states with equal (candidate, score) merge, which keeps the state
// count small instead of one path per branch.
struct ScanState {
    int candidate;  // 0 = none
    int score;
    Rational weight;
};

void merge_state(std::vector<ScanState>& states, int candidate, int score, const Rational& w) {
    for (auto& s : states)
        if (s.candidate == candidate && s.score == score) {
            s.weight += w;
            return;
        }
    states.push_back({candidate, score, w});
}

SelectionDistribution scan_distribution_impl(const Graph& g,
                                             const std::vector<std::vector<int>>& blocks) {
    const int n = g.vertex_count();
    std::vector<char> in_prefix(static_cast<std::size_t>(n) + 1, 0);

    std::vector<ScanState> states, next_states;
    std::size_t start = 0;
    if (!blocks.empty()) {
        const auto& first = blocks[0];
        if (first.empty()) {
            states.push_back({0, 0, Rational(1)});
        } else {
            Rational share(1, static_cast<long long>(first.size()));
            for (int v : first) states.push_back({v, 0, share});
        }
        for (int v : first) in_prefix[static_cast<std::size_t>(v)] = 1;
        start = 1;
    } else {
        states.push_back({0, 0, Rational(1)});
    }

    std::vector<int> fulls;
    std::vector<int> arg_max;
    for (std::size_t j = start; j < blocks.size(); ++j) {
        const auto& blk = blocks[j];
        if (blk.empty()) continue;

        fulls.assign(blk.size(), 0);
        int best_full = -1;
        arg_max.clear();
        for (std::size_t idx = 0; idx < blk.size(); ++idx) {
            int full = 0;
            for (int src : g.in_neighbors(blk[idx]))
                if (in_prefix[static_cast<std::size_t>(src)]) ++full;
            fulls[idx] = full;
            if (full > best_full) {
                best_full = full;
                arg_max.clear();
            }
            if (full == best_full) arg_max.push_back(blk[idx]);
        }

        next_states.clear();
        Rational share(1, static_cast<long long>(arg_max.size()));
        for (const auto& st : states) {
            // Challenger max with the candidate's outgoing edges ignored.
            int best_excl = -1;
            for (std::size_t idx = 0; idx < blk.size(); ++idx) {
                int excl = fulls[idx];
                if (st.candidate != 0 && g.has_edge(st.candidate, blk[idx])) --excl;
                best_excl = std::max(best_excl, excl);
            }
            if (best_excl >= st.score) {
                Rational piece = st.weight * share;
                for (int v : arg_max) merge_state(next_states, v, best_full, piece);
            } else {
                merge_state(next_states, st.candidate, st.score, st.weight);
            }
        }
        states.swap(next_states);
        for (int v : blk) in_prefix[static_cast<std::size_t>(v)] = 1;
    }

    SelectionDistribution out;
    out.probs.assign(static_cast<std::size_t>(n), Rational());
    for (const auto& st : states) {
        if (st.candidate == 0) continue;  // possible only when every block is empty
        out.probs[static_cast<std::size_t>(st.candidate - 1)] += st.weight;
    }
    return out;
}

SelectionDistribution exact_two_partition(const Graph& g) {
    const int n = g.vertex_count();
    SelectionDistribution out;
    out.probs.assign(static_cast<std::size_t>(n), Rational());

    const std::uint64_t total = 1ULL << n;
    const Rational assignment_weight(1, static_cast<long long>(total));
    const Rational fallback = assignment_weight * Rational(1, n);
    std::vector<int> arg_max;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        // bit v-1 set: vertex v in the second block
        if (mask == 0) {
            for (int v = 1; v <= n; ++v) out.probs[static_cast<std::size_t>(v - 1)] += fallback;
            continue;
        }
        int best = -1;
        arg_max.clear();
        for (int v = 1; v <= n; ++v) {
            if (!((mask >> (v - 1)) & 1ULL)) continue;
            int deg = 0;
            for (int src : g.in_neighbors(v))
                if (!((mask >> (src - 1)) & 1ULL)) ++deg;
            if (deg > best) {
                best = deg;
                arg_max.clear();
            }
            if (deg == best) arg_max.push_back(v);
        }
        Rational share = assignment_weight * Rational(1, static_cast<long long>(arg_max.size()));
        for (int v : arg_max) out.probs[static_cast<std::size_t>(v - 1)] += share;
    }
    return out;
}

SelectionDistribution exact_k_partition(const Graph& g, int k, const Guards& guards) {
    const int n = g.vertex_count();
    double work = std::pow(static_cast<double>(k), n);
    if (work > static_cast<double>(guards.max_partition_assignments))
        throw SizeGuardError("exact_distribution: k^n = " + std::to_string(work) +
                                 " assignments exceed guard " +
                                 std::to_string(guards.max_partition_assignments),
                             work);

    SelectionDistribution out;
    out.probs.assign(static_cast<std::size_t>(n), Rational());
    auto total = static_cast<std::uint64_t>(work);
    const Rational assignment_weight(1, static_cast<long long>(total));

    std::vector<int> block_of(static_cast<std::size_t>(n) + 1, 1);
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
    for (;;) {
        for (auto& b : blocks) b.clear();
        for (int v = 1; v <= n; ++v)
            blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(v)] - 1)].push_back(v);
        SelectionDistribution d = scan_distribution_impl(g, blocks);
        for (int v = 1; v <= n; ++v) {
            auto& p = d.probs[static_cast<std::size_t>(v - 1)];
            if (p != Rational())
                out.probs[static_cast<std::size_t>(v - 1)] += p * assignment_weight;
        }
        // odometer: vertex 1 most significant
        int pos = n;
        while (pos >= 1) {
            auto& digit = block_of[static_cast<std::size_t>(pos)];
            if (digit < k) {
                ++digit;
                break;
            }
            digit = 1;
            --pos;
        }
        if (pos < 1) break;
    }
    return out;
}

SelectionDistribution exact_permutation(const Graph& g, const Guards& guards) {
    const int n = g.vertex_count();
    if (n > guards.max_permutation_n) {
        double work = std::tgamma(static_cast<double>(n) + 1.0);
        throw SizeGuardError("exact_distribution: n! = " + std::to_string(work) +
                                 " orderings exceed guard n <= " +
                                 std::to_string(guards.max_permutation_n),
                             work);
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::vector<std::uint64_t> wins(static_cast<std::size_t>(n) + 1, 0);
    std::uint64_t total = 0;
    std::vector<char> in_prefix(static_cast<std::size_t>(n) + 1, 0);
    do {
        int candidate = order[0];
        int score = 0;
        std::fill(in_prefix.begin(), in_prefix.end(), 0);
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
        ++wins[static_cast<std::size_t>(candidate)];
        ++total;
    } while (std::next_permutation(order.begin(), order.end()));

    SelectionDistribution out;
    out.probs.assign(static_cast<std::size_t>(n), Rational());
    for (int v = 1; v <= n; ++v)
        out.probs[static_cast<std::size_t>(v - 1)] =
            Rational(static_cast<long long>(wins[static_cast<std::size_t>(v)]),
                     static_cast<long long>(total));
    return out;
}

}  // namespace

SelectionDistribution scan_distribution(const Graph& g,
                                        const std::vector<std::vector<int>>& blocks) {
    const int n = g.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& blk : blocks)
        for (int v : blk) {
            if (v < 1 || v > n) throw std::out_of_range("scan_distribution: vertex out of range");
            if (seen[static_cast<std::size_t>(v)])
                throw std::domain_error("scan_distribution: overlapping blocks");
            seen[static_cast<std::size_t>(v)] = 1;
        }
    return scan_distribution_impl(g, blocks);
}

SelectionDistribution exact_distribution(const Graph& g, const MechanismSpec& mech,
                                         const Guards& guards) {
    switch (mech.kind) {
        case MechanismKind::TwoPartition: {
            if (g.vertex_count() > 62 ||
                std::pow(2.0, g.vertex_count()) > static_cast<double>(guards.max_partition_assignments))
                throw SizeGuardError("exact_distribution: 2^n assignments exceed guard",
                                     std::pow(2.0, g.vertex_count()));
            return exact_two_partition(g);
        }
        case MechanismKind::KPartition:
            if (mech.k < 2) throw std::domain_error("exact_distribution: k must be at least 2");
            return exact_k_partition(g, mech.k, guards);
        case MechanismKind::Permutation: return exact_permutation(g, guards);
    }
    throw std::logic_error("exact_distribution: bad kind");
}

Rational expected_degree(const SelectionDistribution& d, const Graph& g) {
    if (d.size() != g.vertex_count())
        throw std::invalid_argument("expected_degree: distribution/graph size mismatch");
    Rational total;
    for (int v = 1; v <= g.vertex_count(); ++v) {
        const Rational& p = d.prob(v);
        if (p != Rational()) total += p * Rational(g.indegree(v));
    }
    return total;
}

RatioReport ratio(const Graph& g, const MechanismSpec& mech, const Guards& guards,
                  std::string graph_id) {
    RatioReport report;
    report.graph_id = std::move(graph_id);
    report.mech = mech;
    SelectionDistribution d = exact_distribution(g, mech, guards);
    report.expected_degree = expected_degree(d, g);
    report.delta = max_indegree(g);
    if (report.delta > 0) report.ratio = report.expected_degree / Rational(report.delta);
    return report;
}

namespace {

// Replaces vertex i's outgoing edges with the subset encoded by mask
// (bit b = b-th smallest vertex other than i).
Graph with_outgoing_set(const Graph& g, int i, std::uint64_t mask) {
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges())
        if (u != i) edges.emplace_back(u, v);
    int b = 0;
    for (int v = 1; v <= g.vertex_count(); ++v) {
        if (v == i) continue;
        if ((mask >> b) & 1ULL) edges.emplace_back(i, v);
        ++b;
    }
    return Graph(g.vertex_count(), std::move(edges));
}

}  // namespace

ImpartialityReport impartiality_check(const MechanismSpec& mech, const Graph& g, int vertex,
                                      const Guards& guards, std::uint64_t spot_check_seed,
                                      int spot_check_samples) {
    const int n = g.vertex_count();
    if (vertex < 1 || vertex > n) throw std::out_of_range("impartiality_check: vertex out of range");

    ImpartialityReport report;
    report.vertex = vertex;
    report.exhaustive = n <= guards.max_impartiality_exhaustive_n;

    std::vector<std::uint64_t> masks;
    const std::uint64_t all_masks = 1ULL << (n - 1);
    if (report.exhaustive) {
        masks.resize(all_masks);
        std::iota(masks.begin(), masks.end(), 0);
    } else {
        // Spot-check: the graph's own set, the empty and full sets, and a
        // seeded sample.
        std::uint64_t own = 0;
        int b = 0;
        for (int v = 1; v <= n; ++v) {
            if (v == vertex) continue;
            if (g.has_edge(vertex, v)) own |= 1ULL << b;
            ++b;
        }
        masks = {own, 0, all_masks - 1};
        Prng rng(spot_check_seed);
        for (int s = 0; s < spot_check_samples; ++s) masks.push_back(rng.uniform_below(all_masks));
        std::sort(masks.begin(), masks.end());
        masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    }

    bool first = true;
    std::uint64_t first_mask = 0;
    for (std::uint64_t mask : masks) {
        Graph variant = with_outgoing_set(g, vertex, mask);
        Rational p = exact_distribution(variant, mech, guards).prob(vertex);
        ++report.variants_checked;
        if (first) {
            report.probability = p;
            first_mask = mask;
            first = false;
        } else if (p != report.probability) {
            report.ok = false;
            report.violating_masks = {first_mask, mask};
            report.violating_probs = {report.probability, p};
            return report;
        }
    }
    return report;
}

SelectionDistribution symmetrize(const MechanismSpec& mech, const Graph& g, const Guards& guards) {
    const int n = g.vertex_count();
    if (n > guards.max_symmetrize_n)
        throw SizeGuardError("symmetrize: n! relabelings exceed guard n <= " +
                                 std::to_string(guards.max_symmetrize_n),
                             std::tgamma(static_cast<double>(n) + 1.0));

    SelectionDistribution out;
    out.probs.assign(static_cast<std::size_t>(n), Rational());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    long long factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    const Rational weight(1, factorial);
    do {
        // perm[v-1] is the new label of vertex v
        std::vector<Edge> edges;
        edges.reserve(g.edges().size());
        for (auto [u, v] : g.edges())
            edges.emplace_back(perm[static_cast<std::size_t>(u - 1)],
                               perm[static_cast<std::size_t>(v - 1)]);
        SelectionDistribution d = exact_distribution(Graph(n, std::move(edges)), mech, guards);
        for (int v = 1; v <= n; ++v)
            out.probs[static_cast<std::size_t>(v - 1)] +=
                weight * d.prob(perm[static_cast<std::size_t>(v - 1)]);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

WorstCase worst_case_search(int n, const MechanismSpec& mech, GraphClass c, const Guards& guards,
                            int threads) {
    GraphEnumerator probe(n, c, guards);  // applies the enumeration guard
    const std::uint64_t total = probe.total();

    unsigned hw = std::thread::hardware_concurrency();
    int nthreads = threads > 0 ? threads : static_cast<int>(hw ? hw : 1);
    nthreads = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(nthreads),
                                                        std::max<std::uint64_t>(total, 1)));

    struct Partial {
        bool found = false;
        Rational min_ratio;
        std::uint64_t argmin_index = 0;
        std::uint64_t examined = 0;
        std::uint64_t skipped = 0;
    };
    std::vector<Partial> partials(static_cast<std::size_t>(nthreads));

    auto worker = [&](int t) {
        GraphEnumerator en(n, c, guards);
        Partial& p = partials[static_cast<std::size_t>(t)];
        for (std::uint64_t idx = static_cast<std::uint64_t>(t); idx < total;
             idx += static_cast<std::uint64_t>(nthreads)) {
            Graph g = en.at(idx);
            int delta = max_indegree(g);
            if (delta == 0) {
                ++p.skipped;
                continue;
            }
            ++p.examined;
            Rational r = expected_degree(exact_distribution(g, mech, guards), g) / Rational(delta);
            // first canonical index wins ties
            if (!p.found || r < p.min_ratio || (r == p.min_ratio && idx < p.argmin_index)) {
                p.found = true;
                p.min_ratio = r;
                p.argmin_index = idx;
            }
        }
    };

    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    WorstCase result;
    for (const auto& p : partials) {
        result.graphs_examined += p.examined;
        result.graphs_skipped += p.skipped;
        if (!p.found) continue;
        if (!result.found || p.min_ratio < result.min_ratio ||
            (p.min_ratio == result.min_ratio && p.argmin_index < result.argmin_index)) {
            result.found = true;
            result.min_ratio = p.min_ratio;
            result.argmin_index = p.argmin_index;
        }
    }
    if (result.found) result.argmin = GraphEnumerator(n, c, guards).at(result.argmin_index);
    return result;
}

}  // namespace impsel
