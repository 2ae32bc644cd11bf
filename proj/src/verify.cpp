#include "impsel/verify.hpp"

#include <algorithm>
#include <sstream>

#include "impsel/bounds.hpp"
#include "impsel/rng.hpp"

namespace impsel {

std::vector<Graph> random_graph_corpus(int count, int n_min, int n_max, std::uint64_t seed) {
    std::vector<Graph> corpus;
    corpus.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        int n = n_min + (n_max > n_min ? i % (n_max - n_min + 1) : 0);
        double p = 0.1 * static_cast<double>(i % 9 + 1);
        Prng stream = Prng::derive(seed, static_cast<std::uint64_t>(i));
        corpus.push_back(gen_random(n, p, stream.next_u64()));
    }
    return corpus;
}

const std::vector<MechanismSpec>& verified_mechanisms() {
    static const std::vector<MechanismSpec> mechs = {
        MechanismSpec::two_partition(),
        MechanismSpec::k_partition(2),
        MechanismSpec::k_partition(3),
        MechanismSpec::permutation(),
    };
    return mechs;
}

namespace {

void push(std::vector<CheckResult>& out, const std::string& name, bool pass,
          const std::string& detail = "") {
    out.push_back({name, pass, detail});
}

}  // namespace

std::vector<CheckResult> verify_formulas(const Guards& guards) {
    std::vector<CheckResult> out;

    bool ok = true;
    std::string detail;
    for (int d = 1; d <= 20; ++d) {
        if (alpha2_sum(d) != alpha2_closed(d)) {
            ok = false;
            detail = "mismatch at delta=" + std::to_string(d);
            break;
        }
    }
    push(out, "alpha2 sum equals closed form, delta 1..20", ok, detail);

    push(out, "alpha2 values at delta 1,2,3",
         alpha2_sum(1) == Rational(1, 4) && alpha2_sum(2) == Rational(3, 8) &&
             alpha2_sum(3) == Rational(3, 8));

    ok = true;
    detail.clear();
    for (int d = 1; d <= 12; ++d) {
        if (alpha_k(2, d, guards) != alpha2_sum(d)) {
            ok = false;
            detail = "mismatch at delta=" + std::to_string(d);
            break;
        }
    }
    push(out, "alpha_k collapses to alpha2 at k=2, delta 1..12", ok, detail);

    ok = true;
    detail.clear();
    for (int k = 2; k <= 16; ++k) {
        if (alpha_k(k, 1, guards) != kpartition_guarantee(k)) {
            ok = false;
            detail = "mismatch at k=" + std::to_string(k);
            break;
        }
    }
    push(out, "alpha_k(k,1) equals (k-1)/2k, k 2..16", ok, detail);

    ok = true;
    detail.clear();
    for (int k = 2; k <= 10; ++k) {
        if (alpha_k(k, 2, guards) != alphak2_pairs(k)) {
            ok = false;
            detail = "mismatch at k=" + std::to_string(k);
            break;
        }
    }
    push(out, "alpha_k(k,2) equals the pair sum, k 2..10", ok, detail);

    MonotoneReport m2 = check_monotone_alpha2(20);
    push(out, "alpha2 nondecreasing with stride-2 strictness up to delta 20", m2.ok, m2.detail);

    for (int k : {3, 4, 5}) {
        MonotoneReport mk = check_monotone_alpha_k(k, 10, guards);
        push(out, "alpha_" + std::to_string(k) + " nondecreasing up to delta 10", mk.ok, mk.detail);
    }

    ok = true;
    detail.clear();
    Rational prev = alphak2_pairs(2);
    for (int k = 3; k <= 1000; ++k) {
        Rational cur = alphak2_pairs(k);
        if (cur < prev) {
            ok = false;
            detail = "decrease at k=" + std::to_string(k);
            break;
        }
        prev = cur;
    }
    Rational gap = Rational(7, 12) - alphak2_pairs(1000);
    if (ok && !(gap >= Rational(0) && gap < Rational(1, 100))) {
        ok = false;
        detail = "gap at k=1000 is " + gap.str();
    }
    push(out, "pair sum nondecreasing to k=1000 and within 0.01 of 7/12", ok, detail);

    push(out, "upper bound table spot values",
         upper_bound(3, GraphClass::NoAbstention) == Rational(3, 4) &&
             upper_bound(4, GraphClass::NoAbstention) == Rational(11, 16) &&
             upper_bound(5, GraphClass::NoAbstention) == Rational(7, 10) &&
             upper_bound(3, GraphClass::OutdegreeExactlyOne) == Rational(5, 6) &&
             upper_bound(6, GraphClass::OutdegreeExactlyOne) == Rational(35, 48) &&
             upper_bound(4, GraphClass::All) == Rational(1, 2));

    return out;
}

std::vector<CheckResult> verify_impartiality(int max_n, std::uint64_t seed, const Guards& guards) {
    std::vector<CheckResult> out;

    for (int n = 2; n <= std::min(max_n, 3); ++n) {
        GraphEnumerator en(n, GraphClass::All, guards);
        bool ok = true;
        std::string detail;
        std::uint64_t graphs = 0;
        while (auto g = en.next()) {
            ++graphs;
            for (const auto& mech : verified_mechanisms()) {
                for (int v = 1; v <= n && ok; ++v) {
                    auto rep = impartiality_check(mech, *g, v, guards);
                    if (!rep.ok) {
                        ok = false;
                        detail = mech.name() + " vertex " + std::to_string(v) + " on graph index " +
                                 std::to_string(graphs - 1);
                    }
                }
                if (!ok) break;
            }
            if (!ok) break;
        }
        push(out,
             "impartiality exhaustive on all " + std::to_string(graphs) + " graphs with n=" +
                 std::to_string(n),
             ok, detail);
    }

    if (max_n >= 4) {
        auto corpus = random_graph_corpus(200, 4, 4, seed);
        bool ok = true;
        std::string detail;
        for (std::size_t i = 0; i < corpus.size() && ok; ++i) {
            for (const auto& mech : verified_mechanisms()) {
                for (int v = 1; v <= 4 && ok; ++v) {
                    auto rep = impartiality_check(mech, corpus[i], v, guards);
                    if (!rep.ok) {
                        ok = false;
                        detail = mech.name() + " vertex " + std::to_string(v) + " on corpus graph " +
                                 std::to_string(i);
                    }
                }
                if (!ok) break;
            }
        }
        push(out, "impartiality on 200 seeded random graphs with n=4", ok, detail);
    }

    return out;
}

namespace {

// Direct evaluation of the score the scan is supposed to report: the largest
// prefix indegree over the blocks after the first.
int direct_max_prefix_indegree(const Graph& g, const std::vector<std::vector<int>>& blocks) {
    VertexSubset prefix = VertexSubset::none(g.vertex_count());
    int best = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (j > 0)
            for (int v : blocks[j]) best = std::max(best, indegree_from(g, prefix, v));
        for (int v : blocks[j]) prefix.add(v);
    }
    return best;
}

}  // namespace

std::vector<CheckResult> verify_lemmas(std::uint64_t seed, const Guards& guards) {
    std::vector<CheckResult> out;

    // Final-score identity on seeded corpora, both tie rules.
    {
        auto corpus = random_graph_corpus(500, 2, 5, seed);
        bool ok = true;
        std::string detail;
        std::uint64_t scans = 0;
        for (std::size_t i = 0; i < corpus.size() && ok; ++i) {
            const Graph& g = corpus[i];
            Prng rng = Prng::derive(seed ^ 0xB10CB10CULL, i);
            for (int a = 0; a < 200 && ok; ++a) {
                int k = 2 + a % 4;
                BlockAssignment assignment = assign_blocks(rng, g.vertex_count(), k);
                auto blocks = assignment.blocks();
                int want = direct_max_prefix_indegree(g, blocks);
                CandidateState uni = candidate_scan(g, blocks, TieBreak::Uniform, &rng);
                CandidateState last = candidate_scan(g, blocks, TieBreak::LastWins, nullptr);
                scans += 2;
                if (uni.score != want || last.score != want) {
                    ok = false;
                    detail = "graph " + std::to_string(i) + " assignment " + std::to_string(a) +
                             ": scores " + std::to_string(uni.score) + "/" +
                             std::to_string(last.score) + " expected " + std::to_string(want);
                }
            }
        }
        push(out,
             "scan score equals max prefix indegree (500-graph corpus, " + std::to_string(scans) +
                 " scans)",
             ok, detail);
    }

    // Fixed-assignment lower bound. Checks every assignment of every graph in
    // the pool, for k in {2, 3} and every choice of maximum-degree vertex.
    auto check_bound = [&](const Graph& g, bool& ok, std::string& detail) {
        const int n = g.vertex_count();
        int delta = max_indegree(g);
        if (delta == 0) return;
        for (int k : {2, 3}) {
            std::vector<int> block_of(static_cast<std::size_t>(n) + 1, 1);
            std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
            for (;;) {
                for (auto& b : blocks) b.clear();
                for (int v = 1; v <= n; ++v)
                    blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(v)] - 1)]
                        .push_back(v);
                SelectionDistribution d = scan_distribution(g, blocks);
                Rational conditional = expected_degree(d, g);

                for (int star = 1; star <= n; ++star) {
                    if (g.indegree(star) != delta) continue;
                    VertexSubset prefix = VertexSubset::none(n);
                    int a = 0;
                    int z = 0;
                    for (int j = 0; j < k; ++j) {
                        for (int v : blocks[static_cast<std::size_t>(j)]) {
                            if (j > 0 && v != star)
                                a = std::max(a, indegree_from(g, prefix, v));
                            if (v == star) z = indegree_from(g, prefix, v);
                        }
                        for (int v : blocks[static_cast<std::size_t>(j)]) prefix.add(v);
                    }
                    Rational floor_val(a);
                    if (z > a) floor_val += Rational(delta - a);
                    if (conditional < floor_val) {
                        ok = false;
                        detail = "k=" + std::to_string(k) + " star=" + std::to_string(star) +
                                 " conditional " + conditional.str() + " < floor " + floor_val.str();
                        return;
                    }
                }

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
        }
    };

    {
        bool ok = true;
        std::string detail;
        std::uint64_t graphs = 0;
        for (int n = 2; n <= 3 && ok; ++n) {
            GraphEnumerator en(n, GraphClass::All, guards);
            while (auto g = en.next()) {
                ++graphs;
                check_bound(*g, ok, detail);
                if (!ok) {
                    detail = "n=" + std::to_string(n) + " graph " + std::to_string(graphs - 1) +
                             ": " + detail;
                    break;
                }
            }
        }
        push(out, "fixed-assignment bound exhaustive at n <= 3", ok, detail);
    }

    {
        auto corpus = random_graph_corpus(500, 4, 5, seed ^ 0x5EEDULL);
        bool ok = true;
        std::string detail;
        for (std::size_t i = 0; i < corpus.size() && ok; ++i) {
            check_bound(corpus[i], ok, detail);
            if (!ok) detail = "corpus graph " + std::to_string(i) + ": " + detail;
        }
        push(out, "fixed-assignment bound on 500 seeded graphs at n in {4,5}", ok, detail);
    }

    return out;
}

}  // namespace impsel
