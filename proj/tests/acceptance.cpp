// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expected values are exact rationals frozen from independent
// evaluations; sampled checks use distribution-free bands at fixed seeds.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "impsel/bounds.hpp"
#include "impsel/exact.hpp"
#include "impsel/montecarlo.hpp"
#include "impsel/rng.hpp"
#include "impsel/verify.hpp"

using namespace impsel;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, const std::function<bool(std::string&)>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%2d] %s  %s (%.2fs)%s%s\n", number, pass ? "PASS" : "FAIL", label.c_str(), secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

const MechanismSpec kTwo = MechanismSpec::two_partition();
const MechanismSpec kPart2 = MechanismSpec::k_partition(2);
const MechanismSpec kPart3 = MechanismSpec::k_partition(3);
const MechanismSpec kPerm = MechanismSpec::permutation();

constexpr std::uint64_t kImpartialityCorpusSeed = 41;
constexpr std::uint64_t kScanCorpusSeed = 43;
constexpr std::uint64_t kMcSeed = 47;

bool criterion_formula_identities(std::string& detail) {
    for (int d = 1; d <= 20; ++d)
        if (alpha2_sum(d) != alpha2_closed(d)) {
            detail = "sum vs closed mismatch at delta " + std::to_string(d);
            return false;
        }
    if (alpha2_sum(1) != Rational(1, 4) || alpha2_sum(2) != Rational(3, 8) ||
        alpha2_sum(3) != Rational(3, 8)) {
        detail = "values at delta 1..3 are off";
        return false;
    }
    return true;
}

bool criterion_collapse_points(std::string& detail) {
    for (int d = 1; d <= 12; ++d)
        if (alpha_k(2, d) != alpha2_sum(d)) {
            detail = "k=2 collapse fails at delta " + std::to_string(d);
            return false;
        }
    for (int k = 2; k <= 16; ++k)
        if (alpha_k(k, 1) != Rational(k - 1, 2LL * k)) {
            detail = "degree-1 value fails at k " + std::to_string(k);
            return false;
        }
    for (int k = 2; k <= 10; ++k)
        if (alpha_k(k, 2) != alphak2_pairs(k)) {
            detail = "degree-2 pair sum fails at k " + std::to_string(k);
            return false;
        }
    return true;
}

bool criterion_monotonicity(std::string& detail) {
    MonotoneReport m2 = check_monotone_alpha2(20);
    if (!m2.ok) {
        detail = m2.detail;
        return false;
    }
    for (int k : {3, 4, 5}) {
        MonotoneReport mk = check_monotone_alpha_k(k, 10);
        if (!mk.ok) {
            detail = mk.detail;
            return false;
        }
    }
    return true;
}

bool criterion_seven_twelfths_limit(std::string& detail) {
    Rational prev = alphak2_pairs(2);
    for (int k = 3; k <= 1000; ++k) {
        Rational cur = alphak2_pairs(k);
        if (cur < prev) {
            detail = "pair sum decreases at k " + std::to_string(k);
            return false;
        }
        prev = cur;
    }
    // Golden gap, frozen from the direct pair summation.
    Rational gap = Rational(7, 12) - alphak2_pairs(1000);
    if (gap != Rational(4501, 12000000)) {
        detail = "gap at k=1000 is " + gap.str() + ", expected 4501/12000000";
        return false;
    }
    if (!(gap < Rational(1, 100))) {
        detail = "gap is not below 0.01";
        return false;
    }
    detail = "gap(1000) = " + gap.str();
    return true;
}

bool criterion_gadget_exactness(std::string& detail) {
    Graph g = gen_gadget("perm_up");
    SelectionDistribution d = exact_distribution(g, kPerm);
    if (d.prob(2) != Rational(1, 2)) {
        detail = "hub probability " + d.prob(2).str();
        return false;
    }
    Rational mean = expected_degree(d, g);
    if (mean != Rational(2)) {
        detail = "expected degree " + mean.str();
        return false;
    }
    RatioReport r = ratio(g, kPerm);
    if (!r.ratio || *r.ratio != Rational(2, 3)) {
        detail = "ratio off";
        return false;
    }
    return true;
}

bool criterion_impartiality(std::string& detail) {
    const std::vector<MechanismSpec> mechs = {kTwo, kPart2, kPart3, kPerm};
    GraphEnumerator en(3, GraphClass::All);
    std::uint64_t graphs = 0;
    while (auto g = en.next()) {
        ++graphs;
        for (const auto& m : mechs)
            for (int v = 1; v <= 3; ++v) {
                auto rep = impartiality_check(m, *g, v);
                if (!rep.ok) {
                    detail = m.name() + " fails on n=3 graph " + std::to_string(graphs - 1) +
                             " vertex " + std::to_string(v);
                    return false;
                }
            }
    }
    auto corpus = random_graph_corpus(200, 4, 4, kImpartialityCorpusSeed);
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (const auto& m : mechs)
            for (int v = 1; v <= 4; ++v) {
                auto rep = impartiality_check(m, corpus[i], v);
                if (!rep.ok) {
                    detail = m.name() + " fails on corpus graph " + std::to_string(i) +
                             " vertex " + std::to_string(v);
                    return false;
                }
            }
    detail = std::to_string(graphs) + " exhaustive graphs + 200 sampled";
    return true;
}

bool criterion_per_graph_guarantees(std::string& detail) {
    const Rational half(1, 2), seven_twelfths(7, 12);
    std::vector<Rational> alpha2_at(16), alpha3_at(16);
    for (int d = 1; d <= 15; ++d) {
        alpha2_at[static_cast<std::size_t>(d)] = alpha2_sum(d);
        alpha3_at[static_cast<std::size_t>(d)] = alpha_k(3, d);
    }
    for (int n = 1; n <= 4; ++n) {
        GraphEnumerator en(n, GraphClass::All);
        std::uint64_t idx = 0;
        while (auto g = en.next()) {
            int delta = max_indegree(*g);
            if (delta == 0) {
                ++idx;
                continue;
            }
            Rational r2 = *ratio(*g, kTwo).ratio;
            if (r2 < alpha2_at[static_cast<std::size_t>(delta)]) {
                detail = "two-partition below alpha2 on n=" + std::to_string(n) + " graph " +
                         std::to_string(idx);
                return false;
            }
            Rational r3 = *ratio(*g, kPart3).ratio;
            if (r3 < alpha3_at[static_cast<std::size_t>(delta)]) {
                detail = "3-partition below alpha_3 on n=" + std::to_string(n) + " graph " +
                         std::to_string(idx);
                return false;
            }
            Rational rp = *ratio(*g, kPerm).ratio;
            if (rp < half) {
                detail = "permutation below 1/2 on n=" + std::to_string(n) + " graph " +
                         std::to_string(idx);
                return false;
            }
            if (in_class(*g, GraphClass::NoAbstention) && rp < seven_twelfths) {
                detail = "permutation below 7/12 on no-abstention n=" + std::to_string(n) +
                         " graph " + std::to_string(idx);
                return false;
            }
            ++idx;
        }
    }
    return true;
}

bool criterion_scan_identity(std::string& detail) {
    auto corpus = random_graph_corpus(500, 2, 5, kScanCorpusSeed);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Graph& g = corpus[i];
        const int n = g.vertex_count();
        Prng rng = Prng::derive(kScanCorpusSeed ^ 0xA55A, i);
        for (int a = 0; a < 200; ++a) {
            auto blocks = assign_blocks(rng, n, 2 + a % 4).blocks();

            // Independent evaluation of the claimed score.
            VertexSubset prefix = VertexSubset::none(n);
            int want = 0;
            for (std::size_t j = 0; j < blocks.size(); ++j) {
                if (j > 0)
                    for (int v : blocks[j]) want = std::max(want, indegree_from(g, prefix, v));
                for (int v : blocks[j]) prefix.add(v);
            }

            if (candidate_scan(g, blocks, TieBreak::Uniform, &rng).score != want ||
                candidate_scan(g, blocks, TieBreak::LastWins, nullptr).score != want) {
                detail = "score mismatch on graph " + std::to_string(i) + " assignment " +
                         std::to_string(a);
                return false;
            }
        }
    }
    detail = "500 graphs x 200 assignments x 2 tie rules";
    return true;
}

bool criterion_tightness_trend(std::string& detail) {
    const std::vector<std::pair<int, Rational>> frozen = {
        {2, Rational(1, 2)}, {4, Rational(17, 48)}, {6, Rational(307, 960)},
        {8, Rational(545, 1792)},
    };
    Rational prev;
    bool first = true;
    for (const auto& [n, want] : frozen) {
        Rational got = *ratio(gen_gadget("single_edge", n), kTwo).ratio;
        if (got != want) {
            detail = "n=" + std::to_string(n) + " ratio " + got.str() + ", frozen " + want.str();
            return false;
        }
        if (!first && got > prev) {
            detail = "ratio increases at n=" + std::to_string(n);
            return false;
        }
        prev = got;
        first = false;
    }
    if (!(prev < Rational(35, 100))) {
        detail = "n=8 ratio " + prev.str() + " not below 0.35";
        return false;
    }
    detail = "ratios 1/2, 17/48, 307/960, 545/1792";
    return true;
}

bool criterion_sampler_calibration(std::string& detail) {
    const std::uint64_t trials = 100000;
    struct Task {
        Graph graph;
        MechanismSpec mech;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    std::uint64_t task_seed = 0;
    for (int n = 1; n <= 4; ++n) {
        GraphEnumerator en(n, GraphClass::All);
        while (auto g = en.next())
            for (const auto& m : {kTwo, kPart3, kPerm})
                tasks.push_back({*g, m, Prng::derive(kMcSeed, task_seed++)
                                            .next_u64()});
    }

    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;
    double eps = McEstimate{trials, 0, {}, 0.0, 0}.hoeffding_eps(1e-6);

    auto worker = [&] {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= tasks.size() || failed.load()) return;
            const Task& t = tasks[i];
            McEstimate est = estimate(t.graph, t.mech, trials, t.seed, 1);
            SelectionDistribution exact = exact_distribution(t.graph, t.mech);
            auto freq = est.frequencies();
            for (int v = 1; v <= t.graph.vertex_count(); ++v) {
                double gap = std::abs(freq[static_cast<std::size_t>(v - 1)] -
                                      exact.prob(v).to_double());
                if (gap > eps) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    failed.store(true);
                    failure = "frequency off by " + std::to_string(gap) + " on task " +
                              std::to_string(i) + " (" + t.mech.name() + ")";
                    return;
                }
            }
        }
    };
    unsigned hw = std::thread::hardware_concurrency();
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < (hw ? hw : 1u); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load()) {
        detail = failure;
        return false;
    }

    // Long-cycle family: exact reference at n=9, sampled at n=12. The limit
    // value 4/3 is asymptotic, so the band adapts to the measured n=9 gap.
    Graph nine = gen_gadget("cycle_plus", 9);
    Rational e9 = expected_degree(exact_distribution(nine, kPerm), nine);
    if (e9 != Rational(244877, 181440)) {
        detail = "n=9 exact mean " + e9.str() + ", frozen 244877/181440";
        return false;
    }
    double gap9 = std::abs(e9.to_double() - 4.0 / 3.0);
    double tol = gap9 > 0.02 ? 0.05 : 0.02;
    McEstimate twelve = estimate(gen_gadget("cycle_plus", 12), kPerm, trials, kMcSeed);
    double diff = std::abs(twelve.mean_degree - e9.to_double());
    if (diff > tol) {
        detail = "cycle mean at n=12 differs from the n=9 reference by " + std::to_string(diff);
        return false;
    }
    detail = std::to_string(tasks.size()) + " corpus tasks; cycle diff " + std::to_string(diff);
    return true;
}

bool criterion_upper_bound_consistency(std::string& detail) {
    const Rational three_quarters(3, 4);
    for (const auto& m : {kTwo, kPart2, kPart3, kPerm}) {
        WorstCase wc = worst_case_search(3, m, GraphClass::NoAbstention);
        if (!wc.found || !(wc.min_ratio <= three_quarters)) {
            detail = m.name() + " exceeds 3/4 over the n=3 no-abstention class";
            return false;
        }
    }
    Rational best_five(1);
    for (const char* name :
         {"oneplus5_a", "oneplus5_b", "oneplus5_c", "oneplus5_d", "oneplus5_e", "oneplus5_f"}) {
        RatioReport r = ratio(gen_gadget(name), kPerm);
        if (r.ratio && *r.ratio < best_five) best_five = *r.ratio;
    }
    if (!(best_five <= Rational(7, 10))) {
        detail = "five-vertex gadget minimum " + best_five.str() + " not below 7/10";
        return false;
    }
    detail = "five-vertex gadget minimum " + best_five.str();
    return true;
}

}  // namespace

int main() {
    criterion(1, "formula identities: alpha2 sum equals closed form, frozen small values",
              criterion_formula_identities);
    criterion(2, "collapse and closed points: k=2 collapse, degree-1 and degree-2 values",
              criterion_collapse_points);
    criterion(3, "monotonicity: alpha2 stride-2 strictness, alpha_k nondecreasing",
              criterion_monotonicity);
    criterion(4, "7/12 limit: pair sum nondecreasing to k=1000, frozen gap below 0.01",
              criterion_seven_twelfths_limit);
    criterion(5, "gadget exactness: hub probability 1/2, mean degree 2, ratio 2/3",
              criterion_gadget_exactness);
    criterion(6, "impartiality: exhaustive at n=3, plus 200 seeded graphs at n=4",
              criterion_impartiality);
    criterion(7, "per-graph guarantees on all graphs up to n=4",
              criterion_per_graph_guarantees);
    criterion(8, "candidate-scan score identity on the seeded corpus",
              criterion_scan_identity);
    criterion(9, "tightness trend of the single-edge family, frozen oracle values",
              criterion_tightness_trend);
    criterion(10, "sampler calibration against the exact oracle, plus the long-cycle band",
              criterion_sampler_calibration);
    criterion(11, "upper-bound consistency with the worst-case search and gadgets",
              criterion_upper_bound_consistency);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
