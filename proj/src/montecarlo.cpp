#include "impsel/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace impsel {

std::vector<double> McEstimate::frequencies() const {
    std::vector<double> f(counts.size(), 0.0);
    if (trials == 0) return f;
    for (std::size_t i = 0; i < counts.size(); ++i)
        f[i] = static_cast<double>(counts[i]) / static_cast<double>(trials);
    return f;
}

double McEstimate::hoeffding_eps(double conf_delta) const {
    if (!(conf_delta > 0.0 && conf_delta < 1.0))
        throw std::domain_error("hoeffding_eps: confidence delta must be in (0,1)");
    return std::sqrt(std::log(2.0 / conf_delta) / (2.0 * static_cast<double>(trials)));
}

McEstimate estimate(const Graph& g, const MechanismSpec& mech, std::uint64_t trials,
                    std::uint64_t seed, int threads) {
    if (trials < 1) throw std::domain_error("estimate: trials must be positive");
    const int n = g.vertex_count();

    unsigned hw = std::thread::hardware_concurrency();
    auto nthreads = static_cast<std::uint64_t>(threads > 0 ? threads : (hw ? hw : 1));
    nthreads = std::min(nthreads, trials);

    std::vector<std::vector<std::uint64_t>> parts(
        nthreads, std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));

    auto worker = [&](std::uint64_t t) {
        auto& counts = parts[t];
        for (std::uint64_t trial = t; trial < trials; trial += nthreads) {
            Prng rng = Prng::derive(seed, trial);
            int winner = run_mechanism(g, mech, rng);
            ++counts[static_cast<std::size_t>(winner - 1)];
        }
    };

    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (std::uint64_t t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    McEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.counts.assign(static_cast<std::size_t>(n), 0);
    for (const auto& p : parts)
        for (std::size_t i = 0; i < p.size(); ++i) est.counts[i] += p[i];

    double degree_sum = 0.0;
    for (int v = 1; v <= n; ++v)
        degree_sum += static_cast<double>(est.counts[static_cast<std::size_t>(v - 1)]) *
                      static_cast<double>(g.indegree(v));
    est.mean_degree = degree_sum / static_cast<double>(trials);
    est.delta = max_indegree(g);
    return est;
}

RatioEstimate estimate_ratio(const Graph& g, const MechanismSpec& mech, std::uint64_t trials,
                             std::uint64_t seed, double conf_delta, int threads) {
    if (max_indegree(g) == 0)
        throw std::domain_error("estimate_ratio: ratio undefined on an edgeless graph");
    RatioEstimate out;
    out.base = estimate(g, mech, trials, seed, threads);
    out.conf_delta = conf_delta;
    out.ratio = out.base.mean_degree / static_cast<double>(out.base.delta);
    out.band = out.base.hoeffding_eps(conf_delta);
    return out;
}

}  // namespace impsel
