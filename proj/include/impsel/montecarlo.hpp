#ifndef IMPSEL_MONTECARLO_HPP
#define IMPSEL_MONTECARLO_HPP

#include <cstdint>
#include <vector>

#include "impsel/graph.hpp"
#include "impsel/mechanisms.hpp"

namespace impsel {

// Seeded sampling estimate of a mechanism's law on one graph. Trial t runs on
// the stream Prng::derive(seed, t), so the estimate is identical on every
// platform and thread count, and distribution-free Hoeffding bands apply.
struct McEstimate {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> counts;  // counts[v-1] = times vertex v won
    double mean_degree = 0.0;
    int delta = 0;

    std::vector<double> frequencies() const;
    // Half-width of the two-sided confidence band for one frequency at
    // confidence 1 - conf_delta: sqrt(ln(2/conf_delta) / (2 trials)).
    double hoeffding_eps(double conf_delta) const;
};

McEstimate estimate(const Graph& g, const MechanismSpec& mech, std::uint64_t trials,
                    std::uint64_t seed, int threads = 0);

// Sampled counterpart of the exact ratio report. Degrees live in [0, delta],
// so the mean-degree band is delta * hoeffding_eps and the ratio band is
// hoeffding_eps itself.
struct RatioEstimate {
    double ratio = 0.0;
    double band = 0.0;  // ratio confidence half-width at the given conf_delta
    double conf_delta = 0.0;
    McEstimate base;
};

RatioEstimate estimate_ratio(const Graph& g, const MechanismSpec& mech, std::uint64_t trials,
                             std::uint64_t seed, double conf_delta = 1e-6, int threads = 0);

}  // namespace impsel

#endif
