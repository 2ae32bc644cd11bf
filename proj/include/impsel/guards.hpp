#ifndef IMPSEL_GUARDS_HPP
#define IMPSEL_GUARDS_HPP

#include <stdexcept>
#include <string>

namespace impsel {

// Thrown when an exact computation would exceed its configured size guard.
// Carries an estimate of the work the refused computation would need.
struct SizeGuardError : std::runtime_error {
    SizeGuardError(const std::string& what, double required_work_)
        : std::runtime_error(what), required_work(required_work_) {}
    double required_work;
};

// Size guards for the exhaustive computations. Defaults are sized so the full
// verification suite finishes in minutes on a laptop; each can be raised via
// --guard key=value on the CLI or the IMPSEL_GUARDS environment variable.
struct Guards {
    long long max_partition_assignments = 10'000'000;  // k^n limit for partition oracles
    int max_permutation_n = 9;                         // n! limit for the permutation oracle
    int max_enum_all_n = 4;                            // 2^(n(n-1)) graphs
    int max_enum_no_abstention_n = 4;                  // (2^(n-1)-1)^n graphs
    int max_enum_outdegree_one_n = 5;                  // (n-1)^n graphs
    int max_symmetrize_n = 6;                          // n! relabelings x oracle
    int max_impartiality_exhaustive_n = 4;             // 2^(n-1) outgoing sets x oracle
    long long max_compositions = 1'000'000;            // C(delta+k-1, k-1) limit

    // Applies a comma-separated "key=value" override list; unknown keys and
    // non-numeric values raise std::invalid_argument.
    void apply_overrides(const std::string& overrides);

    // One-line "key=value,..." rendering, echoed by the CLI.
    std::string describe() const;
};

}  // namespace impsel

#endif
