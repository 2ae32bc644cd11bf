#ifndef IMPSEL_BOUNDS_HPP
#define IMPSEL_BOUNDS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "impsel/graph.hpp"
#include "impsel/guards.hpp"
#include "impsel/rational.hpp"

namespace impsel {

// Composition of delta into k ordered nonnegative parts. Enumerated by the
// multinomial performance bound.
struct Composition {
    std::vector<int> parts;
    long long prefix_sum(int j) const;  // sum of parts[0..j-1]
};

// Visits every composition of `total` into `parts` slots together with its
// multinomial coefficient, in lexicographic order of the part vector.
void for_each_composition(int total, int parts,
                          const std::function<void(const Composition&, const mpz_class&)>& fn);

// Worst-case guarantee of the 2-partition mechanism at maximum degree delta,
// as the defining binomial sum.
Rational alpha2_sum(int delta);

// Same value in closed form: 1/4 at delta 1, the central-binomial expression
// for even delta, the predecessor value for odd delta >= 3.
Rational alpha2_closed(int delta);

// Worst-case guarantee of the k-partition mechanism at maximum degree delta,
// by exhaustive composition enumeration. Guarded by the composition count
// C(delta+k-1, k-1).
Rational alpha_k(int k, int delta, const Guards& guards = {});

// The degree-2 guarantee of the k-partition mechanism via the direct k^2 pair
// sum; approaches 7/12 from below as k grows.
Rational alphak2_pairs(int k);

// (k-1)/2k, the k-partition mechanism's overall guarantee.
Rational kpartition_guarantee(int k);

// Best ratio any impartial mechanism can guarantee on the class at size n,
// as certified by the bundled gadget graphs. Refuses sizes the certificates
// do not cover (n = 2 for the restricted classes).
Rational upper_bound(int n, GraphClass c);

struct MonotoneReport {
    bool ok = true;
    int first_violation = 0;  // smallest delta whose step fails, when !ok
    std::string detail;
};

// alpha2 is nondecreasing, with a strict increase every two steps.
MonotoneReport check_monotone_alpha2(int delta_max);
// alpha_k is nondecreasing in delta for fixed k.
MonotoneReport check_monotone_alpha_k(int k, int delta_max, const Guards& guards = {});

// CSV export: bound_id,k,delta_or_n,class,value_num,value_den,value_float
struct BoundRow {
    std::string bound_id;
    std::optional<int> k;
    std::optional<int> delta_or_n;
    std::optional<GraphClass> cls;
    Rational value;
};

std::string bounds_csv_header();
std::string bounds_csv_row(const BoundRow& row);

}  // namespace impsel

#endif
