#include "impsel/bounds.hpp"

#include <algorithm>
#include <sstream>

namespace impsel {

long long Composition::prefix_sum(int j) const {
    long long s = 0;
    for (int i = 0; i < j && i < static_cast<int>(parts.size()); ++i) s += parts[i];
    return s;
}

namespace {

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class pow_z(long long base, int exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
    return r;
}

void compositions_rec(int remaining, int slot, Composition& comp, mpz_class& coeff,
                      const std::function<void(const Composition&, const mpz_class&)>& fn) {
    const int slots = static_cast<int>(comp.parts.size());
    if (slot == slots - 1) {
        comp.parts[static_cast<std::size_t>(slot)] = remaining;
        fn(comp, coeff);  // C(remaining, remaining) = 1 leaves coeff unchanged
        comp.parts[static_cast<std::size_t>(slot)] = 0;
        return;
    }
    for (int take = 0; take <= remaining; ++take) {
        comp.parts[static_cast<std::size_t>(slot)] = take;
        mpz_class factor = binomial(static_cast<unsigned long>(remaining),
                                    static_cast<unsigned long>(take));
        coeff *= factor;
        compositions_rec(remaining - take, slot + 1, comp, coeff, fn);
        coeff /= factor;
    }
    comp.parts[static_cast<std::size_t>(slot)] = 0;
}

}  // namespace

void for_each_composition(int total, int parts,
                          const std::function<void(const Composition&, const mpz_class&)>& fn) {
    if (parts < 1) throw std::domain_error("for_each_composition: need at least one part");
    if (total < 0) throw std::domain_error("for_each_composition: negative total");
    Composition comp;
    comp.parts.assign(static_cast<std::size_t>(parts), 0);
    mpz_class coeff = 1;
    compositions_rec(total, 0, comp, coeff, fn);
}

Rational alpha2_sum(int delta) {
    if (delta < 1) throw std::domain_error("alpha2: delta must be positive");
    // sum_k C(delta,k) * min(delta/2, k), accumulated at twice scale to stay
    // integral, over denominator 2 * delta * 2^delta.
    mpz_class num = 0;
    for (int k = 0; k <= delta; ++k)
        num += binomial(static_cast<unsigned long>(delta), static_cast<unsigned long>(k)) *
               static_cast<long>(std::min<long long>(delta, 2LL * k));
    mpz_class den = 2 * mpz_class(delta) * pow_z(2, delta);
    return Rational(num, den);
}

Rational alpha2_closed(int delta) {
    if (delta < 1) throw std::domain_error("alpha2: delta must be positive");
    if (delta == 1) return Rational(1, 4);
    if (delta % 2 == 1) return alpha2_closed(delta - 1);
    mpz_class central = binomial(static_cast<unsigned long>(delta),
                                 static_cast<unsigned long>(delta / 2));
    return Rational(1, 2) - Rational(central, pow_z(2, delta + 2));
}

Rational alpha_k(int k, int delta, const Guards& guards) {
    if (k < 2) throw std::domain_error("alpha_k: k must be at least 2");
    if (delta < 1) throw std::domain_error("alpha_k: delta must be positive");
    mpz_class count = binomial(static_cast<unsigned long>(delta + k - 1),
                               static_cast<unsigned long>(k - 1));
    if (count > static_cast<long>(guards.max_compositions))
        throw SizeGuardError("alpha_k: " + count.get_str() + " compositions exceed guard " +
                                 std::to_string(guards.max_compositions),
                             count.get_d());

    // Inner minimum scaled by k: min_j [(k-j)*delta + j*prefix_j], an integer.
    mpz_class num = 0;
    for_each_composition(delta, k, [&](const Composition& comp, const mpz_class& coeff) {
        long long best = 0;
        long long prefix = 0;
        for (int j = 1; j <= k; ++j) {
            long long term = static_cast<long long>(k - j) * delta + static_cast<long long>(j) * prefix;
            if (j == 1 || term < best) best = term;
            prefix += comp.parts[static_cast<std::size_t>(j - 1)];
        }
        num += coeff * static_cast<long>(best);
    });
    mpz_class den = mpz_class(delta) * pow_z(k, delta + 1);
    return Rational(num, den);
}

Rational alphak2_pairs(int k) {
    if (k < 2) throw std::domain_error("alphak2_pairs: k must be at least 2");
    // sum over ordered pairs of max(max/2, min), at twice scale.
    long long doubled = 0;
    for (long long x1 = 1; x1 <= k; ++x1)
        for (long long x2 = 1; x2 <= k; ++x2)
            doubled += std::max(std::max(x1, x2), 2 * std::min(x1, x2));
    long long k3 = static_cast<long long>(k) * k * k;
    return Rational(1) - Rational(doubled, 2 * k3);
}

Rational kpartition_guarantee(int k) {
    if (k < 2) throw std::domain_error("kpartition_guarantee: k must be at least 2");
    return Rational(k - 1, 2LL * k);
}

Rational upper_bound(int n, GraphClass c) {
    switch (c) {
        case GraphClass::All:
            if (n < 2) throw std::invalid_argument("upper_bound: class all needs n >= 2");
            return Rational(1, 2);
        case GraphClass::NoAbstention:
            if (n < 3)
                throw std::invalid_argument(
                    "upper_bound: no certificate for no-abstention below n = 3");
            if (n == 3) return Rational(3, 4);
            return Rational(3LL * n - 1, 4LL * n);
        case GraphClass::OutdegreeExactlyOne:
            if (n < 3)
                throw std::invalid_argument(
                    "upper_bound: no certificate for outdegree-one below n = 3");
            if (n == 3) return Rational(5, 6);
            // Even n >= 6 has the sharper certificate; every other size,
            // including n = 4, falls back to 3/4.
            if (n >= 6 && n % 2 == 0) return Rational(6LL * n - 1, 8LL * n);
            return Rational(3, 4);
    }
    throw std::logic_error("upper_bound: bad class");
}

MonotoneReport check_monotone_alpha2(int delta_max) {
    MonotoneReport report;
    std::vector<Rational> vals;
    vals.reserve(static_cast<std::size_t>(delta_max));
    for (int d = 1; d <= delta_max; ++d) vals.push_back(alpha2_sum(d));
    for (int d = 1; d + 1 <= delta_max; ++d) {
        if (!(vals[static_cast<std::size_t>(d)] >= vals[static_cast<std::size_t>(d - 1)])) {
            report.ok = false;
            report.first_violation = d;
            report.detail = "alpha2(" + std::to_string(d + 1) + ") < alpha2(" + std::to_string(d) + ")";
            return report;
        }
    }
    for (int d = 1; d + 2 <= delta_max; ++d) {
        if (!(vals[static_cast<std::size_t>(d + 1)] > vals[static_cast<std::size_t>(d - 1)])) {
            report.ok = false;
            report.first_violation = d;
            report.detail = "alpha2(" + std::to_string(d + 2) + ") <= alpha2(" + std::to_string(d) + ")";
            return report;
        }
    }
    return report;
}

MonotoneReport check_monotone_alpha_k(int k, int delta_max, const Guards& guards) {
    MonotoneReport report;
    Rational prev;
    for (int d = 1; d <= delta_max; ++d) {
        Rational cur = alpha_k(k, d, guards);
        if (d > 1 && !(cur >= prev)) {
            report.ok = false;
            report.first_violation = d - 1;
            report.detail = "alpha_" + std::to_string(k) + "(" + std::to_string(d) +
                            ") < alpha_" + std::to_string(k) + "(" + std::to_string(d - 1) + ")";
            return report;
        }
        prev = cur;
    }
    return report;
}

std::string bounds_csv_header() {
    return "bound_id,k,delta_or_n,class,value_num,value_den,value_float";
}

std::string bounds_csv_row(const BoundRow& row) {
    std::ostringstream os;
    os << row.bound_id << ",";
    if (row.k) os << *row.k;
    os << ",";
    if (row.delta_or_n) os << *row.delta_or_n;
    os << ",";
    if (row.cls) os << class_name(*row.cls);
    os << "," << row.value.num().get_str() << "," << row.value.den().get_str() << ","
       << row.value.to_double();
    return os.str();
}

}  // namespace impsel
