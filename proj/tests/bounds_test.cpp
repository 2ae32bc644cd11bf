#include "doctest.h"

#include "impsel/bounds.hpp"

using namespace impsel;

TEST_CASE("alpha2 frozen values") {
    CHECK(alpha2_sum(1) == Rational(1, 4));
    CHECK(alpha2_sum(2) == Rational(3, 8));
    CHECK(alpha2_sum(3) == Rational(3, 8));
    CHECK(alpha2_sum(4) == Rational(13, 32));
    CHECK(alpha2_sum(5) == Rational(13, 32));
    CHECK(alpha2_sum(6) == Rational(27, 64));
    CHECK_THROWS_AS(alpha2_sum(0), std::domain_error);
    CHECK_THROWS_AS(alpha2_closed(0), std::domain_error);
}

TEST_CASE("alpha2 sum agrees with the closed form") {
    for (int d = 1; d <= 20; ++d) CHECK(alpha2_sum(d) == alpha2_closed(d));
    CHECK(alpha2_closed(3) == alpha2_closed(2));  // odd case defers
    CHECK(alpha2_closed(40) > Rational(45, 100));
    CHECK(alpha2_closed(40) < Rational(1, 2));
}

TEST_CASE("alpha_k collapses and closed points") {
    for (int d = 1; d <= 12; ++d) CHECK(alpha_k(2, d) == alpha2_sum(d));
    for (int k = 2; k <= 16; ++k) CHECK(alpha_k(k, 1) == kpartition_guarantee(k));
    for (int k = 2; k <= 10; ++k) CHECK(alpha_k(k, 2) == alphak2_pairs(k));

    CHECK(alpha_k(3, 1) == Rational(1, 3));
    CHECK(alpha_k(3, 2) == Rational(4, 9));
    CHECK(alpha_k(3, 3) == Rational(13, 27));
    CHECK(alpha_k(3, 4) == Rational(122, 243));
    CHECK(alpha_k(3, 5) == Rational(371, 729));

    CHECK_THROWS_AS(alpha_k(1, 3), std::domain_error);
    CHECK_THROWS_AS(alpha_k(3, 0), std::domain_error);
}

TEST_CASE("pair-sum evaluation at degree two") {
    CHECK(alphak2_pairs(2) == Rational(3, 8));  // terms 1,1,1,2 over 8
    CHECK(alphak2_pairs(3) == Rational(4, 9));
    CHECK(alphak2_pairs(1000) == Rational(2331833, 4000000));
    CHECK(Rational(7, 12) - alphak2_pairs(1000) == Rational(4501, 12000000));
    Rational prev = alphak2_pairs(2);
    for (int k = 3; k <= 50; ++k) {
        Rational cur = alphak2_pairs(k);
        CHECK(cur >= prev);
        CHECK(cur < Rational(7, 12));
        prev = cur;
    }
    CHECK_THROWS_AS(alphak2_pairs(1), std::domain_error);
}

TEST_CASE("overall k-partition guarantee") {
    CHECK(kpartition_guarantee(2) == Rational(1, 4));
    CHECK(kpartition_guarantee(3) == Rational(1, 3));
    for (int k = 2; k <= 64; ++k) CHECK(kpartition_guarantee(k) < Rational(1, 2));
    CHECK_THROWS_AS(kpartition_guarantee(1), std::domain_error);
}

TEST_CASE("upper bound table") {
    CHECK(upper_bound(4, GraphClass::All) == Rational(1, 2));
    CHECK(upper_bound(2, GraphClass::All) == Rational(1, 2));

    CHECK(upper_bound(3, GraphClass::NoAbstention) == Rational(3, 4));
    CHECK(upper_bound(4, GraphClass::NoAbstention) == Rational(11, 16));
    CHECK(upper_bound(5, GraphClass::NoAbstention) == Rational(7, 10));
    CHECK(upper_bound(6, GraphClass::NoAbstention) == Rational(17, 24));
    CHECK(upper_bound(7, GraphClass::NoAbstention) == Rational(5, 7));

    CHECK(upper_bound(3, GraphClass::OutdegreeExactlyOne) == Rational(5, 6));
    CHECK(upper_bound(4, GraphClass::OutdegreeExactlyOne) == Rational(3, 4));
    CHECK(upper_bound(5, GraphClass::OutdegreeExactlyOne) == Rational(3, 4));
    CHECK(upper_bound(6, GraphClass::OutdegreeExactlyOne) == Rational(35, 48));
    CHECK(upper_bound(8, GraphClass::OutdegreeExactlyOne) == Rational(47, 64));

    CHECK_THROWS_AS(upper_bound(2, GraphClass::NoAbstention), std::invalid_argument);
    CHECK_THROWS_AS(upper_bound(2, GraphClass::OutdegreeExactlyOne), std::invalid_argument);
}

TEST_CASE("no-abstention upper bounds rise toward three quarters") {
    Rational prev = upper_bound(4, GraphClass::NoAbstention);
    for (int n = 5; n <= 40; ++n) {
        Rational cur = upper_bound(n, GraphClass::NoAbstention);
        CHECK(cur > prev);
        CHECK(cur < Rational(3, 4));
        prev = cur;
    }
}

TEST_CASE("monotonicity sweeps") {
    CHECK(check_monotone_alpha2(20).ok);
    for (int k : {3, 4, 5}) CHECK(check_monotone_alpha_k(k, 10).ok);
    // Equality does occur at odd steps; strictness is only at stride two.
    CHECK(alpha2_sum(3) == alpha2_sum(2));
    CHECK(alpha2_sum(4) > alpha2_sum(2));
}

TEST_CASE("composition enumeration totals") {
    // Multinomial weights over all compositions add up to k^delta.
    mpz_class total = 0;
    std::uint64_t count = 0;
    for_each_composition(6, 4, [&](const Composition& c, const mpz_class& coeff) {
        CHECK(static_cast<int>(c.parts.size()) == 4);
        long long sum = 0;
        for (int p : c.parts) sum += p;
        CHECK(sum == 6);
        total += coeff;
        ++count;
    });
    CHECK(total == mpz_class(4096));  // 4^6
    CHECK(count == 84);               // C(9,3)
}

TEST_CASE("alpha_k size guard") {
    CHECK_THROWS_AS(alpha_k(30, 30), SizeGuardError);
    Guards loose;
    loose.max_compositions = 100;
    CHECK_THROWS_AS(alpha_k(4, 10, loose), SizeGuardError);
}

TEST_CASE("csv rendering") {
    CHECK(bounds_csv_header() == "bound_id,k,delta_or_n,class,value_num,value_den,value_float");
    BoundRow row{"alpha2", std::nullopt, 2, std::nullopt, alpha2_sum(2)};
    CHECK(bounds_csv_row(row) == "alpha2,,2,,3,8,0.375");
    BoundRow upper{"upper", std::nullopt, 5, GraphClass::NoAbstention,
                   upper_bound(5, GraphClass::NoAbstention)};
    CHECK(bounds_csv_row(upper) == "upper,,5,no-abstention,7,10,0.7");
}
