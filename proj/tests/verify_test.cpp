#include "doctest.h"

#include "impsel/verify.hpp"

using namespace impsel;

TEST_CASE("formula suite passes") {
    for (const auto& check : verify_formulas()) {
        INFO(check.name << ": " << check.detail);
        CHECK(check.pass);
    }
}

TEST_CASE("impartiality suite passes exhaustively at n<=3") {
    for (const auto& check : verify_impartiality(3, 51)) {
        INFO(check.name << ": " << check.detail);
        CHECK(check.pass);
    }
}

TEST_CASE("corpus generation is deterministic and sized as asked") {
    auto a = random_graph_corpus(25, 2, 5, 9);
    auto b = random_graph_corpus(25, 2, 5, 9);
    CHECK(a.size() == 25);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
        CHECK(a[i].vertex_count() >= 2);
        CHECK(a[i].vertex_count() <= 5);
    }
    auto c = random_graph_corpus(25, 2, 5, 10);
    bool any_different = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == c[i])) any_different = true;
    CHECK(any_different);
}

TEST_CASE("mechanism roster for the sweeps") {
    CHECK(verified_mechanisms().size() == 4);
}
