#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "shapo/rootsys.hpp"
#include "shapo/util.hpp"

using namespace shapo;

TEST_CASE("A1 basics") {
    RootSystem rs = RootSystem::from_type("A1");
    REQUIRE(rs.rank() == 1);
    CHECK(rs.positive_roots() == std::vector<Weight>{{1}});
    CHECK(rs.rho() == std::vector<Rat>{Rat(1, 2)});
    CHECK(rs.norm2({1}) == 2);
}

TEST_CASE("positive roots match the classification table") {
    // Frozen from the standard tables, not recomputed.
    auto as_set = [](const std::vector<Weight>& v) { return std::set<Weight>(v.begin(), v.end()); };
    CHECK(as_set(RootSystem::from_type("A2").positive_roots()) ==
          std::set<Weight>{{1, 0}, {0, 1}, {1, 1}});
    CHECK(as_set(RootSystem::from_type("B2").positive_roots()) ==
          std::set<Weight>{{1, 0}, {0, 1}, {1, 1}, {1, 2}});
    CHECK(as_set(RootSystem::from_type("G2").positive_roots()) ==
          std::set<Weight>{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}});
    CHECK(RootSystem::from_type("A3").positive_roots().size() == 6);
    CHECK(RootSystem::from_type("A1").positive_roots().size() == 1);
}

TEST_CASE("symmetrizers") {
    CHECK(RootSystem::from_type("A2").sym() == std::vector<int>{1, 1});
    CHECK(RootSystem::from_type("B2").sym() == std::vector<int>{2, 1});
    CHECK(RootSystem::from_type("G2").sym() == std::vector<int>{1, 3});
}

TEST_CASE("invalid Cartan matrices are rejected") {
    CHECK_THROWS_AS(RootSystem::build({{2, -2}, {-2, 2}}), std::invalid_argument); // affine
    CHECK_THROWS_AS(RootSystem::build({{2, -3}, {-3, 2}}), std::invalid_argument); // indefinite
    CHECK_THROWS_AS(RootSystem::build({{2, 1}, {1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(RootSystem::build({{2, -1}, {0, 2}}), std::invalid_argument);
}

TEST_CASE("pairing") {
    RootSystem rs = RootSystem::from_type("A2");
    CHECK(rs.pairing({1, 0}, {0, 1}) == -1);
    CHECK(rs.pairing({1, 1}, {1, 1}) == 2);
    ModuleWeight lambda;
    lambda.lambda_sign = 1;
    lambda.offset = {0, 0};
    AffineExponent x = rs.pairing_affine(lambda, {1, 0});
    CHECK(x.constant == 0);
    CHECK(x.lambda[0] == 1);
    CHECK(x.lambda[1] == 0);
}

TEST_CASE("eta scalar parts") {
    // simple roots have vanishing scalar part in every type
    for (const char* t : {"A1", "A2", "A3", "B2", "G2"}) {
        RootSystem rs = RootSystem::from_type(t);
        for (int i = 0; i < rs.rank(); ++i) {
            Weight alpha(rs.rank(), 0);
            alpha[i] = 1;
            CHECK(rs.eta(alpha).scalar == 0);
        }
    }
    CHECK(RootSystem::from_type("A2").eta({1, 1}).scalar == 1);
    CHECK(RootSystem::from_type("A1").eta({2}).scalar == -2);
}

TEST_CASE("eta difference identity on random triples") {
    // eta_{nu+alpha}(w) - eta_{nu}(w) = (w, alpha) - (nu, alpha) for simple alpha
    std::mt19937_64 rng(42);
    for (const char* t : {"A2", "B2", "G2", "A3"}) {
        RootSystem rs = RootSystem::from_type(t);
        std::uniform_int_distribution<int> coord(-3, 3), pick(0, rs.rank() - 1);
        for (int it = 0; it < 30; ++it) {
            Weight nu(rs.rank()), woff(rs.rank());
            for (int i = 0; i < rs.rank(); ++i) nu[i] = coord(rng), woff[i] = coord(rng);
            int ai = pick(rng);
            Weight alpha(rs.rank(), 0);
            alpha[ai] = 1;
            ModuleWeight w;
            w.lambda_sign = 1;
            w.offset = woff;
            AffineExponent lhs = rs.eta_at(rs.eta(weight_add(nu, alpha)), w) -
                                 rs.eta_at(rs.eta(nu), w);
            AffineExponent rhs = rs.pairing_affine(w, alpha);
            rhs.constant -= rs.pairing(nu, alpha);
            CHECK(lhs == rhs);
        }
    }
}
