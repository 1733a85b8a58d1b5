#include <doctest.h>

#include "oracles.hpp"
#include "shapo/module.hpp"
#include "shapo/util.hpp"

using namespace shapo;

namespace {

AffineExponent lam(int i, int rank) {
    AffineExponent x;
    (void)rank;
    x.lambda[i] = 1;
    return x;
}

} // namespace

TEST_CASE("A1 truncated Verma") {
    RootSystem rs = RootSystem::from_type("A1");
    WeightModule m = verma_truncated(rs, 2);
    REQUIRE(m.dim() == 3);
    CHECK(m.level == std::vector<int>{0, 1, 2});
    // e f^2 1 = ([z] + [z-2]) f 1
    SparseVec img = m.e_act[0].col[2];
    REQUIRE(img.size() == 1);
    CHECK(img[0].first == 1);
    AffineExponent z = lam(0, 1);
    CHECK(img[0].second == q_int(z) + q_int(z - AffineExponent(2)));
    // level 0: e and f annihilate within level 0 at cutoff 0
    WeightModule m0 = verma_truncated(rs, 0);
    CHECK(m0.dim() == 1);
    CHECK(m0.e_act[0].is_zero());
    CHECK(m0.f_act[0].is_zero());
}

TEST_CASE("Serre-quotient dimensions equal Kostant partition counts") {
    struct Cfg {
        const char* type;
        int cutoff;
    };
    for (Cfg cfg : {Cfg{"A2", 4}, Cfg{"B2", 4}, Cfg{"G2", 3}, Cfg{"A3", 3}}) {
        RootSystem rs = RootSystem::from_type(cfg.type);
        WeightModule m = verma_truncated(rs, cfg.cutoff);
        for (const auto& [off, idx] : m.by_offset) {
            Weight nu = weight_neg(off);
            CHECK((long)idx.size() == testing::kostant_count(rs, nu));
        }
    }
    // the A2 example: weight la - (a1 + a2) has dimension 2
    RootSystem rs = RootSystem::from_type("A2");
    WeightModule m = verma_truncated(rs, 2);
    CHECK(m.indices_at({-1, -1}).size() == 2);
}

TEST_CASE("defining relations hold on truncated Verma modules") {
    for (const char* t : {"A2", "B2"}) {
        RootSystem rs = RootSystem::from_type(t);
        WeightModule m = verma_truncated(rs, 3);
        CHECK(testing::cartan_relation_holds(m));
        CHECK(testing::serre_holds(m, m.f_act));
        CHECK(testing::serre_holds(m, m.e_act));
    }
}

TEST_CASE("dual Verma mirrors the Verma module") {
    RootSystem rs = RootSystem::from_type("A1");
    WeightModule d = dual_verma_truncated(rs, 2);
    REQUIRE(d.dim() == 3);
    CHECK(d.offset == std::vector<Weight>{{0}, {1}, {2}});
    // f e 1* = [z] 1*  (h acts as -(la, a) on the lowest vector)
    SparseVec img = d.f_act[0].col[1];
    REQUIRE(img.size() == 1);
    CHECK(img[0].first == 0);
    CHECK(img[0].second == q_int(lam(0, 1)));

    RootSystem rs2 = RootSystem::from_type("A2");
    WeightModule v2 = verma_truncated(rs2, 3);
    WeightModule d2 = dual_verma_truncated(rs2, 3);
    REQUIRE(v2.dim() == d2.dim());
    for (const auto& [off, idx] : v2.by_offset)
        CHECK(d2.indices_at(weight_neg(off)).size() == idx.size());
    CHECK(testing::cartan_relation_holds(d2));
    CHECK(testing::serre_holds(d2, d2.e_act));
}

TEST_CASE("tensor module obeys the coproduct") {
    RootSystem rs = RootSystem::from_type("A1");
    WeightModule M = verma_truncated(rs, 3);
    // a small complete 2-dimensional module, built by hand: weights mu, mu - a1
    WeightModule V;
    V.rs = &rs;
    V.kind = "quotient";
    V.base.fixed = {Rat(1, 2)}; // (hw, a1) = 1
    V.offset = {{0}, {-1}};
    V.level = {0, 1};
    V.trunc_level = {0, 0};
    V.label = {"v0", "v1"};
    V.e_act.assign(1, SparseMat::zero(2, 2));
    V.f_act.assign(1, SparseMat::zero(2, 2));
    mat_set(V.e_act[0], 0, 1, Scalar(1));
    mat_set(V.f_act[0], 1, 0, Scalar(1));
    V.finalize();
    CHECK(testing::cartan_relation_holds(V));

    WeightModule T = tensor_module(V, M);
    REQUIRE(T.dim() == 8);
    CHECK(T.base.lambda_sign == 1);
    CHECK(testing::cartan_relation_holds(T));

    // e(v1 (x) 1_la) = (e v1) (x) q^{(la,a)} 1_la, second term absent
    int col = 1 * M.dim() + 0;
    SparseVec img = T.e_act[0].col[col];
    REQUIRE(img.size() == 1);
    CHECK(img[0].first == 0 * M.dim() + 0);
    CHECK(img[0].second == q_pow(lam(0, 1)));

    CHECK_THROWS_AS(tensor_module(M, M), std::invalid_argument);
}
