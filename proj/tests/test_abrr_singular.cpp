#include <doctest.h>

#include "oracles.hpp"
#include "shapo/findim.hpp"
#include "shapo/singular.hpp"
#include "shapo/util.hpp"

using namespace shapo;

TEST_CASE("series terminates at 1 + longest path and agrees with routes") {
    struct Cfg {
        const char* type;
        int cutoff;
    };
    for (Cfg cfg : {Cfg{"A1", 4}, Cfg{"A2", 3}, Cfg{"B2", 3}}) {
        RootSystem rs = RootSystem::from_type(cfg.type);
        WeightModule M = verma_truncated(rs, cfg.cutoff);
        WeightModule Ms = dual_verma_truncated(rs, cfg.cutoff);
        GradedTensorOperator F = f_tensor(quasi_r(Ms, M, cfg.cutoff));
        FkSeriesResult series = fk_series(Ms, F, M);
        // longest path on the mirror model is the cutoff itself
        CHECK(series.nonzero_terms == cfg.cutoff + 1);
        FHatMatrix viaRoutes = fhat_route_sum(Ms, F, M);
        CHECK(series.fhat.on_hw == viaRoutes.on_hw);
    }
}

TEST_CASE("trivial module gives the bare identity") {
    RootSystem rs = RootSystem::from_type("A2");
    WeightModule M = verma_truncated(rs, 2);
    FinDimModule triv = finite_dim_module(rs, {0, 0});
    GradedTensorOperator F = f_tensor(quasi_r(triv.module, M, 2));
    FkSeriesResult series = fk_series(triv.module, F, M);
    CHECK(series.nonzero_terms == 1);
    CHECK(series.fhat.on_hw.empty());
}

TEST_CASE("ABRR identity holds and a perturbed entry is detected") {
    for (const char* t : {"A1", "A2"}) {
        RootSystem rs = RootSystem::from_type(t);
        const int cutoff = 3;
        WeightModule M = verma_truncated(rs, cutoff);
        WeightModule Ms = dual_verma_truncated(rs, cutoff);
        GradedTensorOperator rhat = quasi_r(Ms, M, cutoff);
        GradedTensorOperator F = f_tensor(rhat);
        FkSeriesResult series = fk_series(Ms, F, M, -1, true);
        AbrrReport rep = abrr_identity_check(Ms, M, rhat, series.fhat);
        INFO(rep.first_failure);
        CHECK(rep.ok);
        CHECK(rep.checked_entries > 0);

        // perturb a single graded entry
        REQUIRE(!series.fhat.ops.empty());
        auto& [key, op] = *series.fhat.ops.begin();
        bool bumped = false;
        for (int c = 0; c < op.cols && !bumped; ++c) {
            if (!op.col[c].empty()) {
                op.col[c][0].second *= Scalar(2);
                bumped = true;
            }
        }
        REQUIRE(bumped);
        AbrrReport broken = abrr_identity_check(Ms, M, rhat, series.fhat);
        CHECK(!broken.ok);
    }
}

TEST_CASE("singular vectors are annihilated by every raising generator") {
    struct Cfg {
        const char* type;
        std::vector<int> labels;
    };
    for (const Cfg& cfg : {Cfg{"A1", {1}}, Cfg{"A2", {1, 0}}, Cfg{"A2", {0, 1}}}) {
        RootSystem rs = RootSystem::from_type(cfg.type);
        FinDimModule V = finite_dim_module(rs, cfg.labels);
        const int cutoff = V.depth + 1;
        WeightModule M = verma_truncated(rs, cutoff);
        GradedTensorOperator F = f_tensor(quasi_r(V.module, M, cutoff));
        FHatMatrix fh = fhat_route_sum(V.module, F, M);
        WeightModule T = tensor_module(V.module, M);
        for (int j = 0; j < V.module.dim(); ++j) {
            SingularVectorReport rep = singular_vector(T, V.module, M, fh, j);
            CHECK(rep.annihilated);
            // the top node keeps only its own tensor term
            if (V.module.level[j] == 0) CHECK(rep.vector.size() == 1);
        }
    }
}

TEST_CASE("inverse blocks agree with the route-sum column at the generator") {
    for (const char* t : {"A1", "A2"}) {
        RootSystem rs = RootSystem::from_type(t);
        const int cutoff = 3;
        WeightModule M = verma_truncated(rs, cutoff);
        WeightModule Ms = dual_verma_truncated(rs, cutoff);
        ShapovalovForm form(M, Ms);
        GradedTensorOperator F = f_tensor(quasi_r(Ms, M, cutoff));
        FHatMatrix fh = fhat_route_sum(Ms, F, M);
        InverseCheckReport rep = verify_inverse_blocks(form, fh, cutoff);
        for (auto& b : rep.blocks) {
            INFO(weight_str(b.nu), " ", b.detail);
            CHECK(b.ok);
        }
        CHECK(rep.ok);
    }
}

TEST_CASE("denominator audit explains every inverse denominator") {
    RootSystem rs = RootSystem::from_type("A2");
    const int cutoff = 3;
    WeightModule M = verma_truncated(rs, cutoff);
    WeightModule Ms = dual_verma_truncated(rs, cutoff);
    GradedTensorOperator F = f_tensor(quasi_r(Ms, M, cutoff));
    FHatMatrix fh = fhat_route_sum(Ms, F, M);
    std::vector<Scalar> values;
    for (auto& [key, vec] : fh.on_hw)
        for (auto& [r, v] : vec) values.push_back(v);
    REQUIRE(!values.empty());
    AuditReport rep = denominator_audit(rs, values, cutoff);
    INFO(rep.leftover);
    CHECK(rep.ok);
    CHECK(!rep.inventory.empty());
    // constant denominators pass trivially
    AuditReport triv = denominator_audit(rs, {Scalar(1), q_int(3)}, 2);
    CHECK(triv.ok);
    CHECK(triv.inventory.empty());
}

TEST_CASE("seeded points avoid the listed polynomials and are reproducible") {
    RootSystem rs = RootSystem::from_type("A1");
    std::vector<MultiPoly> avoid;
    for (int m = 1; m <= 3; ++m) avoid.push_back(genericity_factor(rs, {1}, m));
    auto pts1 = seeded_points(99, 10, avoid);
    auto pts2 = seeded_points(99, 10, avoid);
    REQUIRE(pts1.size() == 10);
    for (std::size_t i = 0; i < pts1.size(); ++i) {
        CHECK(pts1[i].q0 == pts2[i].q0);
        CHECK(pts1[i].z == pts2[i].z);
        std::array<Rat, kNumVars> point;
        point[0] = pts1[i].q0;
        for (int v = 0; v < kNumVars - 1; ++v) point[v + 1] = pts1[i].z[v];
        for (auto& p : avoid) CHECK(evaluate(p, point) != 0);
    }
}
