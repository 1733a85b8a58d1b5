#include <doctest.h>

#include "oracles.hpp"
#include "shapo/findim.hpp"
#include "shapo/rmatrix.hpp"
#include "shapo/util.hpp"

using namespace shapo;

TEST_CASE("A1 quasi R-matrix matches the q-exponential closed form") {
    RootSystem rs = RootSystem::from_type("A1");
    const int cutoff = 8;
    WeightModule M = verma_truncated(rs, cutoff);
    WeightModule Mstar = dual_verma_truncated(rs, cutoff);
    GradedTensorOperator rhat = quasi_r(Mstar, M, cutoff);

    Scalar qmq = q_pow(AffineExponent(1)) - q_pow(AffineExponent(-1));
    for (int k = 1; k <= cutoff; ++k) {
        // (q - q^{-1})^k q^{k(k-1)/2} / [k]_q!  e^k (x) f^k
        Scalar coeff(1);
        for (int s = 0; s < k; ++s) coeff *= qmq;
        coeff *= q_pow(AffineExponent((std::int64_t)k * (k - 1) / 2));
        coeff /= q_factorial(k);
        SparseMat fk = SparseMat::identity(M.dim());
        for (int s = 0; s < k; ++s) fk = mat_mul(M.f_act[0], fk);
        SparseMat expected = mat_scale(fk, coeff);
        // compare on every valid first-leg pair (m+k, m)
        for (int m = 0; m + k <= cutoff; ++m) {
            const SparseMat* got = rhat.entry(m + k, m);
            REQUIRE(got != nullptr);
            for (int c = 0; c < M.dim(); ++c) {
                if (M.level[c] + k > cutoff) continue;
                CHECK(got->col[c] == expected.col[c]);
            }
        }
    }
    // mu = 0 is the identity component
    CHECK(rhat.diag == Scalar(1));
}

TEST_CASE("degree-1 component of F is sum of e_a (x) f_a") {
    RootSystem rs = RootSystem::from_type("A2");
    WeightModule M = verma_truncated(rs, 3);
    FinDimModule V = finite_dim_module(rs, {1, 0});
    GradedTensorOperator f = f_tensor(quasi_r(V.module, M, 3));
    CHECK(f.diag.is_zero());
    for (int a = 0; a < rs.rank(); ++a) {
        Weight alpha(rs.rank(), 0);
        alpha[a] = 1;
        for (int i = 0; i < V.module.dim(); ++i) {
            for (int j = 0; j < V.module.dim(); ++j) {
                if (weight_sub(V.module.offset[i], V.module.offset[j]) != alpha) continue;
                Scalar pij = mat_get(V.module.e_act[a], i, j);
                const SparseMat* got = f.entry(i, j);
                if (pij.is_zero()) continue;
                REQUIRE(got != nullptr);
                SparseMat expected = mat_scale(M.f_act[a], pij);
                for (int c = 0; c < M.dim(); ++c) {
                    if (M.level[c] + 1 > M.cutoff) continue;
                    CHECK(got->col[c] == expected.col[c]);
                }
            }
        }
    }
}

TEST_CASE("triangularity: entries only at positive weight drops") {
    RootSystem rs = RootSystem::from_type("B2");
    WeightModule M = verma_truncated(rs, 3);
    WeightModule Mstar = dual_verma_truncated(rs, 3);
    GradedTensorOperator rhat = quasi_r(Mstar, M, 3);
    for (auto& [key, op] : rhat.entries) {
        Weight mu = rhat.drop(key.first, key.second);
        CHECK(weight_nonneg(mu));
        CHECK(weight_height(mu) >= 1);
        // second leg lowers by exactly mu
        for (int c = 0; c < M.dim(); ++c)
            for (auto& [r, v] : op.col[c])
                CHECK(M.offset[r] == weight_sub(M.offset[c], mu));
    }
}

TEST_CASE("intertwining identity holds on the word model and a quotient") {
    for (const char* t : {"A1", "A2"}) {
        RootSystem rs = RootSystem::from_type(t);
        const int cutoff = t[0] == 'A' && t[1] == '1' ? 5 : 3;
        WeightModule M = verma_truncated(rs, cutoff);
        WeightModule Mstar = dual_verma_truncated(rs, cutoff);
        GradedTensorOperator f = f_tensor(quasi_r(Mstar, M, cutoff));
        IntertwineReport rep = check_intertwining(f);
        INFO(rep.first_failure);
        CHECK(rep.ok);
        CHECK(rep.checked_entries > 0);

        std::vector<int> labels(rs.rank(), 0);
        labels[0] = 1;
        FinDimModule V = finite_dim_module(rs, labels);
        GradedTensorOperator fv = f_tensor(quasi_r(V.module, M, cutoff));
        IntertwineReport repv = check_intertwining(fv);
        INFO(repv.first_failure);
        CHECK(repv.ok);
    }
}
