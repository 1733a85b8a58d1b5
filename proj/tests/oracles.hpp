#ifndef SHAPO_TEST_ORACLES_HPP
#define SHAPO_TEST_ORACLES_HPP

// Independent combinatorial oracles used by the tests.  These never call
// into the code paths they check.

#include "shapo/module.hpp"
#include "shapo/rootsys.hpp"

namespace shapo::testing {

// Number of ways to write nu as a Z+ combination of positive roots.
inline long kostant_count(const RootSystem& rs, const Weight& nu) {
    const auto& roots = rs.positive_roots();
    std::function<long(Weight, std::size_t)> rec = [&](Weight rest, std::size_t idx) -> long {
        if (weight_is_zero(rest)) return 1;
        if (idx == roots.size()) return 0;
        long total = rec(rest, idx + 1);
        Weight cur = rest;
        for (;;) {
            cur = weight_sub(cur, roots[idx]);
            if (!weight_nonneg(cur)) break;
            total += rec(cur, idx + 1);
        }
        return total;
    };
    return rec(nu, 0);
}

// [h_alpha]_q on the weight of basis vector i.
inline Scalar h_qint(const WeightModule& m, int i, int alpha) {
    Weight a(m.rs->rank(), 0);
    a[alpha] = 1;
    return q_int(m.rs->pairing_affine(m.weight_of(i), a));
}

// Checks [e_a, f_b] = delta_{ab} [h_a]_q on all columns with room below the
// truncation level.
inline bool cartan_relation_holds(const WeightModule& m) {
    for (int a = 0; a < m.rs->rank(); ++a) {
        for (int b = 0; b < m.rs->rank(); ++b) {
            SparseMat ef = mat_mul(m.e_act[a], m.f_act[b]);
            SparseMat fe = mat_mul(m.f_act[b], m.e_act[a]);
            for (int c = 0; c < m.dim(); ++c) {
                if (m.cutoff >= 0 && m.trunc_level[c] + 1 > m.cutoff) continue;
                SparseVec lhs = sparse_add(ef.col[c], sparse_scale(fe.col[c], Scalar(-1)));
                SparseVec rhs;
                if (a == b) {
                    Scalar h = h_qint(m, c, a);
                    if (!h.is_zero()) rhs.emplace_back(c, h);
                }
                if (lhs != rhs) return false;
            }
        }
    }
    return true;
}

// Serre relation for the given action family (e or f) as exact matrices.
inline bool serre_holds(const WeightModule& m, const std::vector<SparseMat>& act) {
    const RootSystem& rs = *m.rs;
    for (int i = 0; i < rs.rank(); ++i) {
        for (int j = 0; j < rs.rank(); ++j) {
            if (i == j) continue;
            const int n = 1 - rs.cartan()[i][j];
            SparseMat acc = SparseMat::zero(m.dim(), m.dim());
            for (int k = 0; k <= n; ++k) {
                SparseMat t = SparseMat::identity(m.dim());
                for (int s = 0; s < n - k; ++s) t = mat_mul(act[i], t);
                t = mat_mul(act[j], t);
                for (int s = 0; s < k; ++s) t = mat_mul(act[i], t);
                Scalar c = q_binomial(n, k, rs.sym()[i]);
                if (k % 2 == 1) c = -c;
                acc = mat_add(acc, mat_scale(t, c));
            }
            for (int c = 0; c < m.dim(); ++c) {
                if (m.cutoff >= 0 && m.trunc_level[c] + n + 1 > m.cutoff) continue;
                if (!acc.col[c].empty()) return false;
            }
        }
    }
    return true;
}

} // namespace shapo::testing

#endif
