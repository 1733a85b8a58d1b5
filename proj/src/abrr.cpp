#include "shapo/abrr.hpp"

#include <chrono>

#include "shapo/util.hpp"

namespace shapo {

FkSeriesResult fk_series(const WeightModule& V, const GradedTensorOperator& F,
                         const WeightModule& M, int k_max, bool full_ops,
                         std::vector<StepCost>* bench) {
    if (M.kind != "verma")
        throw std::invalid_argument("fk_series: the second factor must be a Verma module");
    FkSeriesResult res;
    res.fhat.V = &V;
    res.fhat.M = &M;
    res.fhat.full = full_ops;
    const RootSystem& rs = *V.rs;
    const int n = V.dim();
    if (k_max < 0) k_max = n + 1;

    auto drop_of = [&](int i, int j) { return weight_sub(V.offset[i], V.offset[j]); };

    // phi(D): scale the (i,j) entry column by phi(-eta_mu(w_col)); columns
    // past the safe level are dropped.
    auto phi_d = [&](const std::pair<int, int>& key, SparseMat& op) {
        Weight mu = drop_of(key.first, key.second);
        const int h = weight_height(mu);
        for (int c = 0; c < M.dim(); ++c) {
            if (op.col[c].empty()) continue;
            if (M.trunc_level[c] + h > M.cutoff) {
                op.col[c].clear();
                continue;
            }
            op.col[c] = sparse_scale(op.col[c], a_coeff_at(rs, mu, M.weight_of(c)));
        }
    };

    if (!full_ops) {
        // Column mode: the recursion applied to the highest-weight generator
        // only, which is what the inverse comparison consumes.
        const ModuleWeight hw = M.weight_of(0);
        std::map<std::pair<int, int>, SparseVec> vcur, vacc;
        for (auto& [key, op] : F.entries) {
            if (op.col[0].empty()) continue;
            Weight mu = drop_of(key.first, key.second);
            SparseVec v = sparse_scale(op.col[0], a_coeff_at(rs, mu, hw));
            if (!v.empty()) vcur.emplace(key, std::move(v));
        }
        res.nonzero_terms = 1;
        int k = 1;
        std::vector<StepCost> dummy;
        while (!vcur.empty()) {
            if (k > k_max)
                throw math_error("fk_series: no termination within k_max = " +
                                 std::to_string(k_max));
            auto t0 = std::chrono::steady_clock::now();
            OpSnapshot ops0 = bench ? snapshot_ops() : OpSnapshot{};
            ++res.nonzero_terms;
            for (auto& [key, v] : vcur) {
                auto it = vacc.find(key);
                if (it == vacc.end())
                    vacc.emplace(key, v);
                else
                    it->second = sparse_add(it->second, v);
            }
            std::map<std::pair<int, int>, SparseVec> next;
            for (auto& [fkey, fop] : F.entries) {
                for (auto& [ckey, cv] : vcur) {
                    if (fkey.second != ckey.first) continue;
                    SparseVec w = mat_apply(fop, cv);
                    if (w.empty()) continue;
                    auto key = std::make_pair(fkey.first, ckey.second);
                    auto it = next.find(key);
                    if (it == next.end())
                        next.emplace(key, std::move(w));
                    else
                        it->second = sparse_add(it->second, w);
                }
            }
            for (auto it = next.begin(); it != next.end();) {
                Weight mu = drop_of(it->first.first, it->first.second);
                if (weight_height(mu) > M.cutoff) {
                    it = next.erase(it);
                    continue;
                }
                it->second = sparse_scale(it->second, a_coeff_at(rs, mu, hw));
                if (it->second.empty())
                    it = next.erase(it);
                else
                    ++it;
            }
            if (bench) {
                OpSnapshot d = diff_ops(ops0, snapshot_ops());
                double ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
                bench->push_back({k, ms, d.add + d.mul + d.div + d.gcd, (long)next.size()});
            }
            vcur = std::move(next);
            ++k;
        }
        for (auto& [key, v] : vacc)
            if (!v.empty()) res.fhat.on_hw.emplace(key, std::move(v));
        return res;
    }

    // F^{(1)} = phi(D)(F * 1 (x) 1) = phi(D)(F)
    std::map<std::pair<int, int>, SparseMat> cur;
    for (auto& [key, op] : F.entries) {
        SparseMat t = op;
        phi_d(key, t);
        if (!t.is_zero()) cur.emplace(key, std::move(t));
    }
    res.nonzero_terms = 1; // the k = 0 identity term

    std::map<std::pair<int, int>, SparseMat> acc; // sum over k >= 1
    int k = 1;
    while (!cur.empty()) {
        if (k > k_max)
            throw math_error("fk_series: no termination within k_max = " + std::to_string(k_max));
        auto t0 = std::chrono::steady_clock::now();
        OpSnapshot ops0 = bench ? snapshot_ops() : OpSnapshot{};
        ++res.nonzero_terms;
        for (auto& [key, op] : cur) {
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(key, op);
            else
                it->second = mat_add(it->second, op);
        }
        // F^{(k+1)} = phi(D)(F * F^{(k)})
        std::map<std::pair<int, int>, SparseMat> next;
        for (auto& [fkey, fop] : F.entries) {
            for (auto& [ckey, cop] : cur) {
                if (fkey.second != ckey.first) continue;
                SparseMat prod = mat_mul(fop, cop);
                if (prod.is_zero()) continue;
                auto key = std::make_pair(fkey.first, ckey.second);
                auto it = next.find(key);
                if (it == next.end())
                    next.emplace(key, std::move(prod));
                else
                    it->second = mat_add(it->second, prod);
            }
        }
        for (auto it = next.begin(); it != next.end();) {
            phi_d(it->first, it->second);
            if (it->second.is_zero())
                it = next.erase(it);
            else
                ++it;
        }
        if (bench) {
            OpSnapshot d = diff_ops(ops0, snapshot_ops());
            double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
            bench->push_back({k, ms, d.add + d.mul + d.div + d.gcd, (long)next.size()});
        }
        cur = std::move(next);
        ++k;
    }

    for (auto& [key, op] : acc) {
        if (!op.col[0].empty()) res.fhat.on_hw[key] = op.col[0];
        res.fhat.ops.emplace(key, std::move(op));
    }
    return res;
}

AbrrReport abrr_identity_check(const WeightModule& V, const WeightModule& M,
                               const GradedTensorOperator& rhat, const FHatMatrix& fhat) {
    AbrrReport rep;
    if (!fhat.full) throw std::invalid_argument("abrr_identity_check needs full operators");
    const RootSystem& rs = *V.rs;
    const int n = V.dim();

    auto fhat_op = [&](int i, int j) -> const SparseMat* {
        auto it = fhat.ops.find({i, j});
        return it == fhat.ops.end() ? nullptr : &it->second;
    };

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Weight mu = weight_sub(V.offset[i], V.offset[j]);
            if (!weight_nonneg(mu)) continue;
            const int h = weight_height(mu);
            if (h > rhat.max_height) continue;
            for (int c = 0; c < M.dim(); ++c) {
                if (M.trunc_level[c] + h > M.cutoff) continue;
                // LHS = sum_l rhat_{il} fhat_{lj} with both diagonals implicit
                SparseVec lhs;
                if (const SparseMat* fij = fhat_op(i, j)) lhs = fij->col[c]; // rhat diag = 1
                if (i != j) {
                    if (const SparseMat* rij = rhat.entry(i, j))
                        lhs = sparse_add(lhs, rij->col[c]); // fhat diag = 1
                } else {
                    lhs = sparse_add(lhs, SparseVec{{c, Scalar(1)}});
                }
                for (int l = 0; l < n; ++l) {
                    if (l == i || l == j) continue;
                    const SparseMat* ril = rhat.entry(i, l);
                    const SparseMat* flj = fhat_op(l, j);
                    if (!ril || !flj || flj->col[c].empty()) continue;
                    lhs = sparse_add(lhs, mat_apply(*ril, flj->col[c]));
                }
                // RHS = q^{-2 eta_mu(w_c)} fhat_{ij} col c (diagonal untouched)
                SparseVec rhs;
                if (i == j) {
                    rhs.emplace_back(c, Scalar(1));
                } else if (const SparseMat* fij = fhat_op(i, j)) {
                    AffineExponent eta2 = rs.eta_at(rs.eta(mu), M.weight_of(c)) * 2;
                    rhs = sparse_scale(fij->col[c], q_pow(-eta2));
                }
                ++rep.checked_entries;
                if (lhs != rhs) {
                    rep.ok = false;
                    if (rep.first_failure.empty())
                        rep.first_failure = "(i,j)=(" + std::to_string(i) + "," +
                                            std::to_string(j) + ") col=" + std::to_string(c);
                }
            }
        }
    }
    return rep;
}

} // namespace shapo
