#include "shapo/rmatrix.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "shapo/linalg.hpp"
#include "shapo/util.hpp"

namespace shapo {

namespace {

Scalar q_minus_qinv() {
    return q_pow(AffineExponent(1)) - q_pow(AffineExponent(-1));
}

// Scale every column of op by q^{sign * (w_col, alpha)}.
SparseMat cartan_scale_cols(const WeightModule& M, const SparseMat& op, int alpha, int sign) {
    SparseMat r = SparseMat::zero(op.rows, op.cols);
    for (int c = 0; c < op.cols; ++c) {
        if (op.col[c].empty()) continue;
        r.col[c] = sparse_scale(op.col[c], M.cartan_monomial(c, alpha, sign));
    }
    return r;
}

SparseVec cartan_scale_rows(const WeightModule& M, const SparseVec& v, int alpha, int sign) {
    SparseVec r;
    r.reserve(v.size());
    for (auto& [row, c] : v) r.emplace_back(row, c * M.cartan_monomial(row, alpha, sign));
    return r;
}

} // namespace

UniversalF compute_universal_f(const WeightModule& M, int max_height) {
    if (!M.words || M.kind != "verma" || M.base.lambda_sign != 1)
        throw std::invalid_argument("universal legs require a symbolic Verma module");
    if (max_height > M.cutoff)
        throw std::invalid_argument("max height exceeds the module cutoff");
    const WordSpace& ws = *M.words;
    const RootSystem& rs = *M.rs;
    const int rank = rs.rank();
    const int dim = M.dim();

    UniversalF uf;
    uf.words = M.words;
    uf.M = &M;
    uf.max_height = max_height;
    uf.legs.assign(ws.dim(), SparseMat::zero(dim, dim));

    // Row access to the word-model multiplication: for basis word m, the
    // lists of (k, coeff) with  letter_a * word_k  resp.  word_k * letter_a
    // containing word m.
    std::vector<std::vector<std::vector<std::pair<int, Scalar>>>> lrow(rank), rrow(rank);
    for (int a = 0; a < rank; ++a) {
        lrow[a].resize(ws.dim());
        rrow[a].resize(ws.dim());
        for (int k = 0; k < ws.dim(); ++k) {
            if (ws.basis(k).level + 1 > max_height) continue;
            for (auto& [m, c] : ws.left_mult_col(a, k)) lrow[a][m].emplace_back(k, c);
            for (auto& [m, c] : ws.right_mult_col(a, k)) rrow[a][m].emplace_back(k, c);
        }
    }

    for (int b = 1; b < ws.dim(); ++b) {
        const auto& entry = ws.basis(b);
        const int h = entry.level;
        if (h > max_height) break;
        const Weight& mu = entry.nu;
        SparseMat& X = uf.legs[b];

        const bool is_letter = entry.word.size() == 1;
        const int letter = is_letter ? entry.word[0] : -1;

        // Process source columns by increasing level so X(e_a v) is known.
        for (int v = 0; v < dim; ++v) {
            const int lv = M.level[v];
            if (lv + h > M.cutoff) continue;
            const Weight target_off = weight_sub(M.offset[v], mu);
            const auto& target = M.indices_at(target_off);

            // right-hand sides w_a = X(e_a v) + C_a v for every simple a
            std::vector<SparseVec> rhs(rank);
            bool any = false;
            for (int a = 0; a < rank; ++a) {
                SparseVec w = mat_apply(X, M.e_act[a].col[v]);
                if (is_letter && letter == a) {
                    Weight alpha(rank, 0);
                    alpha[a] = 1;
                    Scalar hq = q_int(rs.pairing_affine(M.weight_of(v), alpha));
                    if (!hq.is_zero()) w = sparse_add(w, SparseVec{{v, hq}});
                }
                for (auto& [k, c] : lrow[a][b]) {
                    const SparseVec& bkv = uf.legs[k].col[v];
                    if (bkv.empty()) continue;
                    w = sparse_add(w, sparse_scale(cartan_scale_rows(M, bkv, a, -1), -c));
                }
                if (!rrow[a][b].empty()) {
                    Scalar qh = M.cartan_monomial(v, a, +1);
                    for (auto& [k, c] : rrow[a][b]) {
                        const SparseVec& bkv = uf.legs[k].col[v];
                        if (bkv.empty()) continue;
                        w = sparse_add(w, sparse_scale(bkv, c * qh));
                    }
                }
                if (!w.empty()) any = true;
                rhs[a] = std::move(w);
            }
            if (target.empty()) {
                if (any)
                    throw math_error("quasi_r: inconsistent system at mu=" + weight_str(mu));
                continue;
            }

            // solve e_a x = rhs_a for x in the target weight space
            std::vector<DenseVec> amat;
            DenseVec bvec;
            for (int a = 0; a < rank; ++a) {
                Weight img_off = target_off;
                img_off[a] += 1;
                const auto& img = M.indices_at(img_off);
                std::map<int, int> img_pos;
                for (std::size_t s = 0; s < img.size(); ++s) img_pos[img[s]] = (int)s;
                std::vector<DenseVec> rows(img.size(), DenseVec(target.size()));
                for (std::size_t t = 0; t < target.size(); ++t) {
                    for (auto& [row, c] : M.e_act[a].col[target[t]]) {
                        auto it = img_pos.find(row);
                        if (it != img_pos.end()) rows[it->second][t] = c;
                    }
                }
                DenseVec rv(img.size());
                for (auto& [row, c] : rhs[a]) {
                    auto it = img_pos.find(row);
                    if (it == img_pos.end())
                        throw math_error("quasi_r: inconsistent system at mu=" + weight_str(mu));
                    rv[it->second] = c;
                }
                for (std::size_t s = 0; s < rows.size(); ++s) {
                    amat.push_back(std::move(rows[s]));
                    bvec.push_back(std::move(rv[s]));
                }
            }
            DenseVec x;
            try {
                x = solve_unique(std::move(amat), std::move(bvec), "quasi_r");
            } catch (const math_error& e) {
                throw math_error(std::string(e.what()) + " at mu=" + weight_str(mu));
            }
            SparseVec col;
            for (std::size_t t = 0; t < target.size(); ++t)
                if (!x[t].is_zero()) col.emplace_back(target[t], x[t]);
            std::sort(col.begin(), col.end(),
                      [](const auto& p, const auto& q2) { return p.first < q2.first; });
            X.col[v] = std::move(col);
        }
    }
    return uf;
}

const SparseMat* GradedTensorOperator::entry(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? nullptr : &it->second;
}

Weight GradedTensorOperator::drop(int i, int j) const {
    return weight_sub(V->offset[i], V->offset[j]);
}

std::vector<Weight> GradedTensorOperator::heights() const {
    std::set<Weight> mus;
    for (auto& [key, op] : entries) mus.insert(drop(key.first, key.second));
    std::vector<Weight> out(mus.begin(), mus.end());
    std::sort(out.begin(), out.end(), [](const Weight& a, const Weight& b) {
        int ha = weight_height(a), hb = weight_height(b);
        if (ha != hb) return ha < hb;
        return a < b;
    });
    return out;
}

GradedTensorOperator evaluate_first_leg(const WeightModule& V, const UniversalF& uf,
                                        const Scalar& scale, const Scalar& diag) {
    GradedTensorOperator op;
    op.V = &V;
    op.M = uf.M;
    op.max_height = uf.max_height;
    op.diag = diag;

    // pi_V(word) by recursive products, memoized
    std::map<Word, SparseMat> pi;
    std::function<const SparseMat&(const Word&)> word_matrix =
        [&](const Word& w) -> const SparseMat& {
        auto it = pi.find(w);
        if (it != pi.end()) return it->second;
        SparseMat m;
        if (w.empty()) {
            m = SparseMat::identity(V.dim());
        } else {
            Word tail(w.begin() + 1, w.end());
            m = mat_mul(V.e_act[w[0]], word_matrix(tail));
        }
        return pi.emplace(w, std::move(m)).first->second;
    };

    const WordSpace& ws = *uf.words;
    for (int k = 1; k < ws.dim(); ++k) {
        if (ws.basis(k).level > uf.max_height) break;
        if (uf.legs[k].is_zero()) continue;
        const SparseMat& piv = word_matrix(ws.basis(k).word);
        SparseMat scaled = scale.is_one() ? uf.legs[k] : mat_scale(uf.legs[k], scale);
        for (int j = 0; j < piv.cols; ++j) {
            for (auto& [i, c] : piv.col[j]) {
                auto key = std::make_pair(i, j);
                auto it = op.entries.find(key);
                SparseMat term = c.is_one() ? scaled : mat_scale(scaled, c);
                if (it == op.entries.end())
                    op.entries.emplace(key, std::move(term));
                else
                    it->second = mat_add(it->second, term);
            }
        }
    }
    for (auto it = op.entries.begin(); it != op.entries.end();) {
        if (it->second.is_zero())
            it = op.entries.erase(it);
        else
            ++it;
    }
    return op;
}

GradedTensorOperator quasi_r(const WeightModule& V, const WeightModule& M, int max_mu_height) {
    UniversalF uf = compute_universal_f(M, max_mu_height);
    return evaluate_first_leg(V, uf, q_minus_qinv(), Scalar(1));
}

GradedTensorOperator f_tensor(const GradedTensorOperator& rhat) {
    GradedTensorOperator f;
    f.V = rhat.V;
    f.M = rhat.M;
    f.max_height = rhat.max_height;
    Scalar denom = q_minus_qinv();
    f.diag = (rhat.diag - Scalar(1)) / denom;
    for (auto& [key, op] : rhat.entries) f.entries.emplace(key, mat_scale(op, denom.inverse()));
    return f;
}

IntertwineReport check_intertwining(const GradedTensorOperator& f) {
    IntertwineReport rep;
    const WeightModule& V = *f.V;
    const WeightModule& M = *f.M;
    const RootSystem& rs = *V.rs;
    const int rank = rs.rank();

    auto op_or_null = [&](int i, int j) -> const SparseMat* { return f.entry(i, j); };

    for (int a = 0; a < rank; ++a) {
        Weight alpha(rank, 0);
        alpha[a] = 1;
        for (int i = 0; i < V.dim(); ++i) {
            for (int j = 0; j < V.dim(); ++j) {
                Weight mu = weight_sub(V.offset[i], V.offset[j]);
                Weight mu_shift = weight_sub(mu, alpha);
                const bool has_mu = weight_nonneg(mu) && weight_height(mu) >= 1;
                const bool has_shift = weight_nonneg(mu_shift);
                if (!has_mu && !has_shift) continue;
                const int hmu = weight_height(mu);
                if (hmu > f.max_height) continue;
                // term by term on each safe column
                for (int c = 0; c < M.dim(); ++c) {
                    if (M.cutoff >= 0 && M.trunc_level[c] + std::max(hmu, 0) > M.cutoff) continue;
                    SparseVec lhs;
                    // [1 (x) e_a, F_ij]
                    if (const SparseMat* fij = op_or_null(i, j)) {
                        lhs = sparse_add(lhs, mat_apply(M.e_act[a], fij->col[c]));
                        lhs = sparse_add(lhs, sparse_scale(mat_apply(*fij, M.e_act[a].col[c]),
                                                           Scalar(-1)));
                    }
                    // (e_a (x) q^{-h_a}) F - F (e_a (x) q^{h_a}), gathered over l
                    for (int l = 0; l < V.dim(); ++l) {
                        Scalar pil = mat_get(V.e_act[a], i, l);
                        if (!pil.is_zero()) {
                            if (const SparseMat* flj = op_or_null(l, j)) {
                                SparseVec t = cartan_scale_rows(M, flj->col[c], a, -1);
                                lhs = sparse_add(lhs, sparse_scale(t, pil));
                            }
                            if (l == j && !f.diag.is_zero()) {
                                SparseVec t{{c, M.cartan_monomial(c, a, -1) * pil * f.diag}};
                                lhs = sparse_add(lhs, t);
                            }
                        }
                        Scalar plj = mat_get(V.e_act[a], l, j);
                        if (!plj.is_zero()) {
                            Scalar qh = M.cartan_monomial(c, a, +1);
                            if (const SparseMat* fil = op_or_null(i, l)) {
                                lhs = sparse_add(lhs,
                                                 sparse_scale(fil->col[c], -plj * qh));
                            }
                            if (l == i && !f.diag.is_zero()) {
                                SparseVec t{{c, -plj * qh * f.diag}};
                                lhs = sparse_add(lhs, t);
                            }
                        }
                    }
                    // rhs: pi(e_a)_{ij} [h_a]_q
                    SparseVec rhs;
                    Scalar pij = mat_get(V.e_act[a], i, j);
                    if (!pij.is_zero()) {
                        Scalar hq = q_int(rs.pairing_affine(M.weight_of(c), alpha));
                        if (!hq.is_zero()) rhs.emplace_back(c, pij * hq);
                    }
                    ++rep.checked_entries;
                    if (lhs != rhs) {
                        rep.ok = false;
                        if (rep.first_failure.empty()) {
                            rep.first_failure = "alpha=" + std::to_string(a + 1) +
                                                " (i,j)=(" + std::to_string(i) + "," +
                                                std::to_string(j) + ") col=" + std::to_string(c);
                        }
                    }
                }
            }
        }
    }
    return rep;
}

} // namespace shapo
