#include "shapo/findim.hpp"

#include <algorithm>

#include "shapo/util.hpp"

namespace shapo {

std::vector<Rat> weight_from_dynkin(const RootSystem& rs, const std::vector<int>& dynkin) {
    const int r = rs.rank();
    if ((int)dynkin.size() != r)
        throw std::invalid_argument("highest weight needs one label per simple root");
    for (int m : dynkin)
        if (m < 0) throw std::invalid_argument("highest weight must be dominant integral");
    // solve gram * c = (m_i d_i)
    std::vector<std::vector<Rat>> a(r, std::vector<Rat>(r + 1));
    for (int i = 0; i < r; ++i) {
        Weight ei(r, 0), unused(r, 0);
        ei[i] = 1;
        for (int j = 0; j < r; ++j) {
            Weight ej(r, 0);
            ej[j] = 1;
            a[i][j] = Rat((long)rs.pairing(ei, ej));
        }
        a[i][r] = Rat((long)dynkin[i] * rs.sym()[i]);
    }
    // plain rational elimination
    for (int c = 0; c < r; ++c) {
        int piv = c;
        while (piv < r && a[piv][c] == 0) ++piv;
        if (piv == r) throw math_error("gram matrix is singular");
        std::swap(a[piv], a[c]);
        for (int i = 0; i < r; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (int j = c; j <= r; ++j) a[i][j] -= f * a[c][j];
        }
    }
    std::vector<Rat> hw(r);
    for (int i = 0; i < r; ++i) hw[i] = a[i][r] / a[i][i];
    return hw;
}

long weyl_dim(const RootSystem& rs, const std::vector<Rat>& hw) {
    std::vector<Rat> shifted(hw);
    for (int i = 0; i < rs.rank(); ++i) shifted[i] += rs.rho()[i];
    Rat dim = 1;
    for (const auto& alpha : rs.positive_roots()) {
        dim *= Rat((long)rs.pairing_fixed(shifted, alpha)) /
               Rat((long)rs.pairing_rho(alpha));
    }
    if (dim.get_den() != 1) throw math_error("Weyl dimension is not an integer");
    return (long)dim.get_num().get_si();
}

int module_depth(const RootSystem& rs, const std::vector<Rat>& hw) {
    // reflect to the antidominant chamber; hw - w0(hw) lies in the root lattice
    std::vector<Rat> cur = hw;
    for (int guard = 0; guard < 4096; ++guard) {
        int found = -1;
        for (int i = 0; i < rs.rank(); ++i) {
            Weight alpha(rs.rank(), 0);
            alpha[i] = 1;
            Rat c = 0;
            for (int j = 0; j < rs.rank(); ++j) {
                Weight ej(rs.rank(), 0);
                ej[j] = 1;
                c += cur[j] * Rat((long)rs.pairing(ej, alpha));
            }
            if (c > 0) {
                found = i;
                break;
            }
        }
        if (found < 0) {
            Rat depth = 0;
            for (int i = 0; i < rs.rank(); ++i) depth += hw[i] - cur[i];
            if (depth.get_den() != 1 || depth < 0)
                throw math_error("module depth is not a non-negative integer");
            return (int)depth.get_num().get_si();
        }
        cur = rs.reflect(cur, found);
    }
    throw math_error("antidominant reflection did not terminate");
}

FinDimModule finite_dim_module(const RootSystem& rs, const std::vector<int>& dynkin) {
    FinDimModule out;
    out.hw = weight_from_dynkin(rs, dynkin);
    out.dim = weyl_dim(rs, out.hw);
    if (out.dim > 64) throw std::invalid_argument("finite-dimensional module too large (cap 64)");
    out.depth = module_depth(rs, out.hw);
    const int cutoff = out.depth + 1;

    WeightModule M = verma_numeric(rs, cutoff, out.hw);
    WeightModule Mstar = dual_verma_numeric(rs, cutoff, out.hw);
    ShapovalovForm form(M, Mstar);

    // Radical per weight block; pivot columns survive into the quotient.
    std::vector<int> new_index(M.dim(), -1);
    long total_rank = 0;
    for (const auto& nu : M.words->weights()) {
        DenseMat p = form.block(nu);
        std::vector<int> pivots = rref(p);
        if (weight_height(nu) > out.depth && !pivots.empty())
            throw math_error("pairing survives past the module depth");
        total_rank += (long)pivots.size();
        const auto& cols = M.indices_at(weight_neg(nu));
        for (int local : pivots) out.survivor.push_back(cols[local]);
        out.block_rref[weight_neg(nu)] = std::move(p);
        out.block_pivots[weight_neg(nu)] = std::move(pivots);
    }
    if (total_rank != out.dim)
        throw math_error("kernel quotient dimension disagrees with the Weyl formula");
    std::sort(out.survivor.begin(), out.survivor.end());
    for (std::size_t t = 0; t < out.survivor.size(); ++t) new_index[out.survivor[t]] = (int)t;

    // rewrite a cover basis index as quotient coordinates
    auto rewrite = [&](int old, std::vector<std::pair<int, Scalar>>& acc, const Scalar& scale) {
        if (new_index[old] >= 0) {
            acc.emplace_back(new_index[old], scale);
            return;
        }
        const Weight& off = M.offset[old];
        const auto& cols = M.indices_at(off);
        const auto& piv = out.block_pivots.at(off);
        const auto& rr = out.block_rref.at(off);
        int local = (int)(std::find(cols.begin(), cols.end(), old) - cols.begin());
        for (std::size_t r = 0; r < piv.size(); ++r) {
            const Scalar& c = rr[r][local];
            if (!c.is_zero()) acc.emplace_back(new_index[cols[piv[r]]], scale * c);
        }
    };

    WeightModule& V = out.module;
    V.rs = &rs;
    V.kind = "quotient";
    V.cutoff = -1;
    V.base.fixed = out.hw;
    const int n = (int)out.survivor.size();
    for (int t = 0; t < n; ++t) {
        int o = out.survivor[t];
        V.offset.push_back(M.offset[o]);
        V.level.push_back(M.level[o]);
        V.trunc_level.push_back(0);
        V.label.push_back(M.label[o]);
    }
    V.e_act.assign(rs.rank(), SparseMat::zero(n, n));
    V.f_act.assign(rs.rank(), SparseMat::zero(n, n));
    for (int i = 0; i < rs.rank(); ++i) {
        for (int t = 0; t < n; ++t) {
            for (auto* pair_act : {&M.e_act, &M.f_act}) {
                std::vector<std::pair<int, Scalar>> acc;
                for (auto& [o2, c] : (*pair_act)[i].col[out.survivor[t]]) rewrite(o2, acc, c);
                std::sort(acc.begin(), acc.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                SparseVec merged;
                for (auto& [idx, c] : acc) {
                    if (!merged.empty() && merged.back().first == idx)
                        merged.back().second += c;
                    else
                        merged.emplace_back(idx, c);
                }
                SparseVec clean;
                for (auto& [idx, c] : merged)
                    if (!c.is_zero()) clean.emplace_back(idx, c);
                (pair_act == &M.e_act ? V.e_act : V.f_act)[i].col[t] = std::move(clean);
            }
        }
    }
    V.finalize();
    return out;
}

WeightModule change_basis(const WeightModule& m, const std::map<Weight, DenseMat>& T) {
    WeightModule out = m;
    out.kind = m.kind;
    std::map<Weight, DenseMat> inv;
    for (auto& [off, t] : T) {
        if (t.size() != m.indices_at(off).size())
            throw std::invalid_argument("change_basis: block size mismatch");
        inv[off] = bareiss_inverse(t).inverse;
    }
    auto block_of = [&](const Weight& off) -> const DenseMat* {
        auto it = T.find(off);
        return it == T.end() ? nullptr : &it->second;
    };
    auto conjugate = [&](const SparseMat& old) {
        SparseMat fresh = SparseMat::zero(m.dim(), m.dim());
        for (const auto& [off, idx] : m.by_offset) {
            const DenseMat* t = block_of(off);
            for (std::size_t jt = 0; jt < idx.size(); ++jt) {
                // new basis vector jt of this block in old coordinates
                SparseVec v;
                if (t) {
                    for (std::size_t s = 0; s < idx.size(); ++s)
                        if (!(*t)[s][jt].is_zero()) v.emplace_back(idx[s], (*t)[s][jt]);
                } else {
                    v.emplace_back(idx[jt], Scalar(1));
                }
                SparseVec w = mat_apply(old, v);
                // express w blockwise in the new basis
                std::map<Weight, std::map<int, Scalar>> parts;
                for (auto& [row, c] : w) parts[m.offset[row]][row] = c;
                SparseVec col;
                for (auto& [off2, comp] : parts) {
                    const auto& idx2 = m.indices_at(off2);
                    auto invIt = inv.find(off2);
                    if (invIt == inv.end()) {
                        for (auto& [row, c] : comp) col.emplace_back(row, c);
                    } else {
                        DenseVec dense(idx2.size());
                        for (std::size_t s = 0; s < idx2.size(); ++s) {
                            auto f = comp.find(idx2[s]);
                            if (f != comp.end()) dense[s] = f->second;
                        }
                        for (std::size_t s2 = 0; s2 < idx2.size(); ++s2) {
                            Scalar acc;
                            for (std::size_t s = 0; s < idx2.size(); ++s)
                                if (!invIt->second[s2][s].is_zero() && !dense[s].is_zero())
                                    acc += invIt->second[s2][s] * dense[s];
                            if (!acc.is_zero()) col.emplace_back(idx2[s2], acc);
                        }
                    }
                }
                std::sort(col.begin(), col.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                fresh.col[idx[jt]] = std::move(col);
            }
        }
        return fresh;
    };
    for (int i = 0; i < m.rs->rank(); ++i) {
        out.e_act[i] = conjugate(m.e_act[i]);
        out.f_act[i] = conjugate(m.f_act[i]);
    }
    out.finalize();
    return out;
}

} // namespace shapo
