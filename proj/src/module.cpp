#include "shapo/module.hpp"

#include <algorithm>
#include <map>

#include "shapo/util.hpp"

namespace shapo {

SparseMat SparseMat::zero(int r, int c) {
    SparseMat m;
    m.rows = r;
    m.cols = c;
    m.col.resize(c);
    return m;
}

SparseMat SparseMat::identity(int n) {
    SparseMat m = zero(n, n);
    for (int i = 0; i < n; ++i) m.col[i].emplace_back(i, Scalar(1));
    return m;
}

bool SparseMat::is_zero() const {
    for (auto& c : col)
        if (!c.empty()) return false;
    return true;
}

SparseVec sparse_add(const SparseVec& a, const SparseVec& b) {
    SparseVec r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            r.push_back(a[i++]);
        } else if (b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            Scalar s = a[i].second + b[j].second;
            if (!s.is_zero()) r.emplace_back(a[i].first, std::move(s));
            ++i, ++j;
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(b[j]);
    return r;
}

SparseVec sparse_scale(const SparseVec& a, const Scalar& c) {
    if (c.is_zero()) return {};
    SparseVec r;
    r.reserve(a.size());
    for (auto& [i, v] : a) r.emplace_back(i, v * c);
    return r;
}

SparseVec mat_apply(const SparseMat& m, const SparseVec& v) {
    SparseVec acc;
    for (auto& [j, c] : v) acc = sparse_add(acc, sparse_scale(m.col[j], c));
    return acc;
}

SparseMat mat_add(const SparseMat& a, const SparseMat& b) {
    SparseMat r = SparseMat::zero(a.rows, a.cols);
    for (int c = 0; c < a.cols; ++c) r.col[c] = sparse_add(a.col[c], b.col[c]);
    return r;
}

SparseMat mat_scale(const SparseMat& a, const Scalar& c) {
    SparseMat r = SparseMat::zero(a.rows, a.cols);
    if (c.is_zero()) return r;
    for (int j = 0; j < a.cols; ++j) r.col[j] = sparse_scale(a.col[j], c);
    return r;
}

SparseMat mat_mul(const SparseMat& a, const SparseMat& b) {
    SparseMat r = SparseMat::zero(a.rows, b.cols);
    for (int j = 0; j < b.cols; ++j) r.col[j] = mat_apply(a, b.col[j]);
    return r;
}

void mat_set(SparseMat& m, int r, int c, const Scalar& v) {
    auto& col = m.col[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& p, int row) { return p.first < row; });
    if (it != col.end() && it->first == r) {
        if (v.is_zero())
            col.erase(it);
        else
            it->second = v;
    } else if (!v.is_zero()) {
        col.insert(it, {r, v});
    }
}

Scalar mat_get(const SparseMat& m, int r, int c) {
    for (auto& [i, v] : m.col[c])
        if (i == r) return v;
    return Scalar();
}

ModuleWeight WeightModule::weight_of(int i) const {
    ModuleWeight w = base;
    w.offset = offset[i];
    return w;
}

Scalar WeightModule::cartan_monomial(int i, int root, int sign) const {
    Weight alpha(rs->rank(), 0);
    alpha[root] = 1;
    AffineExponent x = rs->pairing_affine(weight_of(i), alpha);
    return q_pow(sign >= 0 ? x : -x);
}

const std::vector<int>& WeightModule::indices_at(const Weight& off) const {
    static const std::vector<int> empty;
    auto it = by_offset.find(off);
    return it == by_offset.end() ? empty : it->second;
}

void WeightModule::finalize() {
    by_offset.clear();
    for (int i = 0; i < dim(); ++i) by_offset[offset[i]].push_back(i);
    for (auto& m : e_act)
        if (m.rows != dim() || m.cols != dim()) throw math_error("module: bad action shape");
    for (auto& m : f_act)
        if (m.rows != dim() || m.cols != dim()) throw math_error("module: bad action shape");
}

std::shared_ptr<const WordSpace> shared_word_space(const RootSystem& rs, int cutoff) {
    // Word spaces are immutable; modules built from the same system and
    // cutoff share one instance so basis indexing agrees everywhere.
    static std::map<std::pair<std::string, int>, std::weak_ptr<const WordSpace>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(rs.type_name() + ":" + std::to_string(rs.rank()), cutoff);
    if (auto sp = cache[key].lock()) {
        if (&sp->root_system() == &rs) return sp;
    }
    auto sp = std::make_shared<const WordSpace>(rs, cutoff);
    cache[key] = sp;
    return sp;
}

namespace {

// Raising action on a lowering word (or the mirror): the commutator walks
// the word left to right and inserts the q-integer of the Cartan exponent
// at each matching letter.
//   down=true : e_i on f-words in a highest-weight module of weight `base`
//   down=false: f_i on e-words in a lowest-weight module of weight `base`
struct CrossActionCtx {
    const RootSystem* rs;
    ModuleWeight base;
    bool down;
    std::map<std::pair<int, Word>, FreeVec> memo;

    const FreeVec& run(int i, const Word& w) {
        auto key = std::make_pair(i, w);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        FreeVec out;
        if (!w.empty()) {
            int j = w.front();
            Word tail(w.begin() + 1, w.end());
            // prepend j to the recursive image
            for (const auto& [tw, c] : run(i, tail)) {
                Word nw = tw;
                nw.insert(nw.begin(), j);
                out[nw] += c;
            }
            if (i == j) {
                ModuleWeight wt = base;
                wt.offset.assign(rs->rank(), 0);
                for (int l : tail) wt.offset[l] += down ? -1 : 1;
                Weight alpha(rs->rank(), 0);
                alpha[i] = 1;
                AffineExponent h = rs->pairing_affine(wt, alpha);
                Scalar coeff = q_int(h);
                if (!down) coeff = -coeff;
                if (!coeff.is_zero()) out[tail] += coeff;
            }
        }
        for (auto it2 = out.begin(); it2 != out.end();) {
            if (it2->second.is_zero())
                it2 = out.erase(it2);
            else
                ++it2;
        }
        auto [ins, ok] = memo.emplace(std::move(key), std::move(out));
        (void)ok;
        return ins->second;
    }
};

WeightModule build_word_module(const RootSystem& rs, int cutoff, const ModuleWeight& base,
                               bool highest, const char* kind, char gen) {
    WeightModule m;
    m.rs = &rs;
    m.kind = kind;
    m.cutoff = cutoff;
    m.base = base;
    m.words = shared_word_space(rs, cutoff);
    const WordSpace& ws = *m.words;
    const int n = ws.dim();

    for (int b = 0; b < n; ++b) {
        const auto& entry = ws.basis(b);
        m.offset.push_back(highest ? weight_neg(entry.nu) : entry.nu);
        m.level.push_back(entry.level);
        m.trunc_level.push_back(entry.level);
        m.label.push_back(word_str(entry.word, gen));
    }

    CrossActionCtx cross{&rs, base, highest, {}};

    m.e_act.assign(rs.rank(), SparseMat::zero(n, n));
    m.f_act.assign(rs.rank(), SparseMat::zero(n, n));
    for (int i = 0; i < rs.rank(); ++i) {
        for (int b = 0; b < n; ++b) {
            const Word& w = ws.basis(b).word;
            if (highest) {
                m.f_act[i].col[b] = ws.left_mult_col(i, b);
                m.e_act[i].col[b] = ws.project(cross.run(i, w));
            } else {
                m.e_act[i].col[b] = ws.left_mult_col(i, b);
                m.f_act[i].col[b] = ws.project(cross.run(i, w));
            }
        }
    }
    m.finalize();
    return m;
}

} // namespace

WeightModule verma_truncated(const RootSystem& rs, int cutoff) {
    ModuleWeight base;
    base.lambda_sign = 1;
    return build_word_module(rs, cutoff, base, true, "verma", 'f');
}

WeightModule verma_numeric(const RootSystem& rs, int cutoff, const std::vector<Rat>& hw) {
    ModuleWeight base;
    base.fixed = hw;
    return build_word_module(rs, cutoff, base, true, "verma", 'f');
}

WeightModule dual_verma_truncated(const RootSystem& rs, int cutoff) {
    ModuleWeight base;
    base.lambda_sign = -1;
    return build_word_module(rs, cutoff, base, false, "dual_verma", 'e');
}

WeightModule dual_verma_numeric(const RootSystem& rs, int cutoff, const std::vector<Rat>& hw) {
    ModuleWeight base;
    base.fixed.reserve(hw.size());
    for (auto& x : hw) base.fixed.push_back(-x);
    return build_word_module(rs, cutoff, base, false, "dual_verma", 'e');
}

WeightModule tensor_module(const WeightModule& V, const WeightModule& W) {
    WeightModule m;
    m.rs = V.rs;
    m.kind = "tensor";
    m.base = module_weight_add(
        ModuleWeight{V.base.lambda_sign, V.base.fixed, Weight(V.rs->rank(), 0)},
        ModuleWeight{W.base.lambda_sign, W.base.fixed, Weight(W.rs->rank(), 0)});
    m.base.offset.clear();
    const bool vt = V.cutoff >= 0, wt = W.cutoff >= 0;
    m.cutoff = vt && wt ? std::min(V.cutoff, W.cutoff) : vt ? V.cutoff : wt ? W.cutoff : -1;

    const int dv = V.dim(), dw = W.dim(), n = dv * dw;
    auto idx = [&](int a, int b) { return a * dw + b; };
    m.offset.resize(n);
    m.level.resize(n);
    m.trunc_level.resize(n);
    m.label.resize(n);
    for (int a = 0; a < dv; ++a) {
        for (int b = 0; b < dw; ++b) {
            int k = idx(a, b);
            m.offset[k] = weight_add(V.offset[a], W.offset[b]);
            m.level[k] = V.level[a] + W.level[b];
            m.trunc_level[k] = (vt ? V.trunc_level[a] : 0) + (wt ? W.trunc_level[b] : 0);
            m.label[k] = V.label[a] + " (x) " + W.label[b];
        }
    }

    const int rank = V.rs->rank();
    m.e_act.assign(rank, SparseMat::zero(n, n));
    m.f_act.assign(rank, SparseMat::zero(n, n));
    for (int i = 0; i < rank; ++i) {
        for (int a = 0; a < dv; ++a) {
            for (int b = 0; b < dw; ++b) {
                int k = idx(a, b);
                SparseVec ecol, fcol;
                // e_i (x) q^{h_i}: scale by the W-side Cartan monomial
                Scalar qh = W.cartan_monomial(b, i, +1);
                for (auto& [a2, c] : V.e_act[i].col[a]) ecol.emplace_back(idx(a2, b), c * qh);
                // 1 (x) e_i
                for (auto& [b2, c] : W.e_act[i].col[b]) {
                    SparseVec t{{idx(a, b2), c}};
                    ecol = sparse_add(ecol, t);
                }
                // f_i (x) 1
                for (auto& [a2, c] : V.f_act[i].col[a]) fcol.emplace_back(idx(a2, b), c);
                // q^{-h_i} (x) f_i
                Scalar qmh = V.cartan_monomial(a, i, -1);
                for (auto& [b2, c] : W.f_act[i].col[b]) {
                    SparseVec t{{idx(a, b2), c * qmh}};
                    fcol = sparse_add(fcol, t);
                }
                std::sort(ecol.begin(), ecol.end(),
                          [](const auto& x, const auto& y) { return x.first < y.first; });
                std::sort(fcol.begin(), fcol.end(),
                          [](const auto& x, const auto& y) { return x.first < y.first; });
                m.e_act[i].col[k] = std::move(ecol);
                m.f_act[i].col[k] = std::move(fcol);
            }
        }
    }
    m.finalize();
    return m;
}

} // namespace shapo
