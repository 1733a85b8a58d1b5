#include "shapo/shapovalov.hpp"

#include "shapo/util.hpp"

namespace shapo {

AntipodeExpr antipode_word(const RootSystem& rs, const Word& w, char gen) {
    // antipode(x_{b1} ... x_{bk}) = antipode(x_{bk}) ... antipode(x_{b1}) with
    //   antipode(f_b) = -q^{h_b} f_b,   antipode(e_b) = -e_b q^{-h_b}.
    // Every Cartan factor is pushed to the far right; each crossing of a
    // letter gamma costs q^{-(beta, gamma)}.  In the f case the factor also
    // crosses its own letter, in the e case it starts to its right.
    AntipodeExpr out;
    out.gen = gen;
    out.cartan.assign(rs.rank(), 0);
    out.sign = (w.size() % 2 == 0) ? 1 : -1;
    out.word.assign(w.rbegin(), w.rend());
    for (std::size_t i = 0; i < out.word.size(); ++i) {
        int b = out.word[i];
        Weight crossed(rs.rank(), 0);
        if (gen == 'f') crossed[b] += 1;
        for (std::size_t j = i + 1; j < out.word.size(); ++j) crossed[out.word[j]] += 1;
        Weight beta(rs.rank(), 0);
        beta[b] = 1;
        out.q_shift -= rs.pairing(beta, crossed);
        out.cartan[b] += gen == 'f' ? 1 : -1;
    }
    return out;
}

ShapovalovForm::ShapovalovForm(const WeightModule& M, const WeightModule& Mstar)
    : m_(&M), mstar_(&Mstar) {
    if (!M.words || !Mstar.words || M.words.get() != Mstar.words.get())
        throw std::invalid_argument("ShapovalovForm: modules must share a word space");
    if (M.kind != "verma" || Mstar.kind != "dual_verma")
        throw std::invalid_argument("ShapovalovForm: expected a Verma module and its mirror");
}

Scalar ShapovalovForm::pair_basis(int c, int r) const {
    // weight orthogonality
    if (weight_add(m_->offset[c], mstar_->offset[r]) != Weight(m_->rs->rank(), 0)) return Scalar();
    const Word& word = m_->words->basis(c).word;
    AntipodeExpr ex = antipode_word(*m_->rs, word, 'f');

    // apply sign * q^shift * f-word * q^{h_cartan} to basis_r inside Mstar
    Scalar factor = q_pow(AffineExponent(ex.q_shift));
    if (ex.sign < 0) factor = -factor;
    AffineExponent h = m_->rs->pairing_affine(mstar_->weight_of(r), ex.cartan);
    SparseVec v{{r, factor * q_pow(h)}};
    for (auto it = ex.word.rbegin(); it != ex.word.rend(); ++it) {
        v = mat_apply(mstar_->f_act[*it], v);
        if (v.empty()) return Scalar();
    }
    for (auto& [idx, val] : v)
        if (idx == 0) return val; // coefficient of the generator
    return Scalar();
}

Scalar ShapovalovForm::pair(const SparseVec& x, const SparseVec& y) const {
    Scalar acc;
    for (auto& [c, xc] : x)
        for (auto& [r, yr] : y) {
            Scalar p = pair_basis(c, r);
            if (!p.is_zero()) acc += xc * yr * p;
        }
    return acc;
}

DenseMat ShapovalovForm::block(const Weight& nu) const {
    const auto& rows = mstar_->indices_at(nu);
    const auto& cols = m_->indices_at(weight_neg(nu));
    if (rows.size() != cols.size()) throw math_error("pairing block is not square");
    DenseMat p(rows.size(), DenseVec(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) p[r][c] = pair_basis(cols[c], rows[r]);
    return p;
}

InverseResult ShapovalovForm::inverse_block(const Weight& nu) const {
    try {
        return bareiss_inverse(block(nu));
    } catch (const math_error& e) {
        throw math_error("inverse_blocks: singular block at nu=" + weight_str(nu) +
                         " (" + e.what() + ")");
    }
}

std::map<Weight, InverseResult> ShapovalovForm::inverse_blocks(int cutoff) const {
    std::vector<Weight> nus;
    for (const auto& nu : m_->words->weights())
        if (weight_height(nu) <= cutoff) nus.push_back(nu);
    std::vector<InverseResult> results(nus.size());
    parallel_for(nus.size(), [&](std::size_t k) { results[k] = inverse_block(nus[k]); });
    std::map<Weight, InverseResult> out;
    for (std::size_t k = 0; k < nus.size(); ++k) out.emplace(nus[k], std::move(results[k]));
    return out;
}

} // namespace shapo
