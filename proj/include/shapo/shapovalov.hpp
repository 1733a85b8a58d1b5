#ifndef SHAPO_SHAPOVALOV_HPP
#define SHAPO_SHAPOVALOV_HPP

/**
 * The invariant pairing between a highest-weight module and its lowest-weight
 * mirror, normalized to 1 on the generators, computed through the antipode:
 *     <x 1, 1*> = <1, antipode(x) 1*>.
 * Per-weight blocks are inverted by fraction-free elimination; the inverse
 * blocks are the brute-force oracle the other two constructions are checked
 * against.
 */

#include <map>

#include "shapo/linalg.hpp"
#include "shapo/module.hpp"

namespace shapo {

// Normal-ordered antipode image of a generator word:
//     sign * q^{q_shift} * (letters, leftmost acts last) * q^{h_{cartan}}.
struct AntipodeExpr {
    int sign = 1;
    std::int64_t q_shift = 0;
    Word word;
    Weight cartan;
    char gen = 'f';
};

// gen = 'f': word in the lowering generators; gen = 'e': raising.
AntipodeExpr antipode_word(const RootSystem& rs, const Word& w, char gen);

class ShapovalovForm {
public:
    // M: (truncated) Verma module, Mstar: its mirror on the same word space.
    ShapovalovForm(const WeightModule& M, const WeightModule& Mstar);

    const WeightModule& M() const { return *m_; }
    const WeightModule& Mstar() const { return *mstar_; }

    // <basis_c 1, basis_r 1*>; zero unless the weights are opposite.
    Scalar pair_basis(int c, int r) const;
    Scalar pair(const SparseVec& x, const SparseVec& y) const;

    // Block at nu: rows over the Mstar basis at -la + nu, columns over the
    // M basis at la - nu (identical index lists on the shared word space).
    DenseMat block(const Weight& nu) const;

    // Exact inverse per block for every ht(nu) <= cutoff.
    std::map<Weight, InverseResult> inverse_blocks(int cutoff) const;
    InverseResult inverse_block(const Weight& nu) const;

private:
    const WeightModule* m_;
    const WeightModule* mstar_;
};

} // namespace shapo

#endif
