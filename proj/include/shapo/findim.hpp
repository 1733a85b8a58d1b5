#ifndef SHAPO_FINDIM_HPP
#define SHAPO_FINDIM_HPP

/**
 * Finite-dimensional irreducible modules as kernel quotients: the Verma
 * module at a fixed dominant integral weight, truncated one level past the
 * module depth, divided by the radical of the invariant pairing computed
 * blockwise at that weight.
 */

#include "shapo/shapovalov.hpp"

namespace shapo {

struct FinDimModule {
    WeightModule module;     // complete (cutoff = -1), kind "quotient"
    std::vector<int> survivor; // covering Verma basis indices kept, in order
    // per weight offset nu of the cover: RREF of the pairing block and its
    // pivot columns (positions within the block's column list)
    std::map<Weight, DenseMat> block_rref;
    std::map<Weight, std::vector<int>> block_pivots;
    int depth = 0;
    long dim = 0;
    std::vector<Rat> hw; // highest weight, simple-root coordinates
};

// dynkin: the labels <hw, alpha_i^vee> >= 0; dimension capped at 64.
FinDimModule finite_dim_module(const RootSystem& rs, const std::vector<int>& dynkin);

std::vector<Rat> weight_from_dynkin(const RootSystem& rs, const std::vector<int>& dynkin);
long weyl_dim(const RootSystem& rs, const std::vector<Rat>& hw);
int module_depth(const RootSystem& rs, const std::vector<Rat>& hw);

// Conjugate all actions by a weight-preserving change of basis; T maps new
// basis coordinates to old ones per weight offset (identity where absent).
WeightModule change_basis(const WeightModule& m, const std::map<Weight, DenseMat>& T);

} // namespace shapo

#endif
