#ifndef SHAPO_ABRR_HPP
#define SHAPO_ABRR_HPP

/**
 * The geometric-series route to the dynamical matrix and the fixed-point
 * identity it satisfies.  phi(D) acts on a graded entry of weight drop mu by
 * right multiplication with phi(-eta_mu), evaluated on the column the entry
 * is applied to; conjugation by q^{2 (x) d} likewise reduces to the column
 * scalar q^{-2 eta_mu(w)}, so the quadratic Cartan element itself is never
 * materialized.
 */

#include "shapo/routesum.hpp"

namespace shapo {

struct FkSeriesResult {
    FHatMatrix fhat;
    int nonzero_terms = 0; // number of nonzero F^{(k)}, the k = 0 term included
};

// Per-series-step cost sample for the bench harness.
struct StepCost {
    int k = 0;
    double ms = 0;
    std::uint64_t scalar_ops = 0;
    long entries = 0;
};

// F^{(0)} = 1 (x) 1,  F^{(k+1)} = phi(D)(F F^{(k)}),  fhat = sum_k F^{(k)}.
// Stops when a term vanishes; k_max < 0 means the dimension-based bound.
FkSeriesResult fk_series(const WeightModule& V, const GradedTensorOperator& F,
                         const WeightModule& M, int k_max = -1, bool full_ops = false,
                         std::vector<StepCost>* bench = nullptr);

struct AbrrReport {
    bool ok = true;
    std::string first_failure;
    long checked_entries = 0;
};

// Verify R-hat fhat = q^{2 (x) d} fhat q^{-2 (x) d} entrywise on safe columns;
// fhat must carry full operators.
AbrrReport abrr_identity_check(const WeightModule& V, const WeightModule& M,
                               const GradedTensorOperator& rhat, const FHatMatrix& fhat);

} // namespace shapo

#endif
