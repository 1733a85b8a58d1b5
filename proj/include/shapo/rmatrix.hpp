#ifndef SHAPO_RMATRIX_HPP
#define SHAPO_RMATRIX_HPP

/**
 * The unipotent part of the R-matrix and the tensor
 *     F = (q^{-h.h} R - 1 (x) 1) / (q - q^{-1}),
 * computed degree by degree from the intertwining identity
 *     [1 (x) e_a, F] + (e_a (x) q^{-h_a}) F - F (e_a (x) q^{h_a}) = e_a (x) [h_a]_q
 * rather than from any product formula.
 *
 * The identity is solved once in universal coordinates: expanding the first
 * leg over the word basis of the raising subalgebra turns it into one small
 * linear system per basis word, triangular in the word height, whose
 * unknown is the word's second leg acting on the truncated Verma module.
 * Uniqueness holds because no positive-level vector of a generic Verma
 * module is annihilated by every raising generator.  Any concrete first leg
 * is then obtained by evaluating the word matrices in that module.
 */

#include "shapo/module.hpp"

namespace shapo {

// Second legs of F over the word basis, as operators on the truncated Verma
// module M.  legs[k] lowers the M-weight by the content of word k; columns
// whose level plus the word height would pass the cutoff are left empty.
struct UniversalF {
    std::shared_ptr<const WordSpace> words;
    const WeightModule* M = nullptr;
    int max_height = 0;
    std::vector<SparseMat> legs;
};

UniversalF compute_universal_f(const WeightModule& M, int max_height);

// A weight-graded family of second-leg operators indexed by first-leg
// position; (i, j) determines the graded component eps_i - eps_j.
struct GradedTensorOperator {
    const WeightModule* V = nullptr;
    const WeightModule* M = nullptr;
    int max_height = 0;
    Scalar diag;                                   // coefficient of 1 (x) 1
    std::map<std::pair<int, int>, SparseMat> entries;

    const SparseMat* entry(int i, int j) const;
    Weight drop(int i, int j) const; // eps_i - eps_j
    std::vector<Weight> heights() const; // distinct drops, ascending height
};

// Evaluate the first leg of F over V's word matrices.
GradedTensorOperator evaluate_first_leg(const WeightModule& V, const UniversalF& uf,
                                        const Scalar& scale, const Scalar& diag);

// R-hat on (V, M): identity at degree zero plus (q - q^{-1}) F.
GradedTensorOperator quasi_r(const WeightModule& V, const WeightModule& M, int max_mu_height);

// F from R-hat: strip the identity and divide by (q - q^{-1}).
GradedTensorOperator f_tensor(const GradedTensorOperator& rhat);

struct IntertwineReport {
    bool ok = true;
    std::string first_failure;
    long checked_entries = 0;
};

// Entrywise check of the intertwining identity on safe columns.
IntertwineReport check_intertwining(const GradedTensorOperator& f);

} // namespace shapo

#endif
