#ifndef SHAPO_MODULE_HPP
#define SHAPO_MODULE_HPP

/**
 * Weight modules with exact generator actions: truncated Verma modules at a
 * symbolic or fixed highest weight, their lowest-weight mirrors, tensor
 * products under the coproduct
 *     e_i |-> e_i (x) q^{h_i} + 1 (x) e_i,
 *     f_i |-> f_i (x) 1 + q^{-h_i} (x) f_i,
 * and (in findim.hpp) finite-dimensional kernel quotients.
 *
 * The Cartan action is implicit: q^{h_mu} scales a basis vector of weight w
 * by the monomial q^{(w, mu)}.  Any f-image that would pass the truncation
 * level is dropped; identities therefore hold exactly only on columns whose
 * trunc_level leaves room for the operators applied, and the verification
 * code restricts itself accordingly.
 */

#include <memory>
#include <string>

#include "shapo/wordspace.hpp"

namespace shapo {

// Column-major sparse matrix over the scalar field; rows within a column are
// sorted and carry nonzero entries only.
struct SparseMat {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, Scalar>>> col;

    static SparseMat zero(int r, int c);
    static SparseMat identity(int n);
    bool is_zero() const;
    bool operator==(const SparseMat&) const = default;
};

using SparseVec = std::vector<std::pair<int, Scalar>>; // sorted by index

SparseVec sparse_add(const SparseVec& a, const SparseVec& b);
SparseVec sparse_scale(const SparseVec& a, const Scalar& c);
SparseVec mat_apply(const SparseMat& m, const SparseVec& v);
SparseMat mat_add(const SparseMat& a, const SparseMat& b);
SparseMat mat_scale(const SparseMat& a, const Scalar& c);
SparseMat mat_mul(const SparseMat& a, const SparseMat& b);
void mat_set(SparseMat& m, int r, int c, const Scalar& v);
Scalar mat_get(const SparseMat& m, int r, int c);

class WeightModule {
public:
    const RootSystem* rs = nullptr;
    std::string kind;               // verma | dual_verma | quotient | tensor
    int cutoff = -1;                // -1: complete
    ModuleWeight base;              // lambda_sign / fixed part; offset empty
    std::vector<Weight> offset;     // per basis vector, relative to base
    std::vector<int> level;         // ht of the offset from base
    std::vector<int> trunc_level;   // level toward this module's truncation
    std::vector<std::string> label;
    std::vector<SparseMat> e_act, f_act; // per simple root
    std::map<Weight, std::vector<int>> by_offset;
    std::shared_ptr<const WordSpace> words; // set for verma / dual_verma

    int dim() const { return (int)offset.size(); }
    ModuleWeight weight_of(int i) const;
    // q^{+/-(w_i, alpha_j)} as a monomial scalar.
    Scalar cartan_monomial(int i, int root, int sign) const;
    const std::vector<int>& indices_at(const Weight& off) const;

    void finalize(); // builds by_offset, validates shapes
};

// Truncated Verma module of highest weight lambda (symbolic).
WeightModule verma_truncated(const RootSystem& rs, int cutoff);
// Same construction at a fixed rational highest weight (simple-root coords).
WeightModule verma_numeric(const RootSystem& rs, int cutoff, const std::vector<Rat>& hw);
// Lowest-weight mirror of lowest weight -lambda.
WeightModule dual_verma_truncated(const RootSystem& rs, int cutoff);
// Numeric lowest-weight mirror (lowest weight -hw).
WeightModule dual_verma_numeric(const RootSystem& rs, int cutoff, const std::vector<Rat>& hw);

WeightModule tensor_module(const WeightModule& V, const WeightModule& W);

// Shared word spaces so that a Verma module and its mirror (and the word
// model) index their bases identically.
std::shared_ptr<const WordSpace> shared_word_space(const RootSystem& rs, int cutoff);

} // namespace shapo

#endif
