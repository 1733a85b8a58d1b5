#ifndef SHAPO_WORDSPACE_HPP
#define SHAPO_WORDSPACE_HPP

/**
 * Graded word calculus for the nilpotent half of the quantized algebra.
 *
 * For each lattice weight nu with ht(nu) <= cutoff, the free span of words
 * in the simple generators with content nu is reduced modulo the graded
 * piece of the two-sided quantized Serre ideal.  The ideal rows are kept in
 * reduced row-echelon form over the scalar field; the non-pivot words form
 * the basis of the quotient.  This basis is shared by the truncated Verma
 * module, its lowest-weight mirror, and the word model used by the
 * R-matrix recursion.
 */

#include <map>
#include <memory>
#include <vector>

#include "shapo/rootsys.hpp"

namespace shapo {

using Word = std::vector<int>;          // letters are simple-root indices
using FreeVec = std::map<Word, Scalar>; // element of the free span, by word

std::string word_str(const Word& w, char gen); // e.g. "f1.f2.f1"

class WordSpace {
public:
    WordSpace(const RootSystem& rs, int cutoff);

    const RootSystem& root_system() const { return *rs_; }
    int cutoff() const { return cutoff_; }

    struct Component {
        Weight nu;
        std::vector<Word> words;                 // lex-sorted, all of content nu
        std::map<Word, int> word_pos;
        std::vector<std::vector<Scalar>> rref;   // ideal rows, RREF, dense over words
        std::vector<int> pivot_col;              // pivot column of each rref row
        std::vector<int> basis_cols;             // non-pivot columns, ascending
        int global_offset = 0;                   // global index of first basis word
    };

    const Component& component(const Weight& nu) const;
    bool has_component(const Weight& nu) const;
    const std::vector<Weight>& weights() const { return weight_order_; }

    int dim() const { return (int)basis_.size(); }
    struct BasisEntry {
        Weight nu;
        Word word;
        int level;
    };
    const BasisEntry& basis(int i) const { return basis_[i]; }
    int basis_index(const Word& w) const; // -1 when w is not a basis word

    // Reduce a free-span vector modulo the ideal; the result is supported on
    // basis words, returned as (global index, coefficient) pairs.
    std::vector<std::pair<int, Scalar>> project(const FreeVec& v) const;
    std::vector<std::pair<int, Scalar>> project_word(const Word& w) const;

    // Structure constants of the quotient algebra in the word basis:
    // column b of left_mult(i) is [letter_i * word_b], of right_mult(i) is
    // [word_b * letter_i]; words beyond the cutoff project to zero.
    std::vector<std::pair<int, Scalar>> left_mult_col(int i, int b) const;
    std::vector<std::pair<int, Scalar>> right_mult_col(int i, int b) const;

private:
    const RootSystem* rs_;
    int cutoff_;
    std::map<Weight, Component> comps_;
    std::vector<Weight> weight_order_; // by (height, lex)
    std::vector<BasisEntry> basis_;
    std::map<Word, int> basis_pos_;

    void build_component(const Weight& nu);
};

} // namespace shapo

#endif
