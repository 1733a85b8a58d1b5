#ifndef SHAPO_LINALG_HPP
#define SHAPO_LINALG_HPP

/**
 * Exact dense linear algebra over the scalar field.  Block inversion uses
 * fraction-free (Bareiss) elimination after clearing row denominators, which
 * keeps intermediate entries polynomial; everything else is plain rational
 * elimination on desk-sized matrices.
 */

#include <vector>

#include "shapo/scalar.hpp"

namespace shapo {

using DenseMat = std::vector<std::vector<Scalar>>;
using DenseVec = std::vector<Scalar>;

DenseMat dense_identity(int n);
DenseMat dense_mul(const DenseMat& a, const DenseMat& b);

// In-place reduced row echelon form; returns pivot column indices.
std::vector<int> rref(DenseMat& m);

int rank(DenseMat m);

// Nullspace basis (as columns' coefficient vectors) plus the pivot columns.
struct NullspaceResult {
    std::vector<int> pivot_cols;
    std::vector<DenseVec> kernel; // each of length = #cols
};
NullspaceResult nullspace(DenseMat m);

// Solve A x = b requiring a unique solution; throws math_error when the
// system is inconsistent or underdetermined.
DenseVec solve_unique(DenseMat a, DenseVec b, const char* what);

struct InverseResult {
    DenseMat inverse;
    Scalar det;
};
// Fraction-free inverse of a square matrix; throws math_error when singular.
InverseResult bareiss_inverse(const DenseMat& p);
Scalar bareiss_det(const DenseMat& p);

} // namespace shapo

#endif
