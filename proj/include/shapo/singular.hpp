#ifndef SHAPO_SINGULAR_HPP
#define SHAPO_SINGULAR_HPP

/**
 * Singular vectors in V (x) M_la, the blockwise equality between the
 * dynamical matrix column at the generator and the inverse pairing blocks,
 * and the denominator audit against the genericity family
 *     q^{2(la+rho,alpha) - m ||alpha||^2} - 1,  alpha positive, m >= 1.
 */

#include "shapo/abrr.hpp"
#include "shapo/shapovalov.hpp"

namespace shapo {

struct SingularVectorReport {
    int j = 0;
    SparseVec vector;                 // in tensor coordinates a * dim(M) + b
    std::vector<SparseVec> residuals; // e_alpha applied to the vector
    bool annihilated = false;
};

// u_j = sum_i v_i (x) fhat_{ij} 1_la inside the prebuilt tensor module T.
SingularVectorReport singular_vector(const WeightModule& T, const WeightModule& V,
                                     const WeightModule& M, const FHatMatrix& fhat, int j);

struct InverseCheckReport {
    bool ok = true;
    struct Block {
        Weight nu;
        int dim = 0;
        bool ok = true;
        std::string detail;
    };
    std::vector<Block> blocks;
};

// P_nu * C_nu = Id where the columns of C_nu are the fhat column at the
// generator of the lowest-weight model (fhat.V must be the mirror module).
InverseCheckReport verify_inverse_blocks(const ShapovalovForm& form, const FHatMatrix& fhat,
                                         int cutoff);

struct AuditReport {
    bool ok = true;
    struct Line {
        Weight alpha;
        int m = 0;
        long count = 0; // divisions performed with this factor
    };
    std::vector<Line> inventory;
    std::string leftover; // non-unit remainder when the audit fails
};

// Trial-divide every denominator by the genericity family; factors in q
// alone are units of the coefficient field and are ignored.
AuditReport denominator_audit(const RootSystem& rs, const std::vector<Scalar>& values,
                              int m_cap);

// The genericity family member for (alpha, m), as a cleared polynomial.
MultiPoly genericity_factor(const RootSystem& rs, const Weight& alpha, int m);

struct SpecPoint {
    Rat q0;
    std::array<Rat, kNumVars - 1> z;
};

// Deterministic rational points avoiding zeros of the given polynomials.
std::vector<SpecPoint> seeded_points(std::uint64_t seed, int count,
                                     const std::vector<MultiPoly>& avoid);

} // namespace shapo

#endif
