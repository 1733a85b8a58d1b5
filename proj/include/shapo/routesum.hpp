#ifndef SHAPO_ROUTESUM_HPP
#define SHAPO_ROUTESUM_HPP

/**
 * Route combinatorics over the Hasse diagram of a weight module and the
 * dynamical matrix built from them:
 *
 *   fhat_{ij} = sum over routes i = m_1 > ... > m_k > j of
 *               f_{m_1 m_2} ... f_{m_k j} * prod_s phi(-eta_{m_s j}),
 *
 * with the Cartan-valued coefficients standing to the right of the word, so
 * they evaluate on the vector the entry is applied to.  Enumeration steps
 * are the pairs with a nonzero graded F entry; restricting routes to them
 * leaves the matrix unchanged since every skipped route carries a zero
 * factor.
 */

#include "shapo/rmatrix.hpp"

namespace shapo {

struct RouteDiagram {
    const WeightModule* V = nullptr;

    struct Arrow {
        int from, to; // eps_from - eps_to is the simple root alpha
        int alpha;
        Scalar coeff; // pi(e_alpha)_{from,to}
    };
    std::vector<Arrow> arrows;

    // step[i][j]: nonzero F entry at (i, j); succ = transitive closure.
    std::vector<std::vector<char>> step, succ;
};

RouteDiagram hasse(const WeightModule& V, const GradedTensorOperator& F);

// All routes from i to j (node sequences including both endpoints, strictly
// decreasing along step edges), in a deterministic order.  i == j yields the
// single trivial route.
std::vector<std::vector<int>> routes(const RouteDiagram& d, int i, int j);

// phi(-eta_mu) evaluated at the weight the coefficient acts on.
Scalar a_coeff(const RootSystem& rs, const Weight& mu);                        // at lambda
Scalar a_coeff_at(const RootSystem& rs, const Weight& mu, const ModuleWeight& w);

struct FHatMatrix {
    const WeightModule* V = nullptr;
    const WeightModule* M = nullptr;
    // fhat_{ij} applied to the highest-weight generator, for i distinct from j;
    // the diagonal is implicitly 1.
    std::map<std::pair<int, int>, SparseVec> on_hw;
    // full second-leg operators (columns past the safe level stay empty)
    std::map<std::pair<int, int>, SparseMat> ops;
    bool full = false;
};

// Per-node cost sample from the generator column, for the bench harness.
struct NodeCost {
    Weight nu; // weight block of the entry the node contributes to
    double ms = 0;
    std::uint64_t scalar_ops = 0;
};

FHatMatrix fhat_route_sum(const WeightModule& V, const GradedTensorOperator& F,
                          const WeightModule& M, bool full_ops = false,
                          std::vector<NodeCost>* bench = nullptr);

} // namespace shapo

#endif
