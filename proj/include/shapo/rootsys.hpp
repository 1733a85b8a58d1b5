#ifndef SHAPO_ROOTSYS_HPP
#define SHAPO_ROOTSYS_HPP

/**
 * Root-system data built from a Cartan matrix: symmetrized bilinear form,
 * positive roots by reflection closure, Weyl vector, and the shifted Cartan
 * functional eta_mu = h_mu + (mu, rho) - ||mu||^2 / 2.
 *
 * Weights of modules are kept as base + root-lattice offset, where the base
 * is either the symbolic weight (+lambda or -lambda) or a fixed rational
 * vector in simple-root coordinates.
 */

#include <string>
#include <vector>

#include "shapo/scalar.hpp"

namespace shapo {

// Element of the root lattice in simple-root coordinates.
using Weight = std::vector<int>;

Weight weight_add(const Weight& a, const Weight& b);
Weight weight_sub(const Weight& a, const Weight& b);
Weight weight_neg(const Weight& a);
int weight_height(const Weight& a);
bool weight_is_zero(const Weight& a);
bool weight_nonneg(const Weight& a); // all coordinates >= 0
std::string weight_str(const Weight& a);

struct EtaForm {
    Weight mu;
    std::int64_t scalar; // (mu, rho) - ||mu||^2 / 2
};

// base + offset where base is sign*lambda + fixed.
struct ModuleWeight {
    int lambda_sign = 0;          // -1, 0, +1
    std::vector<Rat> fixed;       // rational simple-root coordinates (may be empty)
    Weight offset;                // root-lattice part
};

class RootSystem {
public:
    static RootSystem build(const std::vector<std::vector<int>>& cartan);
    static RootSystem from_type(const std::string& type); // A1 A2 A3 B2 G2
    static std::vector<std::vector<int>> cartan_of_type(const std::string& type);

    int rank() const { return rank_; }
    const std::vector<std::vector<int>>& cartan() const { return cartan_; }
    const std::vector<int>& sym() const { return d_; }
    const std::vector<Weight>& positive_roots() const { return pos_roots_; }
    const std::vector<Rat>& rho() const { return rho_; }
    const std::string& type_name() const { return type_; }

    // (a, b) via the symmetrized form; integer on the root lattice.
    std::int64_t pairing(const Weight& a, const Weight& b) const;
    std::int64_t pairing_rho(const Weight& a) const; // (rho, a)
    std::int64_t norm2(const Weight& a) const;       // (a, a)

    // (w, mu) for a module weight w; the lambda part contributes coordinates
    // of mu, the fixed part must pair integrally.
    AffineExponent pairing_affine(const ModuleWeight& w, const Weight& mu) const;

    // (fixed rational vector, mu); throws if not an integer.
    std::int64_t pairing_fixed(const std::vector<Rat>& fixed, const Weight& mu) const;

    EtaForm eta(const Weight& mu) const;
    // eta_mu evaluated against a module weight: (w, mu) + scalar part.
    AffineExponent eta_at(const EtaForm& eta, const ModuleWeight& w) const;
    // Shortcut: eta_{mu} evaluated at the generic highest weight lambda.
    AffineExponent eta_at_lambda(const Weight& mu) const;

    // Simple reflection s_i on rational simple-root coordinates.
    std::vector<Rat> reflect(const std::vector<Rat>& v, int i) const;

private:
    int rank_ = 0;
    std::string type_ = "custom";
    std::vector<std::vector<int>> cartan_;
    std::vector<int> d_;
    std::vector<std::vector<std::int64_t>> gram_; // (alpha_i, alpha_j)
    std::vector<Weight> pos_roots_;
    std::vector<Rat> rho_;
};

ModuleWeight module_weight_add(const ModuleWeight& a, const ModuleWeight& b);

} // namespace shapo

#endif
