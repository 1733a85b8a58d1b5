#ifndef SHAPO_MULTIPOLY_HPP
#define SHAPO_MULTIPOLY_HPP

/**
 * Multivariate polynomials over the exact rationals in the variables
 * q, z1, z2, z3, z4 (always five slots; unused variables carry exponent 0).
 *
 * Terms are kept sorted in descending graded-lexicographic order with no
 * zero coefficients, so representation equality is polynomial equality.
 * gcd is the subresultant PRS with recursive contents; no factorization
 * beyond gcd is provided.
 */

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace shapo {

using Rat = mpq_class;
using Int = mpz_class;

inline constexpr int kNumVars = 5; // q, z1, z2, z3, z4

struct Mono {
    std::array<std::int32_t, kNumVars> e{};

    std::int64_t total_degree() const {
        std::int64_t t = 0;
        for (auto x : e) t += x;
        return t;
    }
    bool operator==(const Mono&) const = default;
};

// Graded lex with q before z1 before z2 ...; returns <0, 0, >0.
int mono_cmp(const Mono& a, const Mono& b);

// true if a divides b componentwise.
bool mono_divides(const Mono& a, const Mono& b);
Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_div(const Mono& a, const Mono& b); // requires divisibility

class MultiPoly {
public:
    // (monomial, coefficient) pairs, strictly descending in mono_cmp,
    // coefficients nonzero.
    std::vector<std::pair<Mono, Rat>> terms;

    MultiPoly() = default;
    static MultiPoly zero() { return MultiPoly(); }
    static MultiPoly constant(const Rat& c);
    static MultiPoly monomial(const Mono& m, const Rat& c);
    static MultiPoly variable(int var, int power = 1);

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms.size() == 1; }
    bool is_one() const;

    const Mono& lead_mono() const { return terms.front().first; }
    const Rat& lead_coeff() const { return terms.front().second; }

    int degree(int var) const;       // max exponent of var, 0 if absent/zero
    int min_degree(int var) const;   // min exponent over terms (0 for zero poly)
    std::int64_t total_degree() const;

    bool operator==(const MultiPoly&) const = default;

    std::string str() const;         // debug/text form, e.g. "q^2*z1 - 1"
};

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator-(const MultiPoly& a);
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
MultiPoly mul_mono(const MultiPoly& a, const Mono& m, const Rat& c);
MultiPoly mul_rat(const MultiPoly& a, const Rat& c);

// Exact division: sets q so that a = q*b, returns false if b does not
// divide a (or b == 0).
bool try_divide(const MultiPoly& a, const MultiPoly& b, MultiPoly& q);
MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b); // throws on failure

// Normalized gcd: primitive over Z with positive leading coefficient;
// gcd(0,0) = 0.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// content * primitive decomposition over Z: p == content * primitive, where
// primitive has coprime integer coefficients and positive leading coefficient.
void content_primitive(const MultiPoly& p, Rat& content, MultiPoly& primitive);

// Evaluate at a full point (size kNumVars); exponents are non-negative here.
Rat evaluate(const MultiPoly& p, const std::array<Rat, kNumVars>& point);

// Substitute z_i -> q^{k[i-1]} for all z variables; result lives in q alone.
// Negative k values are allowed; the caller handles the Laurent shift, so
// this returns the pair (poly in q, power of q to divide by).
void substitute_z_to_qpow(const MultiPoly& p, const std::array<int, kNumVars - 1>& k,
                          MultiPoly& out, std::int64_t& q_shift);

} // namespace shapo

#endif
