#ifndef SHAPO_SCALAR_HPP
#define SHAPO_SCALAR_HPP

/**
 * The coefficient field: exact rational functions in q and z1..z4, where
 * z_i stands for q^{(lambda, alpha_i)} at a generic weight lambda.
 *
 * Values are kept canonical at all times: numerator and denominator share
 * no factor (multivariate gcd) and the denominator is monic under the fixed
 * monomial order, so structural equality is mathematical equality.
 */

#include <array>
#include <cstdint>
#include <string>

#include "shapo/multipoly.hpp"

namespace shapo {

// An exponent of q that is affine in the generic weight:
//   constant + sum_i lambda[i] * (lambda, alpha_i).
// q^{AffineExponent} is the monomial q^constant * prod z_i^{lambda[i]}.
struct AffineExponent {
    std::int64_t constant = 0;
    std::array<int, kNumVars - 1> lambda{};

    AffineExponent() = default;
    explicit AffineExponent(std::int64_t c) : constant(c) {}
    AffineExponent(std::int64_t c, const std::array<int, kNumVars - 1>& l)
        : constant(c), lambda(l) {}

    bool is_zero() const;
    AffineExponent operator+(const AffineExponent& o) const;
    AffineExponent operator-(const AffineExponent& o) const;
    AffineExponent operator-() const;
    AffineExponent operator*(int k) const;
    bool operator==(const AffineExponent&) const = default;

    std::string str() const;
};

class Scalar {
public:
    Scalar() : num_(), den_(MultiPoly::constant(1)) {}
    Scalar(int v) : Scalar(Rat(v)) {}
    explicit Scalar(const Rat& v) : num_(MultiPoly::constant(v)), den_(MultiPoly::constant(1)) {}
    Scalar(MultiPoly num, MultiPoly den);

    static Scalar from_poly(MultiPoly p);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b); // throws on b == 0
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    bool operator==(const Scalar&) const = default;

    Scalar inverse() const;

    std::string str() const;

private:
    MultiPoly num_, den_;
    void canonicalize();
};

// q^x as a monomial scalar.
Scalar q_pow(const AffineExponent& x);

// [x]_q = (q^x - q^{-x}) / (q - q^{-1}).
Scalar q_int(const AffineExponent& x);
Scalar q_int(std::int64_t n);

// phi(x) = q^{-x} / [x]_q; throws math_error when x == 0 identically.
Scalar phi(const AffineExponent& x);

// [n]_{q^d}! and the q-binomial [n choose k]_{q^d}.
Scalar q_factorial(int n, int d = 1);
Scalar q_binomial(int n, int k, int d = 1);

// Exact evaluation at a rational point.  zs beyond the active rank are
// ignored (treated as 1).  Throws std::invalid_argument for q0 in {0, 1, -1}
// and math_error when the denominator vanishes (message names it).
Rat specialize(const Scalar& f, const Rat& q0, const std::array<Rat, kNumVars - 1>& zs);

// Substitute z_i -> q^{k_i}; the result lives in q alone.  Throws math_error
// when the denominator vanishes identically after substitution.
Scalar substitute_weight(const Scalar& f, const std::array<int, kNumVars - 1>& k);

} // namespace shapo

#endif
