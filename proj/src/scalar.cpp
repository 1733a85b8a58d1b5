#include "shapo/scalar.hpp"

#include <cstdlib>
#include <sstream>

#include "shapo/util.hpp"

namespace shapo {

bool AffineExponent::is_zero() const {
    if (constant != 0) return false;
    for (int v : lambda)
        if (v != 0) return false;
    return true;
}

AffineExponent AffineExponent::operator+(const AffineExponent& o) const {
    AffineExponent r(constant + o.constant);
    for (int i = 0; i < kNumVars - 1; ++i) r.lambda[i] = lambda[i] + o.lambda[i];
    return r;
}

AffineExponent AffineExponent::operator-(const AffineExponent& o) const {
    return *this + (-o);
}

AffineExponent AffineExponent::operator-() const {
    AffineExponent r(-constant);
    for (int i = 0; i < kNumVars - 1; ++i) r.lambda[i] = -lambda[i];
    return r;
}

AffineExponent AffineExponent::operator*(int k) const {
    AffineExponent r(constant * k);
    for (int i = 0; i < kNumVars - 1; ++i) r.lambda[i] = lambda[i] * k;
    return r;
}

std::string AffineExponent::str() const {
    std::ostringstream os;
    os << constant;
    for (int i = 0; i < kNumVars - 1; ++i) {
        if (lambda[i] != 0) os << (lambda[i] > 0 ? "+" : "") << lambda[i] << "(la,a" << i + 1 << ")";
    }
    return os.str();
}

Scalar::Scalar(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw math_error("Scalar: zero denominator");
    canonicalize();
}

Scalar Scalar::from_poly(MultiPoly p) {
    Scalar s;
    s.num_ = std::move(p);
    s.den_ = MultiPoly::constant(1);
    return s;
}

void Scalar::canonicalize() {
    if (num_.is_zero()) {
        den_ = MultiPoly::constant(1);
        return;
    }
    if (!den_.is_one()) {
        MultiPoly g = poly_gcd(num_, den_);
        if (!g.is_one()) {
            num_ = exact_divide(num_, g);
            den_ = exact_divide(den_, g);
        }
    }
    const Rat& lc = den_.lead_coeff();
    if (lc != 1) {
        Rat inv = Rat(1) / lc;
        num_ = mul_rat(num_, inv);
        den_ = mul_rat(den_, inv);
    }
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    op_counters().add.fetch_add(1, std::memory_order_relaxed);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Scalar r;
    if (a.den_ == b.den_) {
        r.num_ = a.num_ + b.num_;
        r.den_ = a.den_;
    } else {
        r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
        r.den_ = a.den_ * b.den_;
    }
    if (r.num_.is_zero()) return Scalar();
    r.canonicalize();
    return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    op_counters().mul.fetch_add(1, std::memory_order_relaxed);
    if (a.is_zero() || b.is_zero()) return Scalar();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    // Cross-cancel so the final gcd is unnecessary: num and den factors stay
    // pairwise coprime.
    MultiPoly g1 = poly_gcd(a.num_, b.den_);
    MultiPoly g2 = poly_gcd(b.num_, a.den_);
    Scalar r;
    const MultiPoly n1 = g1.is_one() ? a.num_ : exact_divide(a.num_, g1);
    const MultiPoly n2 = g2.is_one() ? b.num_ : exact_divide(b.num_, g2);
    const MultiPoly d1 = g2.is_one() ? a.den_ : exact_divide(a.den_, g2);
    const MultiPoly d2 = g1.is_one() ? b.den_ : exact_divide(b.den_, g1);
    r.num_ = n1 * n2;
    r.den_ = d1 * d2;
    const Rat& lc = r.den_.lead_coeff();
    if (lc != 1) {
        Rat inv = Rat(1) / lc;
        r.num_ = mul_rat(r.num_, inv);
        r.den_ = mul_rat(r.den_, inv);
    }
    return r;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    op_counters().div.fetch_add(1, std::memory_order_relaxed);
    if (b.is_zero()) throw math_error("Scalar: division by zero");
    return a * b.inverse();
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw math_error("Scalar: inverse of zero");
    Scalar r;
    r.num_ = den_;
    r.den_ = num_;
    const Rat& lc = r.den_.lead_coeff();
    if (lc != 1) {
        Rat inv = Rat(1) / lc;
        r.num_ = mul_rat(r.num_, inv);
        r.den_ = mul_rat(r.den_, inv);
    }
    return r;
}

std::string Scalar::str() const {
    if (den_.is_one()) return num_.str();
    std::string n = num_.str(), d = den_.str();
    std::string ln = num_.terms.size() > 1 ? "(" + n + ")" : n;
    std::string ld = den_.terms.size() > 1 ? "(" + d + ")" : d;
    return ln + " / " + ld;
}

Scalar q_pow(const AffineExponent& x) {
    Mono mn{}, md{};
    auto put = [&](int var, std::int64_t e) {
        if (e >= 0)
            mn.e[var] = (int)e;
        else
            md.e[var] = (int)-e;
    };
    put(0, x.constant);
    for (int i = 0; i < kNumVars - 1; ++i) put(i + 1, x.lambda[i]);
    return Scalar(MultiPoly::monomial(mn, 1), MultiPoly::monomial(md, 1));
}

Scalar q_int(const AffineExponent& x) {
    if (x.is_zero()) return Scalar();
    static const Scalar qden = q_pow(AffineExponent(1)) - q_pow(AffineExponent(-1));
    return (q_pow(x) - q_pow(-x)) / qden;
}

Scalar q_int(std::int64_t n) { return q_int(AffineExponent(n)); }

Scalar phi(const AffineExponent& x) {
    if (x.is_zero()) throw math_error("phi: pole at x = 0");
    return q_pow(-x) / q_int(x);
}

Scalar q_factorial(int n, int d) {
    Scalar r(1);
    for (int j = 2; j <= n; ++j) r *= q_int((std::int64_t)j * d) / q_int(d);
    return r;
}

Scalar q_binomial(int n, int k, int d) {
    if (k < 0 || k > n) return Scalar();
    Scalar r(1);
    for (int j = 1; j <= k; ++j)
        r *= (q_int((std::int64_t)(n - k + j) * d) / q_int(d)) / (q_int((std::int64_t)j * d) / q_int(d));
    return r;
}

Rat specialize(const Scalar& f, const Rat& q0, const std::array<Rat, kNumVars - 1>& zs) {
    if (q0 == 0 || q0 == 1 || q0 == -1)
        throw std::invalid_argument("specialize: q0 must avoid {0, 1, -1}");
    std::array<Rat, kNumVars> point;
    point[0] = q0;
    for (int i = 0; i < kNumVars - 1; ++i) point[i + 1] = zs[i] == 0 ? Rat(1) : zs[i];
    Rat dv = evaluate(f.den(), point);
    if (dv == 0)
        throw math_error("specialize: denominator vanishes at point: " + f.den().str());
    return evaluate(f.num(), point) / dv;
}

Scalar substitute_weight(const Scalar& f, const std::array<int, kNumVars - 1>& k) {
    MultiPoly n, d;
    std::int64_t sn = 0, sd = 0;
    substitute_z_to_qpow(f.num(), k, n, sn);
    substitute_z_to_qpow(f.den(), k, d, sd);
    if (d.is_zero())
        throw math_error("substitute_weight: denominator vanishes: " + f.den().str());
    // f = (n / q^sn) / (d / q^sd) = n * q^sd / (d * q^sn)
    Mono qn{}, qd{};
    qn.e[0] = (int)sd;
    qd.e[0] = (int)sn;
    return Scalar(mul_mono(n, qn, 1), mul_mono(d, qd, 1));
}

// --- util.hpp counters -------------------------------------------------------

OpCounters& op_counters() {
    static OpCounters c;
    return c;
}

OpSnapshot snapshot_ops() {
    auto& c = op_counters();
    return {c.add.load(), c.mul.load(), c.div.load(), c.gcd.load()};
}

OpSnapshot diff_ops(const OpSnapshot& b, const OpSnapshot& a) {
    return {a.add - b.add, a.mul - b.mul, a.div - b.div, a.gcd - b.gcd};
}

unsigned worker_threads() {
    if (const char* env = std::getenv("SHAPOFORM_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return (unsigned)n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned workers = worker_threads();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    workers = std::min<std::size_t>(workers, n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace shapo
