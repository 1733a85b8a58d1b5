#include "shapo/multipoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "shapo/util.hpp"

#ifdef SHAPO_GCD_STATS
#include <chrono>
#include <cstdio>
namespace {
struct GcdStats {
    std::atomic<long> calls{0};
    std::atomic<long> heur_hits{0}, cert_hits{0}, prs_calls{0}, heur_fail{0};
    std::atomic<long> us_total{0};
    std::atomic<long> us_shortcut{0}, us_heur{0}, us_cert{0}, us_prs{0}, us_cofactor{0};
    ~GcdStats() {
        std::fprintf(stderr,
                     "[gcd stats] calls=%ld heur=%ld cert=%ld prs=%ld heurfail=%ld total_ms=%.1f\n"
                     "  shortcut_ms=%.1f heur_ms=%.1f cert_ms=%.1f prs_ms=%.1f cofactor_ms=%.1f\n",
                     calls.load(), heur_hits.load(), cert_hits.load(), prs_calls.load(),
                     heur_fail.load(), us_total.load() / 1000.0, us_shortcut.load() / 1000.0,
                     us_heur.load() / 1000.0, us_cert.load() / 1000.0, us_prs.load() / 1000.0,
                     us_cofactor.load() / 1000.0);
    }
};
GcdStats g_gcd_stats;
} // namespace
#define GCD_STAT(field) (g_gcd_stats.field.fetch_add(1, std::memory_order_relaxed))
struct GcdPhaseTimer {
    std::atomic<long>* slot;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    explicit GcdPhaseTimer(std::atomic<long>& s) : slot(&s) {}
    ~GcdPhaseTimer() {
        slot->fetch_add(std::chrono::duration_cast<std::chrono::microseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count());
    }
};
#define GCD_PHASE(field) GcdPhaseTimer _phase_timer_##field(g_gcd_stats.field)
#else
#define GCD_STAT(field) ((void)0)
#define GCD_PHASE(field) ((void)0)
#endif

namespace shapo {

int mono_cmp(const Mono& a, const Mono& b) {
    const auto ta = a.total_degree(), tb = b.total_degree();
    if (ta != tb) return ta < tb ? -1 : 1;
    for (int i = 0; i < kNumVars; ++i) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
    }
    return 0;
}

bool mono_divides(const Mono& a, const Mono& b) {
    for (int i = 0; i < kNumVars; ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono m;
    for (int i = 0; i < kNumVars; ++i) m.e[i] = a.e[i] + b.e[i];
    return m;
}

Mono mono_div(const Mono& a, const Mono& b) {
    Mono m;
    for (int i = 0; i < kNumVars; ++i) m.e[i] = a.e[i] - b.e[i];
    return m;
}

namespace {

struct MonoDescCmp {
    bool operator()(const Mono& a, const Mono& b) const { return mono_cmp(a, b) > 0; }
};

MultiPoly from_map(std::map<Mono, Rat, MonoDescCmp>&& acc) {
    MultiPoly p;
    p.terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) p.terms.emplace_back(m, std::move(c));
    return p;
}

} // namespace

MultiPoly MultiPoly::constant(const Rat& c) {
    MultiPoly p;
    if (c != 0) p.terms.emplace_back(Mono{}, c);
    return p;
}

MultiPoly MultiPoly::monomial(const Mono& m, const Rat& c) {
    MultiPoly p;
    if (c != 0) p.terms.emplace_back(m, c);
    return p;
}

MultiPoly MultiPoly::variable(int var, int power) {
    Mono m;
    m.e[var] = power;
    return monomial(m, 1);
}

bool MultiPoly::is_constant() const {
    return terms.empty() || (terms.size() == 1 && terms[0].first == Mono{});
}

bool MultiPoly::is_one() const {
    return terms.size() == 1 && terms[0].first == Mono{} && terms[0].second == 1;
}

int MultiPoly::degree(int var) const {
    int d = 0;
    for (auto& [m, c] : terms) d = std::max(d, (int)m.e[var]);
    return d;
}

int MultiPoly::min_degree(int var) const {
    if (terms.empty()) return 0;
    int d = terms[0].first.e[var];
    for (auto& [m, c] : terms) d = std::min(d, (int)m.e[var]);
    return d;
}

std::int64_t MultiPoly::total_degree() const {
    std::int64_t d = 0;
    for (auto& [m, c] : terms) d = std::max(d, m.total_degree());
    return d;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    r.terms.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() && j < b.terms.size()) {
        int c = mono_cmp(a.terms[i].first, b.terms[j].first);
        if (c > 0) {
            r.terms.push_back(a.terms[i++]);
        } else if (c < 0) {
            r.terms.push_back(b.terms[j++]);
        } else {
            Rat s = a.terms[i].second + b.terms[j].second;
            if (s != 0) r.terms.emplace_back(a.terms[i].first, std::move(s));
            ++i, ++j;
        }
    }
    for (; i < a.terms.size(); ++i) r.terms.push_back(a.terms[i]);
    for (; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
    return r;
}

MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r = a;
    for (auto& [m, c] : r.terms) c = -c;
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return MultiPoly();
    if (b.is_monomial()) return mul_mono(a, b.terms[0].first, b.terms[0].second);
    if (a.is_monomial()) return mul_mono(b, a.terms[0].first, a.terms[0].second);
    std::map<Mono, Rat, MonoDescCmp> acc;
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms)
            acc[mono_mul(ma, mb)] += ca * cb;
    return from_map(std::move(acc));
}

MultiPoly mul_mono(const MultiPoly& a, const Mono& m, const Rat& c) {
    if (c == 0) return MultiPoly();
    MultiPoly r;
    r.terms.reserve(a.terms.size());
    for (auto& [ma, ca] : a.terms) r.terms.emplace_back(mono_mul(ma, m), Rat(ca * c));
    return r;
}

MultiPoly mul_rat(const MultiPoly& a, const Rat& c) { return mul_mono(a, Mono{}, c); }

bool try_divide(const MultiPoly& a, const MultiPoly& b, MultiPoly& q) {
    if (b.is_zero()) return false;
    if (a.is_zero()) {
        q = MultiPoly();
        return true;
    }
    if (b.is_monomial()) {
        const Mono& mb = b.terms[0].first;
        q.terms.clear();
        q.terms.reserve(a.terms.size());
        for (auto& [m, c] : a.terms) {
            if (!mono_divides(mb, m)) return false;
            q.terms.emplace_back(mono_div(m, mb), Rat(c / b.terms[0].second));
        }
        return true;
    }
    std::map<Mono, Rat, MonoDescCmp> rem(a.terms.begin(), a.terms.end());
    std::map<Mono, Rat, MonoDescCmp> quot;
    while (!rem.empty()) {
        const Mono lead = rem.begin()->first; // copied: the loop below erases
        if (!mono_divides(b.lead_mono(), lead)) return false;
        Mono qm = mono_div(lead, b.lead_mono());
        Rat qc = rem.begin()->second / b.lead_coeff();
        quot[qm] += qc;
        for (auto& [mb, cb] : b.terms) {
            Mono target = mono_mul(qm, mb);
            auto it = rem.find(target);
            if (it == rem.end()) {
                rem.emplace(target, Rat(-qc * cb));
            } else {
                it->second -= qc * cb;
                if (it->second == 0) rem.erase(it);
            }
        }
    }
    q = from_map(std::move(quot));
    return true;
}

MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly q;
    if (!try_divide(a, b, q)) throw math_error("exact_divide: not divisible");
    return q;
}

void content_primitive(const MultiPoly& p, Rat& content, MultiPoly& primitive) {
    if (p.is_zero()) {
        content = 0;
        primitive = MultiPoly();
        return;
    }
    Int num_gcd = 0, den_lcm = 1;
    for (auto& [m, c] : p.terms) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat scale(num_gcd, den_lcm);
    scale.canonicalize();
    if (p.lead_coeff() < 0) scale = -scale;
    content = scale;
    primitive = mul_rat(p, Rat(1) / scale);
}

namespace {

// ---- univariate-in-one-variable view for the PRS ---------------------------

// coeffs[d] = coefficient of var^d, as a MultiPoly with var stripped.
using UniPoly = std::vector<MultiPoly>;

UniPoly to_uni(const MultiPoly& p, int var) {
    UniPoly u(p.degree(var) + 1);
    for (auto& [m, c] : p.terms) {
        Mono stripped = m;
        int d = m.e[var];
        stripped.e[var] = 0;
        u[d] = u[d] + MultiPoly::monomial(stripped, c);
    }
    return u;
}

MultiPoly from_uni(const UniPoly& u, int var) {
    MultiPoly r;
    for (std::size_t d = 0; d < u.size(); ++d) {
        Mono shift;
        shift.e[var] = (int)d;
        r = r + mul_mono(u[d], shift, 1);
    }
    return r;
}

void uni_trim(UniPoly& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

int uni_deg(const UniPoly& u) { return (int)u.size() - 1; } // -1 when zero

UniPoly uni_scale(const UniPoly& u, const MultiPoly& f) {
    UniPoly r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i] * f;
    return r;
}

UniPoly uni_exact_div(const UniPoly& u, const MultiPoly& f) {
    UniPoly r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = exact_divide(u[i], f);
    return r;
}

// Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A mod B.
UniPoly uni_prem(UniPoly A, const UniPoly& B) {
    int db = uni_deg(B);
    const MultiPoly lb = B[db];
    int scale_budget = uni_deg(A) - db + 1;
    while (!A.empty() && uni_deg(A) >= db) {
        int d = uni_deg(A);
        MultiPoly top = A[d];
        A = uni_scale(A, lb);
        for (int i = 0; i <= db; ++i)
            A[d - db + i] = A[d - db + i] - top * B[i];
        uni_trim(A);
        --scale_budget;
    }
    // Degree may drop by more than one per step; top up so the total factor
    // is exactly lb^(deg A0 - deg B + 1), as the subresultant divisions need.
    for (int i = 0; i < scale_budget; ++i) A = uni_scale(A, lb);
    return A;
}

MultiPoly gcd_primitive(const MultiPoly& a, const MultiPoly& b);

// gcd of the coefficient list (used for contents w.r.t. the main variable).
MultiPoly coeff_gcd(const UniPoly& u) {
    MultiPoly g;
    for (auto& c : u) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : poly_gcd(g, c);
        if (g.is_one()) break;
    }
    if (g.is_zero()) return MultiPoly::constant(1);
    Rat content;
    MultiPoly prim;
    content_primitive(g, content, prim);
    return prim;
}

MultiPoly pow_poly(const MultiPoly& p, int n) {
    MultiPoly r = MultiPoly::constant(1);
    for (int i = 0; i < n; ++i) r = r * p;
    return r;
}

// ---- heuristic gcd (evaluate, integer gcd, xi-adic lift, verify) ------------
//
// Both inputs are primitive with integer coefficients.  The candidate built
// from the big-integer evaluation is accepted only after exact trial
// division, so a miss merely falls back to the subresultant path.

Int max_abs_coeff(const MultiPoly& p) {
    Int m = 0;
    for (auto& [mono, c] : p.terms) {
        Int a = abs(c.get_num());
        if (a > m) m = a;
    }
    return m;
}

int top_var(const MultiPoly& p) {
    for (int v = kNumVars - 1; v >= 0; --v)
        if (p.degree(v) > 0) return v;
    return -1;
}

MultiPoly eval_var(const MultiPoly& p, int var, const Int& xi) {
    std::map<Mono, Rat, MonoDescCmp> acc;
    for (auto& [m, c] : p.terms) {
        Int scale;
        mpz_pow_ui(scale.get_mpz_t(), xi.get_mpz_t(), m.e[var]);
        Mono stripped = m;
        stripped.e[var] = 0;
        acc[stripped] += c * Rat(scale);
    }
    return from_map(std::move(acc));
}

// xi-adic expansion with balanced digits, per integer coefficient.
MultiPoly lift_var(const MultiPoly& gamma, int var, const Int& xi) {
    std::map<Mono, Rat, MonoDescCmp> acc;
    Int half = xi / 2;
    for (auto& [m, c] : gamma.terms) {
        Int rest = c.get_num(); // inputs are integer polynomials
        int power = 0;
        while (rest != 0) {
            Int digit;
            mpz_mod(digit.get_mpz_t(), rest.get_mpz_t(), xi.get_mpz_t());
            if (digit > half) digit -= xi;
            if (digit != 0) {
                Mono shifted = m;
                shifted.e[var] += power;
                acc[shifted] += Rat(digit);
            }
            rest = (rest - digit) / xi;
            ++power;
        }
    }
    return from_map(std::move(acc));
}

bool heuristic_gcd(const MultiPoly& a, const MultiPoly& b, MultiPoly& out, int depth) {
    if (depth > kNumVars + 1) return false;
    const int var = std::max(top_var(a), top_var(b));
    if (var < 0) { // both integers
        Int g;
        mpz_gcd(g.get_mpz_t(), a.lead_coeff().get_num().get_mpz_t(),
                b.lead_coeff().get_num().get_mpz_t());
        out = MultiPoly::constant(Rat(g));
        return true;
    }
    Int bound = max_abs_coeff(a);
    Int bb = max_abs_coeff(b);
    if (bb < bound) bound = bb;
    Int xi = 2 * bound + 2;
    if (xi < 8) xi = 8;
    for (int attempt = 0; attempt < 6; ++attempt) {
        MultiPoly av = eval_var(a, var, xi);
        MultiPoly bv = eval_var(b, var, xi);
        if (!av.is_zero() && !bv.is_zero()) {
            MultiPoly gamma;
            bool ok;
            if (top_var(av) < 0 && top_var(bv) < 0) {
                Int g;
                mpz_gcd(g.get_mpz_t(), av.lead_coeff().get_num().get_mpz_t(),
                        bv.lead_coeff().get_num().get_mpz_t());
                gamma = MultiPoly::constant(Rat(g));
                ok = true;
            } else {
                ok = heuristic_gcd(av, bv, gamma, depth + 1);
            }
            if (ok) {
                MultiPoly lifted = lift_var(gamma, var, xi);
                Rat content;
                MultiPoly prim, q;
                content_primitive(lifted, content, prim);
                if (!prim.is_zero() && try_divide(a, prim, q) && try_divide(b, prim, q)) {
                    out = std::move(prim);
                    return true;
                }
            }
        }
        // grow xi by an irrational-ish factor so bad points are not revisited
        xi = xi * 73794 / 27011 + 1;
    }
    return false;
}

// ---- modular coprimality certificate ----------------------------------------
//
// For v-primitive inputs, deg_v(gcd) is bounded by the degree of the gcd of
// univariate images mod p at any point where both leading v-coefficients
// survive; a degree-0 image therefore certifies coprimality outright.

constexpr std::uint64_t kCertPrime = 2305843009213693951ULL; // 2^61 - 1

std::uint64_t mulmod_p(std::uint64_t a, std::uint64_t b) {
    return (std::uint64_t)((unsigned __int128)a * b % kCertPrime);
}

std::uint64_t coeff_mod_p(const Rat& c) {
    std::uint64_t n = mpz_fdiv_ui(c.get_num().get_mpz_t(), kCertPrime);
    std::uint64_t d = mpz_fdiv_ui(c.get_den().get_mpz_t(), kCertPrime);
    if (d == 0) return kCertPrime; // sentinel: bad point
    // d^(p-2) mod p
    std::uint64_t inv = 1, base = d, e = kCertPrime - 2;
    while (e) {
        if (e & 1) inv = mulmod_p(inv, base);
        base = mulmod_p(base, base);
        e >>= 1;
    }
    return mulmod_p(n, inv);
}

// dense coefficients in var after substituting point[] for the others
bool image_mod_p(const MultiPoly& p, int var, const std::array<std::uint64_t, kNumVars>& point,
                 std::vector<std::uint64_t>& out) {
    out.assign(p.degree(var) + 1, 0);
    for (auto& [m, c] : p.terms) {
        std::uint64_t v = coeff_mod_p(c);
        if (v == kCertPrime) return false;
        for (int w = 0; w < kNumVars; ++w) {
            if (w == var || m.e[w] == 0) continue;
            for (int k = 0; k < m.e[w]; ++k) v = mulmod_p(v, point[w]);
        }
        out[m.e[var]] = (out[m.e[var]] + v) % kCertPrime;
    }
    return true;
}

int uni_gcd_degree_mod_p(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    auto trim = [](std::vector<std::uint64_t>& u) {
        while (!u.empty() && u.back() == 0) u.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        std::uint64_t lb = b.back();
        std::uint64_t inv = 1, base = lb, e = kCertPrime - 2;
        while (e) {
            if (e & 1) inv = mulmod_p(inv, base);
            base = mulmod_p(base, base);
            e >>= 1;
        }
        while (a.size() >= b.size()) {
            std::uint64_t f = mulmod_p(a.back(), inv);
            std::size_t off = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                std::uint64_t sub = mulmod_p(f, b[i]);
                a[off + i] = (a[off + i] + kCertPrime - sub) % kCertPrime;
            }
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return (int)a.size() - 1; // -1 means both zero (cannot happen here)
}

// true only when coprimality is proven; inconclusive points return false.
bool certified_coprime(const MultiPoly& a, const MultiPoly& b, int var) {
    static const std::uint64_t seeds[] = {2, 3, 5, 7, 11, 13, 17, 19};
    for (std::uint64_t s : seeds) {
        std::array<std::uint64_t, kNumVars> point{};
        std::uint64_t x = s;
        for (int v = 0; v < kNumVars; ++v) {
            x = x * 6364136223846793005ULL + 1442695040888963407ULL;
            point[v] = 2 + (x >> 8) % (kCertPrime - 4);
        }
        std::vector<std::uint64_t> ia, ib;
        if (!image_mod_p(a, var, point, ia) || !image_mod_p(b, var, point, ib)) continue;
        if (ia.empty() || ib.empty() || ia.back() == 0 || ib.back() == 0)
            continue; // a leading coefficient died: the bound does not apply
        if (uni_gcd_degree_mod_p(ia, ib) == 0) return true;
        return false; // a nontrivial image: let the exact paths decide
    }
    return false;
}

MultiPoly prs_gcd(const MultiPoly& a, const MultiPoly& b, int var);

// Sound rejection filter: c | a forces image(c) | image(a) mod p whenever
// both leading coefficients survive the evaluation, so a nonzero image
// remainder rules the division out without exact arithmetic.
bool image_may_divide(const MultiPoly& a, const MultiPoly& c) {
    int var = -1;
    for (int v = 0; v < kNumVars; ++v)
        if (c.degree(v) > 0 && a.degree(v) > 0) {
            var = v;
            break;
        }
    if (var < 0) return true;
    std::array<std::uint64_t, kNumVars> point{};
    std::uint64_t x = 0x9e3779b97f4a7c15ULL;
    for (int v = 0; v < kNumVars; ++v) {
        x = x * 6364136223846793005ULL + 1442695040888963407ULL;
        point[v] = 2 + (x >> 8) % (kCertPrime - 4);
    }
    std::vector<std::uint64_t> ia, ic;
    if (!image_mod_p(a, var, point, ia) || !image_mod_p(c, var, point, ic)) return true;
    if (ia.empty() || ic.empty() || ia.back() == 0 || ic.back() == 0) return true;
    std::uint64_t inv = 1, base = ic.back(), e = kCertPrime - 2;
    while (e) {
        if (e & 1) inv = mulmod_p(inv, base);
        base = mulmod_p(base, base);
        e >>= 1;
    }
    while (ia.size() >= ic.size()) {
        std::uint64_t f = mulmod_p(ia.back(), inv);
        std::size_t off = ia.size() - ic.size();
        for (std::size_t i = 0; i < ic.size(); ++i) {
            std::uint64_t sub = mulmod_p(f, ic[i]);
            ia[off + i] = (ia[off + i] + kCertPrime - sub) % kCertPrime;
        }
        while (!ia.empty() && ia.back() == 0) ia.pop_back();
    }
    return ia.empty();
}

// The denominators of this theory are products of binomials m - c with m a
// monomial and c = +-1 (q-integer cores and the genericity family).  For a
// product of binomials every factor shows up as the exponent difference
// between the leading term and some other term, so a division-verified
// candidate sweep recovers the shared structured part long before the
// generic machinery has to run.
bool strip_shared_binomials(MultiPoly& a, MultiPoly& b, MultiPoly& acc) {
    std::vector<MultiPoly> candidates;
    const MultiPoly* sources[2] = {&a, &b};
    for (const MultiPoly* src : sources) {
        if (src->terms.size() < 2 || src->terms.size() > 400) continue;
        const Mono& lead = src->lead_mono();
        std::size_t scan = std::min<std::size_t>(src->terms.size(), 64);
        for (std::size_t t = 1; t < scan; ++t) {
            Mono diff = mono_div(lead, src->terms[t].first);
            Mono pos{}, neg{};
            bool trivial = true;
            for (int v = 0; v < kNumVars; ++v) {
                if (diff.e[v] > 0) pos.e[v] = diff.e[v];
                if (diff.e[v] < 0) neg.e[v] = -diff.e[v];
                if (diff.e[v] != 0) trivial = false;
            }
            if (trivial) continue;
            for (int sign = -1; sign <= 1; sign += 2) {
                MultiPoly cand =
                    MultiPoly::monomial(pos, 1) + MultiPoly::monomial(neg, Rat(sign));
                if (cand.terms.size() == 2) candidates.push_back(std::move(cand));
            }
        }
    }
    bool found = false;
    for (const MultiPoly& cand : candidates) {
        for (;;) {
            if (a.is_constant() || b.is_constant()) return found;
            if (!image_may_divide(a, cand) || !image_may_divide(b, cand)) break;
            MultiPoly q1, q2;
            if (!try_divide(a, cand, q1) || !try_divide(b, cand, q2)) break;
            a = std::move(q1);
            b = std::move(q2);
            acc = acc * cand;
            found = true;
        }
    }
    return found;
}

// gcd of primitive inputs via heuristic candidates, certificates, and the
// subresultant remainder sequence as the unconditional fallback.
MultiPoly gcd_primitive(const MultiPoly& a0, const MultiPoly& b0) {
    MultiPoly a = a0, b = b0, acc = MultiPoly::constant(1);
    for (;;) {
        if (a == b) return acc * a;
        if (a.is_constant() || b.is_constant()) return acc;

        // Fast path: one divides the other.
        {
            GCD_PHASE(us_shortcut);
            MultiPoly q;
            if (a.terms.size() <= b.terms.size() && image_may_divide(b, a) &&
                try_divide(b, a, q))
                return acc * a;
            if (b.terms.size() < a.terms.size() && image_may_divide(a, b) &&
                try_divide(a, b, q))
                return acc * b;
        }

        int var = -1;
        long best = -1;
        for (int v = 0; v < kNumVars; ++v) {
            int da = a.degree(v), db = b.degree(v);
            if (da > 0 && db > 0) {
                long score = std::max(da, db);
                if (var < 0 || score < best) {
                    var = v;
                    best = score;
                }
            }
        }
        if (var < 0) return acc; // no shared variable

        // structured binomial factors first
        {
            GCD_PHASE(us_cofactor);
            if (strip_shared_binomials(a, b, acc)) continue;
        }

        // cheap proof of coprimality in the main variable
        bool cert;
        {
            GCD_PHASE(us_cert);
            cert = certified_coprime(a, b, var);
        }
        if (cert) {
            GCD_STAT(cert_hits);
            // no shared main-variable part; shared content remains possible
            UniPoly A = to_uni(a, var), B = to_uni(b, var);
            MultiPoly contA = coeff_gcd(A), contB = coeff_gcd(B);
            if (contA.is_one() || contB.is_one()) return acc;
            return acc * gcd_primitive(contA, contB);
        }

        // A verified heuristic candidate is a common divisor but possibly
        // not maximal: divide it out and keep going on the cofactors.
        MultiPoly d;
        bool heur_ok;
        {
            GCD_PHASE(us_heur);
            heur_ok = heuristic_gcd(a, b, d, 0);
        }
        if (heur_ok && !d.is_constant()) {
            GCD_STAT(heur_hits);
            GCD_PHASE(us_cofactor);
            Rat content;
            MultiPoly prim;
            content_primitive(d, content, prim);
            a = exact_divide(a, prim);
            b = exact_divide(b, prim);
            acc = acc * prim;
            continue;
        }
        if (!heur_ok) GCD_STAT(heur_fail);
        GCD_STAT(prs_calls);
        GCD_PHASE(us_prs);
        return acc * prs_gcd(a, b, var);
    }
}

// Subresultant polynomial remainder sequence in the given main variable.
MultiPoly prs_gcd(const MultiPoly& a, const MultiPoly& b, int var) {
    UniPoly A = to_uni(a, var), B = to_uni(b, var);
    MultiPoly contA = coeff_gcd(A), contB = coeff_gcd(B);
    MultiPoly cont = poly_gcd(contA, contB);
    if (!contA.is_one()) A = uni_exact_div(A, contA);
    if (!contB.is_one()) B = uni_exact_div(B, contB);
    if (uni_deg(A) < uni_deg(B)) std::swap(A, B);

    MultiPoly g = MultiPoly::constant(1), h = MultiPoly::constant(1);
    MultiPoly result;
    for (;;) {
        int delta = uni_deg(A) - uni_deg(B);
        UniPoly R = uni_prem(A, B);
        if (R.empty()) {
            MultiPoly cb = coeff_gcd(B);
            result = cb.is_one() ? from_uni(B, var) : from_uni(uni_exact_div(B, cb), var);
            break;
        }
        if (uni_deg(R) == 0) {
            result = MultiPoly::constant(1);
            break;
        }
        A = std::move(B);
        MultiPoly divisor = g * pow_poly(h, delta);
        B = uni_exact_div(R, divisor);
        g = A[uni_deg(A)];
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            h = exact_divide(pow_poly(g, delta), pow_poly(h, delta - 1));
        }
    }
    Rat rc;
    MultiPoly prim;
    content_primitive(result, rc, prim);
    return cont * prim;
}

} // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    op_counters().gcd.fetch_add(1, std::memory_order_relaxed);
#ifdef SHAPO_GCD_STATS
    GCD_STAT(calls);
    auto t0 = std::chrono::steady_clock::now();
    struct OnExit {
        std::chrono::steady_clock::time_point t0;
        ~OnExit() {
            g_gcd_stats.us_total.fetch_add(
                std::chrono::duration_cast<std::chrono::microseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count());
        }
    } on_exit{t0};
#endif
    Rat c;
    MultiPoly pa, pb;
    if (a.is_zero()) {
        if (b.is_zero()) return MultiPoly();
        content_primitive(b, c, pb);
        return pb;
    }
    if (b.is_zero()) {
        content_primitive(a, c, pa);
        return pa;
    }
    // Split off the common monomial factor.
    Mono ma{}, mb{}, mc{};
    for (int v = 0; v < kNumVars; ++v) {
        ma.e[v] = a.min_degree(v);
        mb.e[v] = b.min_degree(v);
        mc.e[v] = std::min(ma.e[v], mb.e[v]);
    }
    MultiPoly sa = mul_mono(a, mono_div(Mono{}, ma), 1);
    MultiPoly sb = mul_mono(b, mono_div(Mono{}, mb), 1);
    content_primitive(sa, c, pa);
    content_primitive(sb, c, pb);
    MultiPoly g = gcd_primitive(pa, pb);
    return mul_mono(g, mc, 1);
}

Rat evaluate(const MultiPoly& p, const std::array<Rat, kNumVars>& point) {
    Rat acc = 0;
    for (auto& [m, coef] : p.terms) {
        Rat t = coef;
        for (int v = 0; v < kNumVars; ++v) {
            if (m.e[v] == 0) continue;
            Int pn, pd;
            mpz_pow_ui(pn.get_mpz_t(), point[v].get_num().get_mpz_t(), m.e[v]);
            mpz_pow_ui(pd.get_mpz_t(), point[v].get_den().get_mpz_t(), m.e[v]);
            Rat pw(pn, pd);
            pw.canonicalize();
            t *= pw;
        }
        acc += t;
    }
    return acc;
}

void substitute_z_to_qpow(const MultiPoly& p, const std::array<int, kNumVars - 1>& k,
                          MultiPoly& out, std::int64_t& q_shift) {
    std::int64_t min_exp = 0;
    bool first = true;
    std::vector<std::pair<std::int64_t, Rat>> collected;
    collected.reserve(p.terms.size());
    for (auto& [m, c] : p.terms) {
        std::int64_t e = m.e[0];
        for (int v = 1; v < kNumVars; ++v) e += (std::int64_t)m.e[v] * k[v - 1];
        collected.emplace_back(e, c);
        if (first || e < min_exp) min_exp = e, first = false;
    }
    q_shift = min_exp < 0 ? -min_exp : 0;
    std::map<Mono, Rat, MonoDescCmp> acc;
    for (auto& [e, c] : collected) {
        Mono m;
        m.e[0] = (int)(e + q_shift);
        acc[m] += c;
    }
    out = from_map(std::move(acc));
}

std::string MultiPoly::str() const {
    if (terms.empty()) return "0";
    static const char* names[kNumVars] = {"q", "z1", "z2", "z3", "z4"};
    std::ostringstream os;
    bool firstTerm = true;
    for (auto& [m, c] : terms) {
        Rat ac = c < 0 ? Rat(-c) : c;
        if (firstTerm) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        firstTerm = false;
        bool hasVar = !(m == Mono{});
        if (!hasVar || ac != 1) {
            os << ac.get_str();
            if (hasVar) os << "*";
        }
        bool firstVar = true;
        for (int v = 0; v < kNumVars; ++v) {
            if (m.e[v] == 0) continue;
            if (!firstVar) os << "*";
            firstVar = false;
            os << names[v];
            if (m.e[v] != 1) os << "^" << m.e[v];
        }
    }
    return os.str();
}

} // namespace shapo
