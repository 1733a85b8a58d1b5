#include "shapo/singular.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "shapo/util.hpp"

namespace shapo {

SingularVectorReport singular_vector(const WeightModule& T, const WeightModule& V,
                                     const WeightModule& M, const FHatMatrix& fhat, int j) {
    SingularVectorReport rep;
    rep.j = j;
    const int dm = M.dim();
    rep.vector.emplace_back(j * dm + 0, Scalar(1));
    for (auto& [key, vec] : fhat.on_hw) {
        if (key.second != j) continue;
        for (auto& [b, c] : vec) rep.vector.emplace_back(key.first * dm + b, c);
    }
    std::sort(rep.vector.begin(), rep.vector.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    rep.annihilated = true;
    for (int a = 0; a < V.rs->rank(); ++a) {
        SparseVec r = mat_apply(T.e_act[a], rep.vector);
        if (!r.empty()) rep.annihilated = false;
        rep.residuals.push_back(std::move(r));
    }
    return rep;
}

InverseCheckReport verify_inverse_blocks(const ShapovalovForm& form, const FHatMatrix& fhat,
                                         int cutoff) {
    InverseCheckReport rep;
    const WeightModule& M = form.M();
    const WeightModule& Mstar = form.Mstar();
    if (fhat.V != &Mstar)
        throw std::invalid_argument("verify_inverse: fhat must live on the mirror module");

    std::vector<Weight> nus;
    for (const auto& nu : M.words->weights())
        if (weight_height(nu) <= cutoff) nus.push_back(nu);

    std::vector<InverseCheckReport::Block> blocks(nus.size());
    parallel_for(nus.size(), [&](std::size_t bi) {
        const Weight& nu = nus[bi];
        auto& line = blocks[bi];
        line.nu = nu;
        const auto& rows = M.indices_at(weight_neg(nu)); // M basis at la - nu
        const auto& cols = Mstar.indices_at(nu);         // mirror basis at -la + nu
        line.dim = (int)rows.size();
        std::map<int, int> row_pos;
        for (std::size_t s = 0; s < rows.size(); ++s) row_pos[rows[s]] = (int)s;

        DenseMat c(rows.size(), DenseVec(cols.size()));
        for (std::size_t ci = 0; ci < cols.size(); ++ci) {
            int i = cols[ci];
            if (i == 0) {
                if (!weight_is_zero(nu)) throw math_error("verify_inverse: index misalignment");
                c[0][0] = Scalar(1);
                continue;
            }
            auto it = fhat.on_hw.find({i, 0});
            if (it == fhat.on_hw.end()) continue;
            for (auto& [r, v] : it->second) c[row_pos.at(r)][ci] = v;
        }
        DenseMat p = form.block(nu);
        DenseMat prod = dense_mul(p, c);
        bool ok = true;
        for (std::size_t r = 0; r < prod.size(); ++r) {
            for (std::size_t s = 0; s < prod[r].size(); ++s) {
                const bool want_one = r == s;
                if ((want_one && !prod[r][s].is_one()) || (!want_one && !prod[r][s].is_zero())) {
                    ok = false;
                    if (line.detail.empty())
                        line.detail = "entry (" + std::to_string(r) + "," + std::to_string(s) +
                                      ") = " + prod[r][s].str();
                }
            }
        }
        line.ok = ok;
    });
    for (auto& b : blocks) {
        rep.ok = rep.ok && b.ok;
        rep.blocks.push_back(std::move(b));
    }
    return rep;
}

MultiPoly genericity_factor(const RootSystem& rs, const Weight& alpha, int m) {
    AffineExponent e(2 * rs.pairing_rho(alpha) - (std::int64_t)m * rs.norm2(alpha));
    for (int i = 0; i < rs.rank(); ++i) e.lambda[i] = 2 * alpha[i];
    Scalar f = q_pow(e) - Scalar(1);
    Rat content;
    MultiPoly prim;
    content_primitive(f.num(), content, prim);
    return prim;
}

namespace {

struct PolyLess {
    bool operator()(const MultiPoly& a, const MultiPoly& b) const {
        if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size();
        for (std::size_t i = 0; i < a.terms.size(); ++i) {
            int c = mono_cmp(a.terms[i].first, b.terms[i].first);
            if (c != 0) return c < 0;
            int cc = cmp(a.terms[i].second, b.terms[i].second);
            if (cc != 0) return cc < 0;
        }
        return false;
    }
};

} // namespace

AuditReport denominator_audit(const RootSystem& rs, const std::vector<Scalar>& values,
                              int m_cap) {
    AuditReport rep;
    // distinct non-unit denominators
    std::set<MultiPoly, PolyLess> dens;
    auto strip = [](const MultiPoly& p) {
        Mono shift{};
        for (int v = 0; v < kNumVars; ++v) shift.e[v] = -p.min_degree(v);
        Rat content;
        MultiPoly prim;
        content_primitive(mul_mono(p, shift, 1), content, prim);
        return prim;
    };
    auto z_free = [](const MultiPoly& p) {
        for (int v = 1; v < kNumVars; ++v)
            if (p.degree(v) != 0) return false;
        return true;
    };
    for (const Scalar& s : values) {
        if (s.is_zero()) continue;
        MultiPoly d = strip(s.den());
        if (!z_free(d)) dens.insert(std::move(d));
    }

    std::map<std::pair<Weight, int>, long> counts;
    MultiPoly leftover_product = MultiPoly::constant(1);
    for (const MultiPoly& d0 : dens) {
        MultiPoly d = d0;
        for (const auto& alpha : rs.positive_roots()) {
            for (int m = 1; m <= m_cap; ++m) {
                MultiPoly cand = genericity_factor(rs, alpha, m);
                for (;;) {
                    MultiPoly g = poly_gcd(d, cand);
                    if (g.is_constant()) break;
                    d = strip(exact_divide(d, g));
                    counts[{alpha, m}] += 1;
                    if (z_free(d)) break;
                }
                if (z_free(d)) break;
            }
            if (z_free(d)) break;
        }
        if (!z_free(d)) {
            rep.ok = false;
            if (rep.leftover.empty()) rep.leftover = d.str();
            leftover_product = leftover_product * d;
        }
    }
    for (auto& [key, count] : counts)
        rep.inventory.push_back({key.first, key.second, count});
    return rep;
}

std::vector<SpecPoint> seeded_points(std::uint64_t seed, int count,
                                     const std::vector<MultiPoly>& avoid) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(2, 9), den(1, 4), sign(0, 1);
    std::vector<SpecPoint> out;
    int guard = 0;
    while ((int)out.size() < count) {
        if (++guard > 100000) throw math_error("seeded_points: could not avoid the poles");
        SpecPoint p;
        Rat q0(num(rng), den(rng));
        q0.canonicalize();
        if (q0 == 1) continue;
        p.q0 = q0;
        for (int i = 0; i < kNumVars - 1; ++i) {
            Rat zi(num(rng), den(rng));
            zi.canonicalize();
            if (sign(rng)) zi = 1 / zi;
            p.z[i] = zi;
        }
        std::array<Rat, kNumVars> point;
        point[0] = p.q0;
        for (int i = 0; i < kNumVars - 1; ++i) point[i + 1] = p.z[i];
        bool clean = true;
        for (const auto& poly : avoid) {
            if (evaluate(poly, point) == 0) {
                clean = false;
                break;
            }
        }
        if (clean) out.push_back(std::move(p));
    }
    return out;
}

} // namespace shapo
