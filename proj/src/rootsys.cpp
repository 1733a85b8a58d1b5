#include "shapo/rootsys.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "shapo/util.hpp"

namespace shapo {

Weight weight_add(const Weight& a, const Weight& b) {
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Weight weight_sub(const Weight& a, const Weight& b) {
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Weight weight_neg(const Weight& a) {
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

int weight_height(const Weight& a) { return std::accumulate(a.begin(), a.end(), 0); }

bool weight_is_zero(const Weight& a) {
    return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

bool weight_nonneg(const Weight& a) {
    return std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; });
}

std::string weight_str(const Weight& a) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
    return os.str();
}

std::vector<std::vector<int>> RootSystem::cartan_of_type(const std::string& type) {
    if (type == "A1") return {{2}};
    if (type == "A2") return {{2, -1}, {-1, 2}};
    if (type == "A3") return {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    if (type == "B2") return {{2, -1}, {-2, 2}};
    if (type == "G2") return {{2, -3}, {-1, 2}};
    throw std::invalid_argument("unknown type '" + type + "' (supported: A1 A2 A3 B2 G2)");
}

RootSystem RootSystem::from_type(const std::string& type) {
    RootSystem rs = build(cartan_of_type(type));
    rs.type_ = type;
    return rs;
}

RootSystem RootSystem::build(const std::vector<std::vector<int>>& cartan) {
    RootSystem rs;
    const int r = (int)cartan.size();
    if (r < 1 || r > 4) throw std::invalid_argument("rank must be between 1 and 4");
    for (auto& row : cartan)
        if ((int)row.size() != r) throw std::invalid_argument("Cartan matrix must be square");
    for (int i = 0; i < r; ++i) {
        if (cartan[i][i] != 2) throw std::invalid_argument("Cartan diagonal must be 2");
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            if (cartan[i][j] > 0) throw std::invalid_argument("off-diagonal entries must be <= 0");
            if ((cartan[i][j] == 0) != (cartan[j][i] == 0))
                throw std::invalid_argument("Cartan matrix has one-sided zero");
        }
    }
    rs.rank_ = r;
    rs.cartan_ = cartan;

    // Symmetrizer: propagate d_j / d_i = A_ij / A_ji over the Dynkin graph,
    // then scale each value set to minimal positive integers.
    std::vector<Rat> d(r, 0);
    for (int start = 0; start < r; ++start) {
        if (d[start] != 0) continue;
        d[start] = 1;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < r; ++j) {
                if (i == j || cartan[i][j] == 0) continue;
                Rat dj = d[i] * Rat(cartan[i][j]) / Rat(cartan[j][i]);
                if (d[j] == 0) {
                    d[j] = dj;
                    stack.push_back(j);
                } else if (d[j] != dj) {
                    throw std::invalid_argument("Cartan matrix is not symmetrizable");
                }
            }
        }
    }
    Int den_lcm = 1, num_gcd = 0;
    for (auto& x : d) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    }
    for (auto& x : d) x *= Rat(den_lcm);
    for (auto& x : d) mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
    rs.d_.resize(r);
    for (int i = 0; i < r; ++i) {
        Rat v = d[i] / Rat(num_gcd);
        if (v.get_den() != 1 || v <= 0)
            throw std::invalid_argument("Cartan matrix is not symmetrizable");
        rs.d_[i] = (int)v.get_num().get_si();
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if ((std::int64_t)rs.d_[i] * cartan[i][j] != (std::int64_t)rs.d_[j] * cartan[j][i])
                throw std::invalid_argument("Cartan matrix is not symmetrizable");

    rs.gram_.assign(r, std::vector<std::int64_t>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) rs.gram_[i][j] = (std::int64_t)rs.d_[i] * cartan[i][j];

    // Finite type <=> the symmetrized matrix is positive definite.
    {
        std::vector<std::vector<Rat>> m(r, std::vector<Rat>(r));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) m[i][j] = Rat((long)rs.gram_[i][j]);
        for (int k = 0; k < r; ++k) {
            // leading principal minor via fraction-free elimination on a copy
            std::vector<std::vector<Rat>> sub(k + 1, std::vector<Rat>(k + 1));
            for (int i = 0; i <= k; ++i)
                for (int j = 0; j <= k; ++j) sub[i][j] = m[i][j];
            Rat det = 1;
            for (int c = 0; c <= k; ++c) {
                int piv = -1;
                for (int i = c; i <= k; ++i)
                    if (sub[i][c] != 0) {
                        piv = i;
                        break;
                    }
                if (piv < 0) {
                    det = 0;
                    break;
                }
                if (piv != c) {
                    std::swap(sub[piv], sub[c]);
                    det = -det;
                }
                det *= sub[c][c];
                for (int i = c + 1; i <= k; ++i) {
                    Rat f = sub[i][c] / sub[c][c];
                    for (int j = c; j <= k; ++j) sub[i][j] -= f * sub[c][j];
                }
            }
            if (det <= 0)
                throw std::invalid_argument("Cartan matrix is not of finite type");
        }
    }

    // Positive roots: reflection closure of the simple roots.
    std::set<Weight> seen;
    std::vector<Weight> queue;
    for (int i = 0; i < r; ++i) {
        Weight a(r, 0);
        a[i] = 1;
        seen.insert(a);
        queue.push_back(a);
    }
    std::size_t safety = 0;
    while (!queue.empty()) {
        if (++safety > 4096) throw std::invalid_argument("reflection closure did not terminate");
        Weight b = queue.back();
        queue.pop_back();
        for (int i = 0; i < r; ++i) {
            // s_i(b) = b - <b, alpha_i^vee> alpha_i, <b, alpha_i^vee> = sum_j A_ij b_j
            std::int64_t c = 0;
            for (int j = 0; j < r; ++j) c += (std::int64_t)cartan[i][j] * b[j];
            Weight s = b;
            s[i] -= (int)c;
            if (weight_nonneg(s) && !weight_is_zero(s) && !seen.count(s)) {
                seen.insert(s);
                queue.push_back(s);
            }
        }
    }
    rs.pos_roots_.assign(seen.begin(), seen.end());
    std::sort(rs.pos_roots_.begin(), rs.pos_roots_.end(), [](const Weight& a, const Weight& b) {
        int ha = weight_height(a), hb = weight_height(b);
        if (ha != hb) return ha < hb;
        return a < b;
    });

    rs.rho_.assign(r, 0);
    for (auto& root : rs.pos_roots_)
        for (int i = 0; i < r; ++i) rs.rho_[i] += Rat(root[i]) / 2;

    for (int i = 0; i < r; ++i) {
        Weight alpha(r, 0);
        alpha[i] = 1;
        if (rs.pairing_fixed(rs.rho_, alpha) != rs.d_[i])
            throw math_error("rho pairing check failed");
    }
    return rs;
}

std::int64_t RootSystem::pairing(const Weight& a, const Weight& b) const {
    std::int64_t s = 0;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) s += (std::int64_t)a[i] * gram_[i][j] * b[j];
    return s;
}

std::int64_t RootSystem::pairing_rho(const Weight& a) const { return pairing_fixed(rho_, a); }

std::int64_t RootSystem::norm2(const Weight& a) const { return pairing(a, a); }

std::int64_t RootSystem::pairing_fixed(const std::vector<Rat>& fixed, const Weight& mu) const {
    Rat s = 0;
    for (int i = 0; i < rank_; ++i) {
        if (fixed.empty()) break;
        for (int j = 0; j < rank_; ++j) s += fixed[i] * Rat((long)gram_[i][j]) * Rat(mu[j]);
    }
    if (s.get_den() != 1)
        throw math_error("non-integral weight pairing: " + s.get_str());
    return (std::int64_t)s.get_num().get_si();
}

AffineExponent RootSystem::pairing_affine(const ModuleWeight& w, const Weight& mu) const {
    AffineExponent x;
    x.constant = pairing(w.offset, mu) + (w.fixed.empty() ? 0 : pairing_fixed(w.fixed, mu));
    if (w.lambda_sign != 0) {
        for (int i = 0; i < rank_; ++i) x.lambda[i] = w.lambda_sign * mu[i];
    }
    return x;
}

EtaForm RootSystem::eta(const Weight& mu) const {
    std::int64_t n2 = norm2(mu);
    if (n2 % 2 != 0) throw math_error("odd norm on the root lattice");
    return EtaForm{mu, pairing_rho(mu) - n2 / 2};
}

AffineExponent RootSystem::eta_at(const EtaForm& e, const ModuleWeight& w) const {
    AffineExponent x = pairing_affine(w, e.mu);
    x.constant += e.scalar;
    return x;
}

AffineExponent RootSystem::eta_at_lambda(const Weight& mu) const {
    ModuleWeight lambda;
    lambda.lambda_sign = 1;
    lambda.offset.assign(rank_, 0);
    return eta_at(eta(mu), lambda);
}

std::vector<Rat> RootSystem::reflect(const std::vector<Rat>& v, int i) const {
    // <v, alpha_i^vee> = (v, alpha_i) / d_i
    Rat c = 0;
    for (int j = 0; j < rank_; ++j) c += v[j] * Rat((long)gram_[j][i]);
    c /= Rat(d_[i]);
    std::vector<Rat> s = v;
    s[i] -= c * 2 / Rat(cartan_[i][i]); // cartan[i][i] == 2
    return s;
}

ModuleWeight module_weight_add(const ModuleWeight& a, const ModuleWeight& b) {
    ModuleWeight r;
    r.lambda_sign = a.lambda_sign + b.lambda_sign;
    if (r.lambda_sign < -1 || r.lambda_sign > 1)
        throw std::invalid_argument("at most one tensor factor may carry the symbolic weight");
    std::size_t n = std::max(a.fixed.size(), b.fixed.size());
    r.fixed.assign(n, 0);
    for (std::size_t i = 0; i < a.fixed.size(); ++i) r.fixed[i] += a.fixed[i];
    for (std::size_t i = 0; i < b.fixed.size(); ++i) r.fixed[i] += b.fixed[i];
    r.offset = a.offset.empty() ? b.offset
             : b.offset.empty() ? a.offset
                                : weight_add(a.offset, b.offset);
    return r;
}

} // namespace shapo
