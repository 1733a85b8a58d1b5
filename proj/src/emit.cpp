#include "shapo/emit.hpp"

#include <sstream>

namespace shapo {

namespace {

ejson poly_json(const MultiPoly& p, int rank) {
    ejson arr = ejson::array();
    for (auto& [m, c] : p.terms) {
        ejson term = ejson::array();
        term.push_back(Rat(c).get_str());
        term.push_back(m.e[0]);
        for (int v = 1; v <= rank; ++v) term.push_back(m.e[v]);
        arr.push_back(std::move(term));
    }
    return arr;
}

} // namespace

ejson scalar_json(const Scalar& s, int rank) {
    return ejson{{"num", poly_json(s.num(), rank)}, {"den", poly_json(s.den(), rank)}};
}

ejson sparse_mat_json(const SparseMat& m, int rank) {
    ejson entries = ejson::array();
    for (int c = 0; c < m.cols; ++c)
        for (auto& [r, v] : m.col[c])
            entries.push_back(ejson{{"row", r}, {"col", c}, {"value", scalar_json(v, rank)}});
    return ejson{{"rows", m.rows}, {"cols", m.cols}, {"entries", std::move(entries)}};
}

ejson dense_mat_json(const DenseMat& m, int rank) {
    ejson rows = ejson::array();
    for (auto& row : m) {
        ejson r = ejson::array();
        for (auto& v : row) r.push_back(scalar_json(v, rank));
        rows.push_back(std::move(r));
    }
    return rows;
}

ejson weight_json(const Weight& w) {
    ejson arr = ejson::array();
    for (int c : w) arr.push_back(c);
    return arr;
}

namespace {

// primitive numerator of [n]_q: 1 + q^2 + ... + q^{2(n-1)}
MultiPoly qint_core(int n) {
    MultiPoly p;
    for (int k = 0; k < n; ++k) {
        Mono m;
        m.e[0] = 2 * k;
        p = p + MultiPoly::monomial(m, 1);
    }
    return p;
}

struct Factored {
    Rat coeff = 1;
    Mono mono{};
    std::vector<std::pair<int, int>> qints; // (n, power)
    MultiPoly rest;
};

Factored factor_qints(const MultiPoly& p) {
    Factored f;
    if (p.is_zero()) {
        f.coeff = 0;
        f.rest = MultiPoly();
        return f;
    }
    MultiPoly cur = p;
    for (int v = 0; v < kNumVars; ++v) f.mono.e[v] = cur.min_degree(v);
    cur = mul_mono(cur, mono_div(Mono{}, f.mono), 1);
    Rat content;
    MultiPoly prim;
    content_primitive(cur, content, prim);
    f.coeff = content;
    cur = std::move(prim);
    for (int n = 16; n >= 2; --n) {
        MultiPoly cand = qint_core(n);
        int power = 0;
        MultiPoly q;
        while (try_divide(cur, cand, q)) {
            cur = q;
            ++power;
        }
        if (power) f.qints.emplace_back(n, power);
    }
    f.rest = std::move(cur);
    return f;
}

void append_mono(std::ostream& os, const Mono& m, bool& any) {
    static const char* names[kNumVars] = {"q", "z1", "z2", "z3", "z4"};
    for (int v = 0; v < kNumVars; ++v) {
        if (m.e[v] == 0) continue;
        if (any) os << "*";
        any = true;
        os << names[v];
        if (m.e[v] != 1) os << "^" << m.e[v];
    }
}

std::string side_str(const MultiPoly& p) {
    Factored f = factor_qints(p);
    std::ostringstream os;
    bool any = false;
    if (f.coeff == -1) {
        os << "-";
    } else if (f.coeff != 1) {
        os << f.coeff.get_str();
        any = true;
    }
    // each stored core is q^{n-1} [n]_q, so move that power into the monomial
    Mono display = f.mono;
    for (auto& [n, pw] : f.qints) display.e[0] -= (n - 1) * pw;
    append_mono(os, display, any);
    for (auto& [n, pw] : f.qints) {
        if (any) os << "*";
        any = true;
        os << "[" << n << "]_q";
        if (pw > 1) os << "^" << pw;
    }
    if (!f.rest.is_one() || !any) {
        if (any) os << "*";
        os << (f.rest.terms.size() > 1 ? "(" + f.rest.str() + ")" : f.rest.str());
    }
    return os.str();
}

} // namespace

std::string pretty_scalar(const Scalar& s) {
    if (s.is_zero()) return "0";
    std::string num = side_str(s.num());
    if (s.den().is_one()) return num;
    std::string den = side_str(s.den());
    return "(" + num + ") / (" + den + ")";
}

} // namespace shapo
