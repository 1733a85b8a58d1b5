#include "shapo/routesum.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "shapo/util.hpp"

namespace shapo {

RouteDiagram hasse(const WeightModule& V, const GradedTensorOperator& F) {
    RouteDiagram d;
    d.V = &V;
    const int n = V.dim();
    const RootSystem& rs = *V.rs;

    for (int a = 0; a < rs.rank(); ++a) {
        for (int j = 0; j < n; ++j)
            for (auto& [i, c] : V.e_act[a].col[j]) d.arrows.push_back({i, j, a, c});
    }

    d.step.assign(n, std::vector<char>(n, 0));
    for (auto& [key, op] : F.entries) {
        if (!op.is_zero()) d.step[key.first][key.second] = 1;
    }
    d.succ = d.step;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!d.succ[i][k]) continue;
            for (int j = 0; j < n; ++j)
                if (d.succ[k][j]) d.succ[i][j] = 1;
        }
    return d;
}

std::vector<std::vector<int>> routes(const RouteDiagram& d, int i, int j) {
    std::vector<std::vector<int>> out;
    if (i == j) {
        out.push_back({i});
        return out;
    }
    std::vector<int> cur{i};
    std::function<void(int)> dfs = [&](int at) {
        if (d.step[at][j]) {
            cur.push_back(j);
            out.push_back(cur);
            cur.pop_back();
        }
        for (int m = 0; m < d.V->dim(); ++m) {
            if (m == j || !d.step[at][m] || !d.succ[m][j]) continue;
            cur.push_back(m);
            dfs(m);
            cur.pop_back();
        }
    };
    if (d.succ[i][j]) dfs(i);
    return out;
}

Scalar a_coeff_at(const RootSystem& rs, const Weight& mu, const ModuleWeight& w) {
    return phi(-rs.eta_at(rs.eta(mu), w));
}

Scalar a_coeff(const RootSystem& rs, const Weight& mu) {
    ModuleWeight lambda;
    lambda.lambda_sign = 1;
    lambda.offset.assign(rs.rank(), 0);
    return a_coeff_at(rs, mu, lambda);
}

FHatMatrix fhat_route_sum(const WeightModule& V, const GradedTensorOperator& F,
                          const WeightModule& M, bool full_ops,
                          std::vector<NodeCost>* bench) {
    if (M.kind != "verma")
        throw std::invalid_argument("fhat: the second factor must be a Verma module");
    FHatMatrix fh;
    fh.V = &V;
    fh.M = &M;
    fh.full = full_ops;
    const RootSystem& rs = *V.rs;
    RouteDiagram d = hasse(V, F);
    const int n = V.dim();

    // memoized bottom-up accumulation per target node j, one source column
    // of M at a time (column 0 is the highest-weight generator)
    std::vector<int> cols;
    if (full_ops) {
        for (int c = 0; c < M.dim(); ++c) cols.push_back(c);
    } else {
        cols.push_back(0);
    }

    std::vector<std::vector<std::pair<int, int>>> jobs(n); // per j: (node, height) sorted
    for (int j = 0; j < n; ++j) {
        for (int m = 0; m < n; ++m) {
            if (!d.succ[m][j]) continue;
            Weight mu = weight_sub(V.offset[m], V.offset[j]);
            jobs[j].emplace_back(m, weight_height(mu));
        }
        std::sort(jobs[j].begin(), jobs[j].end(),
                  [](const auto& a, const auto& b) {
                      return a.second != b.second ? a.second < b.second : a.first < b.first;
                  });
    }

    std::vector<std::map<std::pair<int, int>, SparseVec>> partial(cols.size());
    parallel_for(cols.size(), [&](std::size_t ci) {
        const int c = cols[ci];
        const ModuleWeight wc = M.weight_of(c);
        for (int j = 0; j < n; ++j) {
            std::map<int, SparseVec> g;
            g[j] = SparseVec{{c, Scalar(1)}};
            for (auto& [m, hm] : jobs[j]) {
                if (M.trunc_level[c] + hm > M.cutoff) continue;
                const bool sample = bench && c == 0 && j == 0;
                auto t0 = std::chrono::steady_clock::now();
                OpSnapshot ops0 = sample ? snapshot_ops() : OpSnapshot{};
                SparseVec acc;
                for (auto& [mp, vec] : g) {
                    if (!d.step[m][mp] || vec.empty()) continue;
                    const SparseMat* op = F.entry(m, mp);
                    if (!op) continue;
                    acc = sparse_add(acc, mat_apply(*op, vec));
                }
                if (acc.empty()) {
                    g[m] = {};
                    continue;
                }
                Weight mu = weight_sub(V.offset[m], V.offset[j]);
                g[m] = sparse_scale(acc, a_coeff_at(rs, mu, wc));
                if (!g[m].empty()) partial[ci][{m, j}] = g[m];
                if (sample) {
                    OpSnapshot d2 = diff_ops(ops0, snapshot_ops());
                    double ms = std::chrono::duration<double, std::milli>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
                    bench->push_back({mu, ms, d2.add + d2.mul + d2.div + d2.gcd});
                }
            }
        }
    });

    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
        for (auto& [key, vec] : partial[ci]) {
            if (cols[ci] == 0) fh.on_hw[key] = vec;
            if (full_ops) {
                auto it = fh.ops.find(key);
                if (it == fh.ops.end())
                    it = fh.ops.emplace(key, SparseMat::zero(M.dim(), M.dim())).first;
                it->second.col[cols[ci]] = std::move(vec);
            }
        }
    }
    return fh;
}

} // namespace shapo
