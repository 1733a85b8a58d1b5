// shapoform: exact computations around the inverse Shapovalov form for
// quantized enveloping algebras of small rank.
//
// Exit codes: 0 success, 2 usage error, 3 mathematical check failure.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "shapo/emit.hpp"
#include "shapo/findim.hpp"
#include "shapo/singular.hpp"
#include "shapo/util.hpp"

using namespace shapo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCheckFailed = 3;

struct Global {
    std::string format = "json"; // json | text
    std::string out;             // empty: stdout
    std::uint64_t seed = 20240817;
    int points = 10;
};

int cutoff_cap(const std::string& type) {
    if (type == "A1") return 10;
    if (type == "A2") return 6;
    if (type == "A3") return 4;
    if (type == "B2") return 5;
    if (type == "G2") return 3;
    throw std::invalid_argument("unknown type '" + type + "'");
}

void require_cutoff(const std::string& type, int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
    int cap = cutoff_cap(type);
    if (cutoff > cap)
        throw std::invalid_argument("cutoff " + std::to_string(cutoff) + " exceeds the " + type +
                                    " cap " + std::to_string(cap));
}

// "verma-dual" | "fund:k" | "hw:m1,m2,..."
WeightModule make_first_leg(const RootSystem& rs, const std::string& spec, int cutoff) {
    if (spec == "verma-dual") return dual_verma_truncated(rs, cutoff);
    if (spec.rfind("fund:", 0) == 0) {
        int k = std::stoi(spec.substr(5));
        if (k < 1 || k > rs.rank())
            throw std::invalid_argument("fund index out of range for rank " +
                                        std::to_string(rs.rank()));
        std::vector<int> labels(rs.rank(), 0);
        labels[k - 1] = 1;
        return finite_dim_module(rs, labels).module;
    }
    if (spec.rfind("hw:", 0) == 0) {
        std::vector<int> labels;
        std::string rest = spec.substr(3);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            std::size_t comma = rest.find(',', pos);
            std::string tok = rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
            labels.push_back(std::stoi(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if ((int)labels.size() != rs.rank())
            throw std::invalid_argument("hw: needs one label per simple root");
        return finite_dim_module(rs, labels).module;
    }
    throw std::invalid_argument("module spec must be verma-dual, fund:k, or hw:m1,m2,...");
}

Weight parse_nu(const RootSystem& rs, const std::string& s) {
    Weight nu;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        nu.push_back(std::stoi(s.substr(pos, comma == std::string::npos ? comma : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if ((int)nu.size() != rs.rank())
        throw std::invalid_argument("--nu needs one coordinate per simple root");
    return nu;
}

void write_report(const Global& g, const ejson& j, const std::string& text) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!g.out.empty()) {
        file.open(g.out);
        if (!file) throw std::invalid_argument("cannot open output file " + g.out);
        os = &file;
    }
    if (g.format == "json")
        *os << j.dump(2) << "\n";
    else
        *os << text;
}

ejson header(const std::string& command, const Global& g) {
    return ejson{{"schema_version", kSchemaVersion}, {"command", command}, {"seed", g.seed}};
}

// ---- roots ------------------------------------------------------------------

int cmd_roots(const Global& g, const std::string& type) {
    RootSystem rs = RootSystem::from_type(type);
    ejson j = header("roots", g);
    j["type"] = type;
    j["rank"] = rs.rank();
    j["symmetrizer"] = rs.sym();
    ejson roots = ejson::array();
    std::ostringstream text;
    text << "positive roots of " << type << " (simple-root coordinates)\n";
    for (auto& alpha : rs.positive_roots()) {
        roots.push_back(ejson{{"coords", weight_json(alpha)},
                              {"height", weight_height(alpha)},
                              {"norm2", rs.norm2(alpha)},
                              {"rho_pairing", rs.pairing_rho(alpha)}});
        text << "  " << weight_str(alpha) << "  ht=" << weight_height(alpha)
             << "  (a,a)=" << rs.norm2(alpha) << "  (rho,a)=" << rs.pairing_rho(alpha) << "\n";
    }
    j["positive_roots"] = std::move(roots);
    ejson gram = ejson::array();
    text << "gram matrix of simple roots\n";
    for (int i = 0; i < rs.rank(); ++i) {
        ejson row = ejson::array();
        text << " ";
        for (int k = 0; k < rs.rank(); ++k) {
            Weight a(rs.rank(), 0), b(rs.rank(), 0);
            a[i] = 1;
            b[k] = 1;
            auto v = rs.pairing(a, b);
            row.push_back(v);
            text << " " << v;
        }
        text << "\n";
        gram.push_back(std::move(row));
    }
    j["gram"] = std::move(gram);
    write_report(g, j, text.str());
    return kExitOk;
}

// ---- verma ------------------------------------------------------------------

int cmd_verma(const Global& g, const std::string& type, int cutoff, const std::string& emit) {
    require_cutoff(type, cutoff);
    RootSystem rs = RootSystem::from_type(type);
    WeightModule m = verma_truncated(rs, cutoff);
    ejson j = header("verma", g);
    j["type"] = type;
    j["cutoff"] = cutoff;
    j["dim"] = m.dim();
    std::ostringstream text;
    if (emit == "dims") {
        ejson dims = ejson::array();
        text << "weight-space dimensions of the truncated module\n";
        for (const auto& nu : m.words->weights()) {
            auto& idx = m.indices_at(weight_neg(nu));
            dims.push_back(ejson{{"nu", weight_json(nu)}, {"dim", (int)idx.size()}});
            text << "  la-" << weight_str(nu) << "  dim " << idx.size() << "\n";
        }
        j["weight_dims"] = std::move(dims);
    } else if (emit == "actions") {
        ejson actions = ejson::array();
        for (int a = 0; a < rs.rank(); ++a) {
            actions.push_back(ejson{{"generator", "e" + std::to_string(a + 1)},
                                    {"matrix", sparse_mat_json(m.e_act[a], rs.rank())}});
            actions.push_back(ejson{{"generator", "f" + std::to_string(a + 1)},
                                    {"matrix", sparse_mat_json(m.f_act[a], rs.rank())}});
        }
        j["basis"] = m.label;
        j["actions"] = std::move(actions);
        text << "basis:\n";
        for (int b = 0; b < m.dim(); ++b) text << "  [" << b << "] " << m.label[b] << "\n";
        for (int a = 0; a < rs.rank(); ++a) {
            text << "e" << a + 1 << ":\n";
            for (int c = 0; c < m.dim(); ++c)
                for (auto& [r, v] : m.e_act[a].col[c])
                    text << "  (" << r << "," << c << ") " << pretty_scalar(v) << "\n";
            text << "f" << a + 1 << ":\n";
            for (int c = 0; c < m.dim(); ++c)
                for (auto& [r, v] : m.f_act[a].col[c])
                    text << "  (" << r << "," << c << ") " << pretty_scalar(v) << "\n";
        }
    } else {
        throw std::invalid_argument("--emit must be dims or actions");
    }
    write_report(g, j, text.str());
    return kExitOk;
}

// ---- gram -------------------------------------------------------------------

int cmd_gram(const Global& g, const std::string& type, int cutoff, const std::string& nu_str,
             const std::string& emit) {
    require_cutoff(type, cutoff);
    RootSystem rs = RootSystem::from_type(type);
    Weight nu = parse_nu(rs, nu_str);
    if (!weight_nonneg(nu) || weight_height(nu) > cutoff)
        throw std::invalid_argument("nu must be non-negative with height within the cutoff");
    WeightModule m = verma_truncated(rs, cutoff);
    WeightModule ms = dual_verma_truncated(rs, cutoff);
    ShapovalovForm form(m, ms);
    ejson j = header("gram", g);
    j["type"] = type;
    j["cutoff"] = cutoff;
    j["nu"] = weight_json(nu);
    std::ostringstream text;
    DenseMat p = form.block(nu);
    j["dim"] = (int)p.size();
    auto text_mat = [&](const DenseMat& mat) {
        for (auto& row : mat) {
            text << " ";
            for (auto& v : row) text << " " << pretty_scalar(v);
            text << "\n";
        }
    };
    if (emit == "matrix") {
        j["matrix"] = dense_mat_json(p, rs.rank());
        text << "pairing block at nu=" << weight_str(nu) << "\n";
        text_mat(p);
    } else if (emit == "det") {
        Scalar det = bareiss_det(p);
        j["det"] = scalar_json(det, rs.rank());
        text << "det = " << pretty_scalar(det) << "\n";
    } else if (emit == "inverse") {
        InverseResult inv = form.inverse_block(nu);
        j["inverse"] = dense_mat_json(inv.inverse, rs.rank());
        j["det"] = scalar_json(inv.det, rs.rank());
        text << "inverse block at nu=" << weight_str(nu) << "\n";
        text_mat(inv.inverse);
    } else {
        throw std::invalid_argument("--emit must be matrix, det, or inverse");
    }
    write_report(g, j, text.str());
    return kExitOk;
}

// ---- rmatrix ----------------------------------------------------------------

int cmd_rmatrix(const Global& g, const std::string& type, const std::string& module_spec,
                int cutoff, const std::string& emit) {
    require_cutoff(type, cutoff);
    if (emit != "components") throw std::invalid_argument("--emit must be components");
    RootSystem rs = RootSystem::from_type(type);
    WeightModule M = verma_truncated(rs, cutoff);
    WeightModule V = make_first_leg(rs, module_spec, cutoff);
    GradedTensorOperator rhat = quasi_r(V, M, cutoff);
    ejson j = header("rmatrix", g);
    j["type"] = type;
    j["module"] = module_spec;
    j["cutoff"] = cutoff;
    std::ostringstream text;
    ejson comps = ejson::array();
    for (const Weight& mu : rhat.heights()) {
        ejson entries = ejson::array();
        for (auto& [key, op] : rhat.entries) {
            if (rhat.drop(key.first, key.second) != mu) continue;
            entries.push_back(ejson{{"i", key.first},
                                    {"j", key.second},
                                    {"op", sparse_mat_json(op, rs.rank())}});
        }
        text << "component mu=" << weight_str(mu) << ": " << entries.size()
             << " first-leg entries\n";
        comps.push_back(ejson{{"mu", weight_json(mu)}, {"entries", std::move(entries)}});
    }
    j["components"] = std::move(comps);
    write_report(g, j, text.str());
    return kExitOk;
}

// ---- fhat -------------------------------------------------------------------

int cmd_fhat(const Global& g, const std::string& type, const std::string& module_spec,
             int cutoff, const std::string& method, const std::string& emit, int from, int to) {
    require_cutoff(type, cutoff);
    RootSystem rs = RootSystem::from_type(type);
    WeightModule M = verma_truncated(rs, cutoff);
    WeightModule V = make_first_leg(rs, module_spec, cutoff);
    GradedTensorOperator F = f_tensor(quasi_r(V, M, cutoff));
    ejson j = header("fhat", g);
    j["type"] = type;
    j["module"] = module_spec;
    j["cutoff"] = cutoff;
    j["method"] = method;
    std::ostringstream text;
    if (emit == "routes") {
        if (from < 0 || to < 0 || from >= V.dim() || to >= V.dim())
            throw std::invalid_argument("--from/--to must index the module basis");
        RouteDiagram d = hasse(V, F);
        auto rts = routes(d, from, to);
        ejson arr = ejson::array();
        text << "routes " << from << " -> " << to << ":\n";
        for (auto& r : rts) {
            ejson route = ejson::array();
            text << " ";
            for (int node : r) {
                route.push_back(node);
                text << " " << node;
            }
            text << "\n";
            arr.push_back(std::move(route));
        }
        j["count"] = (int)rts.size();
        j["routes"] = std::move(arr);
    } else if (emit == "entries") {
        FHatMatrix fh;
        if (method == "routes") {
            fh = fhat_route_sum(V, F, M);
        } else if (method == "abrr") {
            fh = fk_series(V, F, M).fhat;
        } else {
            throw std::invalid_argument("--method must be routes or abrr");
        }
        ejson entries = ejson::array();
        for (auto& [key, vec] : fh.on_hw) {
            ejson terms = ejson::array();
            for (auto& [b, v] : vec)
                terms.push_back(ejson{{"basis", b},
                                      {"label", M.label[b]},
                                      {"value", scalar_json(v, rs.rank())}});
            entries.push_back(
                ejson{{"i", key.first}, {"j", key.second}, {"vector", std::move(terms)}});
            text << "fhat[" << key.first << "," << key.second << "] . 1_la =\n";
            for (auto& [b, v] : vec)
                text << "    (" << M.label[b] << ") * " << pretty_scalar(v) << "\n";
        }
        j["entries"] = std::move(entries);
    } else {
        throw std::invalid_argument("--emit must be entries or routes");
    }
    write_report(g, j, text.str());
    return kExitOk;
}

// ---- singular ---------------------------------------------------------------

int cmd_singular(const Global& g, const std::string& type, const std::string& module_spec,
                 int cutoff, int jnode) {
    require_cutoff(type, cutoff);
    RootSystem rs = RootSystem::from_type(type);
    if (module_spec == "verma-dual")
        throw std::invalid_argument("singular vectors need a finite-dimensional first leg");
    WeightModule V = make_first_leg(rs, module_spec, cutoff);
    int depth = 0;
    for (int b = 0; b < V.dim(); ++b) depth = std::max(depth, V.level[b]);
    int used_cutoff = std::max(cutoff, depth);
    require_cutoff(type, used_cutoff);
    WeightModule M = verma_truncated(rs, used_cutoff);
    GradedTensorOperator F = f_tensor(quasi_r(V, M, used_cutoff));
    FHatMatrix fh = fhat_route_sum(V, F, M);
    WeightModule T = tensor_module(V, M);
    if (jnode < 0 || jnode >= V.dim())
        throw std::invalid_argument("--j must index the module basis");
    SingularVectorReport rep = singular_vector(T, V, M, fh, jnode);
    ejson j = header("singular", g);
    j["type"] = type;
    j["module"] = module_spec;
    j["cutoff"] = used_cutoff;
    j["j"] = jnode;
    j["j_label"] = V.label[jnode];
    ejson terms = ejson::array();
    std::ostringstream text;
    text << "u_" << jnode << " (weight la + eps_j):\n";
    for (auto& [t, v] : rep.vector) {
        int a = t / M.dim(), b = t % M.dim();
        terms.push_back(ejson{{"v_basis", a},
                              {"m_basis", b},
                              {"label", V.label[a] + " (x) " + M.label[b]},
                              {"value", scalar_json(v, rs.rank())}});
        text << "    " << V.label[a] << " (x) " << M.label[b] << "  *  " << pretty_scalar(v)
             << "\n";
    }
    j["vector"] = std::move(terms);
    ejson residuals = ejson::array();
    for (int a = 0; a < rs.rank(); ++a) {
        residuals.push_back(ejson{{"alpha", a + 1}, {"zero", rep.residuals[a].empty()}});
        text << "e" << a + 1 << " residual: " << (rep.residuals[a].empty() ? "0" : "nonzero")
             << "\n";
    }
    j["residuals"] = std::move(residuals);
    j["annihilated"] = rep.annihilated;
    write_report(g, j, text.str());
    return rep.annihilated ? kExitOk : kExitCheckFailed;
}

// ---- verify -----------------------------------------------------------------

struct CheckLine {
    std::string name;
    bool pass;
    std::string detail;
};

int emit_checks(const Global& g, ejson j, const std::vector<CheckLine>& checks) {
    bool all = true;
    ejson arr = ejson::array();
    std::ostringstream text;
    for (auto& c : checks) {
        all = all && c.pass;
        arr.push_back(ejson{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        text << (c.pass ? "PASS" : "FAIL") << "  " << c.name
             << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
    }
    j["checks"] = std::move(arr);
    j["pass"] = all;
    text << (all ? "all checks passed" : "CHECKS FAILED") << "\n";
    write_report(g, j, text.str());
    return all ? kExitOk : kExitCheckFailed;
}

int cmd_verify_inverse(const Global& g, const std::string& type, int cutoff,
                       const std::string& method) {
    require_cutoff(type, cutoff);
    RootSystem rs = RootSystem::from_type(type);
    WeightModule M = verma_truncated(rs, cutoff);
    WeightModule Ms = dual_verma_truncated(rs, cutoff);
    ShapovalovForm form(M, Ms);
    GradedTensorOperator F = f_tensor(quasi_r(Ms, M, cutoff));

    std::vector<CheckLine> checks;
    bool do_routes = method == "routes" || method == "both" || method == "all";
    bool do_abrr = method == "abrr" || method == "both" || method == "all";
    if (!do_routes && !do_abrr)
        throw std::invalid_argument("--method must be routes, abrr, both, or all");

    FHatMatrix via_routes, via_series;
    if (do_routes) {
        via_routes = fhat_route_sum(Ms, F, M);
        auto rep = verify_inverse_blocks(form, via_routes, cutoff);
        std::string detail;
        for (auto& b : rep.blocks)
            if (!b.ok && detail.empty()) detail = "nu=" + weight_str(b.nu) + " " + b.detail;
        checks.push_back({"inverse blocks (route sum)", rep.ok, detail});
    }
    if (do_abrr) {
        via_series = fk_series(Ms, F, M).fhat;
        auto rep = verify_inverse_blocks(form, via_series, cutoff);
        std::string detail;
        for (auto& b : rep.blocks)
            if (!b.ok && detail.empty()) detail = "nu=" + weight_str(b.nu) + " " + b.detail;
        checks.push_back({"inverse blocks (series)", rep.ok, detail});
    }
    if (do_routes && do_abrr) {
        bool same = via_routes.on_hw == via_series.on_hw;
        checks.push_back({"route sum equals series", same, ""});
    }
    // denominator audit over the computed columns
    {
        std::vector<Scalar> values;
        const FHatMatrix& fh = do_routes ? via_routes : via_series;
        for (auto& [key, vec] : fh.on_hw)
            for (auto& [b, v] : vec) values.push_back(v);
        AuditReport audit = denominator_audit(rs, values, cutoff);
        checks.push_back({"denominator audit", audit.ok, audit.ok ? "" : audit.leftover});
    }
    ejson j = header("verify inverse", g);
    j["type"] = type;
    j["cutoff"] = cutoff;
    j["method"] = method;
    return emit_checks(g, std::move(j), checks);
}

int cmd_verify_abrr(const Global& g, const std::string& type, int cutoff) {
    require_cutoff(type, cutoff);
    RootSystem rs = RootSystem::from_type(type);
    WeightModule M = verma_truncated(rs, cutoff);
    WeightModule Ms = dual_verma_truncated(rs, cutoff);
    GradedTensorOperator rhat = quasi_r(Ms, M, cutoff);
    GradedTensorOperator F = f_tensor(rhat);
    FkSeriesResult series = fk_series(Ms, F, M, -1, true);
    std::vector<CheckLine> checks;
    AbrrReport rep = abrr_identity_check(Ms, M, rhat, series.fhat);
    checks.push_back({"fixed-point identity", rep.ok, rep.ok ? "" : rep.first_failure});
    IntertwineReport irep = check_intertwining(F);
    checks.push_back({"intertwining identity", irep.ok, irep.ok ? "" : irep.first_failure});
    ejson j = header("verify abrr", g);
    j["type"] = type;
    j["cutoff"] = cutoff;
    return emit_checks(g, std::move(j), checks);
}

// ---- bench ------------------------------------------------------------------

int cmd_bench(const Global& g, const std::string& type, int cutoff) {
    require_cutoff(type, cutoff);
    RootSystem rs = RootSystem::from_type(type);
    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    };

    ejson j = header("bench", g);
    j["type"] = type;
    j["cutoff"] = cutoff;

    auto t_build = clock::now();
    WeightModule M = verma_truncated(rs, cutoff);
    WeightModule Ms = dual_verma_truncated(rs, cutoff);
    ShapovalovForm form(M, Ms);
    GradedTensorOperator F = f_tensor(quasi_r(Ms, M, cutoff));
    j["setup_ms"] = ms_since(t_build);

    auto ops_total = [](const OpSnapshot& d) { return d.add + d.mul + d.div + d.gcd; };

    // oracle: per-block inversion
    ejson oracle_blocks = ejson::array();
    double oracle_ms = 0;
    std::uint64_t oracle_ops = 0;
    for (const auto& nu : M.words->weights()) {
        if (weight_height(nu) > cutoff) continue;
        OpSnapshot s0 = snapshot_ops();
        auto t0 = clock::now();
        InverseResult inv = form.inverse_block(nu);
        double ms = ms_since(t0);
        OpSnapshot d = diff_ops(s0, snapshot_ops());
        oracle_ms += ms;
        oracle_ops += ops_total(d);
        oracle_blocks.push_back(ejson{{"nu", weight_json(nu)},
                                      {"dim", (int)inv.inverse.size()},
                                      {"ms", ms},
                                      {"scalar_ops", ops_total(d)}});
    }
    j["oracle"] = ejson{{"total_ms", oracle_ms},
                        {"total_scalar_ops", oracle_ops},
                        {"blocks", std::move(oracle_blocks)}};

    // route sum: per-node costs on the generator column, grouped by block
    {
        std::vector<NodeCost> nodes;
        OpSnapshot s0 = snapshot_ops();
        auto t0 = clock::now();
        FHatMatrix fh = fhat_route_sum(Ms, F, M, false, &nodes);
        double total = ms_since(t0);
        OpSnapshot d = diff_ops(s0, snapshot_ops());
        std::map<Weight, std::pair<double, std::uint64_t>> by_block;
        for (auto& n : nodes) {
            by_block[n.nu].first += n.ms;
            by_block[n.nu].second += n.scalar_ops;
        }
        ejson blocks = ejson::array();
        for (auto& [nu, cost] : by_block)
            blocks.push_back(ejson{{"nu", weight_json(nu)},
                                   {"ms", cost.first},
                                   {"scalar_ops", cost.second}});
        j["routes"] = ejson{{"total_ms", total},
                            {"total_scalar_ops", ops_total(d)},
                            {"entries", (long)fh.on_hw.size()},
                            {"blocks", std::move(blocks)}};
    }

    // series: per-step costs
    {
        std::vector<StepCost> steps;
        OpSnapshot s0 = snapshot_ops();
        auto t0 = clock::now();
        FkSeriesResult series = fk_series(Ms, F, M, -1, false, &steps);
        double total = ms_since(t0);
        OpSnapshot d = diff_ops(s0, snapshot_ops());
        ejson arr = ejson::array();
        for (auto& s : steps)
            arr.push_back(ejson{{"k", s.k},
                                {"ms", s.ms},
                                {"scalar_ops", s.scalar_ops},
                                {"entries", s.entries}});
        j["abrr"] = ejson{{"total_ms", total},
                          {"total_scalar_ops", ops_total(d)},
                          {"nonzero_terms", series.nonzero_terms},
                          {"steps", std::move(arr)}};
    }

    std::ostringstream text;
    text << "bench " << type << " cutoff " << cutoff << ": see JSON for the table\n";
    write_report(g, j, text.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact inverse Shapovalov form computations for small-rank quantum groups"};
    app.require_subcommand(1);
    app.fallthrough(); // allow the global flags after a subcommand name

    Global g;
    app.add_option("--format", g.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", g.out, "write the report to a file instead of stdout");
    app.add_option("--seed", g.seed, "seed for randomized checks");
    app.add_option("--points", g.points, "number of numeric specialization points");

    std::string type = "A1", module_spec = "verma-dual", nu_str;
    std::string verma_emit, gram_emit, rmat_emit = "components";
    std::string fhat_method = "routes", fhat_emit = "entries", verify_method = "both";
    int cutoff = 3, from = -1, to = -1, jnode = 0;

    CLI::App* roots = app.add_subcommand("roots", "positive roots, rho pairings, gram matrix");
    roots->add_option("--type", type)->required();

    CLI::App* verma = app.add_subcommand("verma", "truncated Verma module data");
    verma->add_option("--type", type)->required();
    verma->add_option("--cutoff", cutoff)->required();
    verma->add_option("--emit", verma_emit, "dims | actions")->required();

    CLI::App* gram = app.add_subcommand("gram", "pairing block at a weight drop");
    gram->add_option("--type", type)->required();
    gram->add_option("--cutoff", cutoff)->required();
    gram->add_option("--nu", nu_str, "weight drop, e.g. 1,1")->required();
    gram->add_option("--emit", gram_emit, "matrix | det | inverse")->required();

    CLI::App* rmat = app.add_subcommand("rmatrix", "graded quasi R-matrix components");
    rmat->add_option("--type", type)->required();
    rmat->add_option("--module", module_spec, "verma-dual | fund:k | hw:m1,m2,...");
    rmat->add_option("--cutoff", cutoff)->required();
    rmat->add_option("--emit", rmat_emit);

    CLI::App* fhat = app.add_subcommand("fhat", "dynamical matrix entries or routes");
    fhat->add_option("--type", type)->required();
    fhat->add_option("--module", module_spec, "verma-dual | fund:k | hw:m1,m2,...");
    fhat->add_option("--cutoff", cutoff)->required();
    fhat->add_option("--method", fhat_method, "routes | abrr");
    fhat->add_option("--emit", fhat_emit, "entries | routes");
    fhat->add_option("--from", from, "route start node (with --emit routes)");
    fhat->add_option("--to", to, "route end node (with --emit routes)");

    CLI::App* sing = app.add_subcommand("singular", "singular vector at a first-leg node");
    sing->add_option("--type", type)->required();
    sing->add_option("--module", module_spec)->required();
    sing->add_option("--cutoff", cutoff);
    sing->add_option("--j", jnode, "first-leg basis index")->required();

    CLI::App* verify = app.add_subcommand("verify", "exact verification suites");
    verify->require_subcommand(1);
    CLI::App* vinv = verify->add_subcommand("inverse", "P C = Id blockwise");
    vinv->add_option("--type", type)->required();
    vinv->add_option("--cutoff", cutoff)->required();
    vinv->add_option("--method", verify_method, "routes | abrr | both | all");
    CLI::App* vabrr = verify->add_subcommand("abrr", "fixed-point and intertwining identities");
    vabrr->add_option("--type", type)->required();
    vabrr->add_option("--cutoff", cutoff)->required();

    CLI::App* bench = app.add_subcommand("bench", "cost comparison of the three methods");
    bench->add_option("--type", type)->required();
    bench->add_option("--cutoff", cutoff)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (roots->parsed()) return cmd_roots(g, type);
        if (verma->parsed()) return cmd_verma(g, type, cutoff, verma_emit);
        if (gram->parsed()) return cmd_gram(g, type, cutoff, nu_str, gram_emit);
        if (rmat->parsed()) return cmd_rmatrix(g, type, module_spec, cutoff, rmat_emit);
        if (fhat->parsed())
            return cmd_fhat(g, type, module_spec, cutoff, fhat_method, fhat_emit, from, to);
        if (sing->parsed()) return cmd_singular(g, type, module_spec, cutoff, jnode);
        if (verify->parsed()) {
            if (vinv->parsed()) return cmd_verify_inverse(g, type, cutoff, verify_method);
            if (vabrr->parsed()) return cmd_verify_abrr(g, type, cutoff);
        }
        if (bench->parsed()) return cmd_bench(g, type, cutoff);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const math_error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}
