#include "knotrep/cli.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace knotrep::cli {

using json = nlohmann::ordered_json;

namespace {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json header(const std::string& command, const Presentation& P) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    j["knot"] = P.name;
    return j;
}

json numeric(double value, double tol) { return json{{"value", value}, {"tolerance", tol}}; }

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json dims_json(const CohomologyReport& r) {
    return json{{"h0", r.h0}, {"h1", r.h1}, {"h2", r.h2}, {"z1", r.z1}, {"b1", r.b1}, {"euler_ok", r.euler_ok}, {"exact", r.exact}};
}

bool dims_are(const CohomologyReport& r, std::size_t h0, std::size_t h1, std::size_t h2) {
    return r.h0 == h0 && r.h1 == h1 && r.h2 == h2;
}

json matrix_json(const AlgMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json torsion_json(const TorsionDecomposition& T) {
    json j;
    j["exact"] = true;
    j["divisors"] = json::array();
    for (const auto& d : T.divisors) j["divisors"].push_back(d.str());
    j["free_rank"] = T.free_rank;
    j["factors"] = json::array();
    for (std::size_t i = 0; i < T.factors.size(); ++i)
        j["factors"].push_back(json{{"index", i}, {"p", T.factors[i].p.str()}, {"exponents", T.factors[i].exponents}});
    return j;
}

// The exact objects of one (alpha, lambda) Galois branch.
struct Built {
    TowerPtr tower;
    CocycleData data;
    Representation upper, sl;
};

Built build_on(const Presentation& P, const TowerPtr& T, unsigned n) {
    const AlgNum alpha = T->level(1)->generator();
    Built b{T, solve_cocycle_tower(P, alpha, n), {}, {}};
    b.upper = to_upper_form(build_tilde_rho(b.data));
    b.sl = normalize_sl(b.upper, T->generator());
    return b;
}

struct Selection {
    TorsionDecomposition torsion;
    QPoly p;
    TowerPtr lambda_tower;
};

Selection select(const Presentation& P, const Options& o) {
    Selection s{torsion_decomposition(P), {}, {}};
    if (s.torsion.factors.empty()) throw HypothesisError("Alexander module has no torsion factor; no representation to build");
    if (o.factor >= s.torsion.factors.size())
        throw std::invalid_argument("--factor " + std::to_string(o.factor) + " out of range (" +
                                    std::to_string(s.torsion.factors.size()) + " factors)");
    if (o.n < 2) throw std::invalid_argument("--n must be at least 2");
    const auto& f = s.torsion.factors[o.factor];
    s.p = f.p;
    if (!check_hypothesis(s.torsion, f.p, o.n)) {
        std::ostringstream msg;
        msg << "hypothesis fails for factor " << f.p.str() << " at n = " << o.n << ": torsion exponents [";
        for (std::size_t i = 0; i < f.exponents.size(); ++i) msg << (i ? ", " : "") << f.exponents[i];
        msg << "], need exactly one equal to " << o.n - 1;
        throw HypothesisError(msg.str());
    }
    const TowerPtr at = FieldTower::adjoin_root(lift(f.p));
    s.lambda_tower = FieldTower::adjoin_nth_root(at->generator(), o.n);
    return s;
}

// Embedding choices (alpha root, lambda root) requested for one exact branch.
std::vector<std::pair<std::size_t, std::size_t>> embeddings(const TowerPtr& T, const Options& o) {
    const auto na = static_cast<std::size_t>(T->level(1)->degree()), nl = static_cast<std::size_t>(T->degree());
    if (o.lambda_branch >= nl)
        throw std::invalid_argument("--lambda-branch " + std::to_string(o.lambda_branch) + " out of range (" + std::to_string(nl) +
                                    " roots)");
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (!o.all_branches) return {{0, o.lambda_branch}};
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t l = 0; l < nl; ++l) out.push_back({a, l});
    return out;
}

json embedding_header(const TowerPtr& T, const EmbeddingPoint& pt, std::size_t a, std::size_t l) {
    return json{{"alpha_root", a},
                {"lambda_root", l},
                {"alpha", complex_json(to_complex(T->level(1)->generator(), pt))},
                {"lambda", complex_json(pt.back())}};
}

template <class Fn>
json per_branch(const Presentation& P, const Options& o, Fn fn) {
    const Selection s = select(P, o);
    auto branches = on_branches<json>(s.lambda_tower, [&](const TowerPtr& T) {
        Built b = build_on(P, T, o.n);
        return fn(b);
    });
    json out = json::array();
    for (std::size_t i = 0; i < branches.size(); ++i) {
        if (!o.all_branches && i > 0) break;
        json j;
        j["exact_branch"] = i;
        const TowerPtr& T = branches[i].tower;
        j["tower"] = json::array({T->level(1)->modulus().str("a"), T->modulus().str("l")});
        j.update(branches[i].value);
        out.push_back(std::move(j));
    }
    return json{{"factor", o.factor}, {"p", s.p.str()}, {"n", o.n}, {"exact_branches", branches.size()}, {"branches", out}};
}

bool all_true(const json& checks) {
    for (const auto& [k, v] : checks.items())
        if (v.is_boolean() && !v.get<bool>()) return false;
    return true;
}

}  // namespace

Result analyze(const Presentation& P) {
    Result r{header("analyze", P), ok};
    const auto T = torsion_decomposition(P);
    r.report["generators"] = P.num_generators();
    r.report["relators"] = P.relators.size();
    r.report["delta"] = json{{"value", T.delta.str()}, {"exact", true}};
    r.report["torsion"] = torsion_json(T);
    json hyp = json::array(), adm = json::array();
    for (std::size_t i = 0; i < T.factors.size(); ++i)
        for (unsigned n = 2; n <= 5; ++n) {
            const bool h = check_hypothesis(T, T.factors[i].p, n);
            hyp.push_back(json{{"factor", i}, {"n", n}, {"holds", h}});
            if (h) adm.push_back(json{{"factor", i}, {"n", n}});
        }
    r.report["hypothesis"] = hyp;
    r.report["admissible"] = adm;
    r.report["blanchfield_symmetric"] = blanchfield_symmetry_check(T);
    r.report["ok"] = true;
    return r;
}

Result build(const Presentation& P, const Options& o, const Tolerances& tol) {
    Result r{header("build", P), ok};
    bool good = true;
    r.report.update(per_branch(P, o, [&](const Built& b) {
        json j;
        const std::size_t n = b.sl.n;
        const AlgNum& lam = *b.sl.lambda;
        j["alpha"] = to_string(b.sl.alpha);
        j["lambda"] = to_string(lam);
        j["exact"] = true;
        j["generators"] = json::array();
        for (const auto& g : b.sl.gens) j["generators"].push_back(matrix_json(g));
        bool det_ok = true;
        for (const auto& g : b.sl.gens) det_ok = det_ok && det(g) == AlgNum(1);
        const AlgNum tr = trace(b.sl.gens[static_cast<std::size_t>(P.meridian)]);
        const AlgNum want = inverse(lam) * (pow(lam, static_cast<long>(n)) + AlgNum(static_cast<long>(n) - 1));
        const auto up = upgrade_obstruction(b.upper);
        json checks{{"relators_identity", !b.sl.failing_relator()},
                    {"det_one", det_ok},
                    {"trace_formula", tr == want},
                    {"trace_nonzero", !is_zero(tr)},
                    {"upgrade_obstructed", up.obstructed}};
        j["trace"] = to_string(tr);
        j["checks"] = checks;
        good = good && all_true(checks);
        j["embeddings"] = json::array();
        for (auto [a, l] : embeddings(b.tower, o)) {
            const auto pt = choose_embedding(b.tower, {a, l});
            json e = embedding_header(b.tower, pt, a, l);
            const FloatRep f = embed_float(b.sl, pt, tol);
            e["embed_residual"] = numeric(f.residual(), tol.embed);
            e["trace"] = complex_json(to_complex(tr, pt));
            e["trace_abs"] = numeric(std::abs(to_complex(tr, pt)), tol.trace);
            j["embeddings"].push_back(e);
        }
        return j;
    }));
    r.report["ok"] = good;
    if (!good) r.code = internal;
    return r;
}

Result cohomology(const Presentation& P, const Options& o, const Tolerances&) {
    Result r{header("cohomology", P), ok};
    bool good = true;
    r.report.update(per_branch(P, o, [&](const Built& b) {
        json j, mods;
        const std::size_t n = b.sl.n;
        j["alpha"] = to_string(b.sl.alpha);
        j["lambda"] = to_string(*b.sl.lambda);
        const auto triv = cohomology_dims(P, module_trivial(P));
        const auto sl = cohomology_dims(P, module_ad(b.sl, AdKind::sl));
        const auto gl = cohomology_dims(P, module_ad(b.sl, AdKind::gl));
        mods["trivial"] = dims_json(triv);
        mods["sl"] = dims_json(sl);
        mods["gl"] = dims_json(gl);
        bool euler = triv.euler_ok && sl.euler_ok && gl.euler_ok;
        json cyc = json::array();
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto c = cohomology_dims(P, module_cyclic(P, b.sl.alpha, k));
            euler = euler && c.euler_ok;
            json d = dims_json(c);
            d["k"] = k;
            cyc.push_back(d);
        }
        mods["cyclic_alpha"] = cyc;
        json filt = json::array();
        bool vanish = true;
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = cohomology_dims(P, filtration_C(b.upper, i));
            euler = euler && c.euler_ok;
            if (i + 2 <= n) vanish = vanish && dims_are(c, 0, 0, 0);
            json d = dims_json(c);
            d["i"] = i;
            filt.push_back(d);
        }
        mods["filtration"] = filt;
        const auto M = cohomology_dims(P, quotient_M(b.upper));
        euler = euler && M.euler_ok;
        mods["M"] = dims_json(M);
        j["modules"] = mods;
        json checks{{"sl_h0", sl.h0 == 0},
                    {"sl_h1", sl.h1 == n - 1},
                    {"sl_z1", sl.z1 == n * n + n - 2},
                    {"gl_additive", gl.h0 == sl.h0 + triv.h0 && gl.h1 == sl.h1 + triv.h1 && gl.h2 == sl.h2 + triv.h2},
                    {"filtration_vanishes", vanish},
                    {"M_dims", dims_are(M, 0, n - 1, n - 1)},
                    {"euler", euler}};
        j["checks"] = checks;
        good = good && all_true(checks);
        return j;
    }));
    r.report["ok"] = good;
    if (!good) r.code = internal;
    return r;
}

Result deform(const Presentation& P, const Options& o, const Tolerances& tol) {
    Result r{header("deform", P), ok};
    bool converged = true;
    std::string why;
    r.report["seed"] = o.seed;
    r.report["t"] = o.ts.empty() ? kDefaultLadder : o.ts;
    r.report.update(per_branch(P, o, [&](const Built& b) {
        json j;
        j["alpha"] = to_string(b.sl.alpha);
        j["lambda"] = to_string(*b.sl.lambda);
        const auto ad = module_ad(b.sl, AdKind::sl);
        const auto v = distinguished_cocycle(b.sl, ad);
        if (!v) throw CheckFailure("no H^1 direction with a non-principal (n,1) component");
        j["direction"] = json::array();
        for (const auto& x : *v) j["direction"].push_back(to_string(x));
        j["embeddings"] = json::array();
        for (auto [a, l] : embeddings(b.tower, o)) {
            const auto pt = choose_embedding(b.tower, {a, l});
            json e = embedding_header(b.tower, pt, a, l);
            const auto rungs = o.ts.empty() ? deform_ladder(b.sl, *v, kDefaultLadder, o.seed, pt, tol)
                                            : deform_ladder(b.sl, *v, o.ts, o.seed, pt, tol);
            json lad = json::array();
            for (const auto& rep : rungs) {
                json x{{"t", rep.t}, {"converged", rep.converged}, {"iterations", rep.iterations},
                       {"residual", numeric(rep.residual, tol.newton)}};
                if (!rep.error.empty()) {
                    x["error"] = rep.error;
                    x["last_residual"] = rep.residual;
                } else {
                    x["burnside_dim"] = rep.burnside;
                    x["irreducible"] = rep.irreducible == Irreducibility::irreducible;
                    x["irreducibility"] = to_string(rep.irreducible);
                    x["burnside_tolerance"] = tol.burnside;
                    x["trace_meridian"] = complex_json(rep.trace_meridian);
                    x["trace_abs"] = numeric(std::abs(rep.trace_meridian), tol.trace);
                    x["trace_test"] = rep.trace_test;
                    x["commutator"] = numeric(rep.commutator, tol.commutator);
                    x["non_metabelian"] = rep.non_metabelian;
                }
                if (!rep.converged && converged) {
                    converged = false;
                    std::ostringstream m;
                    m << "no convergence at t = " << rep.t << " (last residual " << rep.residual << ")";
                    if (!rep.error.empty()) m << ": " << rep.error;
                    why = m.str();
                }
                lad.push_back(x);
            }
            if (rungs.size() < (o.ts.empty() ? kDefaultLadder.size() : o.ts.size())) e["stopped_early"] = true;
            e["ladder"] = lad;
            j["embeddings"].push_back(e);
        }
        return j;
    }));
    r.report["ok"] = converged;
    if (!converged) {
        r.code = divergence;
        r.report["error"] = json{{"class", "divergence"}, {"message", why}};
    }
    return r;
}

Result run(const Options& o) {
    auto fail = [&](const char* cls, int code, const std::string& msg) {
        Result r;
        r.report["schema"] = 1;
        r.report["command"] = o.command;
        r.report["file"] = o.file;
        r.report["ok"] = false;
        r.report["error"] = json{{"class", cls}, {"message", msg}};
        r.code = code;
        return r;
    };
    Presentation P;
    try {
        P = load_presentation(o.file);
    } catch (const std::exception& e) {
        return fail("parse", parse, e.what());
    }
    try {
        const Tolerances tol = Tolerances::from_env();
        if (o.command == "analyze") return analyze(P);
        if (o.command == "build") return build(P, o, tol);
        if (o.command == "cohomology") return cohomology(P, o, tol);
        if (o.command == "deform") return deform(P, o, tol);
        return fail("parse", parse, "unknown command " + o.command);
    } catch (const HypothesisError& e) {
        return fail("hypothesis", hypothesis, e.what());
    } catch (const NumericError& e) {
        return fail("divergence", divergence, e.what());
    } catch (const std::invalid_argument& e) {
        return fail("parse", parse, e.what());
    } catch (const std::exception& e) {
        return fail("internal", internal, e.what());
    }
}

namespace {

void pretty_into(const json& j, const std::string& indent, std::ostringstream& out) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = j.is_object() ? it.key() : "-";
        const json& v = it.value();
        const bool scalar_list = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); });
        if (v.is_primitive() || scalar_list) {
            out << indent << key << (j.is_object() ? ": " : " ");
            if (v.is_string()) out << v.get<std::string>();
            else out << v.dump();
            out << "\n";
        } else if (v.empty()) {
            out << indent << key << (j.is_object() ? ": " : " ") << v.dump() << "\n";
        } else {
            out << indent << key << (j.is_object() ? ":" : "") << "\n";
            pretty_into(v, indent + "  ", out);
        }
    }
}

}  // namespace

std::string pretty(const json& j) {
    std::ostringstream out;
    pretty_into(j, "", out);
    return out.str();
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"knotrep: metabelian SL(n) representations of knot groups and their deformations"};
    app.require_subcommand(1);
    Options o;
    std::string tspec;
    for (const char* name : {"analyze", "build", "cohomology", "deform"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("file", o.file, "presentation JSON")->required();
        sub->add_flag("--pretty", o.pretty, "indented text instead of JSON");
        if (std::string(name) == "analyze") continue;
        sub->add_option("--n", o.n, "matrix size (default 2)");
        sub->add_option("--factor", o.factor, "torsion factor index (default 0)");
        sub->add_option("--lambda-branch", o.lambda_branch, "root of x^n - alpha to embed (default 0)");
        sub->add_flag("--all-branches", o.all_branches, "every exact branch and every embedding");
        if (std::string(name) == "deform") {
            sub->add_option("--t", o.ts, "deformation parameters (default 0.001 0.01 0.05)");
            sub->add_option("--seed", o.seed, "seed for the commutator test (default 7)");
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return parse;
    }
    o.command = app.get_subcommands().front()->get_name();
    const Result r = run(o);
    if (o.pretty) out << pretty(r.report);
    else out << r.report.dump(2) << "\n";
    if (r.code != ok && r.report.contains("error")) err << "error: " << r.report["error"]["message"].get<std::string>() << "\n";
    return r.code;
}

}  // namespace knotrep::cli
