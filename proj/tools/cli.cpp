#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "json_io.hpp"

namespace modal::cli {

namespace {

using io::json;

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    double tol = 1e-10;
    double cluster_tol = 1e-3;
    std::string mode = "rational";
    std::string grid;
    std::string out;
};

json load_inputs(const std::vector<std::string>& paths) {
    json doc = json::object();
    for (const auto& p : paths) {
        std::ifstream in(p);
        if (!in) throw ParseError("cannot open " + p);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ParseError(p + ": " + e.what());
        }
        if (j.is_array()) {
            doc["matrix"] = j;
        } else if (j.is_object()) {
            for (auto it = j.begin(); it != j.end(); ++it) doc[it.key()] = it.value();
        } else {
            throw ParseError(p + ": expected a JSON object or matrix");
        }
    }
    return doc;
}

std::optional<GridSpec> grid_option(const RunConfig& cfg, const json& doc, int n) {
    if (!cfg.grid.empty()) {
        std::vector<std::string> parts;
        std::stringstream ss(cfg.grid);
        std::string tok;
        while (std::getline(ss, tok, ',')) parts.push_back(tok);
        if (parts.size() != 3) throw UsageError("--grid expects lo,hi,n");
        try {
            double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
            int pts = std::stoi(parts[2]);
            if (pts < 0) throw UsageError("--grid point count must be >= 0");
            return GridSpec::cube(n, lo, hi, pts);
        } catch (const std::logic_error&) {
            throw UsageError("--grid expects lo,hi,n");
        }
    }
    if (doc.contains("grid")) {
        auto g = io::grid_from_json(doc.at("grid"));
        if (g.dims() != n) throw UsageError("grid dimension does not match the matrix");
        return g;
    }
    return std::nullopt;
}

template <class R>
Analysis<R> analysis_of(const json& doc, const RunConfig& cfg) {
    auto mi = io::matrix_input(doc);
    AnalyzeOptions<R> opt;
    opt.tol = cfg.tol;
    opt.cluster_tol = cfg.cluster_tol;
    if (!mi.eigenvalues.is_null()) {
        if (!mi.eigenvalues.is_array()) throw ParseError("eigenvalues must be an array");
        for (const auto& e : mi.eigenvalues) opt.eigenvalues.push_back(io::scalar_from_json<R>(e));
    }
    return analyze(io::matrix_from_json<R>(mi.matrix), mi.field, opt);
}

template <class R>
std::string csv_value(const Complex<R>& z) {
    return io::format_real<R>(z.re);
}

template <class R>
std::string csv_modulus(const Complex<R>& z) {
    if (z.is_real()) return io::format_real<R>(Num<R>::abs(z.re));
    return Num<double>::format(z.abs());
}

template <class R>
int grid_csv(const json& doc, const RunConfig& cfg, std::ostream& out) {
    auto an = analysis_of<R>(doc, cfg);
    const int n = an.n();
    auto g = grid_option(cfg, doc, n);
    if (!g) throw UsageError("grid needs --grid or a \"grid\" object");
    if (!doc.contains("v_terms")) throw ParseError("missing key 'v_terms'");
    MPoly<R> v = io::poly_from_json<R>(doc.at("v_terms"), n);
    if (v.nvars() != n) throw UsageError("v has the wrong variable count");
    std::optional<MPoly<R>> w;
    if (doc.contains("w_terms")) {
        w = io::poly_from_json<R>(doc.at("w_terms"), n);
        if (w->nvars() != n) throw UsageError("w has the wrong variable count");
    }
    const bool cplx = an.field == Field::complex;
    std::vector<MPoly<R>> grad;
    if (w) {
        for (int i = 0; i < n; ++i) {
            MPoly<R> r = w->derivative(i);
            for (int j = 0; j < n; ++j)
                if (!an.m(i, j).is_zero()) r -= v.derivative(j) * an.m(i, j);
            grad.push_back(r);
        }
    }
    auto lap = gen_laplace_residual(v, an.m);

    std::ostringstream head;
    for (int i = 0; i < n; ++i) head << "x" << i + 1 << ",";
    head << (cplx ? "v_re,v_im" : "v");
    if (w) {
        head << (cplx ? ",w_re,w_im" : ",w");
        for (int i = 0; i < n; ++i) head << ",grad_res" << i + 1;
    }
    head << ",laplace_max";
    out << head.str() << "\n";

    std::vector<std::string> rows(g->size());
    parallel_for(g->size(), [&](size_t idx) {
        auto x = g->point_as<R>(idx);
        std::ostringstream row;
        for (int i = 0; i < n; ++i) row << io::format_real<R>(x[i].re) << ",";
        auto vv = v.eval(x);
        row << csv_value(vv);
        if (cplx) row << "," << io::format_real<R>(vv.im);
        if (w) {
            auto wv = w->eval(x);
            row << "," << csv_value(wv);
            if (cplx) row << "," << io::format_real<R>(wv.im);
            for (const auto& r : grad) {
                auto rv = r.eval(x);
                row << "," << (cplx ? csv_modulus(rv) : csv_value(rv));
            }
        }
        // largest |entry| of the generalized Laplace residual, exact for real values
        Complex<R> best;
        double best_abs = -1;
        for (const auto& p : lap) {
            auto e = p.eval(x);
            double a = e.abs();
            if constexpr (Num<R>::exact) {
                if (e.is_real() && best.is_real()) {
                    if (best_abs < 0 || Num<R>::abs(e.re) > Num<R>::abs(best.re)) {
                        best = e;
                        best_abs = a;
                    }
                    continue;
                }
            }
            if (a > best_abs) {
                best = e;
                best_abs = a;
            }
        }
        row << "," << csv_modulus(best);
        rows[idx] = row.str();
    });
    for (const auto& r : rows) out << r << "\n";
    return 0;
}

template <class R>
int dispatch(const RunConfig& cfg, const json& doc, std::ostream& out) {
    json res;
    int code = 0;
    if (cfg.command == "grid") return grid_csv<R>(doc, cfg, out);
    auto an = analysis_of<R>(doc, cfg);
    const int n = an.n();
    auto g = grid_option(cfg, doc, n);
    const GridSpec* gp = g ? &*g : nullptr;
    if (cfg.command == "analyze") {
        res = io::analysis_to_json(an);
    } else if (cfg.command == "solve") {
        auto bd = io::boundary_from_json<R>(doc.value("boundary_data", json()), an);
        Complex<R> c = doc.contains("constant") ? io::scalar_from_json<R>(doc.at("constant")) : Complex<R>();
        auto sp = build_pair(an, bd, c, gp);
        res["mode"] = Num<R>::name;
        res["v_terms"] = io::poly_to_json(sp.v);
        res["w_terms"] = io::poly_to_json(sp.w);
        res["constant"] = io::scalar_to_json(sp.c);
        res["report"] = io::report_to_json(sp.report);
        res["warnings"] = an.warnings;
        code = sp.report.symbolic_zero ? 0 : 4;
    } else if (cfg.command == "solve-bvp") {
        auto bd = io::boundary_from_json<R>(doc.value("boundary_data", json()), an);
        auto sol = solve_bvp(an, bd);
        res["mode"] = Num<R>::name;
        res["v_terms"] = io::poly_to_json(sol.v);
        res["report"] = io::report_to_json(sol.report);
        if (gp) res["laplace"] = io::report_to_json(laplace_report(sol.v, an.m, an.tol, gp));
        res["warnings"] = an.warnings;
        code = sol.report.symbolic_zero ? 0 : 4;
    } else if (cfg.command == "check") {
        if (!doc.contains("v_terms")) throw ParseError("missing key 'v_terms'");
        MPoly<R> v = io::poly_from_json<R>(doc.at("v_terms"), n);
        if (v.nvars() != n) throw UsageError("v has the wrong variable count");
        auto lap = laplace_report(v, an.m, an.tol, gp);
        res["mode"] = Num<R>::name;
        res["laplace"] = io::report_to_json(lap);
        bool ok = lap.symbolic_zero;
        if (doc.contains("w_terms")) {
            MPoly<R> w = io::poly_from_json<R>(doc.at("w_terms"), n);
            if (w.nvars() != n) throw UsageError("w has the wrong variable count");
            auto rep = check_pair(v, w, an.m, an.tol, gp);
            res["report"] = io::report_to_json(rep);
            ok = rep.symbolic_zero;
        }
        code = ok ? 0 : 4;
    }
    out << res.dump(2) << "\n";
    return code;
}

json error_json(const char* kind, const std::string& msg, std::optional<double> residual = std::nullopt) {
    json e{{"kind", kind}, {"message", msg}};
    if (residual) e["residual"] = *residual;
    return json{{"error", e}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Solutions of grad w = M grad v through differentiable functions on algebras", "modal"};
    app.require_subcommand(1);
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"analyze", "minimal polynomial, local factors, chains and idempotent residuals of a matrix"},
        {"solve", "build the pair (v, w) from component data on every factor"},
        {"solve-bvp", "solve the boundary value problem on a single-eigenvalue matrix"},
        {"check", "residuals of grad w - M grad v and of the generalized Laplace system"},
        {"grid", "CSV samples of v, w and the residuals on a grid"},
    };
    for (const auto& [name, desc] : commands) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("inputs", cfg.inputs, "JSON inputs, merged in order (a bare array is the matrix)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--tol", cfg.tol, "symbolic-zero and rank tolerance in float mode")
            ->check(CLI::PositiveNumber);
        sub->add_option("--cluster-tol", cfg.cluster_tol, "relative radius for grouping numerical roots")
            ->check(CLI::PositiveNumber);
        sub->add_option("--mode", cfg.mode, "arithmetic")->check(CLI::IsMember({"rational", "float"}));
        sub->add_option("--grid", cfg.grid, "lo,hi,n: n points per axis on [lo, hi]^dim");
        sub->add_option("--out", cfg.out, "write the report here instead of stdout");
        sub->callback([&cfg, name = name] { cfg.command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ExitCode::input_error);
    }

    std::ofstream file;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) {
            err << "cannot write " << cfg.out << "\n";
            return static_cast<int>(ExitCode::input_error);
        }
    }
    std::ostream& sink = cfg.out.empty() ? out : file;
    try {
        json doc = load_inputs(cfg.inputs);
        std::ostringstream buf;
        int code = cfg.mode == "float" ? dispatch<double>(cfg, doc, buf) : dispatch<Rational>(cfg, doc, buf);
        sink << buf.str();
        return code;
    } catch (const NotRepresentableError& e) {
        sink << error_json(e.kind(), e.what(), e.residual()).dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return static_cast<int>(e.exit_code());
    } catch (const IntegrabilityError& e) {
        sink << error_json(e.kind(), e.what(), e.residual()).dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return static_cast<int>(e.exit_code());
    } catch (const AccuracyError& e) {
        sink << error_json(e.kind(), e.what(), e.achieved()).dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return static_cast<int>(e.exit_code());
    } catch (const Error& e) {
        sink << error_json(e.kind(), e.what()).dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return static_cast<int>(e.exit_code());
    } catch (const json::exception& e) {
        sink << error_json("parse", e.what()).dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::input_error);
    }
}

}  // namespace modal::cli
