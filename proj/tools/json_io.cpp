#include "json_io.hpp"

#include <charconv>
#include <cmath>

namespace modal::io {

namespace {

template <class R>
R real_from_json(const json& j) {
    if (j.is_number_integer()) {
        if constexpr (Num<R>::exact) {
            return Num<R>::parse(j.dump());
        } else {
            return static_cast<double>(j.get<long long>());
        }
    }
    if (j.is_number_unsigned()) return Num<R>::parse(j.dump());
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (!std::isfinite(v)) throw ParseError("non-finite number");
        return from_decimal<R>(v);
    }
    if (j.is_string()) {
        try {
            return Num<R>::parse(j.get<std::string>());
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("cannot parse number '" + j.get<std::string>() + "'");
        }
    }
    throw ParseError("expected a number, got " + j.dump());
}

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
    return j.at(key);
}

}  // namespace

template <class R>
Complex<R> scalar_from_json(const json& j) {
    if (j.is_object()) {
        R re = j.contains("re") ? real_from_json<R>(j.at("re")) : Num<R>::from_int(0);
        R im = j.contains("im") ? real_from_json<R>(j.at("im")) : Num<R>::from_int(0);
        return Complex<R>(re, im);
    }
    return Complex<R>(real_from_json<R>(j));
}

template <>
std::string format_real<double>(const double& v) {
    return Num<double>::format(v);
}

template <>
std::string format_real<Rational>(const Rational& v) {
    return Num<Rational>::format(v);
}

namespace {

json real_to_json(double v) { return v; }

json real_to_json(const Rational& v) {
    if (v.get_den() == 1 && v.get_num().fits_slong_p()) return v.get_num().get_si();
    return v.get_str();
}

}  // namespace

template <class R>
json scalar_to_json(const Complex<R>& s) {
    if (s.is_real()) return real_to_json(s.re);
    return json{{"re", real_to_json(s.re)}, {"im", real_to_json(s.im)}};
}

MatrixInput matrix_input(const json& doc) {
    MatrixInput in;
    if (doc.is_array()) {
        in.matrix = doc;
        return in;
    }
    if (!doc.is_object()) throw ParseError("matrix input must be an array or an object");
    if (doc.contains("matrix") && doc.at("matrix").is_object())
        in = matrix_input(doc.at("matrix"));
    else
        in.matrix = doc.contains("rows") ? doc.at("rows") : require(doc, "matrix");
    if (doc.contains("field")) {
        try {
            in.field = parse_field(doc.at("field").get<std::string>());
        } catch (const std::exception&) {
            throw ParseError("field must be \"real\" or \"complex\"");
        }
    }
    if (doc.contains("eigenvalues")) in.eigenvalues = doc.at("eigenvalues");
    return in;
}

template <class R>
Matrix<R> matrix_from_json(const json& rows) {
    if (!rows.is_array() || rows.empty()) throw ParseError("matrix must be a non-empty array of rows");
    const int n = static_cast<int>(rows.size());
    Matrix<R> m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n) throw ParseError("matrix must be square");
        for (int j = 0; j < n; ++j) m(i, j) = scalar_from_json<R>(row[j]);
    }
    return m;
}

template <class R>
MPoly<R> poly_from_json(const json& terms, int nvars) {
    if (!terms.is_array()) throw ParseError("terms must be an array");
    int n = nvars;
    if (!terms.empty()) n = static_cast<int>(require(terms[0], "exps").size());
    MPoly<R> p(n);
    for (const auto& t : terms) {
        const json& ex = require(t, "exps");
        if (!ex.is_array()) throw ParseError("exps must be an array");
        if (static_cast<int>(ex.size()) != n) throw UsageError("terms have inconsistent variable counts");
        Exps e;
        for (const auto& x : ex) {
            if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() > 255)
                throw ParseError("exponents must be integers in [0, 255]");
            e.push_back(static_cast<uint8_t>(x.get<int>()));
        }
        R re = t.contains("re") ? real_from_json<R>(t.at("re")) : Num<R>::from_int(0);
        R im = t.contains("im") ? real_from_json<R>(t.at("im")) : Num<R>::from_int(0);
        p.add_term(e, Complex<R>(re, im));
    }
    return p;
}

template <class R>
json poly_to_json(const MPoly<R>& p) {
    json out = json::array();
    for (const auto& [e, c] : p.terms()) {
        json t;
        t["exps"] = std::vector<int>(e.begin(), e.end());
        t["re"] = real_to_json(c.re);
        if (!c.is_real()) t["im"] = real_to_json(c.im);
        out.push_back(t);
    }
    return out;
}

template <class R>
BoundaryData<R> boundary_from_json(const json& j, const Analysis<R>& an) {
    BoundaryData<R> bd = zero_boundary(an);
    if (j.is_null()) return bd;
    if (!j.is_array()) throw ParseError("boundary_data must be an array of factors");
    for (const auto& fac : j) {
        const json& fi = require(fac, "factor");
        if (!fi.is_number_integer()) throw ParseError("factor must be an integer");
        int i = fi.get<int>();
        if (i < 0 || i >= an.num_factors())
            throw UsageError("factor index " + std::to_string(i) + " out of range");
        auto& cd = bd.factors[i];
        const json& comps = require(fac, "components");
        if (!comps.is_array()) throw ParseError("components must be an array");
        for (const auto& comp : comps) {
            const json& kj = require(comp, "k");
            if (!kj.is_number_integer()) throw ParseError("k must be an integer");
            int k = kj.get<int>();
            if (k < 0 || k >= cd.structure.l())
                throw UsageError("component index k = " + std::to_string(k) + " out of range");
            int m = static_cast<int>(cd.structure.slice_chains(k).size());
            cd.f[k] = poly_from_json<R>(require(comp, "terms"), m);
        }
        validate_components(cd);
    }
    return bd;
}

GridSpec grid_from_json(const json& j) {
    GridSpec g;
    try {
        g.lo = require(j, "lo").get<std::vector<double>>();
        g.hi = require(j, "hi").get<std::vector<double>>();
        g.points_per_axis = require(j, "points_per_axis").get<int>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad grid: ") + e.what());
    }
    if (g.lo.size() != g.hi.size()) throw ParseError("grid lo and hi differ in length");
    if (g.points_per_axis < 0) throw ParseError("points_per_axis must be >= 0");
    return g;
}

json grid_to_json(const GridSpec& g) {
    return json{{"lo", g.lo}, {"hi", g.hi}, {"points_per_axis", g.points_per_axis}};
}

json report_to_json(const ResidualReport& r) {
    json out;
    out["symbolic_zero"] = r.symbolic_zero;
    out["max_coeff"] = r.max_coeff;
    if (r.grid_evaluated) {
        out["max_abs"] = r.max_abs;
        out["where"] = r.where;
        out["grid"] = grid_to_json(r.grid);
    } else {
        out["max_abs"] = nullptr;
        out["where"] = json::array();
    }
    json eqs = json::array();
    for (const auto& e : r.equations) {
        json q{{"name", e.name}, {"symbolic_zero", e.symbolic_zero}, {"max_coeff", e.max_coeff}};
        if (r.grid_evaluated) {
            q["max_abs"] = e.max_grid;
            q["where"] = e.where;
        }
        eqs.push_back(q);
    }
    out["equations"] = eqs;
    return out;
}

namespace {

template <class R>
json poly1_to_json(const Poly1<R>& p) {
    json out = json::array();
    for (int i = 0; i <= p.degree(); ++i) out.push_back(scalar_to_json(p.coeff(i)));
    return out;
}

}  // namespace

template <class R>
json analysis_to_json(const Analysis<R>& an) {
    json out;
    out["mode"] = Num<R>::name;
    out["field"] = field_name(an.field);
    out["n"] = an.n();
    out["min_poly"] = poly1_to_json(an.min_poly);
    json facs = json::array();
    for (int i = 0; i < an.num_factors(); ++i) {
        const auto& js = an.structures[i];
        json f;
        f["lambda"] = scalar_to_json(js.algebra.lambda);
        f["l"] = js.l();
        f["kind"] = js.algebra.complex_factor() ? "complex" : "real";
        f["chains"] = js.chains;
        f["dim"] = js.dim();
        f["idempotent"] = poly1_to_json(an.decomposition.idempotents[i]);
        json basis = json::array();
        for (int c = 0; c < js.dim(); ++c) {
            json col = json::array();
            for (int r = 0; r < js.ambient; ++r) col.push_back(scalar_to_json(js.basis(r, c)));
            basis.push_back(col);
        }
        f["basis"] = basis;
        facs.push_back(f);
    }
    out["factors"] = facs;
    const auto& ir = an.idempotent_residuals;
    out["idempotent_residuals"] = {{"sum_to_identity", ir.sum_to_identity},
                                   {"orthogonality", ir.orthogonality},
                                   {"idempotency", ir.idempotency}};
    out["warnings"] = an.warnings;
    return out;
}

#define MODAL_INSTANTIATE(R)                                                    \
    template Complex<R> scalar_from_json<R>(const json&);                       \
    template json scalar_to_json<R>(const Complex<R>&);                         \
    template Matrix<R> matrix_from_json<R>(const json&);                        \
    template MPoly<R> poly_from_json<R>(const json&, int);                      \
    template json poly_to_json<R>(const MPoly<R>&);                             \
    template BoundaryData<R> boundary_from_json<R>(const json&, const Analysis<R>&); \
    template json analysis_to_json<R>(const Analysis<R>&);

MODAL_INSTANTIATE(double)
MODAL_INSTANTIATE(Rational)

}  // namespace modal::io
