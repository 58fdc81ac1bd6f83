#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "modal/grad_solver.hpp"

namespace modal::io {

using json = nlohmann::json;

/// Numbers, "p/q" or decimal strings, or {"re": .., "im": ..}. Floats are read through
/// their shortest decimal form, so 0.1 is 1/10 in rational mode.
template <class R>
Complex<R> scalar_from_json(const json& j);

/// Integers and "p/q" strings in rational mode, shortest round-trip numbers in float mode;
/// {"re": .., "im": ..} when the imaginary part is nonzero.
template <class R>
json scalar_to_json(const Complex<R>& s);

template <class R>
std::string format_real(const R& v);

struct MatrixInput {
    Field field = Field::real;
    json matrix;
    json eigenvalues;
};

MatrixInput matrix_input(const json& doc);

template <class R>
Matrix<R> matrix_from_json(const json& rows);

/// [{"exps": [...], "re": .., "im": ..}]; nvars is used when the list is empty.
template <class R>
MPoly<R> poly_from_json(const json& terms, int nvars);

template <class R>
json poly_to_json(const MPoly<R>& p);

/// [{"factor": i, "components": [{"k": k, "terms": [...]}]}]; missing factors and components are zero.
template <class R>
BoundaryData<R> boundary_from_json(const json& j, const Analysis<R>& an);

GridSpec grid_from_json(const json& j);
json grid_to_json(const GridSpec& g);

json report_to_json(const ResidualReport& r);

template <class R>
json analysis_to_json(const Analysis<R>& an);

}  // namespace modal::io
