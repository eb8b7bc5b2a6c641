#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mixdisc/matrix.hpp"

namespace mixdisc::jsondetail {

using nlohmann::json;

template <ScalarBackend S>
json scalar_to_json(const S& x) {
    if constexpr (ScalarTraits<S>::exact) {
        return json(x.str());
    } else {
        return json(x);
    }
}

template <ScalarBackend S>
S scalar_from_json(const json& j) {
    if constexpr (ScalarTraits<S>::exact) {
        if (j.is_string()) {
            Rational r;
            if (!Rational::parse(j.get<std::string>(), r))
                throw Error(Errc::SchemaError, "malformed rational \"" + j.get<std::string>() + "\"");
            return r;
        }
        if (j.is_number_integer()) return Rational(j.get<long>());
        throw Error(Errc::SchemaError, "rational entries must be \"p/q\" strings or integers");
    } else {
        if (!j.is_number()) throw Error(Errc::SchemaError, "float64 entries must be numbers");
        return j.get<double>();
    }
}

template <ScalarBackend S>
json vector_to_json(const Vec<S>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(scalar_to_json(x));
    return out;
}

template <ScalarBackend S>
Vec<S> vector_from_json(const json& j, int expect_dim) {
    if (!j.is_array()) throw Error(Errc::SchemaError, "vector must be an array");
    if (expect_dim >= 0 && static_cast<int>(j.size()) != expect_dim)
        throw Error(Errc::SchemaError, "vector must have " + std::to_string(expect_dim) + " entries");
    Vec<S> v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(scalar_from_json<S>(e));
    return v;
}

template <ScalarBackend S>
json matrix_to_json(const SymMatrix<S>& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <ScalarBackend S>
SymMatrix<S> matrix_from_json(const json& j, int n, const Tolerance& tol) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw Error(Errc::SchemaError, "matrix must have " + std::to_string(n) + " rows");
    std::vector<Vec<S>> rows;
    rows.reserve(n);
    for (const auto& row : j) rows.push_back(vector_from_json<S>(row, n));
    return SymMatrix<S>::from_rows(rows, tol);
}

template <ScalarBackend S>
json tuple_to_json(const std::vector<PsdMatrix<S>>& ms) {
    json out = json::array();
    for (const auto& m : ms) out.push_back(matrix_to_json(m.base()));
    return out;
}

}  // namespace mixdisc::jsondetail
