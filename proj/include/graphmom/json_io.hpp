#ifndef GRAPHMOM_JSON_IO_HPP
#define GRAPHMOM_JSON_IO_HPP

#include "exact_linalg.hpp"
#include "moments.hpp"
#include "multigraph.hpp"
#include "quantum.hpp"
#include "rational.hpp"
#include "targets.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphmom::io {

using json = nlohmann::json;

/// Malformed or out-of-contract input; the command line maps it to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": malformed JSON: " + e.what());
    }
}

// --- scalars ---------------------------------------------------------------

inline Rational rational_from_json(const json& j)
{
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.dump());
        if (j.is_number_float()) return parse_rational(j.dump());
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("bad rational: ") + e.what());
    }
    throw InputError("expected a rational (\"p/q\" string or number), got " + j.dump());
}

template <class Scalar>
Scalar scalar_from_json(const json& j)
{
    if constexpr (is_exact_v<Scalar>) {
        return rational_from_json(j);
    } else {
        if (j.is_number()) return j.get<double>();
        return rational_from_json(j).get_d();
    }
}

inline json to_json(const Rational& r) { return to_string(r); }
inline json to_json(double x) { return x; }

template <class Scalar>
json vector_to_json(const std::vector<Scalar>& v)
{
    json out = json::array();
    for (const Scalar& x : v) out.push_back(to_json(x));
    return out;
}

template <class Scalar>
std::vector<Scalar> vector_from_json(const json& j, const char* what)
{
    if (!j.is_array()) throw InputError(std::string(what) + ": expected an array");
    std::vector<Scalar> out;
    for (const auto& x : j) out.push_back(scalar_from_json<Scalar>(x));
    return out;
}

template <class Scalar>
SquareMatrix<Scalar> square_from_json(const json& j, std::size_t n, const char* what)
{
    if (!j.is_array() || j.size() != n) throw InputError(std::string(what) + ": expected " + std::to_string(n) + " rows");
    SquareMatrix<Scalar> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw InputError(std::string(what) + ": row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = scalar_from_json<Scalar>(j[i][k]);
    }
    return m;
}

template <class Scalar>
json square_to_json(const SquareMatrix<Scalar>& m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.size(); ++k) row.push_back(to_json(m(i, k)));
        out.push_back(row);
    }
    return out;
}

// --- graphs ----------------------------------------------------------------

inline Multigraph graph_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("nodes")) throw InputError("graph: expected an object with \"nodes\"");
    try {
        const auto n = j.at("nodes").get<std::size_t>();
        const auto k = j.value("labels", std::size_t{0});
        if (k > n) throw InputError("graph: more labels than nodes");
        Multigraph g(n, k);
        for (const auto& e : j.value("edges", json::array())) {
            if (!e.is_array() || e.size() < 2 || e.size() > 3) throw InputError("graph: edge must be [u, v] or [u, v, mult]");
            const auto u = e[0].get<std::size_t>();
            const auto v = e[1].get<std::size_t>();
            const unsigned m = e.size() == 3 ? e[2].get<unsigned>() : 1u;
            if (u >= n || v >= n) throw InputError("graph: edge endpoint out of range");
            if (u == v) throw InputError("graph: loops are not allowed");
            g.add_edge(u, v, m);
        }
        return g;
    } catch (const json::exception& e) {
        throw InputError(std::string("graph: ") + e.what());
    }
}

inline json graph_to_json(const Multigraph& g)
{
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.multiplicity});
    return {{"nodes", g.node_count()}, {"labels", g.label_count()}, {"edges", edges}};
}

// --- targets ---------------------------------------------------------------

template <class Scalar>
WeightedGraph<Scalar> weighted_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("alpha") || !j.contains("beta"))
        throw InputError("weighted graph: expected \"alpha\" and \"beta\"");
    try {
        auto alpha = vector_from_json<Scalar>(j.at("alpha"), "alpha");
        auto beta = square_from_json<Scalar>(j.at("beta"), alpha.size(), "beta");
        return WeightedGraph<Scalar>(std::move(alpha), std::move(beta));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

template <class Scalar>
json weighted_to_json(const WeightedGraph<Scalar>& h)
{
    return {{"alpha", vector_to_json(h.alpha())}, {"beta", square_to_json(h.beta())}};
}

inline Distribution distribution_from_json(const json& j)
{
    if (!j.is_array() || j.empty()) throw InputError("distribution: expected a nonempty array of [value, prob]");
    std::vector<Distribution::Atom> atoms;
    for (const auto& a : j) {
        if (!a.is_array() || a.size() != 2) throw InputError("distribution: atom must be [value, prob]");
        atoms.push_back({rational_from_json(a[0]), rational_from_json(a[1])});
    }
    try {
        return Distribution(std::move(atoms));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

inline json distribution_to_json(const Distribution& d)
{
    json out = json::array();
    for (const auto& a : d.atoms()) out.push_back({to_string(a.value), to_string(a.probability)});
    return out;
}

inline RandomWeightedGraph random_weighted_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("alpha") || !j.contains("dist"))
        throw InputError("randomly weighted graph: expected \"alpha\" and \"dist\"");
    auto alpha = vector_from_json<Rational>(j.at("alpha"), "alpha");
    const std::size_t n = alpha.size();
    const json& d = j.at("dist");
    if (!d.is_array() || d.size() != n) throw InputError("dist: expected " + std::to_string(n) + " rows");
    std::vector<std::vector<Distribution>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!d[i].is_array() || d[i].size() != n) throw InputError("dist: each row needs " + std::to_string(n) + " cells");
        for (std::size_t k = 0; k < n; ++k) dist[i].push_back(distribution_from_json(d[i][k]));
    }
    try {
        return RandomWeightedGraph(std::move(alpha), std::move(dist));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

inline json random_weighted_to_json(const RandomWeightedGraph& h)
{
    json dist = json::array();
    for (std::size_t i = 0; i < h.size(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < h.size(); ++k) row.push_back(distribution_to_json(h.dist(i, k)));
        dist.push_back(row);
    }
    return {{"alpha", vector_to_json(h.alpha())}, {"dist", dist}};
}

/// Either {"alpha", "dist"} or an ordinary {"alpha", "beta"} (degenerate cells).
inline RandomWeightedGraph any_random_weighted_from_json(const json& j)
{
    if (j.is_object() && j.contains("dist")) return random_weighted_from_json(j);
    return RandomWeightedGraph::degenerate(weighted_from_json<Rational>(j));
}

/**
 * Step graphon: {"measures": [...], "values": [[...]], "bound": d} with the
 * bound optional, or a normalized {"alpha", "beta"}, or (float only) a grid
 * discretization {"kernel": "xy" | "cos" | "const", "steps": N}.
 */
template <class Scalar>
StepGraphon<Scalar> graphon_from_json(const json& j)
{
    if (!j.is_object()) throw InputError("graphon: expected an object");
    try {
        if (j.contains("kernel")) {
            if constexpr (is_exact_v<Scalar>) {
                throw InputError("graphon: kernel grids need --float");
            } else {
                const auto name = j.at("kernel").get<std::string>();
                const auto steps = j.value("steps", std::size_t{64});
                std::function<double(double, double)> k;
                if (name == "xy")
                    k = [](double x, double y) { return x * y; };
                else if (name == "cos")
                    k = [](double x, double y) { return std::cos(2 * std::numbers::pi * (x - y)); };
                else if (name == "const")
                    k = [c = j.value("value", 0.5)](double, double) { return c; };
                else
                    throw InputError("graphon: unknown kernel " + name);
                return grid_graphon(k, steps);
            }
        }
        if (j.contains("alpha")) return to_step_graphon(normalize(weighted_from_json<Scalar>(j)));
        auto measures = vector_from_json<Scalar>(j.at("measures"), "measures");
        auto values = square_from_json<Scalar>(j.at("values"), measures.size(), "values");
        const Scalar bound = j.contains("bound") ? scalar_from_json<Scalar>(j.at("bound"))
                                                 : StepGraphon<Scalar>::tight_bound(values);
        return StepGraphon<Scalar>(std::move(measures), std::move(values), bound);
    } catch (const json::exception& e) {
        throw InputError(std::string("graphon: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

template <class Scalar>
json graphon_to_json(const StepGraphon<Scalar>& w)
{
    return {{"measures", vector_to_json(w.measures())}, {"values", square_to_json(w.values())}, {"bound", to_json(w.bound())}};
}

// --- quantum graphs, matrices, sequences ------------------------------------

inline QuantumGraph quantum_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("terms")) throw InputError("quantum graph: expected \"k\" and \"terms\"");
    QuantumGraph q(j.value("k", std::size_t{0}));
    for (const auto& term : j.at("terms")) {
        if (!term.contains("graph")) throw InputError("quantum graph: term without \"graph\"");
        const Rational c = term.contains("coef") ? rational_from_json(term.at("coef")) : Rational(1);
        try {
            q.add(graph_from_json(term.at("graph")), c);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    return q;
}

inline json quantum_to_json(const QuantumGraph& q)
{
    json terms = json::array();
    for (const auto& [code, term] : q.terms())
        terms.push_back({{"coef", to_string(term.coefficient)}, {"graph", graph_to_json(term.graph)}});
    return {{"k", q.label_count()}, {"terms", terms}};
}

template <class Scalar>
json matrix_to_json(const Matrix<Scalar>& m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        out.push_back(row);
    }
    return out;
}

template <class Scalar>
Matrix<Scalar> matrix_from_json(const json& j)
{
    if (!j.is_array()) throw InputError("matrix: expected an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j[0].size() : 0;
    Matrix<Scalar> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw InputError("matrix: ragged rows");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json<Scalar>(j[i][k]);
    }
    return m;
}

/// A bare array of terms, or {"values": [...], "domain": "01" | "dd"}.
template <class Scalar>
std::vector<Scalar> sequence_from_json(const json& j)
{
    if (j.is_array()) return vector_from_json<Scalar>(j, "sequence");
    if (j.is_object() && j.contains("values")) return vector_from_json<Scalar>(j.at("values"), "sequence");
    throw InputError("sequence: expected an array or {\"values\": [...]}");
}

} // namespace graphmom::io

#endif // GRAPHMOM_JSON_IO_HPP
