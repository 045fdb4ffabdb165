#ifndef GRAPHMOM_TARGETS_HPP
#define GRAPHMOM_TARGETS_HPP

#include "multigraph.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphmom {

/// Dense row-major square matrix; the container for symmetric edge data.
template <class Scalar>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, const Scalar& fill = Scalar(0)) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    bool is_symmetric() const
    {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Scalar> data_;
};

/**
 * Weighted graph H: positive node weights alpha and symmetric edge weights
 * beta, loops allowed on the diagonal.
 */
template <class Scalar = Rational>
class WeightedGraph {
public:
    WeightedGraph() = default;

    WeightedGraph(std::vector<Scalar> alpha, SquareMatrix<Scalar> beta) : alpha_(std::move(alpha)), beta_(std::move(beta))
    {
        if (alpha_.size() != beta_.size())
            throw std::invalid_argument("weighted graph: alpha has " + std::to_string(alpha_.size())
                                        + " entries but beta is " + std::to_string(beta_.size()) + "x"
                                        + std::to_string(beta_.size()));
        for (const Scalar& a : alpha_)
            if (!(a > 0)) throw std::invalid_argument("weighted graph: node weights must be positive");
        if (!beta_.is_symmetric()) throw std::invalid_argument("weighted graph: edge weights must be symmetric");
    }

    std::size_t size() const noexcept { return alpha_.size(); }
    const std::vector<Scalar>& alpha() const noexcept { return alpha_; }
    const Scalar& alpha(std::size_t i) const { return alpha_.at(i); }
    const SquareMatrix<Scalar>& beta() const noexcept { return beta_; }
    const Scalar& beta(std::size_t i, std::size_t j) const { return beta_(i, j); }

    Scalar total_weight() const
    {
        Scalar s = 0;
        for (const Scalar& a : alpha_) s += a;
        return s;
    }

    bool is_normalized() const { return total_weight() == Scalar(1); }

    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

private:
    std::vector<Scalar> alpha_;
    SquareMatrix<Scalar> beta_;
};

/// Weighted graph with unit node weights and the given edge weights.
template <class Scalar>
WeightedGraph<Scalar> unit_weighted(SquareMatrix<Scalar> beta)
{
    std::vector<Scalar> alpha(beta.size(), Scalar(1));
    return WeightedGraph<Scalar>(std::move(alpha), std::move(beta));
}

/// Unit node weights, edge weight 1 on adjacent pairs (multiplicities ignored).
inline WeightedGraph<Rational> graph_target(const Multigraph& g)
{
    SquareMatrix<Rational> beta(g.node_count());
    for (const Edge& e : g.edges()) beta(e.u, e.v) = beta(e.v, e.u) = 1;
    return unit_weighted(std::move(beta));
}

template <class Scalar>
WeightedGraph<Scalar> normalize(const WeightedGraph<Scalar>& h)
{
    const Scalar s = h.total_weight();
    if (!(s > 0)) throw std::invalid_argument("normalize: total node weight is zero");
    std::vector<Scalar> alpha = h.alpha();
    for (Scalar& a : alpha) a /= s;
    return WeightedGraph<Scalar>(std::move(alpha), h.beta());
}

// ---------------------------------------------------------------------------
// Randomly weighted graphs

/// Finite distribution: distinct values, positive probabilities summing to 1,
/// kept sorted by value.
class Distribution {
public:
    struct Atom {
        Rational value;
        Rational probability;
        friend bool operator==(const Atom&, const Atom&) = default;
    };

    Distribution() = default;

    explicit Distribution(std::vector<Atom> atoms) : atoms_(std::move(atoms))
    {
        if (atoms_.empty()) throw std::invalid_argument("distribution: no atoms");
        std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
        Rational total = 0;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (sgn(atoms_[i].probability) <= 0)
                throw std::invalid_argument("distribution: probabilities must be positive");
            if (i > 0 && atoms_[i].value == atoms_[i - 1].value)
                throw std::invalid_argument("distribution: repeated value " + to_string(atoms_[i].value));
            total += atoms_[i].probability;
        }
        if (total != 1) throw std::invalid_argument("distribution: probabilities sum to " + to_string(total));
    }

    static Distribution point(const Rational& value) { return Distribution({{value, Rational(1)}}); }

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    std::size_t support_size() const noexcept { return atoms_.size(); }

    /// E(B^m); m = 0 gives 1.
    Rational moment(unsigned m) const
    {
        Rational s = 0;
        for (const Atom& a : atoms_) s += a.probability * pow(a.value, m);
        return s;
    }

    Rational mean() const { return moment(1); }

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    std::vector<Atom> atoms_;
};

/**
 * Randomly weighted graph: nonnegative node weights and an independent
 * finite-support edge distribution for every (unordered) pair, including
 * the diagonal.
 */
class RandomWeightedGraph {
public:
    RandomWeightedGraph() = default;

    RandomWeightedGraph(std::vector<Rational> alpha, std::vector<std::vector<Distribution>> dist)
        : alpha_(std::move(alpha)), dist_(std::move(dist))
    {
        const std::size_t n = alpha_.size();
        if (dist_.size() != n) throw std::invalid_argument("randomly weighted graph: dist must be n x n");
        for (const auto& row : dist_)
            if (row.size() != n) throw std::invalid_argument("randomly weighted graph: dist must be n x n");
        for (const Rational& a : alpha_)
            if (sgn(a) < 0) throw std::invalid_argument("randomly weighted graph: node weights must be nonnegative");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!(dist_[i][j] == dist_[j][i]))
                    throw std::invalid_argument("randomly weighted graph: edge distributions must be symmetric");
    }

    /// Every cell degenerate at the corresponding edge weight.
    static RandomWeightedGraph degenerate(const WeightedGraph<Rational>& h)
    {
        const std::size_t n = h.size();
        std::vector<std::vector<Distribution>> dist(n, std::vector<Distribution>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) dist[i][j] = Distribution::point(h.beta(i, j));
        return RandomWeightedGraph(h.alpha(), std::move(dist));
    }

    std::size_t size() const noexcept { return alpha_.size(); }
    const std::vector<Rational>& alpha() const noexcept { return alpha_; }
    const Rational& alpha(std::size_t i) const { return alpha_.at(i); }
    const Distribution& dist(std::size_t i, std::size_t j) const { return dist_.at(i).at(j); }

    Rational moment(std::size_t i, std::size_t j, unsigned m) const { return dist(i, j).moment(m); }

    /// p_{i,j}: number of values B_{i,j} takes with positive probability.
    std::size_t support(std::size_t i, std::size_t j) const { return dist(i, j).support_size(); }

    /// p(H) = max p_{i,j}; 1 for the empty graph.
    std::size_t max_support() const
    {
        std::size_t p = 1;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j) p = std::max(p, support(i, j));
        return p;
    }

    bool proper() const { return max_support() >= 2; }

    Rational total_weight() const
    {
        Rational s = 0;
        for (const Rational& a : alpha_) s += a;
        return s;
    }

    friend bool operator==(const RandomWeightedGraph&, const RandomWeightedGraph&) = default;

private:
    std::vector<Rational> alpha_;
    std::vector<std::vector<Distribution>> dist_;
};

/// Drops zero-weight nodes and scales the rest to total weight 1.
inline RandomWeightedGraph normalize(const RandomWeightedGraph& h)
{
    const Rational s = h.total_weight();
    if (sgn(s) <= 0) throw std::invalid_argument("normalize: total node weight is zero");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (sgn(h.alpha(i)) > 0) keep.push_back(i);
    std::vector<Rational> alpha;
    std::vector<std::vector<Distribution>> dist(keep.size(), std::vector<Distribution>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a) {
        alpha.push_back(h.alpha(keep[a]) / s);
        for (std::size_t b = 0; b < keep.size(); ++b) dist[a][b] = h.dist(keep[a], keep[b]);
    }
    return RandomWeightedGraph(std::move(alpha), std::move(dist));
}

/// Replaces every random edge weight by its expectation.
inline WeightedGraph<Rational> expectation_graph(const RandomWeightedGraph& h)
{
    const std::size_t n = h.size();
    SquareMatrix<Rational> beta(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) beta(i, j) = h.dist(i, j).mean();
    // zero-weight nodes are not representable in a WeightedGraph
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
        if (sgn(h.alpha(i)) > 0) keep.push_back(i);
    if (keep.size() == n) return WeightedGraph<Rational>(h.alpha(), std::move(beta));
    std::vector<Rational> alpha;
    SquareMatrix<Rational> reduced(keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a) {
        alpha.push_back(h.alpha(keep[a]));
        for (std::size_t b = 0; b < keep.size(); ++b) reduced(a, b) = beta(keep[a], keep[b]);
    }
    return WeightedGraph<Rational>(std::move(alpha), std::move(reduced));
}

// ---------------------------------------------------------------------------
// Step graphons

/**
 * Symmetric kernel constant on S_i x S_j for consecutive intervals S_i of
 * lengths `measures`. Rational scalars give the exact mode, double the float
 * mode.
 */
template <class Scalar = Rational>
class StepGraphon {
public:
    StepGraphon() = default;

    StepGraphon(std::vector<Scalar> measures, SquareMatrix<Scalar> values, Scalar bound)
        : measures_(std::move(measures)), values_(std::move(values)), bound_(std::move(bound))
    {
        if (measures_.size() != values_.size() || measures_.empty())
            throw std::invalid_argument("step graphon: need one positive measure per step");
        Scalar total = 0;
        for (const Scalar& m : measures_) {
            if (!(m > 0)) throw std::invalid_argument("step graphon: step measures must be positive");
            total += m;
        }
        if constexpr (is_exact_v<Scalar>) {
            if (total != 1) throw std::invalid_argument("step graphon: step measures sum to " + to_string(total));
        } else {
            if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("step graphon: step measures must sum to 1");
        }
        if (!(bound_ > 0)) throw std::invalid_argument("step graphon: bound must be positive");
        if (!values_.is_symmetric()) throw std::invalid_argument("step graphon: values must be symmetric");
        for (std::size_t i = 0; i < values_.size(); ++i)
            for (std::size_t j = 0; j < values_.size(); ++j)
                if (scalar_abs(values_(i, j)) > bound_)
                    throw std::invalid_argument("step graphon: value exceeds the bound d");
    }

    /// Smallest admissible bound for the given values (1 if all are zero).
    static Scalar tight_bound(const SquareMatrix<Scalar>& values)
    {
        Scalar d = 0;
        for (std::size_t i = 0; i < values.size(); ++i)
            for (std::size_t j = 0; j < values.size(); ++j) d = std::max<Scalar>(d, scalar_abs(values(i, j)));
        return d > 0 ? d : Scalar(1);
    }

    static StepGraphon constant(const Scalar& c)
    {
        SquareMatrix<Scalar> v(1, c);
        return StepGraphon({Scalar(1)}, v, tight_bound(v));
    }

    std::size_t steps() const noexcept { return measures_.size(); }
    const std::vector<Scalar>& measures() const noexcept { return measures_; }
    const SquareMatrix<Scalar>& values() const noexcept { return values_; }
    const Scalar& value(std::size_t i, std::size_t j) const { return values_(i, j); }
    const Scalar& bound() const noexcept { return bound_; }
    static constexpr bool exact() { return is_exact_v<Scalar>; }

    /// The equivalent normalized weighted graph.
    WeightedGraph<Scalar> as_weighted_graph() const { return WeightedGraph<Scalar>(measures_, values_); }

private:
    std::vector<Scalar> measures_;
    SquareMatrix<Scalar> values_;
    Scalar bound_ = 1;
};

template <class Scalar>
StepGraphon<Scalar> to_step_graphon(const WeightedGraph<Scalar>& h)
{
    if (!h.is_normalized()) throw std::invalid_argument("to_step_graphon: weighted graph is not normalized");
    return StepGraphon<Scalar>(h.alpha(), h.beta(), StepGraphon<Scalar>::tight_bound(h.beta()));
}

/**
 * N equal steps with the kernel sampled at cell centres. Values are
 * symmetrized; a bound of 0 means "use the largest sampled value".
 */
inline StepGraphon<double> grid_graphon(const std::function<double(double, double)>& kernel, std::size_t steps,
                                        double bound = 0)
{
    if (steps == 0) throw std::invalid_argument("grid_graphon: need at least one step");
    SquareMatrix<double> values(steps);
    const double h = 1.0 / static_cast<double>(steps);
    for (std::size_t i = 0; i < steps; ++i)
        for (std::size_t j = i; j < steps; ++j) {
            const double x = (static_cast<double>(i) + 0.5) * h;
            const double y = (static_cast<double>(j) + 0.5) * h;
            const double a = kernel(x, y);
            const double b = kernel(y, x);
            if (!std::isfinite(a) || !std::isfinite(b))
                throw std::invalid_argument("grid_graphon: kernel is not finite at a cell centre");
            if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
                throw std::invalid_argument("grid_graphon: kernel is not symmetric");
            values(i, j) = values(j, i) = 0.5 * (a + b);
        }
    const double d = bound > 0 ? bound : StepGraphon<double>::tight_bound(values);
    std::vector<double> measures(steps, h);
    // keep the sum exactly representable-close to 1
    double total = 0;
    for (std::size_t i = 0; i + 1 < steps; ++i) total += measures[i];
    measures.back() = 1.0 - total;
    return StepGraphon<double>(std::move(measures), std::move(values), d);
}

/// Float view of an exact graphon.
inline StepGraphon<double> to_float(const StepGraphon<Rational>& w)
{
    std::vector<double> m;
    for (const Rational& x : w.measures()) m.push_back(x.get_d());
    SquareMatrix<double> v(w.steps());
    for (std::size_t i = 0; i < w.steps(); ++i)
        for (std::size_t j = 0; j < w.steps(); ++j) v(i, j) = w.value(i, j).get_d();
    return StepGraphon<double>(std::move(m), std::move(v), w.bound().get_d());
}

} // namespace graphmom

#endif // GRAPHMOM_TARGETS_HPP
