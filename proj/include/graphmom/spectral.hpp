#ifndef GRAPHMOM_SPECTRAL_HPP
#define GRAPHMOM_SPECTRAL_HPP

#include "connection.hpp"
#include "exact_linalg.hpp"
#include "hom.hpp"
#include "multigraph.hpp"
#include "quantum.hpp"
#include "targets.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace graphmom {

inline constexpr double default_zero_eigenvalue = 1e-12;

namespace detail {

template <class Scalar>
Eigen::MatrixXd symmetric_operator(const StepGraphon<Scalar>& w)
{
    const auto n = static_cast<Eigen::Index>(w.steps());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double mi = to_double(w.measures()[static_cast<std::size_t>(i)]);
            const double mj = to_double(w.measures()[static_cast<std::size_t>(j)]);
            m(i, j) = std::sqrt(mi * mj) * to_double(w.value(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
        }
    return m;
}

} // namespace detail

/**
 * Nonzero eigenvalues of the integral operator T_W, i.e. of
 * D^{1/2} B D^{1/2}, sorted by decreasing absolute value.
 */
template <class Scalar>
std::vector<double> eigenvalues_step(const StepGraphon<Scalar>& w, double zero_tol = default_zero_eigenvalue)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(detail::symmetric_operator(w), Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        if (std::abs(solver.eigenvalues()(i)) > zero_tol) out.push_back(solver.eigenvalues()(i));
    std::sort(out.begin(), out.end(), [](double a, double b) {
        return std::abs(a) != std::abs(b) ? std::abs(a) > std::abs(b) : a > b;
    });
    return out;
}

/// t(C_n, W) as the power sum of the operator spectrum.
template <class Scalar>
double cycle_density_spectral(const StepGraphon<Scalar>& w, std::size_t n, double zero_tol = default_zero_eigenvalue)
{
    if (n < 2) throw std::invalid_argument("cycle_density_spectral: n must be at least 2");
    double s = 0;
    for (double l : eigenvalues_step(w, zero_tol)) s += std::pow(l, static_cast<double>(n));
    return s;
}

/// Re-expresses W on a finer interval partition given by cumulative breakpoints.
template <class Scalar>
StepGraphon<Scalar> refine(const StepGraphon<Scalar>& w, const std::vector<Scalar>& breakpoints)
{
    // breakpoints: strictly increasing, last equals 1, containing every step boundary of w
    std::vector<Scalar> bounds;
    Scalar acc = 0;
    for (const Scalar& m : w.measures()) {
        acc += m;
        bounds.push_back(acc);
    }
    std::vector<Scalar> measures;
    std::vector<std::size_t> parent;
    Scalar prev = 0;
    std::size_t step = 0;
    for (const Scalar& b : breakpoints) {
        if (!(b > prev)) throw std::invalid_argument("refine: breakpoints must increase");
        while (step < bounds.size() && bounds[step] < b) {
            if (bounds[step] > prev) throw std::invalid_argument("refine: partition is not a refinement");
            ++step;
        }
        if (step == bounds.size()) throw std::invalid_argument("refine: breakpoint beyond 1");
        measures.push_back(b - prev);
        parent.push_back(step);
        prev = b;
    }
    if (parent.empty() || parent.back() != bounds.size() - 1 || prev != bounds.back())
        throw std::invalid_argument("refine: breakpoints must end at 1");
    SquareMatrix<Scalar> values(measures.size());
    for (std::size_t i = 0; i < measures.size(); ++i)
        for (std::size_t j = 0; j < measures.size(); ++j) values(i, j) = w.value(parent[i], parent[j]);
    return StepGraphon<Scalar>(std::move(measures), std::move(values), w.bound());
}

/// Brings two step graphons onto their common refinement.
template <class Scalar>
std::pair<StepGraphon<Scalar>, StepGraphon<Scalar>> common_refinement(const StepGraphon<Scalar>& a,
                                                                      const StepGraphon<Scalar>& b)
{
    std::vector<Scalar> cuts;
    Scalar acc = 0;
    for (const Scalar& m : a.measures()) cuts.push_back(acc += m);
    acc = 0;
    for (const Scalar& m : b.measures()) cuts.push_back(acc += m);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if constexpr (!is_exact_v<Scalar>) {
        // merge float cuts closer than rounding noise
        std::vector<Scalar> merged;
        for (const Scalar& c : cuts)
            if (merged.empty() || c - merged.back() > 1e-12) merged.push_back(c);
        merged.back() = cuts.back();
        cuts = merged;
    }
    return {refine(a, cuts), refine(b, cuts)};
}

/**
 * Kernel composition (W1 o W2)(x, y) = integral of W1(x, z) W2(z, y) dz.
 * Partitions are refined to a common one first.
 */
template <class Scalar>
StepGraphon<Scalar> compose_step(const StepGraphon<Scalar>& w1, const StepGraphon<Scalar>& w2)
{
    if (w1.measures() != w2.measures()) {
        auto [a, b] = common_refinement(w1, w2);
        return compose_step(a, b);
    }
    const std::size_t n = w1.steps();
    SquareMatrix<Scalar> values(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Scalar s = 0;
            for (std::size_t z = 0; z < n; ++z) s += w1.measures()[z] * w1.value(i, z) * w2.value(z, j);
            values(i, j) = s;
        }
    // composition of symmetric kernels is symmetric only when they commute;
    // W o W always is
    if (!values.is_symmetric()) {
        if constexpr (is_exact_v<Scalar>) {
            throw std::invalid_argument("compose_step: kernels do not commute; result is not symmetric");
        } else {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (std::abs(values(i, j) - values(j, i)) > 1e-9)
                        throw std::invalid_argument("compose_step: kernels do not commute; result is not symmetric");
                    values(i, j) = values(j, i) = 0.5 * (values(i, j) + values(j, i));
                }
        }
    }
    return StepGraphon<Scalar>(w1.measures(), std::move(values), w1.bound() * w2.bound());
}

template <class Scalar>
struct SubdivisionCheck {
    Scalar lhs;
    Scalar rhs;
    bool equal;
};

/// t(F', W) against t(F, W o W) where F' subdivides every edge of F.
template <class Scalar>
SubdivisionCheck<Scalar> check_subdivision(const Multigraph& f, const StepGraphon<Scalar>& w)
{
    const Scalar lhs = t(subdivide(f), w);
    const Scalar rhs = t(f, compose_step(w, w));
    bool equal;
    if constexpr (is_exact_v<Scalar>)
        equal = lhs == rhs;
    else
        equal = std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs));
    return {lhs, rhs, equal};
}

struct TwRankBounds {
    std::size_t distinct_nonzero = 0;
    std::size_t total_nonzero = 0;
    std::size_t rank_c = 0;
    bool holds = false;
};

/// Counts eigenvalues and the rank of the C matrix of t(., W); checks
/// distinct_nonzero <= rank_C <= total_nonzero.
template <class Scalar>
TwRankBounds tw_rank_bounds(const StepGraphon<Scalar>& w, std::size_t c_size, double zero_tol = default_zero_eigenvalue,
                            double distinct_tol = 1e-9)
{
    TwRankBounds out;
    const auto ev = eigenvalues_step(w, zero_tol);
    out.total_nonzero = ev.size();
    std::vector<double> sorted = ev;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (i == 0 || sorted[i] - sorted[i - 1] > distinct_tol) ++out.distinct_nonzero;
    out.rank_c = rank_of(C_matrix(density_parameter(w), c_size));
    out.holds = out.distinct_nonzero <= out.rank_c && out.rank_c <= out.total_nonzero;
    return out;
}

/**
 * t(F, W) through the eigen-expansion W(x, y) = sum_r lambda_r g_r(x) g_r(y),
 * keeping eigenvalues above `zero_tol`. Exact for finite-rank kernels and
 * cheap when the rank is small, whatever the number of steps.
 */
template <class Scalar>
double density_low_rank(const Multigraph& f, const StepGraphon<Scalar>& w, double zero_tol = 1e-10)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(detail::symmetric_operator(w));
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        if (std::abs(solver.eigenvalues()(i)) > zero_tol) keep.push_back(i);
    const std::size_t rank = keep.size();
    const std::size_t steps = w.steps();
    // g_r at step i is U_ir / sqrt(mu_i)
    std::vector<std::vector<double>> g(rank, std::vector<double>(steps));
    std::vector<double> lambda(rank);
    std::vector<double> mu(steps);
    for (std::size_t i = 0; i < steps; ++i) mu[i] = to_double(w.measures()[i]);
    for (std::size_t r = 0; r < rank; ++r) {
        lambda[r] = solver.eigenvalues()(keep[r]);
        for (std::size_t i = 0; i < steps; ++i)
            g[r][i] = solver.eigenvectors()(static_cast<Eigen::Index>(i), keep[r]) / std::sqrt(mu[i]);
    }
    std::vector<std::pair<std::size_t, std::size_t>> copies;
    for (const Edge& e : f.edges())
        for (unsigned c = 0; c < e.multiplicity; ++c) copies.emplace_back(e.u, e.v);
    if (copies.empty()) return 1.0;
    if (rank == 0) return 0.0;

    double total = 0;
    std::vector<std::size_t> label(copies.size(), 0);
    std::vector<double> prod(steps);
    for (;;) {
        double term = 1;
        for (std::size_t e = 0; e < copies.size(); ++e) term *= lambda[label[e]];
        for (std::size_t v = 0; v < f.node_count() && term != 0; ++v) {
            std::fill(prod.begin(), prod.end(), 1.0);
            bool touched = false;
            for (std::size_t e = 0; e < copies.size(); ++e)
                if (copies[e].first == v || copies[e].second == v) {
                    touched = true;
                    for (std::size_t i = 0; i < steps; ++i) prod[i] *= g[label[e]][i];
                }
            if (!touched) continue;
            double integral = 0;
            for (std::size_t i = 0; i < steps; ++i) integral += mu[i] * prod[i];
            term *= integral;
        }
        total += term;
        std::size_t e = 0;
        for (; e < copies.size(); ++e) {
            if (++label[e] < rank) break;
            label[e] = 0;
        }
        if (e == copies.size()) break;
    }
    return total;
}

} // namespace graphmom

#endif // GRAPHMOM_SPECTRAL_HPP
