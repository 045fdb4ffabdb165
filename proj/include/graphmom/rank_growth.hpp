#ifndef GRAPHMOM_RANK_GROWTH_HPP
#define GRAPHMOM_RANK_GROWTH_HPP

#include "canonical.hpp"
#include "connection.hpp"
#include "exact_linalg.hpp"
#include "hom.hpp"
#include "quantum.hpp"
#include "targets.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphmom {

// ---------------------------------------------------------------------------
// A(H) = max over the simplex of 1/2 sum x_u x_v log2 p_uv

struct AValue {
    double value = 0;               // the maximum
    std::vector<double> maximizer;  // a point attaining it
    std::optional<Rational> exact;  // when every log2 p_uv is an integer
    double kkt_value = -1;          // best feasible stationary point (-1: none)
    double grid_value = -1;         // grid search followed by local refinement
};

namespace detail {

inline double quadratic_value(const std::vector<std::vector<double>>& l, const std::vector<double>& x)
{
    double s = 0;
    for (std::size_t u = 0; u < x.size(); ++u)
        for (std::size_t v = 0; v < x.size(); ++v) s += x[u] * x[v] * l[u][v];
    return 0.5 * s;
}

// Moves mass between pairs of coordinates along the exact maximizer of the
// one-dimensional quadratic until no pair improves.
inline void pairwise_refine(const std::vector<std::vector<double>>& l, std::vector<double>& x)
{
    const std::size_t n = x.size();
    for (int sweep = 0; sweep < 10000; ++sweep) {
        bool improved = false;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v) {
                if (u == v) continue;
                // x_u += s, x_v -= s with s in [-x_u, x_v]
                double grad_u = 0, grad_v = 0;
                for (std::size_t w = 0; w < n; ++w) {
                    grad_u += l[u][w] * x[w];
                    grad_v += l[v][w] * x[w];
                }
                const double slope = grad_u - grad_v;
                const double curv = 0.5 * (l[u][u] + l[v][v] - 2 * l[u][v]);
                const double lo = -x[u], hi = x[v];
                auto gain = [&](double s) { return slope * s + curv * s * s; };
                double best = 0, best_gain = 0;
                for (double s : {lo, hi}) {
                    if (gain(s) > best_gain) {
                        best_gain = gain(s);
                        best = s;
                    }
                }
                if (curv < 0) {
                    const double s = std::clamp(-slope / (2 * curv), lo, hi);
                    if (gain(s) > best_gain) {
                        best_gain = gain(s);
                        best = s;
                    }
                }
                if (best_gain > 1e-15) {
                    x[u] += best;
                    x[v] -= best;
                    improved = true;
                }
            }
        if (!improved) break;
    }
}

inline double grid_search(const std::vector<std::vector<double>>& l, std::vector<double>& best_x, std::size_t resolution,
                          double max_points)
{
    const std::size_t n = l.size();
    // shrink the resolution until C(res + n - 1, n - 1) fits the budget
    auto count = [&](std::size_t res) {
        double c = 1;
        for (std::size_t i = 1; i < n; ++i) c = c * static_cast<double>(res + i) / static_cast<double>(i);
        return c;
    };
    while (resolution > 2 && count(resolution) > max_points) resolution /= 2;
    double best = -1;
    std::vector<std::size_t> parts(n, 0);
    std::vector<double> x(n);
    auto visit = [&](auto&& self, std::size_t idx, std::size_t remaining) -> void {
        if (idx + 1 == n) {
            parts[idx] = remaining;
            for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(parts[i]) / static_cast<double>(resolution);
            const double v = quadratic_value(l, x);
            if (v > best) {
                best = v;
                best_x = x;
            }
            return;
        }
        for (std::size_t p = 0; p <= remaining; ++p) {
            parts[idx] = p;
            self(self, idx + 1, remaining - p);
        }
    };
    visit(visit, 0, resolution);
    return best;
}

} // namespace detail

/// A for an explicit matrix of log2 p_uv values.
inline AValue compute_A(const std::vector<std::vector<double>>& log_p, std::size_t grid_resolution = 200)
{
    const std::size_t n = log_p.size();
    if (n == 0) throw std::invalid_argument("compute_A: empty node set");
    if (n > 8) throw std::length_error("compute_A: at most 8 nodes");
    AValue out;

    // KKT stationary points on every support
    std::uint32_t best_support = 0; // 0: maximizer not from a stationary point
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t u = 0; u < n; ++u)
            if ((mask >> u) & 1u) s.push_back(u);
        const auto k = static_cast<Eigen::Index>(s.size());
        Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(k + 1, k + 1);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) sys(i, j) = log_p[s[static_cast<std::size_t>(i)]][s[static_cast<std::size_t>(j)]];
            sys(i, k) = -1;
            sys(k, i) = 1;
        }
        rhs(k) = 1;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
        if (!lu.isInvertible()) continue;
        const Eigen::VectorXd sol = lu.solve(rhs);
        std::vector<double> x(n, 0.0);
        bool feasible = true;
        for (Eigen::Index i = 0; i < k; ++i) {
            if (sol(i) < -1e-12) feasible = false;
            x[s[static_cast<std::size_t>(i)]] = std::max(0.0, sol(i));
        }
        if (!feasible) continue;
        const double v = detail::quadratic_value(log_p, x);
        if (v > out.kkt_value) {
            out.kkt_value = v;
            out.maximizer = x;
            best_support = mask;
        }
    }

    std::vector<double> grid_x;
    out.grid_value = detail::grid_search(log_p, grid_x, grid_resolution, 2e6);
    detail::pairwise_refine(log_p, grid_x);
    out.grid_value = std::max(out.grid_value, detail::quadratic_value(log_p, grid_x));

    if (out.grid_value > out.kkt_value + 1e-12) {
        out.value = out.grid_value;
        out.maximizer = grid_x;
        best_support = 0;
    } else {
        out.value = out.kkt_value;
    }

    // exact value when the logs are integers and the best point is a KKT point
    bool integral = true;
    for (const auto& row : log_p)
        for (double v : row)
            if (v != std::floor(v)) integral = false;
    if (integral && best_support != 0) {
        std::vector<std::size_t> s;
        for (std::size_t u = 0; u < n; ++u)
            if ((best_support >> u) & 1u) s.push_back(u);
        const std::size_t k = s.size();
        ExactMatrix sys(k + 1, k + 2);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) sys(i, j) = Rational(static_cast<long>(log_p[s[i]][s[j]]));
            sys(i, k) = -1;
            sys(k, i) = 1;
        }
        sys(k, k + 1) = 1;
        bool ok = true;
        for (std::size_t c = 0; c <= k && ok; ++c) {
            std::size_t p = c;
            while (p <= k && sgn(sys(p, c)) == 0) ++p;
            if (p > k) {
                ok = false;
                break;
            }
            for (std::size_t j = 0; j <= k + 1; ++j) std::swap(sys(p, j), sys(c, j));
            for (std::size_t i = 0; i <= k; ++i) {
                if (i == c || sgn(sys(i, c)) == 0) continue;
                const Rational f = sys(i, c) / sys(c, c);
                for (std::size_t j = c; j <= k + 1; ++j) sys(i, j) -= f * sys(c, j);
            }
        }
        if (ok) {
            std::vector<Rational> x(n, Rational(0));
            for (std::size_t i = 0; i < k; ++i) x[s[i]] = sys(i, k + 1) / sys(i, i);
            Rational v = 0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) v += x[a] * x[b] * static_cast<long>(log_p[a][b]);
            out.exact = v / 2;
        }
    }
    return out;
}

inline std::vector<std::vector<double>> log_support_matrix(const RandomWeightedGraph& h)
{
    std::vector<std::vector<double>> l(h.size(), std::vector<double>(h.size()));
    for (std::size_t u = 0; u < h.size(); ++u)
        for (std::size_t v = 0; v < h.size(); ++v) l[u][v] = std::log2(static_cast<double>(h.support(u, v)));
    return l;
}

/// A(H) over the nodes of positive weight, logs base 2.
inline AValue compute_A(const RandomWeightedGraph& h, std::size_t grid_resolution = 200)
{
    return compute_A(log_support_matrix(normalize(h)), grid_resolution);
}

// ---------------------------------------------------------------------------
// dim(P_n / f) by counting realizable edge-weight patterns

inline constexpr double default_pattern_budget = 1e7;

/**
 * Number of distinct weighted graphs L on [n] (unit node weights) such that
 * some phi: [n] -> V(H) has every lambda_ij in the range of B_{phi(i)phi(j)}.
 * Nodes of weight 0 are ignored.
 */
inline std::size_t dim_Pn_exact(const RandomWeightedGraph& input, std::size_t n, double budget = default_pattern_budget)
{
    const RandomWeightedGraph h = normalize(input);
    const std::size_t q = h.size();
    const std::size_t pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
    double work = std::pow(static_cast<double>(q), static_cast<double>(n))
                  * std::pow(static_cast<double>(h.max_support()), static_cast<double>(pairs));
    if (work > budget) throw std::length_error("dim_Pn_exact: work estimate exceeds the budget");
    if (pairs == 0) return 1;

    // value ids shared by all cells
    std::map<Rational, std::uint32_t> ids;
    for (std::size_t u = 0; u < q; ++u)
        for (std::size_t v = 0; v < q; ++v)
            for (const auto& a : h.dist(u, v).atoms()) ids.emplace(a.value, 0);
    std::uint32_t next = 0;
    for (auto& [value, id] : ids) id = next++;
    std::vector<std::vector<std::vector<std::uint32_t>>> range(q, std::vector<std::vector<std::uint32_t>>(q));
    for (std::size_t u = 0; u < q; ++u)
        for (std::size_t v = 0; v < q; ++v)
            for (const auto& a : h.dist(u, v).atoms()) range[u][v].push_back(ids[a.value]);

    // distinct per-pair range patterns first
    std::set<std::vector<std::pair<std::size_t, std::size_t>>> patterns;
    std::vector<std::size_t> phi(n, 0);
    for (;;) {
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) cells.emplace_back(std::min(phi[i], phi[j]), std::max(phi[i], phi[j]));
        patterns.insert(std::move(cells));
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++phi[i] < q) break;
            phi[i] = 0;
        }
        if (i == n) break;
    }
    std::set<std::vector<std::uint32_t>> graphs;
    std::vector<std::uint32_t> lambda(pairs);
    std::vector<std::size_t> digit(pairs);
    for (const auto& cells : patterns) {
        std::fill(digit.begin(), digit.end(), 0);
        for (;;) {
            for (std::size_t p = 0; p < pairs; ++p) lambda[p] = range[cells[p].first][cells[p].second][digit[p]];
            graphs.insert(lambda);
            std::size_t p = 0;
            for (; p < pairs; ++p) {
                if (++digit[p] < range[cells[p].first][cells[p].second].size()) break;
                digit[p] = 0;
            }
            if (p == pairs) break;
        }
    }
    return graphs.size();
}

/**
 * Rank of the Gram matrix of hom(., H) on all graphs with node set [n],
 * every node labeled, multiplicities up to `max_mult`. Independent of the
 * counting route above.
 */
inline std::size_t dim_Pn_gram(const RandomWeightedGraph& h, std::size_t n, unsigned max_mult)
{
    const std::size_t pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
    std::vector<Multigraph> gens;
    std::vector<unsigned> digit(pairs, 0);
    for (;;) {
        Multigraph g(n, n);
        std::size_t p = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b, ++p)
                if (digit[p] != 0) g.set_multiplicity(a, b, digit[p]);
        gens.push_back(std::move(g));
        std::size_t i = 0;
        for (; i < pairs; ++i) {
            if (++digit[i] <= max_mult) break;
            digit[i] = 0;
        }
        if (i == pairs) break;
    }
    return rank_exact(connection_submatrix(hom_parameter(h), n, gens));
}

/// Multiplicity bound at which dim_Pn_gram is guaranteed saturated: one less
/// than the number of distinct edge values over all cells.
inline unsigned saturating_multiplicity(const RandomWeightedGraph& input)
{
    const RandomWeightedGraph h = normalize(input);
    std::set<Rational> values;
    for (std::size_t u = 0; u < h.size(); ++u)
        for (std::size_t v = 0; v < h.size(); ++v)
            for (const auto& a : h.dist(u, v).atoms()) values.insert(a.value);
    return static_cast<unsigned>(std::max<std::size_t>(values.size(), 1) - 1);
}

struct RankBounds {
    double lower = 0;
    std::size_t dim = 0;
    double upper = 0;
    double a_value = 0;
    bool pass = false;
};

/// 2^{n^2 A} / p^{2n} <= dim(P_n/f) <= |V|^n 2^{n^2 A}.
inline RankBounds verify_rank_bounds(const RandomWeightedGraph& input, std::size_t n, double budget = default_pattern_budget)
{
    const RandomWeightedGraph h = normalize(input);
    RankBounds out;
    out.a_value = compute_A(h).value;
    out.dim = dim_Pn_exact(h, n, budget);
    const long double nn = static_cast<long double>(n);
    const long double lg_p = std::log2(static_cast<long double>(h.max_support()));
    const long double lg_v = std::log2(static_cast<long double>(h.size()));
    const long double lg_lower = nn * nn * out.a_value - 2 * nn * lg_p;
    const long double lg_upper = nn * lg_v + nn * nn * out.a_value;
    out.lower = static_cast<double>(std::exp2(lg_lower));
    out.upper = static_cast<double>(std::exp2(lg_upper));
    const long double d = static_cast<long double>(out.dim);
    out.pass = d >= std::exp2(lg_lower) * (1 - 1e-9L) && d <= std::exp2(lg_upper) * (1 + 1e-9L);
    return out;
}

// ---------------------------------------------------------------------------
// Ordinary weighted graphs: twins and automorphisms

/// Merges nodes whose edge-weight rows coincide, summing their weights.
template <class Scalar>
WeightedGraph<Scalar> twin_reduce(const WeightedGraph<Scalar>& h)
{
    const std::size_t q = h.size();
    std::vector<std::size_t> rep(q);
    std::vector<std::size_t> classes;
    for (std::size_t u = 0; u < q; ++u) {
        rep[u] = u;
        for (std::size_t c : classes) {
            bool same = true;
            for (std::size_t w = 0; w < q && same; ++w) same = h.beta(u, w) == h.beta(c, w);
            if (same) {
                rep[u] = c;
                break;
            }
        }
        if (rep[u] == u) classes.push_back(u);
    }
    if (classes.size() == q) return h;
    std::vector<Scalar> alpha(classes.size(), Scalar(0));
    SquareMatrix<Scalar> beta(classes.size());
    for (std::size_t u = 0; u < q; ++u) {
        const auto idx = static_cast<std::size_t>(std::find(classes.begin(), classes.end(), rep[u]) - classes.begin());
        alpha[idx] += h.alpha(u);
    }
    for (std::size_t a = 0; a < classes.size(); ++a)
        for (std::size_t b = 0; b < classes.size(); ++b) beta(a, b) = h.beta(classes[a], classes[b]);
    return WeightedGraph<Scalar>(std::move(alpha), std::move(beta));
}

/// Node permutations preserving node and edge weights.
template <class Scalar>
std::vector<std::vector<std::size_t>> automorphisms(const WeightedGraph<Scalar>& h)
{
    const std::size_t q = h.size();
    if (q > 8) throw std::length_error("automorphisms: at most 8 nodes");
    std::vector<std::size_t> perm(q);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::size_t>> out;
    do {
        bool ok = true;
        for (std::size_t u = 0; u < q && ok; ++u) {
            ok = h.alpha(perm[u]) == h.alpha(u);
            for (std::size_t v = 0; v < q && ok; ++v) ok = h.beta(perm[u], perm[v]) == h.beta(u, v);
        }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Orbits of maps [n] -> V(H) under Aut(H), by Burnside's lemma.
template <class Scalar>
std::size_t count_map_orbits(const WeightedGraph<Scalar>& h, std::size_t n)
{
    if (n > 6) throw std::length_error("count_map_orbits: n must be at most 6");
    const auto group = automorphisms(h);
    Integer total = 0;
    for (const auto& perm : group) {
        unsigned long fixed = 0;
        for (std::size_t u = 0; u < perm.size(); ++u)
            if (perm[u] == u) ++fixed;
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), fixed, static_cast<unsigned long>(n));
        total += p;
    }
    return static_cast<std::size_t>(Integer(total / static_cast<unsigned long>(group.size())).get_ui());
}

// ---------------------------------------------------------------------------
// Growth classification

enum class GrowthType { ordinary, proper };

struct GrowthRow {
    std::size_t n = 0;
    std::size_t dim_pn = 0;
    std::optional<std::size_t> dim_qn_lower; // rank saturation, small n only
    bool qn_saturated = false;               // rank stopped growing at the last node budget
    double root = 0;                          // dim^{1/n} or dim^{1/n^2}
    double lower = 0;                         // bound on dim
    double upper = 0;
};

struct GrowthReport {
    std::string target;
    GrowthType type = GrowthType::ordinary;
    std::size_t max_support = 1;
    std::size_t nodes = 0;
    std::size_t reduced_nodes = 0; // after twin reduction (ordinary only)
    double a_value = 0;
    double predicted_limit = 0;
    std::vector<GrowthRow> rows;
};

inline GrowthReport classify_growth(const RandomWeightedGraph& input, std::size_t n_min, std::size_t n_max,
                                    std::size_t qn_node_budget = 0, double budget = default_pattern_budget)
{
    const RandomWeightedGraph h = normalize(input);
    GrowthReport rep;
    rep.max_support = h.max_support();
    rep.nodes = h.size();
    rep.type = h.proper() ? GrowthType::proper : GrowthType::ordinary;
    rep.a_value = compute_A(h).value;
    if (rep.type == GrowthType::ordinary) {
        rep.reduced_nodes = twin_reduce(expectation_graph(h)).size();
        rep.predicted_limit = static_cast<double>(rep.reduced_nodes);
    } else {
        rep.reduced_nodes = h.size();
        rep.predicted_limit = std::exp2(rep.a_value);
    }
    for (std::size_t n = n_min; n <= n_max; ++n) {
        GrowthRow row;
        row.n = n;
        const RankBounds b = verify_rank_bounds(h, n, budget);
        row.dim_pn = b.dim;
        row.lower = b.lower;
        row.upper = b.upper;
        const double dn = static_cast<double>(n);
        if (n > 0)
            row.root = rep.type == GrowthType::ordinary ? std::pow(static_cast<double>(b.dim), 1.0 / dn)
                                                        : std::pow(static_cast<double>(b.dim), 1.0 / (dn * dn));
        if (qn_node_budget >= n && qn_node_budget > 0) {
            const unsigned mult = static_cast<unsigned>(std::max<std::size_t>(1, 2 * h.max_support() - 1));
            const DimEstimate est = estimate_dim(hom_parameter(h), n, qn_node_budget, std::min(mult, 2u));
            row.dim_qn_lower = est.value;
            const auto& st = est.steps;
            row.qn_saturated = st.size() >= 2 && st[st.size() - 1].rank == st[st.size() - 2].rank;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace graphmom

#endif // GRAPHMOM_RANK_GROWTH_HPP
