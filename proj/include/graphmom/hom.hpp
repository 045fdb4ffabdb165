#ifndef GRAPHMOM_HOM_HPP
#define GRAPHMOM_HOM_HPP

#include "multigraph.hpp"
#include "rational.hpp"
#include "targets.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace graphmom {

/**
 * Node weights and edge moments beta_{u,v,m} = E(B_uv^m) for m = 1..max,
 * tabulated once per evaluation. Ordinary weighted graphs tabulate powers.
 */
template <class Scalar>
class MomentTable {
public:
    MomentTable() = default;
    MomentTable(std::vector<Scalar> alpha, std::vector<SquareMatrix<Scalar>> moments)
        : alpha_(std::move(alpha)), moments_(std::move(moments))
    {
    }

    std::size_t size() const noexcept { return alpha_.size(); }
    unsigned max_multiplicity() const noexcept { return static_cast<unsigned>(moments_.size()); }
    const std::vector<Scalar>& alpha() const noexcept { return alpha_; }
    const Scalar& alpha(std::size_t u) const { return alpha_[u]; }

    /// m >= 1 and m <= max_multiplicity().
    const Scalar& moment(std::size_t u, std::size_t v, unsigned m) const { return moments_[m - 1](u, v); }
    const SquareMatrix<Scalar>& moments(unsigned m) const { return moments_[m - 1]; }

    Scalar total_weight() const
    {
        Scalar s = 0;
        for (const Scalar& a : alpha_) s += a;
        return s;
    }

private:
    std::vector<Scalar> alpha_;
    std::vector<SquareMatrix<Scalar>> moments_;
};

template <class Scalar>
MomentTable<Scalar> make_moment_table(const WeightedGraph<Scalar>& h, unsigned max_mult)
{
    const std::size_t q = h.size();
    std::vector<SquareMatrix<Scalar>> moments;
    moments.reserve(max_mult);
    for (unsigned m = 1; m <= max_mult; ++m) {
        SquareMatrix<Scalar> b(q);
        for (std::size_t u = 0; u < q; ++u)
            for (std::size_t v = 0; v < q; ++v)
                b(u, v) = m == 1 ? h.beta(u, v) : Scalar(moments.back()(u, v) * h.beta(u, v));
        moments.push_back(std::move(b));
    }
    return MomentTable<Scalar>(h.alpha(), std::move(moments));
}

inline MomentTable<Rational> make_moment_table(const RandomWeightedGraph& h, unsigned max_mult)
{
    const std::size_t q = h.size();
    std::vector<SquareMatrix<Rational>> moments;
    for (unsigned m = 1; m <= max_mult; ++m) {
        SquareMatrix<Rational> b(q);
        for (std::size_t u = 0; u < q; ++u)
            for (std::size_t v = u; v < q; ++v) b(u, v) = b(v, u) = h.moment(u, v, m);
        moments.push_back(std::move(b));
    }
    return MomentTable<Rational>(h.alpha(), std::move(moments));
}

template <class Scalar>
MomentTable<Scalar> make_moment_table(const StepGraphon<Scalar>& w, unsigned max_mult)
{
    return make_moment_table(w.as_weighted_graph(), max_mult);
}

namespace detail {

template <class Scalar>
using DenseMat = std::vector<Scalar>; // row-major q x q

template <class Scalar>
DenseMat<Scalar> mat_mul(const DenseMat<Scalar>& a, const DenseMat<Scalar>& b, std::size_t q)
{
    if constexpr (!is_exact_v<Scalar>) {
        using M = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        Eigen::Map<const M> ma(a.data(), q, q), mb(b.data(), q, q);
        DenseMat<Scalar> out(q * q);
        Eigen::Map<M> mo(out.data(), q, q);
        mo.noalias() = ma * mb;
        return out;
    } else {
        DenseMat<Scalar> out(q * q, Scalar(0));
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t k = 0; k < q; ++k) {
                if (is_zero(a[i * q + k])) continue;
                for (std::size_t j = 0; j < q; ++j) out[i * q + j] += a[i * q + k] * b[k * q + j];
            }
        return out;
    }
}

// A * B^{(m)}: row i scaled by alpha_i.
template <class Scalar>
DenseMat<Scalar> weighted_step(const MomentTable<Scalar>& t, unsigned m)
{
    const std::size_t q = t.size();
    DenseMat<Scalar> out(q * q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) out[i * q + j] = t.alpha(i) * t.moment(i, j, m);
    return out;
}

inline std::vector<std::vector<std::size_t>> components(const Multigraph& f)
{
    const std::size_t n = f.node_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> members{s};
        comp[s] = static_cast<int>(out.size());
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t v : f.neighbors(members[i]))
                if (comp[v] < 0) {
                    comp[v] = comp[s];
                    members.push_back(v);
                }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

inline Multigraph induced(const Multigraph& f, const std::vector<std::size_t>& nodes)
{
    Multigraph g(nodes.size());
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b)
            if (unsigned m = f.multiplicity(nodes[a], nodes[b]); m != 0) g.set_multiplicity(a, b, m);
    return g;
}

// Walk order of a connected component whose underlying simple graph is a path
// (open = true) or a cycle of length >= 3; empty if neither.
inline std::vector<std::size_t> chain_order(const Multigraph& g, bool& open)
{
    const std::size_t n = g.node_count();
    std::vector<std::size_t> deg(n);
    std::size_t ends = 0;
    for (std::size_t u = 0; u < n; ++u) {
        deg[u] = g.neighbors(u).size();
        if (deg[u] > 2) return {};
        if (deg[u] <= 1) ++ends;
    }
    if (n < 2) return {};
    if (ends == 2) {
        open = true;
    } else if (ends == 0 && n >= 3) {
        open = false;
    } else {
        return {};
    }
    std::size_t start = 0;
    if (open)
        while (deg[start] != 1) ++start;
    std::vector<std::size_t> order{start};
    std::vector<bool> used(n, false);
    used[start] = true;
    while (order.size() < n) {
        bool moved = false;
        for (std::size_t v : g.neighbors(order.back()))
            if (!used[v]) {
                used[v] = true;
                order.push_back(v);
                moved = true;
                break;
            }
        if (!moved) return {};
    }
    return order;
}

// Smallest vertex cover by increasing subset size; all nodes when large.
inline std::vector<std::size_t> vertex_cover(const Multigraph& g)
{
    const std::size_t n = g.node_count();
    const auto edges = g.edges();
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    if (n > 20 || edges.empty()) return edges.empty() ? std::vector<std::size_t>{} : all;
    for (std::size_t size = 1; size < n; ++size) {
        std::uint32_t mask = (1u << size) - 1;
        while (mask < (1u << n)) {
            bool covers = std::all_of(edges.begin(), edges.end(), [&](const Edge& e) {
                return ((mask >> e.u) & 1u) || ((mask >> e.v) & 1u);
            });
            if (covers) {
                std::vector<std::size_t> out;
                for (std::size_t u = 0; u < n; ++u)
                    if ((mask >> u) & 1u) out.push_back(u);
                return out;
            }
            // Gosper's hack: next mask with the same popcount
            const std::uint32_t c = mask & (~mask + 1);
            const std::uint32_t r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    return all;
}

template <class Scalar>
Scalar hom_chain(const Multigraph& g, const std::vector<std::size_t>& order, bool open, const MomentTable<Scalar>& t)
{
    const std::size_t q = t.size();
    const std::size_t n = order.size();
    const std::size_t links = open ? n - 1 : n;
    DenseMat<Scalar> acc = weighted_step(t, g.multiplicity(order[0], order[1]));
    for (std::size_t i = 1; i < links; ++i)
        acc = mat_mul(acc, weighted_step(t, g.multiplicity(order[i], order[(i + 1) % n])), q);
    Scalar total = 0;
    if (open) {
        // acc = A B1 A B2 ... A B_{n-1}; close with the last node weight
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < q; ++j) total += acc[i * q + j] * t.alpha(j);
    } else {
        for (std::size_t i = 0; i < q; ++i) total += acc[i * q + i];
    }
    return total;
}

// Sum over maps of the cover; every other node is summed out independently.
template <class Scalar>
Scalar hom_cover(const Multigraph& g, const MomentTable<Scalar>& t)
{
    const std::size_t n = g.node_count();
    const std::size_t q = t.size();
    const std::vector<std::size_t> cover = vertex_cover(g);
    std::vector<bool> in_cover(n, false);
    for (std::size_t u : cover) in_cover[u] = true;

    // cover nodes ordered so that each is adjacent to an earlier one if possible
    std::vector<std::size_t> order;
    {
        std::vector<bool> placed(n, false);
        for (std::size_t s : cover) {
            if (placed[s]) continue;
            std::vector<std::size_t> queue{s};
            placed[s] = true;
            for (std::size_t i = 0; i < queue.size(); ++i) {
                order.push_back(queue[i]);
                for (std::size_t v : g.neighbors(queue[i]))
                    if (in_cover[v] && !placed[v]) {
                        placed[v] = true;
                        queue.push_back(v);
                    }
            }
        }
    }
    std::vector<std::size_t> outside;
    for (std::size_t u = 0; u < n; ++u)
        if (!in_cover[u]) outside.push_back(u);

    // backward edges within the cover
    const std::size_t c = order.size();
    std::vector<std::size_t> position(n, SIZE_MAX);
    for (std::size_t i = 0; i < c; ++i) position[order[i]] = i;
    std::vector<std::vector<std::pair<std::size_t, unsigned>>> back(c);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (unsigned m = g.multiplicity(order[i], order[j]); m != 0) back[i].emplace_back(j, m);
    std::vector<std::vector<std::pair<std::size_t, unsigned>>> attach(outside.size());
    for (std::size_t o = 0; o < outside.size(); ++o)
        for (std::size_t v : g.neighbors(outside[o]))
            attach[o].emplace_back(position[v], g.multiplicity(outside[o], v));

    std::vector<std::size_t> phi(c, 0);
    std::vector<Scalar> partial(c + 1);
    partial[0] = Scalar(1);
    Scalar total = 0;
    Scalar factor, inner, term;

    // iterative DFS over assignments of the cover
    std::size_t level = 0;
    std::vector<std::size_t> next(c, 0);
    while (true) {
        if (level == c) {
            Scalar value = partial[c];
            for (std::size_t o = 0; o < outside.size() && !is_zero(value); ++o) {
                inner = 0;
                for (std::size_t w = 0; w < q; ++w) {
                    term = t.alpha(w);
                    for (auto [pos, m] : attach[o]) {
                        term *= t.moment(phi[pos], w, m);
                        if (is_zero(term)) break;
                    }
                    inner += term;
                }
                value *= inner;
            }
            total += value;
            if (c == 0) break;
            --level;
            continue;
        }
        if (next[level] == q) {
            next[level] = 0;
            if (level == 0) break;
            --level;
            continue;
        }
        const std::size_t x = next[level]++;
        phi[level] = x;
        factor = partial[level] * t.alpha(x);
        for (auto [j, m] : back[level]) {
            if (is_zero(factor)) break;
            factor *= t.moment(x, phi[j], m);
        }
        if (is_zero(factor)) continue;
        partial[level + 1] = factor;
        ++level;
    }
    return total;
}

template <class Scalar>
Scalar hom_connected(const Multigraph& g, const MomentTable<Scalar>& t)
{
    if (g.node_count() == 1) return t.total_weight();
    bool open = false;
    const auto order = chain_order(g, open);
    if (!order.empty()) return hom_chain(g, order, open, t);
    return hom_cover(g, t);
}

} // namespace detail

/**
 * hom(F, H) = sum over phi: V(F) -> V(H) of prod alpha_phi(i) times
 * prod over edge pairs of beta_{phi(i),phi(j),F_ij}. Multiplicative over
 * connected components; paths and cycles use transfer matrices.
 */
template <class Scalar>
Scalar hom(const Multigraph& f, const MomentTable<Scalar>& table)
{
    if (f.max_multiplicity() > table.max_multiplicity())
        throw std::invalid_argument("hom: moment table does not cover multiplicity "
                                    + std::to_string(f.max_multiplicity()));
    Scalar result = 1;
    for (const auto& comp : detail::components(f)) {
        result *= detail::hom_connected(detail::induced(f, comp), table);
        if (is_zero(result)) break;
    }
    return result;
}

template <class Scalar>
Scalar hom(const Multigraph& f, const WeightedGraph<Scalar>& h)
{
    return hom(f, make_moment_table(h, f.max_multiplicity()));
}

/// Density: hom divided by (sum alpha)^{|V(F)|}.
template <class Scalar>
Scalar t(const Multigraph& f, const MomentTable<Scalar>& table)
{
    const Scalar s = table.total_weight();
    if (is_zero(s)) throw std::invalid_argument("t: total node weight is zero");
    return hom(f, table) / scalar_pow(s, static_cast<unsigned>(f.node_count()));
}

template <class Scalar>
Scalar t(const Multigraph& f, const WeightedGraph<Scalar>& h)
{
    return t(f, make_moment_table(h, f.max_multiplicity()));
}

template <class Scalar>
Scalar t(const Multigraph& f, const StepGraphon<Scalar>& w)
{
    return hom(f, make_moment_table(w, f.max_multiplicity()));
}

/// hom for a randomly weighted graph: multiplicity m picks up E(B^m).
inline Rational hom_rw(const Multigraph& f, const RandomWeightedGraph& h)
{
    return hom(f, make_moment_table(h, f.max_multiplicity()));
}

inline Rational t_rw(const Multigraph& f, const RandomWeightedGraph& h)
{
    return t(f, make_moment_table(h, f.max_multiplicity()));
}

/// Sum of prod beta over injective maps; node weights do not enter.
template <class Scalar>
Scalar inj(const Multigraph& f, const WeightedGraph<Scalar>& h)
{
    const std::size_t m = f.node_count();
    const std::size_t q = h.size();
    if (m > q) return Scalar(0);
    if (m == 0) return Scalar(1);
    const MomentTable<Scalar> table = make_moment_table(h, std::max(1u, f.max_multiplicity()));

    // every pair adjacent: a zero diagonal already forces injectivity, and the
    // transfer-matrix path of hom applies for up to three nodes
    bool complete = m >= 2 && m <= 3;
    for (std::size_t i = 0; i < m && complete; ++i)
        for (std::size_t j = i + 1; j < m && complete; ++j) complete = f.multiplicity(i, j) != 0;
    if (complete) {
        std::vector<SquareMatrix<Scalar>> moments;
        for (unsigned k = 1; k <= table.max_multiplicity(); ++k) {
            SquareMatrix<Scalar> b = table.moments(k);
            for (std::size_t u = 0; u < q; ++u) b(u, u) = 0;
            moments.push_back(std::move(b));
        }
        return hom(f, MomentTable<Scalar>(std::vector<Scalar>(q, Scalar(1)), std::move(moments)));
    }

    std::vector<std::vector<std::pair<std::size_t, unsigned>>> back(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (unsigned mult = f.multiplicity(i, j); mult != 0) back[i].emplace_back(j, mult);

    std::vector<std::size_t> phi(m);
    std::vector<bool> used(q, false);
    std::vector<Scalar> partial(m);
    Scalar total = 0;
    Scalar term;

    // the last node is summed in a flat loop
    auto finish = [&](const Scalar& prefix) {
        Scalar sum = 0;
        for (std::size_t w = 0; w < q; ++w) {
            if (used[w]) continue;
            term = prefix;
            for (auto [j, mult] : back[m - 1]) term *= table.moment(w, phi[j], mult);
            sum += term;
        }
        total += sum;
    };
    auto recurse = [&](auto&& self, std::size_t level, const Scalar& prefix) -> void {
        if (level == m - 1) {
            finish(prefix);
            return;
        }
        for (std::size_t x = 0; x < q; ++x) {
            if (used[x]) continue;
            Scalar next = prefix;
            for (auto [j, mult] : back[level]) {
                next *= table.moment(x, phi[j], mult);
                if (is_zero(next)) break;
            }
            if (is_zero(next)) continue;
            phi[level] = x;
            used[x] = true;
            self(self, level + 1, next);
            used[x] = false;
        }
    };
    recurse(recurse, 0, Scalar(1));
    return total;
}

/// k-th elementary symmetric polynomial.
template <class Scalar>
Scalar elementary_symmetric(const std::vector<Scalar>& x, std::size_t k)
{
    std::vector<Scalar> e(k + 1, Scalar(0));
    e[0] = 1;
    for (const Scalar& v : x)
        for (std::size_t j = std::min(k, x.size()); j >= 1; --j) e[j] += e[j - 1] * v;
    return e[k];
}

/// inj / (m! sigma_m(alpha)), m = |V(F)|.
template <class Scalar>
Scalar t_inj(const Multigraph& f, const WeightedGraph<Scalar>& h)
{
    const std::size_t m = f.node_count();
    if (m > h.size()) return Scalar(0);
    const Scalar sigma = elementary_symmetric(h.alpha(), m);
    Scalar mfact = 1;
    for (std::size_t i = 2; i <= m; ++i) mfact *= Scalar(static_cast<long>(i));
    return inj(f, h) / (mfact * sigma);
}

} // namespace graphmom

#endif // GRAPHMOM_HOM_HPP
