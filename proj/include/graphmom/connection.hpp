#ifndef GRAPHMOM_CONNECTION_HPP
#define GRAPHMOM_CONNECTION_HPP

#include "canonical.hpp"
#include "exact_linalg.hpp"
#include "hom.hpp"
#include "multigraph.hpp"
#include "quantum.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphmom {

namespace detail {

// For a hom-type parameter, f(G_i G_j) splits over maps psi of the k labeled
// nodes: the unlabeled parts of G_i and G_j are summed out independently and
// only the labeled-labeled multiplicities combine.
template <class Scalar>
class LabeledFactorization {
public:
    LabeledFactorization(const typename GraphParameter<Scalar>::Target& target, std::size_t k,
                         const std::vector<Multigraph>& gens)
        : k_(k)
    {
        unsigned max_mult = 1;
        for (const auto& g : gens) max_mult = std::max(max_mult, g.max_multiplicity());
        table_ = target.moments(2 * max_mult);
        normalized_ = target.normalized;
        q_ = table_.size();
        maps_ = 1;
        for (std::size_t i = 0; i < k; ++i) maps_ *= q_;
        if (normalized_) {
            total_ = table_.total_weight();
            if (is_zero(total_)) throw std::invalid_argument("connection: total node weight is zero");
        }
        for (const auto& g : gens) {
            partial_.push_back(rooted_sums(g));
            std::vector<unsigned> lm;
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = a + 1; b < k; ++b) lm.push_back(g.multiplicity(a, b));
            labeled_mult_.push_back(std::move(lm));
            nodes_.push_back(g.node_count());
        }
        std::vector<std::size_t> psi(k, 0);
        for (std::size_t idx = 0; idx < maps_; ++idx) {
            decode(idx, psi);
            Scalar w = 1;
            for (std::size_t a = 0; a < k; ++a) w *= table_.alpha(psi[a]);
            psi_weight_.push_back(w);
            psi_.push_back(psi);
        }
    }

    Scalar entry(std::size_t i, std::size_t j) const
    {
        Scalar total = 0;
        Scalar term;
        for (std::size_t idx = 0; idx < maps_; ++idx) {
            if (is_zero(partial_[i][idx]) || is_zero(partial_[j][idx])) continue;
            term = psi_weight_[idx] * partial_[i][idx] * partial_[j][idx];
            std::size_t slot = 0;
            const auto& psi = psi_[idx];
            for (std::size_t a = 0; a < k_ && !is_zero(term); ++a)
                for (std::size_t b = a + 1; b < k_; ++b, ++slot) {
                    const unsigned m = labeled_mult_[i][slot] + labeled_mult_[j][slot];
                    if (m != 0) term *= table_.moment(psi[a], psi[b], m);
                }
            total += term;
        }
        if (normalized_) total /= scalar_pow(total_, static_cast<unsigned>(nodes_[i] + nodes_[j] - k_));
        return total;
    }

private:
    void decode(std::size_t idx, std::vector<std::size_t>& psi) const
    {
        for (std::size_t a = 0; a < k_; ++a) {
            psi[a] = idx % q_;
            idx /= q_;
        }
    }

    // For each psi: sum over extensions to the unlabeled nodes of their node
    // weights and every edge touching an unlabeled node.
    std::vector<Scalar> rooted_sums(const Multigraph& g) const
    {
        const std::size_t n = g.node_count();
        const std::size_t free = n - k_;
        std::vector<Scalar> out(maps_, Scalar(0));
        std::vector<std::size_t> phi(n, 0);
        std::size_t ext_count = 1;
        for (std::size_t i = 0; i < free; ++i) ext_count *= q_;
        std::vector<std::size_t> psi(k_);
        Scalar term;
        for (std::size_t idx = 0; idx < maps_; ++idx) {
            decode(idx, psi);
            for (std::size_t a = 0; a < k_; ++a) phi[a] = psi[a];
            Scalar sum = 0;
            for (std::size_t e = 0; e < ext_count; ++e) {
                std::size_t rem = e;
                for (std::size_t u = k_; u < n; ++u) {
                    phi[u] = rem % q_;
                    rem /= q_;
                }
                term = 1;
                for (std::size_t u = k_; u < n && !is_zero(term); ++u) {
                    term *= table_.alpha(phi[u]);
                    for (std::size_t v = 0; v < u && !is_zero(term); ++v)
                        if (unsigned m = g.multiplicity(u, v); m != 0) term *= table_.moment(phi[u], phi[v], m);
                }
                sum += term;
            }
            out[idx] = sum;
        }
        return out;
    }

    std::size_t k_;
    std::size_t q_ = 0;
    std::size_t maps_ = 1;
    bool normalized_ = false;
    Scalar total_ = 1;
    MomentTable<Scalar> table_;
    std::vector<std::vector<Scalar>> partial_;
    std::vector<std::vector<unsigned>> labeled_mult_;
    std::vector<std::size_t> nodes_;
    std::vector<Scalar> psi_weight_;
    std::vector<std::vector<std::size_t>> psi_;
};

inline void check_generators(std::size_t k, const std::vector<Multigraph>& gens)
{
    for (const auto& g : gens)
        if (g.label_count() != k)
            throw std::invalid_argument("connection: generator has " + std::to_string(g.label_count())
                                        + " labels, expected " + std::to_string(k));
}

} // namespace detail

/// Entries f(G_i G_j) evaluated on explicitly glued products.
template <class Scalar>
Matrix<Scalar> connection_submatrix_direct(const GraphParameter<Scalar>& f, std::size_t k,
                                           const std::vector<Multigraph>& gens)
{
    detail::check_generators(k, gens);
    const std::size_t n = gens.size();
    Matrix<Scalar> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = f(glue_product(gens[i], gens[j]));
    return m;
}

/**
 * Finite section of the connection matrix M(f, k) on the given k-labeled
 * generators. Target-backed parameters use the labeled factorization.
 */
template <class Scalar>
Matrix<Scalar> connection_submatrix(const GraphParameter<Scalar>& f, std::size_t k, const std::vector<Multigraph>& gens)
{
    if (!f.target()) return connection_submatrix_direct(f, k, gens);
    detail::check_generators(k, gens);
    const detail::LabeledFactorization<Scalar> fac(*f.target(), k, gens);
    const std::size_t n = gens.size();
    Matrix<Scalar> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = fac.entry(i, j);
    return m;
}

// ---------------------------------------------------------------------------
// The one-parameter families

namespace generators {

/// 2-labeled K_2^i, i = 0..s-1.
inline std::vector<Multigraph> fat_edges(std::size_t s)
{
    std::vector<Multigraph> out;
    for (std::size_t i = 0; i < s; ++i) out.push_back(family::fat_edge(static_cast<unsigned>(i), 2));
    return out;
}

/// 2-labeled paths of lengths 2..s+1 with labeled endpoints.
inline std::vector<Multigraph> labeled_paths(std::size_t s, unsigned fold = 1)
{
    std::vector<Multigraph> out;
    for (std::size_t a = 2; a < s + 2; ++a) out.push_back(family::labeled_path(a, fold));
    return out;
}

/// K_{i,2} with the two-node side labeled, i = 0..s-1.
inline std::vector<Multigraph> labeled_bipartite(std::size_t s)
{
    std::vector<Multigraph> out;
    for (std::size_t i = 0; i < s; ++i) out.push_back(family::complete_bipartite(2, i).with_labels(2));
    return out;
}

/**
 * k labeled nodes with every labeled pair of multiplicity 0..core_mult, and
 * labeled node i joined to its own unlabeled node by a multi-edge of
 * multiplicity 0..pendant_mult (0: no pendant node). Sorted by node count.
 */
inline std::vector<Multigraph> pendant_products(std::size_t k, unsigned core_mult, unsigned pendant_mult)
{
    const std::size_t pairs = k * (k - (k > 0 ? 1 : 0)) / 2;
    std::vector<unsigned> core(pairs, 0), pend(k, 0);
    std::vector<Multigraph> out;
    auto advance = [](std::vector<unsigned>& digits, unsigned top) {
        for (auto& d : digits) {
            if (++d <= top) return true;
            d = 0;
        }
        return false;
    };
    do {
        do {
            std::size_t extra = 0;
            for (unsigned p : pend) extra += p != 0;
            Multigraph g(k + extra, k);
            std::size_t idx = 0;
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = a + 1; b < k; ++b, ++idx)
                    if (core[idx] != 0) g.set_multiplicity(a, b, core[idx]);
            std::size_t next = k;
            for (std::size_t a = 0; a < k; ++a)
                if (pend[a] != 0) g.set_multiplicity(a, next++, pend[a]);
            out.push_back(std::move(g));
        } while (advance(pend, pendant_mult));
    } while (advance(core, core_mult));
    std::stable_sort(out.begin(), out.end(),
                     [](const Multigraph& a, const Multigraph& b) { return a.node_count() < b.node_count(); });
    return out;
}

} // namespace generators

/// E(f)_{ij} = f(K_2^{i+j}), i, j = 0..s-1.
template <class Scalar>
Matrix<Scalar> E_matrix(const GraphParameter<Scalar>& f, std::size_t s)
{
    if (s == 0) throw std::invalid_argument("E_matrix: size must be positive");
    Matrix<Scalar> m(s, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i; j < s; ++j) m(i, j) = m(j, i) = f(family::fat_edge(static_cast<unsigned>(i + j)));
    return m;
}

/// Rows and columns indexed by path lengths a, b = 2..s+1; entry f(C_{a+b}).
template <class Scalar>
Matrix<Scalar> C_matrix(const GraphParameter<Scalar>& f, std::size_t s)
{
    if (s == 0) throw std::invalid_argument("C_matrix: size must be positive");
    Matrix<Scalar> m(s, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i; j < s; ++j) m(i, j) = m(j, i) = f(family::cycle(i + j + 4));
    return m;
}

/// B(f)_{ij} = f(K_{i+j,2}), i, j = 0..s-1.
template <class Scalar>
Matrix<Scalar> B_matrix(const GraphParameter<Scalar>& f, std::size_t s)
{
    if (s == 0) throw std::invalid_argument("B_matrix: size must be positive");
    Matrix<Scalar> m(s, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i; j < s; ++j) m(i, j) = m(j, i) = f(family::complete_bipartite(i + j, 2));
    return m;
}

// ---------------------------------------------------------------------------
// Rank saturation

struct DimStep {
    std::size_t nodes;      // generators with at most this many nodes
    std::size_t generators; // generators considered so far
    std::size_t rank;
};

struct DimEstimate {
    std::size_t k = 0;
    std::size_t node_budget = 0;
    unsigned mult_budget = 0;
    std::vector<DimStep> steps;
    std::size_t value = 0;       // certified lower bound on dim(Q_k / f)
    std::vector<Multigraph> basis; // generators whose Gram block is nonsingular
};

/**
 * Greedy growth of a nonsingular principal block of the connection matrix,
 * adding generators in the given order (sorted by node count). The block
 * size never exceeds the rank, so every reported value is a lower bound on
 * dim(Q_k/f); for a positive semidefinite M(f, k) it equals the rank of the
 * section spanned by the generators.
 */
inline DimEstimate estimate_dim_over(const GraphParameter<Rational>& f, std::size_t k, const std::vector<Multigraph>& gens)
{
    detail::check_generators(k, gens);
    DimEstimate est;
    est.k = k;
    for (const Multigraph& g : gens) {
        est.node_budget = std::max(est.node_budget, g.node_count());
        est.mult_budget = std::max(est.mult_budget, g.max_multiplicity());
    }

    std::optional<detail::LabeledFactorization<Rational>> fac;
    if (f.target()) fac.emplace(*f.target(), k, gens);
    auto entry = [&](std::size_t i, std::size_t j) -> Rational {
        return fac ? fac->entry(i, j) : f(glue_product(gens[i], gens[j]));
    };

    // incremental LDL^T of the selected block
    std::vector<std::size_t> chosen;
    std::vector<std::vector<Rational>> lower; // lower[t][s] = L_{t,s}, s < t
    std::vector<Rational> diag;
    std::size_t next_level = k;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        while (gens[g].node_count() > next_level) {
            est.steps.push_back({next_level, g, chosen.size()});
            ++next_level;
        }
        std::vector<Rational> r(chosen.size());
        for (std::size_t t = 0; t < chosen.size(); ++t) r[t] = entry(chosen[t], g);
        // forward solve L y = r, then schur = G_gg - sum y_t^2 / d_t
        std::vector<Rational> y(chosen.size());
        Rational schur = entry(g, g);
        for (std::size_t t = 0; t < chosen.size(); ++t) {
            y[t] = r[t];
            for (std::size_t s = 0; s < t; ++s)
                if (sgn(lower[t][s]) != 0) y[t] -= lower[t][s] * y[s];
            schur -= y[t] * y[t] / diag[t];
        }
        if (sgn(schur) == 0) continue;
        std::vector<Rational> row(chosen.size());
        for (std::size_t t = 0; t < chosen.size(); ++t) row[t] = y[t] / diag[t];
        lower.push_back(std::move(row));
        diag.push_back(schur);
        chosen.push_back(g);
    }
    while (next_level <= est.node_budget) {
        est.steps.push_back({next_level, gens.size(), chosen.size()});
        ++next_level;
    }
    est.value = chosen.size();
    for (std::size_t c : chosen) est.basis.push_back(gens[c]);
    return est;
}

/// estimate_dim_over all k-labeled multigraphs within the budgets.
inline DimEstimate estimate_dim(const GraphParameter<Rational>& f, std::size_t k, std::size_t node_budget,
                                unsigned mult_budget, std::size_t guard = default_node_guard)
{
    if (node_budget > guard)
        throw std::length_error("estimate_dim: node budget " + std::to_string(node_budget) + " exceeds guard "
                                + std::to_string(guard));
    DimEstimate est = estimate_dim_over(f, k, enumerate_k_labeled(k, node_budget, mult_budget, guard));
    est.node_budget = node_budget;
    est.mult_budget = mult_budget;
    return est;
}

} // namespace graphmom

#endif // GRAPHMOM_CONNECTION_HPP
