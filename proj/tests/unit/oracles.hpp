// Brute-force references used by the unit tests. Deliberately naive: every
// function enumerates all maps or permutations and shares no code path with
// the library beyond the value types.
#pragma once

#include <graphmom/multigraph.hpp>
#include <graphmom/rational.hpp>
#include <graphmom/targets.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using graphmom::Multigraph;
using graphmom::Rational;

/// p/q in lowest terms (mpq_class(p, q) does not reduce).
inline Rational frac(long p, long q)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline Rational power(const Rational& x, unsigned m)
{
    Rational r = 1;
    for (unsigned i = 0; i < m; ++i) r *= x;
    return r;
}

/// E(B^m) straight from the atoms.
inline Rational moment(const graphmom::Distribution& d, unsigned m)
{
    Rational s = 0;
    for (const auto& a : d.atoms()) s += a.probability * power(a.value, m);
    return s;
}

/// Sum over all maps V(F) -> V(H) of prod alpha * prod cell(u,v,m).
template <class Cell>
Rational sum_over_maps(const Multigraph& f, const std::vector<Rational>& alpha, Cell cell, bool injective = false)
{
    const std::size_t m = f.node_count(), q = alpha.size();
    if (m == 0) return 1;
    if (q == 0) return 0;
    std::vector<std::size_t> phi(m, 0);
    Rational total = 0;
    for (;;) {
        bool ok = true;
        if (injective) {
            std::vector<std::size_t> s = phi;
            std::sort(s.begin(), s.end());
            ok = std::adjacent_find(s.begin(), s.end()) == s.end();
        }
        if (ok) {
            Rational term = 1;
            for (std::size_t i = 0; i < m; ++i) term *= alpha[phi[i]];
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j)
                    if (unsigned mult = f.multiplicity(i, j)) term *= cell(phi[i], phi[j], mult);
            total += term;
        }
        std::size_t i = 0;
        for (; i < m; ++i) {
            if (++phi[i] < q) break;
            phi[i] = 0;
        }
        if (i == m) break;
    }
    return total;
}

inline Rational hom(const Multigraph& f, const graphmom::WeightedGraph<Rational>& h)
{
    return sum_over_maps(f, h.alpha(), [&](std::size_t u, std::size_t v, unsigned m) { return power(h.beta(u, v), m); });
}

inline Rational hom_rw(const Multigraph& f, const graphmom::RandomWeightedGraph& h)
{
    return sum_over_maps(f, h.alpha(), [&](std::size_t u, std::size_t v, unsigned m) { return moment(h.dist(u, v), m); });
}

/// Injective maps, node weights ignored.
inline Rational inj(const Multigraph& f, const graphmom::WeightedGraph<Rational>& h)
{
    std::vector<Rational> ones(h.size(), Rational(1));
    return sum_over_maps(
        f, ones, [&](std::size_t u, std::size_t v, unsigned m) { return power(h.beta(u, v), m); }, true);
}

/// Isomorphism by trying every permutation of the unlabeled nodes.
inline bool isomorphic(const Multigraph& a, const Multigraph& b)
{
    if (a.node_count() != b.node_count() || a.label_count() != b.label_count()) return false;
    const std::size_t n = a.node_count(), k = a.label_count();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool same = true;
        for (std::size_t i = 0; i < n && same; ++i)
            for (std::size_t j = i + 1; j < n && same; ++j) same = a.multiplicity(i, j) == b.multiplicity(perm[i], perm[j]);
        if (same) return true;
    } while (std::next_permutation(perm.begin() + static_cast<long>(k), perm.end()));
    return false;
}

inline Multigraph random_multigraph(std::mt19937_64& rng, std::size_t n, std::size_t k, unsigned max_mult)
{
    Multigraph g(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (unsigned m = static_cast<unsigned>(rng() % (max_mult + 1))) g.set_multiplicity(i, j, m);
    return g;
}

/// Same graph with unlabeled nodes permuted at random.
inline Multigraph shuffled(std::mt19937_64& rng, const Multigraph& g)
{
    std::vector<std::size_t> perm(g.node_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + static_cast<long>(g.label_count()), perm.end(), rng);
    Multigraph out(g.node_count(), g.label_count());
    for (const auto& e : g.edges()) out.set_multiplicity(perm[e.u], perm[e.v], e.multiplicity);
    return out;
}

/// Determinant by Laplace expansion (tiny matrices only).
inline Rational det(const std::vector<std::vector<Rational>>& m)
{
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Rational s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (sgn(m[0][c]) == 0) continue;
        std::vector<std::vector<Rational>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Rational> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[r][j]);
            minor.push_back(row);
        }
        const Rational d = m[0][c] * det(minor);
        s += c % 2 == 0 ? d : Rational(-d);
    }
    return s;
}

/// Rank as the largest size of a nonzero minor; rows/cols <= 6.
inline std::size_t rank_by_minors(const std::vector<std::vector<Rational>>& m)
{
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t r = std::min(rows, cols); r > 0; --r) {
        std::vector<bool> rs(rows, false), cs(cols, false);
        std::fill(rs.begin(), rs.begin() + static_cast<long>(r), true);
        do {
            std::fill(cs.begin(), cs.end(), false);
            std::fill(cs.begin(), cs.begin() + static_cast<long>(r), true);
            do {
                std::vector<std::vector<Rational>> sub;
                for (std::size_t i = 0; i < rows; ++i) {
                    if (!rs[i]) continue;
                    std::vector<Rational> row;
                    for (std::size_t j = 0; j < cols; ++j)
                        if (cs[j]) row.push_back(m[i][j]);
                    sub.push_back(row);
                }
                if (sgn(det(sub)) != 0) return r;
            } while (std::prev_permutation(cs.begin(), cs.end()));
        } while (std::prev_permutation(rs.begin(), rs.end()));
    }
    return 0;
}

/// PSD iff every principal minor is nonnegative (Sylvester, all minors).
inline bool psd_by_minors(const std::vector<std::vector<Rational>>& m)
{
    const std::size_t n = m.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::vector<Rational>> sub;
        for (std::size_t i = 0; i < n; ++i) {
            if (!((mask >> i) & 1u)) continue;
            std::vector<Rational> row;
            for (std::size_t j = 0; j < n; ++j)
                if ((mask >> j) & 1u) row.push_back(m[i][j]);
            sub.push_back(row);
        }
        if (sgn(det(sub)) < 0) return false;
    }
    return true;
}

} // namespace oracle
