#ifndef GRAPHMOM_CANONICAL_HPP
#define GRAPHMOM_CANONICAL_HPP

#include "multigraph.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphmom {

inline constexpr std::size_t default_node_guard = 10;

enum class LabelMode { fixed, free };

/**
 * Total-order key identifying a multigraph up to isomorphism. In `fixed`
 * mode the isomorphism must fix every labeled node; in `free` mode labels
 * are ignored.
 */
struct CanonicalCode {
    LabelMode mode = LabelMode::fixed;
    std::vector<unsigned> key; // node count, label count, then the upper triangle

    friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
    friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;

    std::string to_string() const
    {
        std::string s = mode == LabelMode::fixed ? "F" : "U";
        for (unsigned x : key) s += ":" + std::to_string(x);
        return s;
    }
};

namespace detail {

// Colour refinement on the weighted adjacency. Colours are ranks of sorted
// signatures, so they are isomorphism invariant.
inline std::vector<unsigned> refine_colours(const Multigraph& g, std::vector<unsigned> colour)
{
    const std::size_t n = g.node_count();
    for (std::size_t round = 0; round < n; ++round) {
        std::vector<std::vector<unsigned>> sig(n);
        for (std::size_t u = 0; u < n; ++u) {
            std::vector<std::pair<unsigned, unsigned>> nb;
            for (std::size_t v = 0; v < n; ++v)
                if (unsigned m = g.multiplicity(u, v); m != 0) nb.emplace_back(colour[v], m);
            std::sort(nb.begin(), nb.end());
            sig[u].push_back(colour[u]);
            for (auto [c, m] : nb) {
                sig[u].push_back(c);
                sig[u].push_back(m);
            }
        }
        std::vector<std::vector<unsigned>> distinct(sig.begin(), sig.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::vector<unsigned> next(n);
        for (std::size_t u = 0; u < n; ++u)
            next[u] = static_cast<unsigned>(std::lower_bound(distinct.begin(), distinct.end(), sig[u]) - distinct.begin());
        const auto count = [](const std::vector<unsigned>& c) {
            return std::set<unsigned>(c.begin(), c.end()).size();
        };
        const bool stable = count(next) == count(colour);
        colour = std::move(next);
        if (stable) break;
    }
    return colour;
}

} // namespace detail

/**
 * Canonical code by exhaustive search over the node orderings compatible
 * with a colour refinement. Throws std::length_error beyond `guard` nodes.
 */
inline CanonicalCode canonical_code(const Multigraph& g, LabelMode mode = LabelMode::fixed,
                                    std::size_t guard = default_node_guard)
{
    const std::size_t n = g.node_count();
    if (n > guard)
        throw std::length_error("canonical_code: " + std::to_string(n) + " nodes exceeds guard "
                                + std::to_string(guard));
    const std::size_t k = mode == LabelMode::fixed ? g.label_count() : 0;

    // labeled nodes get private colours 0..k-1
    std::vector<unsigned> colour(n, static_cast<unsigned>(k));
    for (std::size_t i = 0; i < k; ++i) colour[i] = static_cast<unsigned>(i);
    colour = detail::refine_colours(g, colour);

    // order nodes by colour; permute freely within each colour class
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return colour[a] < colour[b]; });
    std::vector<std::pair<std::size_t, std::size_t>> classes; // [begin, end) into order
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && colour[order[j]] == colour[order[i]]) ++j;
        classes.emplace_back(i, j);
        i = j;
    }

    CanonicalCode best{mode, {}};
    std::vector<unsigned> key;
    bool first = true;
    for (;;) {
        key.clear();
        key.push_back(static_cast<unsigned>(n));
        key.push_back(static_cast<unsigned>(mode == LabelMode::fixed ? g.label_count() : 0));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) key.push_back(g.multiplicity(order[a], order[b]));
        if (first || key < best.key) {
            best.key = key;
            first = false;
        }
        // odometer over per-class permutations
        std::size_t c = 0;
        for (; c < classes.size(); ++c) {
            auto [lo, hi] = classes[c];
            if (std::next_permutation(order.begin() + static_cast<std::ptrdiff_t>(lo),
                                      order.begin() + static_cast<std::ptrdiff_t>(hi)))
                break;
        }
        if (c == classes.size()) break;
    }
    return best;
}

inline bool isomorphic(const Multigraph& a, const Multigraph& b, LabelMode mode = LabelMode::fixed)
{
    if (a.node_count() != b.node_count()) return false;
    if (mode == LabelMode::fixed && a.label_count() != b.label_count()) return false;
    return canonical_code(a, mode) == canonical_code(b, mode);
}

/// Rebuilds the representative multigraph encoded by a code.
inline Multigraph decode(const CanonicalCode& code)
{
    if (code.key.size() < 2) throw std::invalid_argument("decode: malformed canonical code");
    const std::size_t n = code.key[0];
    Multigraph g(n, code.key[1]);
    std::size_t idx = 2;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) g.set_multiplicity(a, b, code.key.at(idx++));
    return g;
}

inline constexpr double default_enumeration_budget = 5e6;

/**
 * One representative per labels-fixed isomorphism class of k-labeled
 * multigraphs with at most `max_nodes` nodes and multiplicities at most
 * `max_multiplicity`. Sorted by node count, then by canonical code.
 */
inline std::vector<Multigraph> enumerate_k_labeled(std::size_t k, std::size_t max_nodes, unsigned max_multiplicity,
                                                   std::size_t guard = default_node_guard,
                                                   double budget = default_enumeration_budget)
{
    if (max_nodes > guard)
        throw std::length_error("enumerate_k_labeled: " + std::to_string(max_nodes) + " nodes exceeds guard "
                                + std::to_string(guard));
    std::vector<Multigraph> out;
    for (std::size_t n = k; n <= max_nodes; ++n) {
        const std::size_t pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
        double work = 1;
        for (std::size_t i = 0; i < pairs; ++i) work *= max_multiplicity + 1.0;
        if (work > budget)
            throw std::length_error("enumerate_k_labeled: " + std::to_string(n) + " nodes with multiplicity "
                                    + std::to_string(max_multiplicity) + " exceeds the enumeration budget");
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) slots.emplace_back(a, b);

        std::set<CanonicalCode> seen;
        std::vector<unsigned> digits(pairs, 0);
        for (;;) {
            Multigraph g(n, k);
            for (std::size_t i = 0; i < pairs; ++i)
                if (digits[i] != 0) g.set_multiplicity(slots[i].first, slots[i].second, digits[i]);
            seen.insert(canonical_code(g, LabelMode::fixed, guard));
            std::size_t i = 0;
            for (; i < pairs; ++i) {
                if (digits[i] < max_multiplicity) {
                    ++digits[i];
                    break;
                }
                digits[i] = 0;
            }
            if (i == pairs) break;
        }
        for (const CanonicalCode& c : seen) out.push_back(decode(c));
    }
    return out;
}

} // namespace graphmom

#endif // GRAPHMOM_CANONICAL_HPP
