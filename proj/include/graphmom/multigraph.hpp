#ifndef GRAPHMOM_MULTIGRAPH_HPP
#define GRAPHMOM_MULTIGRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphmom {

struct Edge {
    std::size_t u;
    std::size_t v;
    unsigned multiplicity;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * Finite loopless multigraph whose first `label_count` nodes carry the
 * labels 1..k. Multiplicities are stored densely; an absent pair has
 * multiplicity 0.
 */
class Multigraph {
public:
    Multigraph() = default;

    explicit Multigraph(std::size_t nodes, std::size_t labels = 0)
        : nodes_(nodes), labels_(labels), mult_(nodes * nodes, 0)
    {
        if (labels > nodes)
            throw std::invalid_argument("label count " + std::to_string(labels) + " exceeds node count "
                                        + std::to_string(nodes));
    }

    std::size_t node_count() const noexcept { return nodes_; }
    std::size_t label_count() const noexcept { return labels_; }

    unsigned multiplicity(std::size_t u, std::size_t v) const
    {
        check_node(u);
        check_node(v);
        return mult_[u * nodes_ + v];
    }

    void set_multiplicity(std::size_t u, std::size_t v, unsigned m)
    {
        check_node(u);
        check_node(v);
        if (u == v) {
            if (m == 0) return;
            throw std::invalid_argument("loop edge at node " + std::to_string(u) + " is not allowed");
        }
        mult_[u * nodes_ + v] = m;
        mult_[v * nodes_ + u] = m;
    }

    void add_edge(std::size_t u, std::size_t v, unsigned m = 1)
    {
        set_multiplicity(u, v, multiplicity(u, v) + m);
    }

    /// Edges with u < v, ordered lexicographically.
    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        for (std::size_t u = 0; u < nodes_; ++u)
            for (std::size_t v = u + 1; v < nodes_; ++v)
                if (unsigned m = mult_[u * nodes_ + v]; m != 0) out.push_back({u, v, m});
        return out;
    }

    /// Number of edge copies, counting multiplicity.
    std::size_t edge_count() const
    {
        std::size_t total = 0;
        for (std::size_t u = 0; u < nodes_; ++u)
            for (std::size_t v = u + 1; v < nodes_; ++v) total += mult_[u * nodes_ + v];
        return total;
    }

    unsigned max_multiplicity() const
    {
        unsigned m = 0;
        for (unsigned x : mult_) m = std::max(m, x);
        return m;
    }

    bool is_simple() const
    {
        return std::all_of(mult_.begin(), mult_.end(), [](unsigned m) { return m <= 1; });
    }

    /// Degree counting edge copies.
    std::size_t degree(std::size_t u) const
    {
        check_node(u);
        std::size_t d = 0;
        for (std::size_t v = 0; v < nodes_; ++v) d += mult_[u * nodes_ + v];
        return d;
    }

    std::vector<std::size_t> neighbors(std::size_t u) const
    {
        check_node(u);
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < nodes_; ++v)
            if (mult_[u * nodes_ + v] != 0) out.push_back(v);
        return out;
    }

    /// Same graph with the first `k` nodes labeled.
    Multigraph with_labels(std::size_t k) const
    {
        Multigraph g = *this;
        if (k > nodes_) throw std::invalid_argument("label count exceeds node count");
        g.labels_ = k;
        return g;
    }

    /// F' in the coin-graph discussion: every multiplicity clamped to 1.
    Multigraph simplified() const
    {
        Multigraph g = *this;
        for (unsigned& m : g.mult_) m = std::min(m, 1u);
        return g;
    }

    /// Relabels nodes: node u of this graph becomes node perm[u].
    Multigraph permuted(const std::vector<std::size_t>& perm) const
    {
        if (perm.size() != nodes_) throw std::invalid_argument("permutation size mismatch");
        Multigraph g(nodes_, labels_);
        for (const Edge& e : edges()) g.set_multiplicity(perm[e.u], perm[e.v], e.multiplicity);
        return g;
    }

    friend bool operator==(const Multigraph&, const Multigraph&) = default;

private:
    void check_node(std::size_t u) const
    {
        if (u >= nodes_) throw std::out_of_range("node " + std::to_string(u) + " out of range");
    }

    std::size_t nodes_ = 0;
    std::size_t labels_ = 0;
    std::vector<unsigned> mult_;
};

// ---------------------------------------------------------------------------
// Products

/// Disjoint union followed by identification of equally labeled nodes;
/// multiplicities between labeled nodes add.
inline Multigraph glue_product(const Multigraph& a, const Multigraph& b)
{
    const std::size_t k = a.label_count();
    if (b.label_count() != k)
        throw std::invalid_argument("glue_product: label counts differ (" + std::to_string(k) + " vs "
                                    + std::to_string(b.label_count()) + ")");
    const std::size_t na = a.node_count();
    Multigraph g(na + b.node_count() - k, k);
    for (const Edge& e : a.edges()) g.add_edge(e.u, e.v, e.multiplicity);
    auto map_b = [&](std::size_t u) { return u < k ? u : u + na - k; };
    for (const Edge& e : b.edges()) g.add_edge(map_b(e.u), map_b(e.v), e.multiplicity);
    return g;
}

/// Gluing product of simple graphs with parallel edges suppressed.
inline Multigraph simple_glue_product(const Multigraph& a, const Multigraph& b)
{
    if (!a.is_simple() || !b.is_simple())
        throw std::invalid_argument("simple_glue_product: inputs must be simple graphs");
    return glue_product(a, b).simplified();
}

inline Multigraph disjoint_union(const Multigraph& a, const Multigraph& b)
{
    const std::size_t na = a.node_count();
    Multigraph g(na + b.node_count(), 0);
    for (const Edge& e : a.edges()) g.set_multiplicity(e.u, e.v, e.multiplicity);
    for (const Edge& e : b.edges()) g.set_multiplicity(e.u + na, e.v + na, e.multiplicity);
    return g;
}

/// Replaces each edge copy by a path of length 2 through a fresh node.
inline Multigraph subdivide(const Multigraph& f)
{
    Multigraph g(f.node_count() + f.edge_count(), f.label_count());
    std::size_t next = f.node_count();
    for (const Edge& e : f.edges())
        for (unsigned c = 0; c < e.multiplicity; ++c) {
            g.add_edge(e.u, next);
            g.add_edge(next, e.v);
            ++next;
        }
    return g;
}

// ---------------------------------------------------------------------------
// Standard families

namespace family {

inline Multigraph empty() { return Multigraph(0, 0); }

inline Multigraph edgeless(std::size_t n, std::size_t labels = 0) { return Multigraph(n, labels); }

inline Multigraph single_node() { return Multigraph(1, 0); }

/// K_2^n: two nodes joined by n parallel edges.
inline Multigraph fat_edge(unsigned n, std::size_t labels = 0)
{
    Multigraph g(2, labels);
    g.set_multiplicity(0, 1, n);
    return g;
}

/// C_n for n >= 2; C_2 is the double edge.
inline Multigraph cycle(std::size_t n)
{
    if (n < 2) throw std::invalid_argument("cycle C_" + std::to_string(n) + " would need a loop");
    Multigraph g(n);
    for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

/// Path on n nodes (n - 1 edges).
inline Multigraph path(std::size_t nodes)
{
    Multigraph g(nodes);
    for (std::size_t i = 0; i + 1 < nodes; ++i) g.add_edge(i, i + 1);
    return g;
}

/// Path of `length` edges, each `fold`-fold, with its two endpoints as
/// labeled nodes 0 and 1. Gluing two of these gives a cycle.
inline Multigraph labeled_path(std::size_t length, unsigned fold = 1)
{
    if (length == 0) throw std::invalid_argument("labeled path needs at least one edge");
    Multigraph g(length + 1, 2);
    // node order: 0 = start, 1 = end, interior nodes 2..length
    std::vector<std::size_t> order;
    order.push_back(0);
    for (std::size_t i = 2; i <= length; ++i) order.push_back(i);
    order.push_back(1);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) g.add_edge(order[i], order[i + 1], fold);
    return g;
}

inline Multigraph complete(std::size_t n)
{
    Multigraph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

/// K_{a,b}: nodes 0..a-1 form the first class, a..a+b-1 the second.
inline Multigraph complete_bipartite(std::size_t a, std::size_t b)
{
    Multigraph g(a + b);
    for (std::size_t u = 0; u < a; ++u)
        for (std::size_t v = 0; v < b; ++v) g.add_edge(u, a + v);
    return g;
}

/// The generator z_{i,j} of the n-labeled semigroup (0-based i, j).
inline Multigraph labeled_edge(std::size_t n, std::size_t i, std::size_t j, unsigned m = 1)
{
    Multigraph g(n, n);
    g.set_multiplicity(i, j, m);
    return g;
}

} // namespace family

} // namespace graphmom

#endif // GRAPHMOM_MULTIGRAPH_HPP
