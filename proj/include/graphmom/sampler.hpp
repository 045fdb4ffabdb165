#ifndef GRAPHMOM_SAMPLER_HPP
#define GRAPHMOM_SAMPLER_HPP

#include "hom.hpp"
#include "multigraph.hpp"
#include "rational.hpp"
#include "targets.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <type_traits>
#include <stdexcept>
#include <vector>

namespace graphmom {

// Random numbers: std::mt19937_64 (fully specified by the standard, hence
// identical on every platform). Substream s of seed x is seeded with
// splitmix64(x ^ splitmix64(s)). Reals are (draw >> 11) * 2^-53, and a
// discrete choice takes the first index whose cumulative weight exceeds a
// real draw scaled by the total. No std::*_distribution is used, since those
// are implementation-defined.

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

inline Rng substream(std::uint64_t seed, std::uint64_t stream) { return Rng(splitmix64(seed ^ splitmix64(stream))); }

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t pick(Rng& rng, const std::vector<double>& weights)
{
    double total = 0;
    for (double w : weights) total += w;
    const double u = uniform01(rng) * total;
    double acc = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    // rounding: last index of positive weight
    for (std::size_t i = weights.size(); i-- > 0;)
        if (weights[i] > 0) return i;
    throw std::invalid_argument("pick: all weights are zero");
}

struct SampleConfig {
    std::uint64_t seed = 0;
    std::size_t n = 1;
    std::size_t replicates = 1;

    void validate() const
    {
        if (n < 1) throw std::invalid_argument("sample config: n must be at least 1");
        if (replicates < 1) throw std::invalid_argument("sample config: replicates must be at least 1");
    }
};

namespace detail {

template <class Scalar>
Scalar inverse_count(std::size_t n)
{
    if constexpr (is_exact_v<Scalar>)
        return Rational(1, static_cast<unsigned long>(n));
    else
        return 1.0 / static_cast<double>(n);
}

template <class Out, class Scalar>
WeightedGraph<Out> sample_step(const StepGraphon<Scalar>& w, std::size_t n, Rng& rng)
{
    std::vector<double> mu;
    for (const Scalar& m : w.measures()) mu.push_back(to_double(m));
    std::vector<std::size_t> x(n);
    for (auto& xi : x) xi = pick(rng, mu);
    SquareMatrix<Out> beta(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Out v;
            if constexpr (std::is_same_v<Out, Scalar>)
                v = w.value(x[i], x[j]);
            else
                v = to_double(w.value(x[i], x[j]));
            beta(i, j) = beta(j, i) = v;
        }
    return WeightedGraph<Out>(std::vector<Out>(n, inverse_count<Out>(n)), std::move(beta));
}

template <class Out>
WeightedGraph<Out> sample_random(const RandomWeightedGraph& h, std::size_t n, Rng& rng)
{
    std::vector<double> alpha;
    for (const Rational& a : h.alpha()) alpha.push_back(a.get_d());
    std::vector<std::size_t> x(n);
    for (auto& xi : x) xi = pick(rng, alpha);
    SquareMatrix<Out> beta(n);
    std::vector<double> probs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const auto& atoms = h.dist(x[i], x[j]).atoms();
            probs.clear();
            for (const auto& a : atoms) probs.push_back(a.probability.get_d());
            const Rational& v = atoms[pick(rng, probs)].value;
            if constexpr (is_exact_v<Out>)
                beta(i, j) = beta(j, i) = v;
            else
                beta(i, j) = beta(j, i) = v.get_d();
        }
    return WeightedGraph<Out>(std::vector<Out>(n, inverse_count<Out>(n)), std::move(beta));
}

} // namespace detail

/// Z_n for a step graphon: node weights 1/n, edge (i, j) weight W(x_i, x_j).
template <class Scalar>
WeightedGraph<Scalar> sample_zn(const StepGraphon<Scalar>& w, const SampleConfig& cfg, std::uint64_t replicate = 0)
{
    cfg.validate();
    Rng rng = substream(cfg.seed, replicate);
    return detail::sample_step<Scalar>(w, cfg.n, rng);
}

/// Z_n for a randomly weighted graph; every edge weight is drawn from its cell.
inline WeightedGraph<Rational> sample_zn(const RandomWeightedGraph& h, const SampleConfig& cfg, std::uint64_t replicate = 0)
{
    cfg.validate();
    Rng rng = substream(cfg.seed, replicate);
    return detail::sample_random<Rational>(normalize(h), cfg.n, rng);
}

/// The same graph with every node weight set to 1.
template <class Scalar>
WeightedGraph<Scalar> unit_rescaled(const WeightedGraph<Scalar>& z)
{
    for (std::size_t i = 1; i < z.size(); ++i)
        if (z.alpha(i) != z.alpha(0)) throw std::invalid_argument("unit_rescaled: node weights are not all equal");
    return unit_weighted(z.beta());
}

template <class Scalar>
struct TavolsagCheck {
    Scalar lhs;
    Scalar bound;
    bool pass = false;
};

/**
 * |t(F, Z) - t_inj(F, Z)| <= 2 C(m, 2) d^{|E(F)|} / n for Z with equal node
 * weights and edge weights in [-d, d]; |E(F)| counts multiplicities.
 */
template <class Scalar>
TavolsagCheck<Scalar> verify_tavolsag(const Multigraph& f, const WeightedGraph<Scalar>& z, const Scalar& d)
{
    const WeightedGraph<Scalar> unit = unit_rescaled(z);
    const std::size_t n = unit.size();
    if (n == 0) throw std::invalid_argument("verify_tavolsag: empty weighted graph");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (scalar_abs(unit.beta(i, j)) > d) throw std::invalid_argument("verify_tavolsag: edge weight exceeds d");
    const std::size_t m = f.node_count();
    TavolsagCheck<Scalar> out;
    out.lhs = scalar_abs(Scalar(t(f, unit) - t_inj(f, unit)));
    out.bound = Scalar(static_cast<long>(m * (m - (m > 0 ? 1 : 0)))) * scalar_pow(d, static_cast<unsigned>(f.edge_count()))
                / Scalar(static_cast<long>(n));
    out.pass = out.lhs <= out.bound;
    return out;
}

struct ConvergenceRow {
    std::size_t n = 0;
    double mean = 0;
    double variance = 0; // unbiased sample variance
    double bound = 0;    // 6 m^2 / n
    double expected = 0; // t(F, target)
    bool variance_ok = false;
    bool mean_ok = false;
};

inline constexpr double convergence_slack = 3.0;

namespace detail {

template <class Target>
double exact_limit(const Multigraph& f, const Target& target)
{
    if constexpr (std::is_same_v<Target, RandomWeightedGraph>)
        return t_rw(f, target).get_d();
    else
        return to_double(t(f, target));
}

} // namespace detail

/**
 * Mean and variance of t_inj(F, Z_n) over independent replicates. Replicate r
 * at position i of `sizes` uses substream (i << 32) | r of `seed`.
 */
template <class Target>
std::vector<ConvergenceRow> convergence_experiment(const Multigraph& f, const Target& target, const std::vector<std::size_t>& sizes,
                                                   std::size_t replicates, std::uint64_t seed)
{
    if (replicates < 2) throw std::invalid_argument("convergence_experiment: need at least two replicates");
    const double expected = detail::exact_limit(f, target);
    const double m = static_cast<double>(f.node_count());
    std::vector<ConvergenceRow> rows;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::size_t n = sizes[i];
        if (n < 1) throw std::invalid_argument("convergence_experiment: n must be at least 1");
        std::vector<double> values;
        values.reserve(replicates);
        for (std::size_t r = 0; r < replicates; ++r) {
            Rng rng = substream(seed, (static_cast<std::uint64_t>(i) << 32) | r);
            WeightedGraph<double> z;
            if constexpr (std::is_same_v<Target, RandomWeightedGraph>)
                z = detail::sample_random<double>(normalize(target), n, rng);
            else
                z = detail::sample_step<double>(target, n, rng);
            values.push_back(t_inj(f, unit_rescaled(z)));
        }
        ConvergenceRow row;
        row.n = n;
        for (double v : values) row.mean += v;
        row.mean /= static_cast<double>(replicates);
        for (double v : values) row.variance += (v - row.mean) * (v - row.mean);
        row.variance /= static_cast<double>(replicates - 1);
        row.bound = 6 * m * m / static_cast<double>(n);
        row.expected = expected;
        row.variance_ok = row.variance <= convergence_slack * row.bound;
        row.mean_ok = std::abs(row.mean - expected) <= convergence_slack * std::sqrt(row.bound);
        rows.push_back(row);
    }
    return rows;
}

} // namespace graphmom

#endif // GRAPHMOM_SAMPLER_HPP
