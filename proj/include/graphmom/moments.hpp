#ifndef GRAPHMOM_MOMENTS_HPP
#define GRAPHMOM_MOMENTS_HPP

#include "exact_linalg.hpp"
#include "multigraph.hpp"
#include "quantum.hpp"
#include "rational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphmom {

enum class MomentDomain { unit_interval, symmetric }; // [0,1] or [-d,d]

template <class Scalar = Rational>
struct MomentSequence {
    std::vector<Scalar> values; // a_0, a_1, ..., a_L
    MomentDomain domain = MomentDomain::unit_interval;
};

template <class Scalar = Rational>
struct FiniteSupportMeasure {
    std::vector<Scalar> atoms; // sorted, distinct
    std::vector<Scalar> weights;

    /// a_0..a_{count-1}.
    std::vector<Scalar> moments(std::size_t count) const
    {
        std::vector<Scalar> out(count, Scalar(0));
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            Scalar power = 1;
            for (std::size_t j = 0; j < count; ++j) {
                out[j] += weights[i] * power;
                power *= atoms[i];
            }
        }
        return out;
    }
};

/// Validates and sorts an exact measure.
inline FiniteSupportMeasure<Rational> make_measure(std::vector<Rational> atoms, std::vector<Rational> weights)
{
    if (atoms.size() != weights.size() || atoms.empty())
        throw std::invalid_argument("measure: need one positive weight per atom");
    std::vector<std::size_t> order(atoms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });
    FiniteSupportMeasure<Rational> mu;
    Rational total = 0;
    for (std::size_t i : order) {
        if (!mu.atoms.empty() && mu.atoms.back() == atoms[i]) throw std::invalid_argument("measure: repeated atom");
        if (sgn(weights[i]) <= 0) throw std::invalid_argument("measure: weights must be positive");
        mu.atoms.push_back(atoms[i]);
        mu.weights.push_back(weights[i]);
        total += weights[i];
    }
    if (total != 1) throw std::invalid_argument("measure: weights sum to " + to_string(total));
    return mu;
}

/// Largest square Hankel matrix A_{ij} = a_{i+j} the prefix supports.
template <class Scalar>
Matrix<Scalar> hankel(const std::vector<Scalar>& a, std::size_t size = 0)
{
    if (a.empty()) throw std::invalid_argument("hankel: empty sequence");
    const std::size_t max_size = (a.size() + 1) / 2;
    if (size == 0) size = max_size;
    if (size > max_size) throw std::invalid_argument("hankel: prefix too short for the requested size");
    Matrix<Scalar> m(size, size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) m(i, j) = a[i + j];
    return m;
}

struct HankelReport {
    PsdCertificate certificate;
    std::size_t rank = 0;
};

inline HankelReport hankel_psd_rank(const MomentSequence<Rational>& seq)
{
    const ExactMatrix h = hankel(seq.values);
    return {psd_check(h), rank_exact(h)};
}

struct HausdorffReport {
    bool pass = true;
    std::size_t n = 0;
    std::size_t k = 0;
    Rational value = 0; // the violating difference when !pass
};

/**
 * Complete monotonicity on [0,1]: sum_j (-1)^j C(k,j) a_{n+j} >= 0 for all
 * k <= up_to_k and n + k <= L.
 */
inline HausdorffReport hausdorff_check(const MomentSequence<Rational>& seq, std::size_t up_to_k)
{
    if (seq.domain != MomentDomain::unit_interval)
        throw std::invalid_argument("hausdorff_check: requires the [0,1] domain");
    const std::size_t len = seq.values.size();
    for (std::size_t k = 0; k <= up_to_k && k < len; ++k)
        for (std::size_t n = 0; n + k < len; ++n) {
            Rational diff = 0;
            for (std::size_t j = 0; j <= k; ++j) {
                const Rational term = Rational(binomial(static_cast<unsigned>(k), static_cast<unsigned>(j))) * seq.values[n + j];
                if (j % 2 == 0)
                    diff += term;
                else
                    diff -= term;
            }
            if (sgn(diff) < 0) return {false, n, k, diff};
        }
    return {};
}

// ---------------------------------------------------------------------------
// Finite-support recovery

namespace detail {

using Poly = std::vector<Rational>; // coefficients, low degree first

inline Rational poly_eval(const Poly& p, const Rational& x)
{
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline void poly_trim(Poly& p)
{
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline Poly poly_derivative(const Poly& p)
{
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    return d;
}

inline Poly poly_rem(Poly a, const Poly& b)
{
    poly_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Rational factor = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
        poly_trim(a);
    }
    return a;
}

inline std::vector<Poly> sturm_sequence(const Poly& p)
{
    std::vector<Poly> seq{p, poly_derivative(p)};
    poly_trim(seq.back());
    while (!seq.back().empty() && seq.back().size() > 1) {
        Poly r = poly_rem(seq[seq.size() - 2], seq.back());
        for (auto& c : r) c = -c;
        if (r.empty()) break;
        seq.push_back(std::move(r));
    }
    return seq;
}

inline std::size_t sign_changes(const std::vector<Poly>& seq, const Rational& x)
{
    std::size_t changes = 0;
    int last = 0;
    for (const Poly& p : seq) {
        const int s = sgn(poly_eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

inline Rational floor_of(const Rational& x)
{
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(f);
}

/// Rational with the smallest denominator in [lo, hi], lo <= hi.
inline Rational simplest_between(const Rational& lo, const Rational& hi)
{
    if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
    if (sgn(hi) < 0) return -simplest_between(-hi, -lo);
    const Rational fl = floor_of(lo);
    if (fl == lo) return lo;
    if (fl + 1 <= hi) return fl + 1;
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl));
}

} // namespace detail

struct RecoveredMeasure {
    bool exact = false;
    FiniteSupportMeasure<Rational> measure;       // filled when exact
    FiniteSupportMeasure<double> approximate;     // always filled
};

/**
 * Recovers the unique finite-support measure with at most `max_atoms` atoms
 * from the moment prefix a_0..a_{2r-1}. Atoms are the roots of the monic
 * polynomial in the Hankel kernel, isolated with a Sturm sequence; rational
 * roots are identified exactly, other roots refined to width 1e-12.
 */
inline RecoveredMeasure recover_finite_support(const std::vector<Rational>& a, std::size_t max_atoms)
{
    if (max_atoms == 0) throw std::invalid_argument("recover_finite_support: max_atoms must be positive");
    if (a.size() < 2 * max_atoms)
        throw std::invalid_argument("recover_finite_support: need at least " + std::to_string(2 * max_atoms)
                                    + " moments");
    if (a[0] != 1) throw std::invalid_argument("recover_finite_support: a_0 must be 1");

    const std::size_t rank = rank_exact(hankel(a));
    if (rank > max_atoms)
        throw std::domain_error("recover_finite_support: Hankel rank " + std::to_string(rank) + " exceeds "
                                + std::to_string(max_atoms) + " atoms");
    const std::size_t rho = rank;

    // leading rho x rho block must be nonsingular; solve for the monic kernel polynomial
    ExactMatrix system(rho, rho + 1);
    for (std::size_t i = 0; i < rho; ++i) {
        for (std::size_t j = 0; j < rho; ++j) system(i, j) = a[i + j];
        system(i, rho) = -a[i + rho];
    }
    std::vector<std::size_t> pivcol(rho);
    for (std::size_t c = 0; c < rho; ++c) {
        std::size_t p = c;
        while (p < rho && sgn(system(p, c)) == 0) ++p;
        if (p == rho) throw std::domain_error("recover_finite_support: not a finite-support moment prefix");
        for (std::size_t j = 0; j <= rho; ++j) std::swap(system(p, j), system(c, j));
        for (std::size_t i = 0; i < rho; ++i) {
            if (i == c || sgn(system(i, c)) == 0) continue;
            const Rational factor = system(i, c) / system(c, c);
            for (std::size_t j = c; j <= rho; ++j) system(i, j) -= factor * system(c, j);
        }
    }
    detail::Poly poly(rho + 1);
    for (std::size_t i = 0; i < rho; ++i) poly[i] = system(i, rho) / system(i, i);
    poly[rho] = 1;

    // isolate the real roots
    Rational bound = 1;
    for (std::size_t i = 0; i < rho; ++i) bound = std::max(bound, Rational(1 + abs(poly[i])));
    const auto sturm = detail::sturm_sequence(poly);
    const Rational lo0 = -bound, hi0 = bound;
    const std::size_t real_roots = detail::sign_changes(sturm, lo0) - detail::sign_changes(sturm, hi0);
    if (real_roots != rho)
        throw std::domain_error("recover_finite_support: kernel polynomial has nonreal or repeated roots");

    std::vector<std::pair<Rational, Rational>> isolating;
    std::vector<std::pair<Rational, Rational>> stack{{lo0, hi0}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        const std::size_t count = detail::sign_changes(sturm, lo) - detail::sign_changes(sturm, hi);
        if (count == 0) continue;
        if (count == 1) {
            isolating.emplace_back(lo, hi);
            continue;
        }
        const Rational mid = (lo + hi) / 2;
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    std::sort(isolating.begin(), isolating.end());

    // roots lie in (lo, hi]; refine by bisection on sign
    std::vector<std::optional<Rational>> exact_roots;
    std::vector<double> approx_roots;
    for (auto [lo, hi] : isolating) {
        std::optional<Rational> root;
        if (sgn(detail::poly_eval(poly, hi)) == 0) root = hi;
        for (int iter = 0; iter < 200 && !root; ++iter) {
            const Rational mid = (lo + hi) / 2;
            const int sm = sgn(detail::poly_eval(poly, mid));
            if (sm == 0) {
                root = mid;
                break;
            }
            // p(hi) != 0 here, while p(lo) may vanish at a neighbouring root
            if (sm == sgn(detail::poly_eval(poly, hi)))
                hi = mid;
            else
                lo = mid;
        }
        if (!root) {
            const Rational guess = detail::simplest_between(lo, hi);
            if (sgn(detail::poly_eval(poly, guess)) == 0) root = guess;
        }
        approx_roots.push_back(root ? root->get_d() : Rational((lo + hi) / 2).get_d());
        exact_roots.push_back(root);
    }

    RecoveredMeasure out;
    out.exact = std::all_of(exact_roots.begin(), exact_roots.end(), [](const auto& r) { return r.has_value(); });

    if (out.exact) {
        // Vandermonde solve sum_i w_i x_i^j = a_j, j < rho
        ExactMatrix v(rho, rho + 1);
        for (std::size_t j = 0; j < rho; ++j) {
            for (std::size_t i = 0; i < rho; ++i) v(j, i) = pow(*exact_roots[i], static_cast<unsigned>(j));
            v(j, rho) = a[j];
        }
        for (std::size_t c = 0; c < rho; ++c) {
            std::size_t p = c;
            while (p < rho && sgn(v(p, c)) == 0) ++p;
            if (p == rho) throw std::domain_error("recover_finite_support: recovered atoms are not distinct");
            for (std::size_t j = 0; j <= rho; ++j) std::swap(v(p, j), v(c, j));
            for (std::size_t i = 0; i < rho; ++i) {
                if (i == c || sgn(v(i, c)) == 0) continue;
                const Rational factor = v(i, c) / v(c, c);
                for (std::size_t j = c; j <= rho; ++j) v(i, j) -= factor * v(c, j);
            }
        }
        for (std::size_t i = 0; i < rho; ++i) {
            out.measure.atoms.push_back(*exact_roots[i]);
            out.measure.weights.push_back(v(i, rho) / v(i, i));
        }
        for (const Rational& w : out.measure.weights)
            if (sgn(w) <= 0) throw std::domain_error("recover_finite_support: recovered weights are not positive");
        if (out.measure.moments(a.size()) != a)
            throw std::domain_error("recover_finite_support: prefix is not the moment sequence of a finite-support measure");
        for (std::size_t i = 0; i < rho; ++i) {
            out.approximate.atoms.push_back(out.measure.atoms[i].get_d());
            out.approximate.weights.push_back(out.measure.weights[i].get_d());
        }
        return out;
    }

    // float weights by least squares on all supplied moments
    Eigen::MatrixXd v(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(rho));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(a.size()));
    for (std::size_t j = 0; j < a.size(); ++j) {
        rhs(static_cast<Eigen::Index>(j)) = a[j].get_d();
        for (std::size_t i = 0; i < rho; ++i)
            v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::pow(approx_roots[i], static_cast<double>(j));
    }
    const Eigen::VectorXd w = v.colPivHouseholderQr().solve(rhs);
    out.approximate.atoms = approx_roots;
    for (Eigen::Index i = 0; i < w.size(); ++i) out.approximate.weights.push_back(w(i));
    return out;
}

/// Float-mode recovery: companion eigenvalues and a Vandermonde solve; the
/// result reproduces the moments to `tolerance` or the call throws.
inline FiniteSupportMeasure<double> recover_finite_support(const std::vector<double>& a, std::size_t max_atoms,
                                                           double tolerance = 1e-9)
{
    if (max_atoms == 0 || a.size() < 2 * max_atoms)
        throw std::invalid_argument("recover_finite_support: need at least 2r moments");
    const Matrix<double> h = hankel(a);
    const std::size_t rho = numeric_rank(h, 1e-12);
    if (rho > max_atoms) throw std::domain_error("recover_finite_support: Hankel rank exceeds the atom budget");
    const auto r = static_cast<Eigen::Index>(rho);
    Eigen::MatrixXd sys(r, r);
    Eigen::VectorXd rhs(r);
    for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) sys(i, j) = a[static_cast<std::size_t>(i + j)];
        rhs(i) = -a[static_cast<std::size_t>(i + r)];
    }
    const Eigen::VectorXd c = sys.fullPivLu().solve(rhs);
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(r, r);
    for (Eigen::Index i = 1; i < r; ++i) companion(i, i - 1) = 1;
    for (Eigen::Index i = 0; i < r; ++i) companion(i, r - 1) = -c(i);
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
    std::vector<double> atoms;
    for (Eigen::Index i = 0; i < r; ++i) {
        const std::complex<double> z = es.eigenvalues()(i);
        if (std::abs(z.imag()) > 1e-7 * std::max(1.0, std::abs(z.real())))
            throw std::domain_error("recover_finite_support: nonreal root");
        atoms.push_back(z.real());
    }
    std::sort(atoms.begin(), atoms.end());
    Eigen::MatrixXd v(static_cast<Eigen::Index>(a.size()), r);
    Eigen::VectorXd b(static_cast<Eigen::Index>(a.size()));
    for (std::size_t j = 0; j < a.size(); ++j) {
        b(static_cast<Eigen::Index>(j)) = a[j];
        for (Eigen::Index i = 0; i < r; ++i)
            v(static_cast<Eigen::Index>(j), i) = std::pow(atoms[static_cast<std::size_t>(i)], static_cast<double>(j));
    }
    const Eigen::VectorXd w = v.colPivHouseholderQr().solve(b);
    FiniteSupportMeasure<double> mu;
    mu.atoms = atoms;
    for (Eigen::Index i = 0; i < r; ++i) mu.weights.push_back(w(i));
    const auto back = mu.moments(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        if (std::abs(back[j] - a[j]) > tolerance * std::max(1.0, std::abs(a[j])))
            throw std::domain_error("recover_finite_support: recovered measure does not reproduce the moments");
    return mu;
}

/**
 * sum over simple F' on V(F) containing F of (-1)^{|E(F') \ E(F)|} f(F'):
 * the induced density of F, nonnegative for moment parameters.
 */
template <class Scalar>
Scalar induced_nonnegativity(const GraphParameter<Scalar>& f, const Multigraph& g)
{
    if (!g.is_simple()) throw std::invalid_argument("induced_nonnegativity: graph must be simple");
    if (g.node_count() > 6) throw std::length_error("induced_nonnegativity: at most 6 nodes");
    std::vector<std::pair<std::size_t, std::size_t>> missing;
    for (std::size_t u = 0; u < g.node_count(); ++u)
        for (std::size_t v = u + 1; v < g.node_count(); ++v)
            if (g.multiplicity(u, v) == 0) missing.emplace_back(u, v);
    Scalar total = 0;
    const Multigraph base(g.with_labels(0));
    for (std::size_t mask = 0; mask < (std::size_t{1} << missing.size()); ++mask) {
        Multigraph sup = base;
        std::size_t added = 0;
        for (std::size_t i = 0; i < missing.size(); ++i)
            if ((mask >> i) & 1u) {
                sup.set_multiplicity(missing[i].first, missing[i].second, 1);
                ++added;
            }
        if (added % 2 == 0)
            total += f(sup);
        else
            total -= f(sup);
    }
    return total;
}

} // namespace graphmom

#endif // GRAPHMOM_MOMENTS_HPP
