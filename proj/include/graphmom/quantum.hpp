#ifndef GRAPHMOM_QUANTUM_HPP
#define GRAPHMOM_QUANTUM_HPP

#include "canonical.hpp"
#include "hom.hpp"
#include "multigraph.hpp"
#include "rational.hpp"
#include "targets.hpp"

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace graphmom {

/**
 * Graph parameter f: multigraph -> scalar. Parameters built from a target
 * also expose that target, which lets the connection module evaluate glued
 * products without forming them.
 */
template <class Scalar>
class GraphParameter {
public:
    enum class Source { hom_target, table, composite };

    struct Target {
        std::function<MomentTable<Scalar>(unsigned)> moments;
        bool normalized; // density t rather than hom
    };

    using Evaluator = std::function<Scalar(const Multigraph&)>;

    GraphParameter(Evaluator eval, Source source, std::string description, std::shared_ptr<const Target> target = {})
        : eval_(std::move(eval)), source_(source), description_(std::move(description)), target_(std::move(target))
    {
    }

    Scalar operator()(const Multigraph& f) const { return eval_(f); }

    Source source() const noexcept { return source_; }
    const std::string& description() const noexcept { return description_; }
    const Target* target() const noexcept { return target_.get(); }

private:
    Evaluator eval_;
    Source source_;
    std::string description_;
    std::shared_ptr<const Target> target_;
};

namespace detail {

template <class Scalar, class H>
GraphParameter<Scalar> target_parameter(H h, bool normalized, std::string description)
{
    auto shared = std::make_shared<const H>(std::move(h));
    auto target = std::make_shared<typename GraphParameter<Scalar>::Target>();
    target->moments = [shared](unsigned m) { return make_moment_table(*shared, m); };
    target->normalized = normalized;
    auto eval = [shared, normalized](const Multigraph& f) -> Scalar {
        const auto table = make_moment_table(*shared, f.max_multiplicity());
        return normalized ? t(f, table) : hom(f, table);
    };
    return GraphParameter<Scalar>(eval, GraphParameter<Scalar>::Source::hom_target, std::move(description), target);
}

} // namespace detail

template <class Scalar>
GraphParameter<Scalar> hom_parameter(const WeightedGraph<Scalar>& h)
{
    return detail::target_parameter<Scalar>(h, false, "hom(., H)");
}

template <class Scalar>
GraphParameter<Scalar> density_parameter(const WeightedGraph<Scalar>& h)
{
    return detail::target_parameter<Scalar>(h, true, "t(., H)");
}

template <class Scalar>
GraphParameter<Scalar> density_parameter(const StepGraphon<Scalar>& w)
{
    return detail::target_parameter<Scalar>(w.as_weighted_graph(), true, "t(., W)");
}

inline GraphParameter<Rational> hom_parameter(const RandomWeightedGraph& h)
{
    return detail::target_parameter<Rational>(h, false, "hom(., H) random");
}

inline GraphParameter<Rational> density_parameter(const RandomWeightedGraph& h)
{
    return detail::target_parameter<Rational>(h, true, "t(., H) random");
}

/// Memo-free parameter from a plain function (e.g. a lookup table).
template <class Scalar>
GraphParameter<Scalar> table_parameter(std::function<Scalar(const Multigraph&)> fn, std::string description)
{
    return GraphParameter<Scalar>(std::move(fn), GraphParameter<Scalar>::Source::table, std::move(description));
}

/**
 * Formal rational combination of k-labeled multigraphs, keyed by the
 * labels-fixed canonical code. Zero coefficients are never stored.
 */
class QuantumGraph {
public:
    struct Term {
        Multigraph graph;
        Rational coefficient;
    };

    explicit QuantumGraph(std::size_t k = 0) : k_(k) {}

    static QuantumGraph single(const Multigraph& g, const Rational& c = 1)
    {
        QuantumGraph q(g.label_count());
        q.add(g, c);
        return q;
    }

    std::size_t label_count() const noexcept { return k_; }
    const std::map<CanonicalCode, Term>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    void add(const Multigraph& g, const Rational& c)
    {
        if (g.label_count() != k_)
            throw std::invalid_argument("quantum graph: term has " + std::to_string(g.label_count())
                                        + " labels, expected " + std::to_string(k_));
        if (sgn(c) == 0) return;
        const CanonicalCode code = canonical_code(g, LabelMode::fixed);
        auto it = terms_.find(code);
        if (it == terms_.end()) {
            terms_.emplace(code, Term{decode(code), c});
            return;
        }
        it->second.coefficient += c;
        if (sgn(it->second.coefficient) == 0) terms_.erase(it);
    }

    QuantumGraph& operator+=(const QuantumGraph& o)
    {
        check_compatible(o);
        for (const auto& [code, term] : o.terms_) add(term.graph, term.coefficient);
        return *this;
    }

    QuantumGraph& operator*=(const Rational& c)
    {
        if (sgn(c) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [code, term] : terms_) term.coefficient *= c;
        return *this;
    }

    friend QuantumGraph operator+(QuantumGraph a, const QuantumGraph& b) { return a += b; }
    friend QuantumGraph operator*(QuantumGraph a, const Rational& c) { return a *= c; }

    /// Bilinear extension of the gluing product.
    friend QuantumGraph operator*(const QuantumGraph& a, const QuantumGraph& b)
    {
        a.check_compatible(b);
        QuantumGraph out(a.k_);
        for (const auto& [ca, ta] : a.terms_)
            for (const auto& [cb, tb] : b.terms_)
                out.add(glue_product(ta.graph, tb.graph), ta.coefficient * tb.coefficient);
        return out;
    }

private:
    void check_compatible(const QuantumGraph& o) const
    {
        if (o.k_ != k_) throw std::invalid_argument("quantum graphs have different label counts");
    }

    std::size_t k_;
    std::map<CanonicalCode, Term> terms_;
};

/// f extended linearly: sum of coefficient * f(term).
template <class Scalar>
Scalar evaluate_quantum(const GraphParameter<Scalar>& f, const QuantumGraph& p)
{
    Scalar total = 0;
    for (const auto& [code, term] : p.terms()) total += from_rational<Scalar>(term.coefficient) * f(term.graph);
    return total;
}

} // namespace graphmom

#endif // GRAPHMOM_QUANTUM_HPP
