#ifndef QCLUSTER_BOUNDS_HPP
#define QCLUSTER_BOUNDS_HPP

// Power factorizations of mutated variables and upper-bound membership.
//
// Every function here works in the seed's own cluster torus T(Lambda_t):
// a seed that is not initial is first re-rooted, and elements passed in are
// expected to live in that torus.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coeff.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "seed.hpp"
#include "torus.hpp"

namespace qcluster {

/// The seed viewed as an initial seed of its own torus.
inline QuantumSeed local_seed(const QuantumSeed& seed)
{
    return seed.history().empty() ? seed : seed.rerooted();
}

namespace detail {

/// d~_i / d_i, which is Lambda(beta^i, e_i) and hence an integer.
inline std::int64_t degree_ratio(const QuantumSeed& seed, std::size_t i)
{
    const auto dt = seed.pair().dtilde()[i];
    const auto d = seed.exchange().degree(i);
    if (dt % d != 0)
        throw error(errc::invalid_exchange_data, "d_" + std::to_string(i + 1) + " does not divide d~_" +
                                                     std::to_string(i + 1));
    return dt / d;
}

/// prod_{k=1..s} sum_l q^{sign(2k-1) l r / 2} h_{i,l} X(sign l beta^i)
inline TorusElement power_product(const QuantumSeed& seed, std::size_t i, std::int64_t s, int sign)
{
    check_direction(i, seed.n());
    if (s < 0)
        throw error(errc::dimension_mismatch, "power must be non-negative");
    const auto local = local_seed(seed);
    const auto& ctx = local.initial_context();
    const auto ratio = degree_ratio(local, i);
    const auto d = local.exchange().degree(i);
    const IntVector beta = local.exchange().beta(local.pair().btilde(), i);
    TorusElement out = TorusElement::constant(ctx, 1);
    for (std::int64_t k = 1; k <= s; ++k) {
        TorusElement factor(ctx);
        for (std::int64_t l = 0; l <= d; ++l) {
            const auto half = sign * (2 * k - 1) * l * ratio;
            factor += TorusElement::basis(ctx, (sign * l) * beta,
                                          local.exchange().h(i, static_cast<std::size_t>(l)).shifted_q(half));
        }
        out *= factor;
    }
    return out;
}

} // namespace detail

/// V^s_{b^i}; V^0 = 1.
inline TorusElement v_power(const QuantumSeed& seed, std::size_t i, std::int64_t s)
{
    return detail::power_product(seed, i, s, 1);
}

/// W^s_{b^i}; W^0 = 1.
inline TorusElement w_power(const QuantumSeed& seed, std::size_t i, std::int64_t s)
{
    return detail::power_product(seed, i, s, -1);
}

/// Compares (X'_i)^s, computed by repeated multiplication, against both
///   V^s X(s[-b^i]_+ - s e_i)   and   W^s X(s[b^i]_+ - s e_i).
inline bool power_factorization_check(const QuantumSeed& seed, std::size_t i, std::int64_t s)
{
    check_direction(i, seed.n());
    const auto local = local_seed(seed);
    const auto& ctx = local.initial_context();
    const TorusElement mutated = mutate_seed(local, i).var(i);
    const TorusElement lhs = mutated.pow(s);
    const IntVector b = local.pair().b_column(i);
    const IntVector ei = unit_vector(local.m(), i);
    const TorusElement via_v = v_power(local, i, s) * TorusElement::basis(ctx, s * positive_part(-b) - s * ei);
    const TorusElement via_w = w_power(local, i, s) * TorusElement::basis(ctx, s * positive_part(b) - s * ei);
    return lhs == via_v && lhs == via_w;
}

/// Y = sum_j c_j X(j e_i) with every c_j free of X_i.
struct DirectionDecomposition {
    std::size_t direction = 0;
    std::map<std::int64_t, TorusElement> buckets;

    TorusElement reassemble(const ContextPtr& ctx) const
    {
        TorusElement out(ctx);
        for (const auto& [j, c] : buckets)
            out += c * TorusElement::basis(ctx, j * unit_vector(ctx->dim(), direction));
        return out;
    }
};

inline DirectionDecomposition decompose_by_direction(const TorusElement& y, std::size_t i)
{
    const auto& ctx = y.context();
    if (i >= ctx->dim())
        throw error(errc::dimension_mismatch, "direction outside the torus");
    DirectionDecomposition out;
    out.direction = i;
    for (const auto& [c, coef] : y.terms()) {
        const auto j = c[i];
        IntVector rest = c;
        rest[i] = 0;
        // X(c) = q^{-Lambda(rest, j e_i)/2} X(rest) X(j e_i)
        const auto twist = -ctx->form(rest, j * unit_vector(ctx->dim(), i));
        auto [it, inserted] = out.buckets.try_emplace(j, ctx);
        it->second.add_term(std::move(rest), coef.shifted_q(twist));
    }
    return out;
}

/// Membership in ZP[X_1^{+-1}, ..., X_i, X'_i, ..., X_n^{+-1}]: each
/// negative bucket c_{-j} must be right divisible by V^j X(j[-b^i]_+).
inline bool ub_local_member(const QuantumSeed& seed, const TorusElement& y, std::size_t i)
{
    check_direction(i, seed.n());
    const auto local = local_seed(seed);
    const auto& ctx = local.initial_context();
    y.check_context(TorusElement(ctx));
    const IntVector down = positive_part(-local.pair().b_column(i));
    const auto decomposition = decompose_by_direction(y, i);
    for (const auto& [j, c] : decomposition.buckets) {
        if (j >= 0)
            break;
        const auto power = -j;
        const TorusElement divisor = v_power(local, i, power) * TorusElement::basis(ctx, power * down);
        if (!try_right_divide(c, divisor))
            return false;
    }
    return true;
}

/// Membership in the upper bound: intersection of the n local rings.
inline bool ub_member(const QuantumSeed& seed, const TorusElement& y)
{
    for (std::size_t i = 0; i < seed.n(); ++i)
        if (!ub_local_member(seed, y, i))
            return false;
    return true;
}

enum class Coprimality { coprime, not_coprime, unknown };

inline std::string to_string(Coprimality c)
{
    switch (c) {
    case Coprimality::coprime: return "coprime";
    case Coprimality::not_coprime: return "not-coprime";
    case Coprimality::unknown: return "unknown";
    }
    return "unknown";
}

namespace detail {

/// Splits P into central components: terms are grouped by Lambda*a, and the
/// class of a0 contributes X(a0) * f with f supported on ker(Lambda).
inline std::vector<TorusElement> central_components(const TorusElement& p)
{
    const auto& ctx = p.context();
    const auto& lambda = ctx->lambda();
    const auto m = ctx->dim();
    std::map<IntVector, std::pair<IntVector, TorusElement>> classes;
    for (const auto& [a, coef] : p.terms()) {
        IntVector key(m, 0);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                key[r] += lambda(r, c) * a[c];
        auto it = classes.find(key);
        if (it == classes.end())
            it = classes.emplace(key, std::make_pair(a, TorusElement(ctx))).first;
        it->second.second.add_term(a - it->second.first, coef);
    }
    std::vector<TorusElement> out;
    for (auto& [key, entry] : classes)
        out.push_back(std::move(entry.second));
    return out;
}

inline integer integer_content(const std::vector<TorusElement>& parts)
{
    integer g = 0;
    for (const auto& part : parts)
        for (const auto& [c, coef] : part.terms())
            for (const auto& [mono, value] : coef.terms())
                g = boost::multiprecision::gcd(g, value);
    return boost::multiprecision::abs(g);
}

} // namespace detail

/// Bounded search for a common non-invertible central divisor of X_1 X'_1
/// and X_2 X'_2. Central elements are supported on ker(Lambda); a central
/// element divides P iff it divides every central component of P.
inline Coprimality coprime_check_rank2(const QuantumSeed& seed)
{
    if (seed.n() != 2)
        return Coprimality::unknown;
    const auto local = local_seed(seed);
    std::vector<TorusElement> components;
    bool has_unit_component[2] = {false, false};
    for (std::size_t i = 0; i < 2; ++i) {
        for (auto& part : detail::central_components(exchange_product(local, i))) {
            if (part.is_unit_monomial())
                has_unit_component[i] = true;
            components.push_back(std::move(part));
        }
    }
    // A divisor of a unit is a unit.
    if (has_unit_component[0] || has_unit_component[1])
        return Coprimality::coprime;
    if (detail::integer_content(components) > 1)
        return Coprimality::not_coprime;
    for (const auto& candidate : components) {
        if (candidate.is_unit_monomial())
            continue;
        const bool divides_all = std::all_of(components.begin(), components.end(), [&](const TorusElement& part) {
            return try_right_divide(part, candidate).has_value();
        });
        if (divides_all)
            return Coprimality::not_coprime;
    }
    return Coprimality::unknown;
}

/// Rewrites Y, given in the seed's own torus, in the torus of the re-rooted
/// neighbour mu_k(seed). Returns nullopt when Y is not a Laurent polynomial
/// in the neighbour's cluster.
inline std::optional<TorusElement> transport_through_mutation(const QuantumSeed& seed, std::size_t k,
                                                              const TorusElement& y)
{
    check_direction(k, seed.n());
    const auto local = local_seed(seed);
    y.check_context(TorusElement(local.initial_context()));
    const QuantumSeed adjacent = mutate_seed(local, k).rerooted();
    const auto& ctx = adjacent.initial_context();
    // X_k written in the neighbour's cluster.
    const TorusElement old_var = mutate_seed(adjacent, k).var(k);

    const auto decomposition = decompose_by_direction(y, k);
    if (decomposition.buckets.empty())
        return TorusElement(ctx);
    const std::int64_t shift = std::max<std::int64_t>(0, -decomposition.buckets.begin()->first);
    TorusElement accumulated(ctx);
    for (const auto& [j, c] : decomposition.buckets) {
        // X(a) with a_k = 0 is the same basis element in both tori because
        // the two skew forms agree away from index k.
        TorusElement moved(ctx);
        for (const auto& [a, coef] : c.terms())
            moved.add_term(a, coef);
        accumulated += moved * old_var.pow(j + shift);
    }
    if (shift == 0)
        return accumulated;
    return try_right_divide(accumulated, old_var.pow(shift));
}

/// Cluster variables reachable by words of length <= depth (in the seed's
/// own torus), the frozen Laurent monomials X(+-e_l), and X(-e_i) for every
/// mutable i.
inline std::vector<TorusElement> invariance_sample(const QuantumSeed& seed, std::size_t depth = 2)
{
    const auto local = local_seed(seed);
    const auto& ctx = local.initial_context();
    std::vector<TorusElement> sample;
    std::set<std::string> seen;
    auto add = [&](const TorusElement& e) {
        if (seen.insert(to_string(e)).second)
            sample.push_back(e);
    };
    struct Node {
        QuantumSeed seed;
        std::optional<std::size_t> last;
    };
    std::vector<Node> frontier{{local, std::nullopt}};
    for (std::size_t i = 0; i < local.n(); ++i)
        add(local.var(i));
    for (std::size_t level = 0; level < depth; ++level) {
        std::vector<Node> next;
        for (const auto& node : frontier)
            for (std::size_t i = 0; i < local.n(); ++i) {
                if (node.last && *node.last == i)
                    continue;
                auto child = mutate_seed(node.seed, i);
                add(child.var(i));
                next.push_back({std::move(child), i});
            }
        frontier = std::move(next);
    }
    for (std::size_t l = local.n(); l < local.m(); ++l) {
        add(TorusElement::basis(ctx, unit_vector(local.m(), l)));
        add(TorusElement::basis(ctx, -unit_vector(local.m(), l)));
    }
    for (std::size_t i = 0; i < local.n(); ++i)
        add(TorusElement::basis(ctx, -unit_vector(local.m(), i)));
    return sample;
}

struct InvarianceMismatch {
    std::size_t direction = 0;
    std::string element;
    bool here = false;
    bool there = false;
};

struct InvarianceReport {
    std::size_t comparisons = 0;
    std::vector<InvarianceMismatch> mismatches;

    bool consistent() const { return mismatches.empty(); }
};

/// Compares ub_member verdicts of the seed and each adjacent seed on the
/// sample, transporting every element through the connecting mutation. An
/// element that is not Laurent in the neighbour's cluster is outside its
/// upper bound.
inline InvarianceReport upper_bound_invariance(const QuantumSeed& seed, const std::vector<TorusElement>& sample)
{
    const auto local = local_seed(seed);
    InvarianceReport report;
    for (std::size_t k = 0; k < local.n(); ++k) {
        const QuantumSeed adjacent = mutate_seed(local, k).rerooted();
        for (const auto& y : sample) {
            const bool here = ub_member(local, y);
            const auto moved = transport_through_mutation(local, k, y);
            const bool there = moved ? ub_member(adjacent, *moved) : false;
            ++report.comparisons;
            if (here != there)
                report.mismatches.push_back({k, to_string(y), here, there});
        }
    }
    return report;
}

} // namespace qcluster

#endif // QCLUSTER_BOUNDS_HPP
