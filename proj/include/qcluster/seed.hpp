#ifndef QCLUSTER_SEED_HPP
#define QCLUSTER_SEED_HPP

// Compatible pairs, exchange data, quantum seeds and their mutations.
//
// Directions and variable indices are zero-based throughout the library;
// the command line and the seed file use one-based numbering.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "coeff.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "torus.hpp"

namespace qcluster {

/// Diagonal of D when lambda * btilde = -[D; 0] with D positive. Also checks
/// that btilde has full column rank and that D*B is skew-symmetric.
inline IntVector check_compatible(const IntMatrix& lambda, const IntMatrix& btilde)
{
    const auto m = lambda.rows();
    const auto n = btilde.cols();
    if (lambda.cols() != m || btilde.rows() != m)
        throw error(errc::dimension_mismatch, "lambda must be m x m and btilde m x n");
    if (n == 0 || n > m)
        throw error(errc::dimension_mismatch, "need 1 <= n <= m");
    if (!lambda.is_skew_symmetric())
        throw error(errc::not_skew_symmetric, "lambda is not skew-symmetric");

    const IntMatrix product = lambda * btilde;
    IntVector dtilde(n);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const auto v = product(r, c);
            if (r == c) {
                if (v >= 0)
                    throw error(errc::not_compatible, "(lambda*btilde)[" + std::to_string(r + 1) + "," +
                                                          std::to_string(c + 1) + "] = " + std::to_string(v) +
                                                          " must be negative");
                dtilde[c] = -v;
            } else if (v != 0) {
                throw error(errc::not_compatible, "(lambda*btilde)[" + std::to_string(r + 1) + "," +
                                                      std::to_string(c + 1) + "] = " + std::to_string(v) +
                                                      " must be zero");
            }
        }

    if (btilde.rank() != n)
        throw error(errc::rank_deficient, "btilde does not have full rank");
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
            if (dtilde[k] * btilde(k, l) != -dtilde[l] * btilde(l, k))
                throw error(errc::not_compatible, "D*B is not skew-symmetric");
    return dtilde;
}

class CompatiblePair {
public:
    CompatiblePair(IntMatrix lambda, IntMatrix btilde)
        : lambda_(std::move(lambda)), btilde_(std::move(btilde)), dtilde_(check_compatible(lambda_, btilde_))
    {
    }

    std::size_t m() const { return lambda_.rows(); }
    std::size_t n() const { return btilde_.cols(); }
    const IntMatrix& lambda() const { return lambda_; }
    const IntMatrix& btilde() const { return btilde_; }
    const IntVector& dtilde() const { return dtilde_; }
    std::int64_t b(std::size_t row, std::size_t col) const { return btilde_(row, col); }
    IntVector b_column(std::size_t k) const { return btilde_.column(k); }

    IntMatrix principal() const
    {
        IntMatrix out(n(), n());
        for (std::size_t r = 0; r < n(); ++r)
            for (std::size_t c = 0; c < n(); ++c)
                out(r, c) = btilde_(r, c);
        return out;
    }

    bool operator==(const CompatiblePair& other) const
    {
        return lambda_ == other.lambda_ && btilde_ == other.btilde_;
    }

private:
    IntMatrix lambda_;
    IntMatrix btilde_;
    IntVector dtilde_;
};

/// m x m matrix E_eps for direction i.
inline IntMatrix mutation_matrix_e(const IntMatrix& btilde, std::size_t i, int eps)
{
    const auto m = btilde.rows();
    IntMatrix e = IntMatrix::identity(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto v = -eps * btilde(k, i);
        e(k, i) = k == i ? -1 : (v > 0 ? v : 0);
    }
    return e;
}

/// n x n matrix F_eps for direction i.
inline IntMatrix mutation_matrix_f(const IntMatrix& btilde, std::size_t i, int eps)
{
    const auto n = btilde.cols();
    IntMatrix f = IntMatrix::identity(n);
    for (std::size_t l = 0; l < n; ++l) {
        const auto v = eps * btilde(i, l);
        f(i, l) = l == i ? -1 : (v > 0 ? v : 0);
    }
    return f;
}

inline void check_direction(std::size_t i, std::size_t n)
{
    if (i >= n)
        throw error(errc::invalid_direction,
                    "direction " + std::to_string(i + 1) + " outside [1," + std::to_string(n) + "]");
}

/// Mutation of a compatible pair. Both signs are evaluated and must agree.
inline CompatiblePair mutate_pair(const CompatiblePair& pair, std::size_t i)
{
    check_direction(i, pair.n());
    std::pair<IntMatrix, IntMatrix> results[2];
    const int signs[2] = {1, -1};
    for (int s = 0; s < 2; ++s) {
        const IntMatrix e = mutation_matrix_e(pair.btilde(), i, signs[s]);
        const IntMatrix f = mutation_matrix_f(pair.btilde(), i, signs[s]);
        results[s] = {e.transpose() * pair.lambda() * e, e * pair.btilde() * f};
    }
    if (results[0] != results[1])
        throw error(errc::epsilon_mismatch, "mutation in direction " + std::to_string(i + 1) +
                                                " depends on the sign choice");
    return CompatiblePair(std::move(results[0].first), std::move(results[0].second));
}

/// Exchange degrees d_k and coefficient families h_{k,0..d_k}.
class ExchangeData {
public:
    ExchangeData(IntVector degrees, std::vector<std::vector<QCoefficient>> h)
        : degrees_(std::move(degrees)), h_(std::move(h))
    {
        if (degrees_.size() != h_.size())
            throw error(errc::invalid_exchange_data, "one coefficient family per direction is required");
        for (std::size_t k = 0; k < degrees_.size(); ++k) {
            const auto d = degrees_[k];
            if (d <= 0)
                throw error(errc::invalid_exchange_data, "d_" + std::to_string(k + 1) + " must be positive");
            auto& family = h_[k];
            if (family.size() != static_cast<std::size_t>(d) + 1)
                throw error(errc::invalid_exchange_data, "h_" + std::to_string(k + 1) + " needs d_" +
                                                             std::to_string(k + 1) + "+1 entries");
            for (auto& coef : family)
                coef = canonical_symbols(coef);
            if (!(family.front() == QCoefficient(1)) || !(family.back() == QCoefficient(1)))
                throw error(errc::invalid_exchange_data,
                            "h_" + std::to_string(k + 1) + " must start and end with 1");
            for (std::int64_t r = 0; r <= d; ++r)
                if (!(family[static_cast<std::size_t>(r)] == family[static_cast<std::size_t>(d - r)]))
                    throw error(errc::invalid_exchange_data, "h_" + std::to_string(k + 1) + " is not palindromic");
        }
    }

    /// Families of formal symbols [1, h[k,1], h[k,2], ..., h[k,1], 1].
    static ExchangeData formal(const IntVector& degrees)
    {
        std::vector<std::vector<QCoefficient>> h;
        for (std::size_t k = 0; k < degrees.size(); ++k)
            h.push_back(formal_family(static_cast<std::int64_t>(k) + 1, degrees[k]));
        return ExchangeData(degrees, std::move(h));
    }

    static std::vector<QCoefficient> formal_family(std::int64_t family, std::int64_t d)
    {
        std::vector<QCoefficient> out;
        for (std::int64_t r = 0; r <= d; ++r) {
            const auto index = std::min(r, d - r);
            out.push_back(index == 0 ? QCoefficient(1) : QCoefficient::symbol(Symbol{family, index}));
        }
        return out;
    }

    std::size_t size() const { return degrees_.size(); }
    const IntVector& degrees() const { return degrees_; }
    std::int64_t degree(std::size_t k) const { return degrees_.at(k); }
    const std::vector<QCoefficient>& family(std::size_t k) const { return h_.at(k); }
    const QCoefficient& h(std::size_t k, std::size_t r) const { return h_.at(k).at(r); }

    /// Check that d_k divides every entry of column k.
    void validate_against(const IntMatrix& btilde) const
    {
        if (btilde.cols() != degrees_.size())
            throw error(errc::invalid_exchange_data, "exchange data size differs from n");
        for (std::size_t k = 0; k < degrees_.size(); ++k)
            for (std::size_t l = 0; l < btilde.rows(); ++l)
                if (btilde(l, k) % degrees_[k] != 0)
                    throw error(errc::invalid_exchange_data,
                                "d_" + std::to_string(k + 1) + " = " + std::to_string(degrees_[k]) +
                                    " does not divide b_" + std::to_string(l + 1) + std::to_string(k + 1));
    }

    /// beta^k = b^k / d_k
    IntVector beta(const IntMatrix& btilde, std::size_t k) const
    {
        IntVector col = btilde.column(k);
        for (auto& x : col)
            x /= degrees_[k];
        return col;
    }

    bool operator==(const ExchangeData& other) const
    {
        return degrees_ == other.degrees_ && h_ == other.h_;
    }

private:
    /// Identify h[k,r] with h[k,d_k-r] so every palindromic class has one name.
    QCoefficient canonical_symbols(const QCoefficient& coef) const
    {
        SymbolAssignment renaming;
        for (const auto& s : coef.symbols()) {
            Symbol target = s;
            if (s.family >= 1 && static_cast<std::size_t>(s.family) <= degrees_.size()) {
                const auto d = degrees_[static_cast<std::size_t>(s.family - 1)];
                if (s.index >= 0 && s.index <= d)
                    target.index = std::min(s.index, d - s.index);
            }
            renaming[s] = QCoefficient::symbol(target);
        }
        return renaming.empty() ? coef : specialize(coef, renaming);
    }

    IntVector degrees_;
    std::vector<std::vector<QCoefficient>> h_;
};

/// d_k = gcd of the entries of column k.
inline IntVector default_degrees(const IntMatrix& btilde)
{
    IntVector out(btilde.cols(), 0);
    for (std::size_t k = 0; k < btilde.cols(); ++k) {
        std::int64_t g = 0;
        for (std::size_t l = 0; l < btilde.rows(); ++l)
            g = std::gcd(g, btilde(l, k));
        if (g == 0)
            throw error(errc::rank_deficient, "column " + std::to_string(k + 1) + " of btilde is zero");
        out[k] = g;
    }
    return out;
}

/// A quantum seed: the current compatible pair together with the expansions
/// of its m cluster variables in the torus of the initial seed.
class QuantumSeed {
public:
    static QuantumSeed initial(CompatiblePair pair, ExchangeData exchange)
    {
        exchange.validate_against(pair.btilde());
        auto ctx = make_context(pair.lambda());
        std::vector<TorusElement> vars;
        for (std::size_t k = 0; k < pair.m(); ++k)
            vars.push_back(TorusElement::generator(ctx, k));
        return QuantumSeed(std::move(pair), std::make_shared<const ExchangeData>(std::move(exchange)),
                           std::move(ctx), std::move(vars), {});
    }

    const CompatiblePair& pair() const { return pair_; }
    const ExchangeData& exchange() const { return *exchange_; }
    const std::shared_ptr<const ExchangeData>& exchange_ptr() const { return exchange_; }
    const ContextPtr& initial_context() const { return initial_; }
    const std::vector<TorusElement>& vars() const { return vars_; }
    const TorusElement& var(std::size_t k) const { return vars_.at(k); }
    const std::vector<std::size_t>& history() const { return history_; }
    std::size_t m() const { return pair_.m(); }
    std::size_t n() const { return pair_.n(); }

    /// The same compatible pair and exchange data taken as a new initial seed.
    QuantumSeed rerooted() const
    {
        auto ctx = make_context(pair_.lambda());
        std::vector<TorusElement> vars;
        for (std::size_t k = 0; k < m(); ++k)
            vars.push_back(TorusElement::generator(ctx, k));
        return QuantumSeed(pair_, exchange_, std::move(ctx), std::move(vars), {});
    }

    QuantumSeed with_mutation(CompatiblePair pair, std::size_t i, TorusElement value) const
    {
        auto vars = vars_;
        vars[i] = std::move(value);
        auto history = history_;
        history.push_back(i);
        return QuantumSeed(std::move(pair), exchange_, initial_, std::move(vars), std::move(history));
    }

private:
    QuantumSeed(CompatiblePair pair, std::shared_ptr<const ExchangeData> exchange, ContextPtr initial,
                std::vector<TorusElement> vars, std::vector<std::size_t> history)
        : pair_(std::move(pair)), exchange_(std::move(exchange)), initial_(std::move(initial)),
          vars_(std::move(vars)), history_(std::move(history))
    {
    }

    CompatiblePair pair_;
    std::shared_ptr<const ExchangeData> exchange_;
    ContextPtr initial_;
    std::vector<TorusElement> vars_;
    std::vector<std::size_t> history_;
};

inline QuantumSeed make_seed(IntMatrix lambda, IntMatrix btilde)
{
    CompatiblePair pair(std::move(lambda), std::move(btilde));
    auto degrees = default_degrees(pair.btilde());
    return QuantumSeed::initial(std::move(pair), ExchangeData::formal(degrees));
}

/// q^{(1/2) sum_{l<k} v_l v_k lambda_{t,kl}} * vars[0]^{v_0} * ... * vars[m-1]^{v_{m-1}},
/// i.e. the current-cluster basis element X_t(v) written in the initial torus.
/// Negative exponents are allowed only on variables that are still unit monomials.
inline TorusElement expand_current_monomial(const QuantumSeed& seed, const IntVector& v)
{
    if (v.size() != seed.m())
        throw error(errc::dimension_mismatch, "monomial exponent has wrong length");
    const auto& lambda = seed.pair().lambda();
    std::int64_t prefactor = 0;
    for (std::size_t k = 0; k < v.size(); ++k)
        for (std::size_t l = 0; l < k; ++l)
            prefactor += v[l] * v[k] * lambda(k, l);
    TorusElement out = TorusElement::constant(seed.initial_context(), QCoefficient::q_power(prefactor));
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0)
            continue;
        const auto& x = seed.var(k);
        if (v[k] < 0 && !x.is_unit_monomial())
            throw error(errc::negative_mutable_exponent,
                        "variable " + std::to_string(k + 1) + " is not a monomial and cannot be inverted");
        out *= x.pow(v[k]);
    }
    return out;
}

/// c_r = r[beta^i]_+ + (d_i - r)[-beta^i]_+ - e_i for r = 0..d_i, relative to
/// the seed's current exchange matrix.
inline std::vector<IntVector> exchange_exponents(const QuantumSeed& seed, std::size_t i)
{
    const auto d = seed.exchange().degree(i);
    const IntVector beta = seed.exchange().beta(seed.pair().btilde(), i);
    const IntVector up = positive_part(beta);
    const IntVector down = positive_part(-beta);
    const IntVector ei = unit_vector(seed.m(), i);
    std::vector<IntVector> out;
    for (std::int64_t r = 0; r <= d; ++r)
        out.push_back(r * up + (d - r) * down - ei);
    return out;
}

/// Mutation in direction i. The new variable is obtained by an exact right
/// division in the initial torus; failure would contradict the Laurent
/// phenomenon and is reported as LaurentViolation.
inline QuantumSeed mutate_seed(const QuantumSeed& seed, std::size_t i)
{
    check_direction(i, seed.n());
    CompatiblePair mutated = mutate_pair(seed.pair(), i);
    seed.exchange().validate_against(mutated.btilde());

    const TorusContext current(seed.pair().lambda());
    const IntVector ei = unit_vector(seed.m(), i);
    const auto exponents = exchange_exponents(seed, i);
    TorusElement numerator(seed.initial_context());
    for (std::size_t r = 0; r < exponents.size(); ++r) {
        const IntVector v = exponents[r] + ei;
        // X_t(c_r) = q^{-Lambda_t(c_r + e_i, -e_i)/2} X_t(c_r + e_i) X_i^{-1}
        const auto twist = -current.form(v, -ei);
        numerator += expand_current_monomial(seed, v).scaled(seed.exchange().h(i, r).shifted_q(twist));
    }
    auto value = try_right_divide(numerator, seed.var(i));
    if (!value || !(*value * seed.var(i) == numerator))
        throw error(errc::laurent_violation, "right division by variable " + std::to_string(i + 1) +
                                                 " is not exact after word of length " +
                                                 std::to_string(seed.history().size()));
    return seed.with_mutation(std::move(mutated), i, *std::move(value));
}

inline QuantumSeed apply_word(QuantumSeed seed, const std::vector<std::size_t>& word)
{
    for (auto i : word)
        seed = mutate_seed(seed, i);
    return seed;
}

/// Strict equality: same current pair and identical expansions (no relabeling).
inline bool seed_equal(const QuantumSeed& a, const QuantumSeed& b)
{
    return a.pair() == b.pair() && a.vars() == b.vars();
}

/// X_i * X'_i computed independently as
///   sum_r h_{i,r} q^{Lambda_t(e_i, c_r)/2} X_t(c_r + e_i).
inline TorusElement exchange_product(const QuantumSeed& seed, std::size_t i)
{
    check_direction(i, seed.n());
    const TorusContext current(seed.pair().lambda());
    const IntVector ei = unit_vector(seed.m(), i);
    const auto exponents = exchange_exponents(seed, i);
    TorusElement out(seed.initial_context());
    for (std::size_t r = 0; r < exponents.size(); ++r) {
        const auto twist = current.form(ei, exponents[r]);
        out += expand_current_monomial(seed, exponents[r] + ei)
                   .scaled(seed.exchange().h(i, r).shifted_q(twist));
    }
    return out;
}

/// Canonical text of the seed, used as an identity key during exploration.
inline std::string seed_key(const QuantumSeed& seed)
{
    std::string key = to_string(seed.pair().lambda()) + "|" + to_string(seed.pair().btilde());
    for (const auto& x : seed.vars())
        key += "|" + to_string(x);
    return key;
}

} // namespace qcluster

#endif // QCLUSTER_SEED_HPP
