#ifndef QCLUSTER_TORUS_HPP
#define QCLUSTER_TORUS_HPP

// The quantum torus T(Lambda): basis X(c), c in Z^m, with
//   X(c) X(d) = q^{Lambda(c,d)/2} X(c+d).

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "coeff.hpp"
#include "error.hpp"
#include "matrix.hpp"

namespace qcluster {

class TorusContext {
public:
    explicit TorusContext(IntMatrix lambda) : lambda_(std::move(lambda))
    {
        if (lambda_.rows() != lambda_.cols())
            throw error(errc::dimension_mismatch, "lambda must be square");
        if (!lambda_.is_skew_symmetric())
            throw error(errc::not_skew_symmetric, "lambda must satisfy lambda^T = -lambda");
    }

    std::size_t dim() const { return lambda_.rows(); }
    const IntMatrix& lambda() const { return lambda_; }

    /// Lambda(a, b) = a^T Lambda b.
    std::int64_t form(const IntVector& a, const IntVector& b) const
    {
        if (a.size() != dim() || b.size() != dim())
            throw error(errc::dimension_mismatch, "skew form expects vectors of length " + std::to_string(dim()));
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < dim(); ++j)
                sum += a[i] * lambda_(i, j) * b[j];
        }
        return sum;
    }

    bool operator==(const TorusContext& other) const { return lambda_ == other.lambda_; }

private:
    IntMatrix lambda_;
};

using ContextPtr = std::shared_ptr<const TorusContext>;

inline ContextPtr make_context(IntMatrix lambda) { return std::make_shared<const TorusContext>(std::move(lambda)); }

inline std::int64_t skew_form(const TorusContext& ctx, const IntVector& a, const IntVector& b)
{
    return ctx.form(a, b);
}

namespace detail {

/// Total degree first, then lexicographic.
inline bool graded_less(const IntVector& a, const IntVector& b)
{
    std::int64_t da = 0;
    std::int64_t db = 0;
    for (auto x : a)
        da += x;
    for (auto x : b)
        db += x;
    if (da != db)
        return da < db;
    return a < b;
}

} // namespace detail

class TorusElement {
public:
    /// Terms are kept in lexicographic order of exponent vectors, which is
    /// also the canonical print order.
    using term_map = std::map<IntVector, QCoefficient>;

    explicit TorusElement(ContextPtr ctx) : ctx_(std::move(ctx))
    {
        if (!ctx_)
            throw error(errc::context_mismatch, "null torus context");
    }

    static TorusElement basis(ContextPtr ctx, IntVector c, const QCoefficient& coef = QCoefficient(1))
    {
        TorusElement out(std::move(ctx));
        out.add_term(std::move(c), coef);
        return out;
    }

    static TorusElement constant(ContextPtr ctx, const QCoefficient& coef)
    {
        const auto m = ctx->dim();
        return basis(std::move(ctx), IntVector(m, 0), coef);
    }

    /// X_k = X(e_k), zero-based k.
    static TorusElement generator(ContextPtr ctx, std::size_t k)
    {
        const auto m = ctx->dim();
        if (k >= m)
            throw error(errc::dimension_mismatch, "generator index out of range");
        return basis(std::move(ctx), unit_vector(m, k));
    }

    const ContextPtr& context() const { return ctx_; }
    std::size_t dim() const { return ctx_->dim(); }
    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    QCoefficient coefficient(const IntVector& c) const
    {
        auto it = terms_.find(c);
        return it == terms_.end() ? QCoefficient{} : it->second;
    }

    void add_term(IntVector c, const QCoefficient& coef)
    {
        if (c.size() != dim())
            throw error(errc::dimension_mismatch,
                        "exponent " + to_string(c) + " has length " + std::to_string(c.size()) + ", expected " +
                            std::to_string(dim()));
        if (coef.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(std::move(c), coef);
        if (!inserted) {
            it->second += coef;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    TorusElement& operator+=(const TorusElement& other)
    {
        check_context(other);
        for (const auto& [c, coef] : other.terms_)
            add_term(c, coef);
        return *this;
    }

    TorusElement& operator-=(const TorusElement& other)
    {
        check_context(other);
        for (const auto& [c, coef] : other.terms_)
            add_term(c, -coef);
        return *this;
    }

    TorusElement operator-() const
    {
        TorusElement out = *this;
        for (auto& [c, coef] : out.terms_)
            coef = -coef;
        return out;
    }

    friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
    friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }

    friend TorusElement operator*(const TorusElement& a, const TorusElement& b)
    {
        a.check_context(b);
        TorusElement out(a.ctx_);
        for (const auto& [c, ca] : a.terms_)
            for (const auto& [d, cb] : b.terms_)
                out.add_term(c + d, (ca * cb).shifted_q(a.ctx_->form(c, d)));
        return out;
    }

    TorusElement& operator*=(const TorusElement& other) { return *this = *this * other; }

    /// Multiply by a central scalar.
    TorusElement scaled(const QCoefficient& s) const
    {
        TorusElement out(ctx_);
        for (const auto& [c, coef] : terms_)
            out.add_term(c, coef * s);
        return out;
    }

    TorusElement shifted_q(std::int64_t half_exponent) const
    {
        TorusElement out = *this;
        for (auto& [c, coef] : out.terms_)
            coef = coef.shifted_q(half_exponent);
        return out;
    }

    friend bool operator==(const TorusElement& a, const TorusElement& b)
    {
        return *a.ctx_ == *b.ctx_ && a.terms_ == b.terms_;
    }

    /// Single term whose coefficient is a ring unit; these are exactly the
    /// invertible elements handled by inverse().
    bool is_unit_monomial() const { return terms_.size() == 1 && terms_.begin()->second.is_unit(); }

    TorusElement inverse() const
    {
        if (!is_unit_monomial())
            throw error(errc::not_divisible, "only unit monomials are invertible in the torus");
        const auto& [c, coef] = *terms_.begin();
        const auto& [mono, sign] = coef.leading();
        // (s q^{a/2} X(c))^{-1} = s q^{-a/2} X(-c), since X(c)X(-c) = 1.
        return basis(ctx_, -c, QCoefficient::monomial(CoeffMonomial{{}, -mono.qexp}, sign));
    }

    /// Non-negative powers for any element; negative powers for unit monomials.
    TorusElement pow(std::int64_t n) const
    {
        if (n < 0)
            return inverse().pow(-n);
        TorusElement out = constant(ctx_, 1);
        TorusElement base = *this;
        auto k = static_cast<std::uint64_t>(n);
        while (k != 0) {
            if (k & 1U)
                out *= base;
            k >>= 1U;
            if (k != 0)
                base *= base;
        }
        return out;
    }

    TorusElement at_q_one() const
    {
        TorusElement out(ctx_);
        for (const auto& [c, coef] : terms_)
            out.add_term(c, coef.at_q_one());
        return out;
    }

    TorusElement specialized(const SymbolAssignment& assignment) const
    {
        TorusElement out(ctx_);
        for (const auto& [c, coef] : terms_)
            out.add_term(c, specialize(coef, assignment));
        return out;
    }

    bool is_nonneg() const
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_nonneg(); });
    }

    /// Leading term in the graded order (total degree, then lex).
    term_map::const_iterator graded_leading() const
    {
        auto best = terms_.begin();
        for (auto it = terms_.begin(); it != terms_.end(); ++it)
            if (detail::graded_less(best->first, it->first))
                best = it;
        return best;
    }

    /// Component-wise minimum and maximum of the support.
    std::pair<IntVector, IntVector> support_box() const
    {
        IntVector lo = terms_.begin()->first;
        IntVector hi = lo;
        for (const auto& [c, coef] : terms_)
            for (std::size_t i = 0; i < c.size(); ++i) {
                lo[i] = std::min(lo[i], c[i]);
                hi[i] = std::max(hi[i], c[i]);
            }
        return {lo, hi};
    }

    void check_context(const TorusElement& other) const
    {
        if (ctx_ != other.ctx_ && !(*ctx_ == *other.ctx_))
            throw error(errc::context_mismatch, "elements belong to different quantum tori");
    }

private:
    ContextPtr ctx_;
    term_map terms_;
};

enum class Side { left, right };

namespace detail {

/// Solves Q*D = N (Side::right) or D*Q = N (Side::left).
///
/// Every coordinate grading of the torus is multiplicative on extreme
/// degrees, so the support of a true quotient lies in the box
/// [min(N) - min(D), max(N) - max(D)]. Graded-lex leading-term elimination
/// then visits strictly decreasing candidates inside that finite box.
inline std::optional<TorusElement> try_divide(const TorusElement& numerator, const TorusElement& divisor, Side side)
{
    numerator.check_context(divisor);
    if (divisor.is_zero())
        throw error(errc::division_by_zero, "torus division by zero");
    const auto& ctx = numerator.context();
    TorusElement quotient(ctx);
    if (numerator.is_zero())
        return quotient;

    const auto [n_lo, n_hi] = numerator.support_box();
    const auto [d_lo, d_hi] = divisor.support_box();
    const IntVector box_lo = n_lo - d_lo;
    const IntVector box_hi = n_hi - d_hi;
    for (std::size_t i = 0; i < box_lo.size(); ++i)
        if (box_lo[i] > box_hi[i])
            return std::nullopt;

    const auto lead = divisor.graded_leading();
    const IntVector& g = lead->first;
    const QCoefficient& lead_coef = lead->second;

    TorusElement rem = numerator;
    while (!rem.is_zero()) {
        const auto top = rem.graded_leading();
        IntVector e = top->first - g;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] < box_lo[i] || e[i] > box_hi[i])
                return std::nullopt;
        auto c = qcluster::try_divide(top->second, lead_coef);
        if (!c)
            return std::nullopt;
        const auto twist = side == Side::right ? ctx->form(e, g) : ctx->form(g, e);
        const auto step = TorusElement::basis(ctx, std::move(e), c->shifted_q(-twist));
        quotient += step;
        rem -= side == Side::right ? step * divisor : divisor * step;
    }
    return quotient;
}

} // namespace detail

inline std::optional<TorusElement> try_right_divide(const TorusElement& numerator, const TorusElement& divisor)
{
    return detail::try_divide(numerator, divisor, Side::right);
}

inline std::optional<TorusElement> try_left_divide(const TorusElement& numerator, const TorusElement& divisor)
{
    return detail::try_divide(numerator, divisor, Side::left);
}

/// Q with Q * divisor == numerator; throws NotDivisible otherwise.
inline TorusElement right_divide_exact(const TorusElement& numerator, const TorusElement& divisor)
{
    auto q = try_right_divide(numerator, divisor);
    if (!q || !(*q * divisor == numerator))
        throw error(errc::not_divisible, "no exact right quotient in the quantum torus");
    return *std::move(q);
}

/// Q with divisor * Q == numerator; throws NotDivisible otherwise.
inline TorusElement left_divide_exact(const TorusElement& numerator, const TorusElement& divisor)
{
    auto q = try_left_divide(numerator, divisor);
    if (!q || !(divisor * *q == numerator))
        throw error(errc::not_divisible, "no exact left quotient in the quantum torus");
    return *std::move(q);
}

/// Integer t with A*B = q^t * B*A, if one exists.
inline std::optional<std::int64_t> q_commutation_exponent(const TorusElement& a, const TorusElement& b)
{
    a.check_context(b);
    if (a.is_zero() || b.is_zero())
        return std::nullopt;
    const TorusElement ab = a * b;
    const TorusElement ba = b * a;
    if (ab.is_zero() || ba.is_zero())
        return std::nullopt;
    const auto top = ab.graded_leading();
    const auto other = ba.coefficient(top->first);
    if (other.is_zero())
        return std::nullopt;
    const auto ratio = try_divide(top->second, other);
    if (!ratio || !ratio->is_unit() || ratio->leading().second != 1)
        return std::nullopt;
    const auto half = ratio->leading().first.qexp;
    if (half % 2 != 0)
        return std::nullopt;
    if (!(ab == ba.shifted_q(half)))
        return std::nullopt;
    return half / 2;
}

namespace detail {

inline std::string join_terms(const std::vector<std::pair<QCoefficient, std::string>>& terms)
{
    if (terms.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [coef, basis] : terms) {
        std::string body;
        bool negative = false;
        if (coef.size() == 1) {
            const auto& [mono, c] = *coef.terms().begin();
            negative = c < 0;
            const integer magnitude = negative ? integer(-c) : c;
            if (basis.empty()) {
                body = monomial_body(mono, magnitude);
            } else if (magnitude == 1 && !mono.has_symbols() && mono.qexp == 0) {
                body = basis;
            } else {
                body = monomial_body(mono, magnitude) + "*" + basis;
            }
        } else {
            body = "(" + to_string(coef) + ")";
            if (!basis.empty())
                body += "*" + basis;
        }
        if (negative)
            out += '-';
        else if (!first)
            out += '+';
        out += body;
        first = false;
    }
    return out;
}

} // namespace detail

/// Canonical text: terms in lexicographic order of exponents, each printed
/// as `coeff*X(c1,...,cm)`; the X(0,...,0) term prints as its coefficient.
inline std::string to_string(const TorusElement& e)
{
    std::vector<std::pair<QCoefficient, std::string>> terms;
    for (const auto& [c, coef] : e.terms()) {
        const bool trivial = std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; });
        terms.emplace_back(coef, trivial ? std::string{} : "X" + to_string(c));
    }
    return detail::join_terms(terms);
}

inline std::ostream& operator<<(std::ostream& os, const TorusElement& e) { return os << to_string(e); }

/// Render in ordered monomials X1^c1*...*Xm^cm using
///   X(c) = q^{(1/2) sum_{l<k} c_l c_k lambda_{kl}} X1^c1 ... Xm^cm.
inline std::string ordered_form(const TorusElement& e)
{
    const auto& lambda = e.context()->lambda();
    std::vector<std::pair<QCoefficient, std::string>> terms;
    for (const auto& [c, coef] : e.terms()) {
        std::int64_t prefactor = 0;
        for (std::size_t k = 0; k < c.size(); ++k)
            for (std::size_t l = 0; l < k; ++l)
                prefactor += c[l] * c[k] * lambda(k, l);
        std::string basis;
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0)
                continue;
            if (!basis.empty())
                basis += '*';
            basis += "X" + std::to_string(k + 1);
            if (c[k] < 0)
                basis += "^(" + std::to_string(c[k]) + ")";
            else if (c[k] != 1)
                basis += "^" + std::to_string(c[k]);
        }
        terms.emplace_back(coef.shifted_q(prefactor), basis);
    }
    return detail::join_terms(terms);
}

} // namespace qcluster

#endif // QCLUSTER_TORUS_HPP
