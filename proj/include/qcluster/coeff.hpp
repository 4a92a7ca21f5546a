#ifndef QCLUSTER_COEFF_HPP
#define QCLUSTER_COEFF_HPP

// Exact arithmetic in the commutative coefficient ring Z[H][q^{+-1/2}]:
// Laurent polynomials in q^{1/2} whose coefficients are integer polynomials
// in a finite set of formal symbols h[k,r].

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace qcluster {

using integer = boost::multiprecision::cpp_int;

/// A formal exchange symbol h[family,index].
struct Symbol {
    std::int64_t family = 0;
    std::int64_t index = 0;

    auto operator<=>(const Symbol&) const = default;
};

inline std::string to_string(const Symbol& s)
{
    return "h[" + std::to_string(s.family) + "," + std::to_string(s.index) + "]";
}

/// Monomial h^a * q^{qexp/2}. Symbol powers are kept sorted by symbol and
/// strictly positive; qexp counts powers of q^{1/2}.
struct CoeffMonomial {
    std::vector<std::pair<Symbol, std::int64_t>> powers;
    std::int64_t qexp = 0;

    bool operator==(const CoeffMonomial&) const = default;

    std::int64_t degree() const
    {
        std::int64_t d = 0;
        for (const auto& [s, p] : powers)
            d += p;
        return d;
    }

    std::int64_t power_of(const Symbol& s) const
    {
        auto it = std::lower_bound(powers.begin(), powers.end(), s,
                                   [](const auto& entry, const Symbol& key) { return entry.first < key; });
        return (it != powers.end() && it->first == s) ? it->second : 0;
    }

    bool has_symbols() const { return !powers.empty(); }
};

inline CoeffMonomial operator*(const CoeffMonomial& a, const CoeffMonomial& b)
{
    CoeffMonomial out;
    out.qexp = a.qexp + b.qexp;
    out.powers.reserve(a.powers.size() + b.powers.size());
    auto i = a.powers.begin();
    auto j = b.powers.begin();
    while (i != a.powers.end() || j != b.powers.end()) {
        if (j == b.powers.end() || (i != a.powers.end() && i->first < j->first)) {
            out.powers.push_back(*i++);
        } else if (i == a.powers.end() || j->first < i->first) {
            out.powers.push_back(*j++);
        } else {
            out.powers.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return out;
}

/// Graded order on the symbol part (lex with smaller symbols more
/// significant), ties broken by the q-exponent. Compatible with
/// multiplication, so leading terms multiply.
struct MonomialOrder {
    bool operator()(const CoeffMonomial& a, const CoeffMonomial& b) const
    {
        const auto da = a.degree();
        const auto db = b.degree();
        if (da != db)
            return da < db;
        auto i = a.powers.begin();
        auto j = b.powers.begin();
        while (i != a.powers.end() && j != b.powers.end()) {
            if (i->first != j->first)
                return j->first < i->first; // b has the smaller symbol with a positive power
            if (i->second != j->second)
                return i->second < j->second;
            ++i;
            ++j;
        }
        if (i != a.powers.end() || j != b.powers.end())
            return i == a.powers.end();
        return a.qexp < b.qexp;
    }
};

class QCoefficient {
public:
    using term_map = std::map<CoeffMonomial, integer, MonomialOrder>;

    QCoefficient() = default;
    QCoefficient(long long value) // NOLINT(google-explicit-constructor)
    {
        if (value != 0)
            terms_.emplace(CoeffMonomial{}, integer(value));
    }
    explicit QCoefficient(const integer& value)
    {
        if (value != 0)
            terms_.emplace(CoeffMonomial{}, value);
    }

    static QCoefficient monomial(CoeffMonomial mono, const integer& value)
    {
        QCoefficient out;
        if (value != 0)
            out.terms_.emplace(std::move(mono), value);
        return out;
    }

    /// q^{half_exponent / 2}
    static QCoefficient q_power(std::int64_t half_exponent)
    {
        return monomial(CoeffMonomial{{}, half_exponent}, 1);
    }

    static QCoefficient symbol(const Symbol& s, std::int64_t power = 1)
    {
        if (power <= 0)
            return QCoefficient(1);
        return monomial(CoeffMonomial{{{s, power}}, 0}, 1);
    }

    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Units of the ring are exactly +-q^{k/2}.
    bool is_unit() const
    {
        if (terms_.size() != 1)
            return false;
        const auto& [mono, c] = *terms_.begin();
        return !mono.has_symbols() && (c == 1 || c == -1);
    }

    bool is_nonneg() const
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
    }

    bool has_symbols() const
    {
        return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.has_symbols(); });
    }

    std::set<Symbol> symbols() const
    {
        std::set<Symbol> out;
        for (const auto& [mono, c] : terms_)
            for (const auto& [s, p] : mono.powers)
                out.insert(s);
        return out;
    }

    /// Leading term with respect to MonomialOrder. Precondition: nonzero.
    const std::pair<const CoeffMonomial, integer>& leading() const { return *terms_.rbegin(); }

    /// Multiply by q^{half_exponent/2}.
    QCoefficient shifted_q(std::int64_t half_exponent) const
    {
        if (half_exponent == 0)
            return *this;
        QCoefficient out;
        for (const auto& [mono, c] : terms_) {
            CoeffMonomial m = mono;
            m.qexp += half_exponent;
            out.terms_.emplace_hint(out.terms_.end(), std::move(m), c);
        }
        return out;
    }

    QCoefficient& operator+=(const QCoefficient& other)
    {
        for (const auto& [mono, c] : other.terms_)
            accumulate(mono, c);
        return *this;
    }

    QCoefficient& operator-=(const QCoefficient& other)
    {
        for (const auto& [mono, c] : other.terms_)
            accumulate(mono, -c);
        return *this;
    }

    QCoefficient operator-() const
    {
        QCoefficient out = *this;
        for (auto& [mono, c] : out.terms_)
            c = -c;
        return out;
    }

    friend QCoefficient operator+(QCoefficient a, const QCoefficient& b) { return a += b; }
    friend QCoefficient operator-(QCoefficient a, const QCoefficient& b) { return a -= b; }

    friend QCoefficient operator*(const QCoefficient& a, const QCoefficient& b)
    {
        QCoefficient out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                out.accumulate(ma * mb, ca * cb);
        return out;
    }

    QCoefficient& operator*=(const QCoefficient& other) { return *this = *this * other; }

    friend bool operator==(const QCoefficient& a, const QCoefficient& b) { return a.terms_ == b.terms_; }

    QCoefficient pow(std::uint64_t n) const
    {
        QCoefficient out(1);
        QCoefficient base = *this;
        while (n != 0) {
            if (n & 1U)
                out *= base;
            n >>= 1U;
            if (n != 0)
                base *= base;
        }
        return out;
    }

    /// Sum over q-exponents, i.e. the image under q^{1/2} -> 1.
    QCoefficient at_q_one() const
    {
        QCoefficient out;
        for (const auto& [mono, c] : terms_) {
            CoeffMonomial m = mono;
            m.qexp = 0;
            out.accumulate(m, c);
        }
        return out;
    }

    void accumulate(const CoeffMonomial& mono, const integer& value)
    {
        if (value == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(mono, value);
        if (!inserted) {
            it->second += value;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

private:
    term_map terms_;
};

namespace detail {

struct ExponentRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

inline ExponentRange q_range(const QCoefficient& a)
{
    ExponentRange r{a.terms().begin()->first.qexp, a.terms().begin()->first.qexp};
    for (const auto& [mono, c] : a.terms()) {
        r.lo = std::min(r.lo, mono.qexp);
        r.hi = std::max(r.hi, mono.qexp);
    }
    return r;
}

inline ExponentRange symbol_range(const QCoefficient& a, const Symbol& s)
{
    bool first = true;
    ExponentRange r;
    for (const auto& [mono, c] : a.terms()) {
        const auto p = mono.power_of(s);
        if (first) {
            r = {p, p};
            first = false;
        } else {
            r.lo = std::min(r.lo, p);
            r.hi = std::max(r.hi, p);
        }
    }
    return r;
}

} // namespace detail

/// Exact quotient c with c*b == a, or nullopt when none exists in the ring.
///
/// Leading-term elimination. Every exponent of a true quotient lies in the
/// box [min(a) - min(b), max(a) - max(b)] (per variable), so the
/// strictly decreasing sequence of candidate exponents is finite.
inline std::optional<QCoefficient> try_divide(const QCoefficient& a, const QCoefficient& b)
{
    if (b.is_zero())
        throw error(errc::division_by_zero, "coefficient division by zero");
    if (a.is_zero())
        return QCoefficient{};

    std::set<Symbol> vars = a.symbols();
    for (const auto& s : b.symbols())
        vars.insert(s);

    const auto qa = detail::q_range(a);
    const auto qb = detail::q_range(b);
    const detail::ExponentRange qbox{qa.lo - qb.lo, qa.hi - qb.hi};
    std::map<Symbol, detail::ExponentRange> box;
    for (const auto& s : vars) {
        const auto ra = detail::symbol_range(a, s);
        const auto rb = detail::symbol_range(b, s);
        box[s] = {std::max<std::int64_t>(0, ra.lo - rb.lo), ra.hi - rb.hi};
    }

    const auto& [lead_mono, lead_coef] = b.leading();
    QCoefficient quotient;
    QCoefficient rem = a;
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading();
        CoeffMonomial e;
        e.qexp = rm.qexp - lead_mono.qexp;
        if (e.qexp < qbox.lo || e.qexp > qbox.hi)
            return std::nullopt;
        for (const auto& [s, range] : box) {
            const auto p = rm.power_of(s) - lead_mono.power_of(s);
            if (p < range.lo || p > range.hi)
                return std::nullopt;
            if (p > 0)
                e.powers.emplace_back(s, p);
        }
        if (rc % lead_coef != 0)
            return std::nullopt;
        const auto step = QCoefficient::monomial(std::move(e), rc / lead_coef);
        quotient += step;
        rem -= step * b;
    }
    return quotient;
}

inline QCoefficient divide_exact(const QCoefficient& a, const QCoefficient& b)
{
    auto quotient = try_divide(a, b);
    if (!quotient)
        throw error(errc::not_divisible, "coefficient has no exact quotient");
    if (*quotient * b != a)
        throw error(errc::not_divisible, "coefficient quotient failed verification");
    return *std::move(quotient);
}

using SymbolAssignment = std::map<Symbol, QCoefficient>;

/// Substitute every symbol by its assigned value.
inline QCoefficient specialize(const QCoefficient& a, const SymbolAssignment& assignment)
{
    QCoefficient out;
    for (const auto& [mono, c] : a.terms()) {
        QCoefficient term = QCoefficient::monomial(CoeffMonomial{{}, mono.qexp}, c);
        for (const auto& [s, p] : mono.powers) {
            auto it = assignment.find(s);
            if (it == assignment.end())
                throw error(errc::missing_assignment, "no value for " + to_string(s));
            term *= it->second.pow(static_cast<std::uint64_t>(p));
        }
        out += term;
    }
    return out;
}

inline bool is_nonneg(const QCoefficient& a) { return a.is_nonneg(); }

namespace detail {

inline std::string q_factor(std::int64_t qexp)
{
    if (qexp % 2 == 0) {
        const auto k = qexp / 2;
        if (k == 1)
            return "q";
        if (k > 0)
            return "q^" + std::to_string(k);
        return "q^(" + std::to_string(k) + ")";
    }
    return "q^(" + std::to_string(qexp) + "/2)";
}

/// Unsigned text of one term; the caller supplies the sign.
inline std::string monomial_body(const CoeffMonomial& mono, const integer& magnitude)
{
    std::vector<std::string> factors;
    for (const auto& [s, p] : mono.powers)
        factors.push_back(p == 1 ? to_string(s) : to_string(s) + "^" + std::to_string(p));
    if (mono.qexp != 0)
        factors.push_back(q_factor(mono.qexp));
    std::string out;
    if (magnitude != 1 || factors.empty())
        out = magnitude.str();
    for (const auto& f : factors) {
        if (!out.empty())
            out += '*';
        out += f;
    }
    return out;
}

} // namespace detail

/// Canonical text: terms ascending in MonomialOrder, no whitespace.
inline std::string to_string(const QCoefficient& a)
{
    if (a.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : a.terms()) {
        const bool negative = c < 0;
        if (negative)
            out += '-';
        else if (!first)
            out += '+';
        out += detail::monomial_body(mono, negative ? integer(-c) : c);
        first = false;
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const QCoefficient& a) { return os << to_string(a); }

} // namespace qcluster

#endif // QCLUSTER_COEFF_HPP
