#ifndef QCLUSTER_PARSE_HPP
#define QCLUSTER_PARSE_HPP

// Text syntax shared by coefficients and torus elements:
//
//   expr     := ['+'|'-'] term (('+'|'-') term)*
//   term     := power ('*' power)*
//   power    := atom ['^' exponent]
//   atom     := integer | 'q' | 'h[' int ',' int ']'
//             | 'X(' int (',' int)* ')' | 'X' digits | '(' expr ')'
//   exponent := integer | '(' ['-'] integer ['/' '2'] ')'
//
// Only q accepts the half-integer form. Whitespace is insignificant.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "coeff.hpp"
#include "error.hpp"
#include "torus.hpp"

namespace qcluster {

namespace detail {

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, ContextPtr ctx) : text_(text), ctx_(std::move(ctx)) {}

    TorusElement parse()
    {
        TorusElement value = expr();
        skip_space();
        if (pos_ != text_.size())
            throw syntax_error(pos_, "unexpected character '" + std::string(1, text_[pos_]) + "'");
        return value;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek(char c)
    {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c)
    {
        if (!peek(c))
            return false;
        ++pos_;
        return true;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            if (pos_ >= text_.size())
                throw syntax_error(pos_, std::string("expected '") + c + "' but reached end of input");
            throw syntax_error(pos_, std::string("expected '") + c + "'");
        }
    }

    std::int64_t unsigned_integer()
    {
        skip_space();
        const auto start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            throw syntax_error(pos_, "expected integer");
        try {
            return std::stoll(std::string(text_.substr(start, pos_ - start)));
        } catch (const std::out_of_range&) {
            throw syntax_error(start, "integer out of range");
        }
    }

    std::int64_t signed_integer()
    {
        const bool negative = accept('-');
        if (!negative)
            accept('+');
        const auto v = unsigned_integer();
        return negative ? -v : v;
    }

    TorusElement constant(const QCoefficient& c) const { return TorusElement::constant(ctx_, c); }

    TorusElement expr()
    {
        bool negative = false;
        if (accept('-'))
            negative = true;
        else
            accept('+');
        TorusElement value = term();
        if (negative)
            value = -value;
        for (;;) {
            if (accept('+'))
                value += term();
            else if (accept('-'))
                value -= term();
            else
                return value;
        }
    }

    TorusElement term()
    {
        TorusElement value = power();
        while (accept('*'))
            value *= power();
        return value;
    }

    TorusElement power()
    {
        skip_space();
        const bool is_q = pos_ < text_.size() && text_[pos_] == 'q';
        TorusElement base = atom();
        if (!accept('^'))
            return base;
        const auto where = pos_;
        if (is_q)
            return constant(QCoefficient::q_power(q_exponent()));
        const auto n = integer_exponent();
        if (n < 0 && !base.is_unit_monomial())
            throw syntax_error(where, "negative power of a non-invertible factor");
        return base.pow(n);
    }

    // Exponent of q in units of q^{1/2}.
    std::int64_t q_exponent()
    {
        if (!accept('('))
            return 2 * unsigned_integer();
        const auto numerator = signed_integer();
        std::int64_t half = 2 * numerator;
        if (accept('/')) {
            const auto where = pos_;
            const auto denominator = unsigned_integer();
            if (denominator != 2 && denominator != 1)
                throw syntax_error(where, "only half-integer exponents of q are allowed");
            half = denominator == 2 ? numerator : 2 * numerator;
        }
        expect(')');
        return half;
    }

    std::int64_t integer_exponent()
    {
        if (!accept('('))
            return unsigned_integer();
        const auto n = signed_integer();
        expect(')');
        return n;
    }

    TorusElement atom()
    {
        skip_space();
        if (pos_ >= text_.size())
            throw syntax_error(pos_, "unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const auto start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return constant(QCoefficient(integer(std::string(text_.substr(start, pos_ - start)))));
        }
        if (c == 'q') {
            ++pos_;
            return constant(QCoefficient::q_power(2));
        }
        if (c == 'h') {
            ++pos_;
            expect('[');
            const auto family = signed_integer();
            expect(',');
            const auto index = signed_integer();
            expect(']');
            return constant(QCoefficient::symbol(Symbol{family, index}));
        }
        if (c == 'X') {
            ++pos_;
            const auto where = pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                const auto k = unsigned_integer();
                if (k < 1 || static_cast<std::size_t>(k) > ctx_->dim())
                    throw error(errc::dimension_mismatch,
                                "generator X" + std::to_string(k) + " outside rank " + std::to_string(ctx_->dim()) +
                                    " at position " + std::to_string(where));
                return TorusElement::generator(ctx_, static_cast<std::size_t>(k - 1));
            }
            expect('(');
            IntVector exponent{signed_integer()};
            while (accept(','))
                exponent.push_back(signed_integer());
            expect(')');
            if (exponent.size() != ctx_->dim())
                throw error(errc::dimension_mismatch,
                            "basis element with " + std::to_string(exponent.size()) + " exponents in rank " +
                                std::to_string(ctx_->dim()) + " torus at position " + std::to_string(where));
            return TorusElement::basis(ctx_, std::move(exponent));
        }
        if (c == '(') {
            ++pos_;
            TorusElement inner = expr();
            expect(')');
            return inner;
        }
        throw syntax_error(pos_, "unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    ContextPtr ctx_;
    std::size_t pos_ = 0;
};

inline const ContextPtr& scalar_context()
{
    static const ContextPtr ctx = make_context(IntMatrix(0, 0));
    return ctx;
}

} // namespace detail

/// Parse an element of the torus described by ctx.
inline TorusElement parse_element(std::string_view text, const ContextPtr& ctx)
{
    return detail::ExpressionParser(text, ctx).parse();
}

/// Parse a coefficient; basis elements are rejected.
inline QCoefficient parse_coefficient(std::string_view text)
{
    try {
        const auto value = detail::ExpressionParser(text, detail::scalar_context()).parse();
        return value.coefficient(IntVector{});
    } catch (const error& e) {
        if (e.code() == errc::dimension_mismatch)
            throw syntax_error(0, "basis elements are not allowed in a coefficient");
        throw;
    }
}

} // namespace qcluster

#endif // QCLUSTER_PARSE_HPP
