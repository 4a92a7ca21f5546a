#include <gtest/gtest.h>

#include "support.hpp"

using namespace qcluster;

namespace {

TorusElement x(const ContextPtr& ctx, IntVector c, QCoefficient coef = QCoefficient(1))
{
    return TorusElement::basis(ctx, std::move(c), coef);
}

QCoefficient q(std::int64_t half) { return QCoefficient::q_power(half); }

template <class F>
errc code_of(F&& f)
{
    try {
        f();
    } catch (const error& e) {
        return e.code();
    }
    return errc::syntax_error;
}

} // namespace

TEST(Torus, SkewForm)
{
    const auto ctx = qtest::plane();
    EXPECT_EQ(skew_form(*ctx, {1, 0}, {0, 1}), 1);
    EXPECT_EQ(skew_form(*ctx, {2, -5}, {2, -5}), 0);
    EXPECT_EQ(skew_form(*ctx, {1, 1}, {1, -1}), -2);
    EXPECT_EQ(code_of([&] { skew_form(*ctx, {1, 0, 0}, {0, 1}); }), errc::dimension_mismatch);
}

TEST(Torus, ContextRejectsNonSkewMatrix)
{
    EXPECT_EQ(code_of([] { make_context(IntMatrix{{0, 1}, {1, 0}}); }), errc::not_skew_symmetric);
}

TEST(Torus, ProductOfGenerators)
{
    const auto ctx = qtest::plane();
    EXPECT_EQ(x(ctx, {1, 0}) * x(ctx, {0, 1}), x(ctx, {1, 1}, q(1)));
}

TEST(Torus, InverseBasisElements)
{
    const auto ctx = qtest::plane();
    EXPECT_EQ(x(ctx, {2, -3}) * x(ctx, {-2, 3}), TorusElement::constant(ctx, 1));
    EXPECT_EQ(x(ctx, {2, -3}).inverse(), x(ctx, {-2, 3}));
}

TEST(Torus, TermwiseProduct)
{
    const auto ctx = qtest::plane();
    const auto lhs = (x(ctx, {1, 0}) + x(ctx, {0, 1})) * x(ctx, {1, 0});
    EXPECT_EQ(lhs, x(ctx, {2, 0}) + x(ctx, {1, 1}, q(-1)));
}

TEST(Torus, ContextMismatch)
{
    const auto a = qtest::plane();
    const auto b = qtest::plane();
    const auto other = make_context(IntMatrix{{0, 2}, {-2, 0}});
    EXPECT_NO_THROW(x(a, {1, 0}) * x(b, {0, 1}));
    EXPECT_EQ(code_of([&] { x(a, {1, 0}) * x(other, {0, 1}); }), errc::context_mismatch);
}

TEST(Torus, RightDivisionOfMonomials)
{
    const auto ctx = qtest::plane();
    EXPECT_EQ(right_divide_exact(x(ctx, {1, 1}), x(ctx, {0, 1})), x(ctx, {1, 0}, q(-1)));
}

TEST(Torus, LeftDivisionOfMonomials)
{
    const auto ctx = qtest::plane();
    EXPECT_EQ(left_divide_exact(x(ctx, {1, 1}), x(ctx, {0, 1})), x(ctx, {1, 0}, q(1)));
}

TEST(Torus, IndivisibleSums)
{
    const auto ctx = qtest::plane();
    const auto one = TorusElement::constant(ctx, 1);
    const auto n = x(ctx, {1, 0}) + one;
    const auto d = x(ctx, {0, 1}) + one;
    EXPECT_EQ(code_of([&] { right_divide_exact(n, d); }), errc::not_divisible);
    EXPECT_EQ(code_of([&] { left_divide_exact(n, d); }), errc::not_divisible);
    EXPECT_FALSE(try_right_divide(n, d));
}

TEST(Torus, DivisionByZero)
{
    const auto ctx = qtest::plane();
    EXPECT_EQ(code_of([&] { right_divide_exact(x(ctx, {1, 0}), TorusElement(ctx)); }), errc::division_by_zero);
}

TEST(Torus, CommutationOfGenerators)
{
    const auto ctx = qtest::plane();
    EXPECT_EQ(q_commutation_exponent(x(ctx, {1, 0}), x(ctx, {0, 1})), 1);
    const auto a = x(ctx, {1, 0}) + x(ctx, {3, 1});
    EXPECT_EQ(q_commutation_exponent(a, a), 0);
    EXPECT_FALSE(q_commutation_exponent(x(ctx, {1, 0}) + x(ctx, {0, 1}), x(ctx, {1, 0})));
}

TEST(Torus, CommutationOfAdjacentG2Variables)
{
    const auto seed = qtest::load_seed("g2.json");
    const auto x3 = apply_word(seed, {0}).var(0);
    const auto x4 = apply_word(seed, {0, 1}).var(1);
    EXPECT_EQ(q_commutation_exponent(x3, x4), 1);
}

TEST(Torus, OrderedForm)
{
    const auto ctx = qtest::plane();
    EXPECT_EQ(ordered_form(x(ctx, {1, 1})), "q^(-1/2)*X1*X2");
    EXPECT_EQ(ordered_form(x(ctx, {1, 0})), "X1");
    EXPECT_EQ(ordered_form(TorusElement(ctx)), "0");
    EXPECT_EQ(ordered_form(x(ctx, {-1, 2})), "q*X1^(-1)*X2^2");
}

TEST(Torus, CanonicalText)
{
    const auto ctx = qtest::plane();
    EXPECT_EQ(to_string(TorusElement(ctx)), "0");
    EXPECT_EQ(to_string(TorusElement::constant(ctx, 3)), "3");
    const auto e = x(ctx, {0, 1}, q(1) + q(-1)) - x(ctx, {-1, 0});
    EXPECT_EQ(to_string(e), "-X(-1,0)+(q^(-1/2)+q^(1/2))*X(0,1)");
}

TEST(Torus, PowersAndUnits)
{
    const auto ctx = qtest::plane();
    const auto g = x(ctx, {1, 0}) + TorusElement::constant(ctx, 1);
    EXPECT_EQ(g.pow(3), g * g * g);
    EXPECT_EQ(g.pow(0), TorusElement::constant(ctx, 1));
    EXPECT_EQ(x(ctx, {1, 2}).pow(-2), x(ctx, {-2, -4}));
    EXPECT_FALSE(g.is_unit_monomial());
    EXPECT_TRUE(x(ctx, {1, 2}, q(3)).is_unit_monomial());
}

TEST(Torus, AssociativityOnRandomTriples)
{
    qtest::Random rng(21);
    const auto ctx = make_context(IntMatrix{{0, 1, -2}, {-1, 0, 3}, {2, -3, 0}});
    for (int t = 0; t < 150; ++t) {
        const auto a = rng.element(ctx);
        const auto b = rng.element(ctx);
        const auto c = rng.element(ctx);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
    }
}

TEST(Torus, CommutationLawOnRandomBasisPairs)
{
    qtest::Random rng(22);
    const auto ctx = make_context(IntMatrix{{0, 1, -2}, {-1, 0, 3}, {2, -3, 0}});
    for (int t = 0; t < 200; ++t) {
        const auto c = rng.vector(3);
        const auto d = rng.vector(3);
        EXPECT_EQ(x(ctx, c) * x(ctx, d), (x(ctx, d) * x(ctx, c)).shifted_q(2 * ctx->form(c, d)));
        EXPECT_EQ(q_commutation_exponent(x(ctx, c), x(ctx, d)), ctx->form(c, d));
    }
}

TEST(Torus, DivisionRoundTrips)
{
    qtest::Random rng(23);
    const auto ctx = make_context(IntMatrix{{0, 1, -2}, {-1, 0, 3}, {2, -3, 0}});
    for (int t = 0; t < 200; ++t) {
        const auto a = rng.element(ctx);
        const auto d = rng.element(ctx);
        EXPECT_EQ(right_divide_exact(a * d, d), a);
        EXPECT_EQ(left_divide_exact(d * a, d), a);
    }
}

TEST(Torus, SuccessfulDivisionMultipliesBack)
{
    qtest::Random rng(24);
    const auto ctx = qtest::plane();
    int divided = 0;
    for (int t = 0; t < 400; ++t) {
        const auto n = rng.element(ctx, 2, 1);
        const auto d = rng.element(ctx, 2, 1);
        if (const auto quotient = try_right_divide(n, d)) {
            EXPECT_EQ(*quotient * d, n);
            ++divided;
        }
    }
    EXPECT_GT(divided, 0);
}

TEST(Torus, TextAndOrderedFormRoundTrip)
{
    qtest::Random rng(25);
    const auto ctx = make_context(IntMatrix{{0, 1, -2}, {-1, 0, 3}, {2, -3, 0}});
    for (int t = 0; t < 150; ++t) {
        const auto a = rng.element(ctx, 4);
        EXPECT_EQ(parse_element(to_string(a), ctx), a);
        EXPECT_EQ(parse_element(ordered_form(a), ctx), a);
    }
}

TEST(Torus, SpecializationAndPositivity)
{
    const auto ctx = qtest::plane();
    const auto e = x(ctx, {1, 0}, QCoefficient::symbol(qtest::h11) * q(1)) + x(ctx, {0, 1});
    EXPECT_TRUE(e.is_nonneg());
    EXPECT_FALSE((e - x(ctx, {0, 0})).is_nonneg());
    const auto s = e.specialized({{qtest::h11, QCoefficient(2)}});
    EXPECT_EQ(s, x(ctx, {1, 0}, 2 * q(1)) + x(ctx, {0, 1}));
    EXPECT_EQ(e.at_q_one(), x(ctx, {1, 0}, QCoefficient::symbol(qtest::h11)) + x(ctx, {0, 1}));
}
