#include <gtest/gtest.h>

#include "support.hpp"

using namespace qcluster;

namespace {

QCoefficient q(std::int64_t half) { return QCoefficient::q_power(half); }

std::size_t syntax_position(const std::string& text, const ContextPtr& ctx)
{
    try {
        parse_element(text, ctx);
    } catch (const syntax_error& e) {
        EXPECT_EQ(e.code(), errc::syntax_error);
        return e.position();
    }
    ADD_FAILURE() << "no SyntaxError for " << text;
    return 0;
}

} // namespace

TEST(Parse, ExchangeExpansionText)
{
    const auto ctx = qtest::plane();
    const auto e = parse_element("X(-1,0)+h[1,1]*X(-1,1)+h[1,1]*X(-1,2)+X(-1,3)", ctx);
    const auto h = QCoefficient::symbol(qtest::h11);
    TorusElement expected(ctx);
    expected.add_term({-1, 0}, 1);
    expected.add_term({-1, 1}, h);
    expected.add_term({-1, 2}, h);
    expected.add_term({-1, 3}, 1);
    EXPECT_EQ(e, expected);
    EXPECT_EQ(e, apply_word(qtest::load_seed("g2.json"), {0}).var(0));
}

TEST(Parse, ZeroExponentIsOne) { EXPECT_EQ(parse_element("X(0,0)", qtest::plane()), TorusElement::constant(qtest::plane(), 1)); }

TEST(Parse, ThirdPowersOfQAreRejected)
{
    EXPECT_GT(syntax_position("q^(1/3)*X(0,0)", qtest::plane()), 0U);
}

TEST(Parse, GeneratorsAndOrderedProducts)
{
    const auto ctx = qtest::plane();
    EXPECT_EQ(parse_element("X1*X2", ctx), TorusElement::basis(ctx, {1, 1}, q(1)));
    EXPECT_EQ(parse_element("q^(-1/2)*X1*X2", ctx), TorusElement::basis(ctx, {1, 1}));
    EXPECT_EQ(parse_element("X1^(-1)", ctx), TorusElement::basis(ctx, {-1, 0}));
    EXPECT_EQ(parse_element("X2^2*X1", ctx), TorusElement::basis(ctx, {1, 2}, q(-2)));
}

TEST(Parse, WhitespaceAndSigns)
{
    const auto ctx = qtest::plane();
    EXPECT_EQ(parse_element("  -X(1,0) + 2 * q * X( 0 , -1 ) - 3 ", ctx),
              TorusElement::basis(ctx, {1, 0}, -1) + TorusElement::basis(ctx, {0, -1}, 2 * q(2)) +
                  TorusElement::constant(ctx, -3));
}

TEST(Parse, SyntaxErrorsCarryPositions)
{
    const auto ctx = qtest::plane();
    EXPECT_EQ(syntax_position("X(1,0", ctx), 5U);
    EXPECT_EQ(syntax_position("X(1,0) +", ctx), 8U);
    EXPECT_EQ(syntax_position("X(1,0) X(0,1)", ctx), 7U);
    syntax_position("h[1]", ctx);
    syntax_position("(X1+1)^(-1)", ctx);
    syntax_position("", ctx);
    syntax_position("y", ctx);
}

TEST(Parse, DimensionMismatch)
{
    try {
        parse_element("X(1,0,0)", qtest::plane());
        FAIL() << "expected DimensionMismatch";
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::dimension_mismatch);
    }
    try {
        parse_element("X3", qtest::plane());
        FAIL() << "expected DimensionMismatch";
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::dimension_mismatch);
    }
}

TEST(Parse, CoefficientsRejectBasisElements)
{
    EXPECT_THROW(parse_coefficient("X(1)"), syntax_error);
    EXPECT_EQ(parse_coefficient("h[2,1]^2*q^(3/2)"), QCoefficient::symbol(Symbol{2, 1}, 2) * q(3));
}

TEST(Parse, GoldenFilesRoundTrip)
{
    const auto ctx = qtest::plane();
    for (const char* file : {"golden/g2_expansions.txt", "golden/g2_ub_elements.txt"}) {
        const auto lines = qtest::read_golden(file);
        ASSERT_FALSE(lines.empty()) << file;
        for (const auto& [name, text] : lines) {
            const auto e = parse_element(text, ctx);
            const auto canonical = to_string(e);
            EXPECT_EQ(to_string(parse_element(canonical, ctx)), canonical) << name;
            EXPECT_EQ(parse_element(ordered_form(e), ctx), e) << name;
        }
    }
}
