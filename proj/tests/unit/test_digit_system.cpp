#include <gtest/gtest.h>

#include "digitdim/digit_system.hpp"
#include "digitdim/errors.hpp"

using namespace digitdim;

TEST(OneMissing, Weights)
{
    const DigitSystem s = DigitSystem::one_missing(3, 1);
    ASSERT_EQ(s.weights().size(), 3U);
    EXPECT_EQ(s.weights()[0], Rational(1, 2));
    EXPECT_EQ(s.weights()[1], Rational(0));
    EXPECT_EQ(s.weights()[2], Rational(1, 2));
    EXPECT_EQ(s.missing_digit(), 1);

    const DigitSystem t = DigitSystem::one_missing(5, 0);
    EXPECT_EQ(t.weights()[0], Rational(0));
    for (int j = 1; j < 5; ++j)
        EXPECT_EQ(t.weights()[j], Rational(1, 4));
    EXPECT_EQ(t.digits(), (std::vector<int>{1, 2, 3, 4}));
    EXPECT_TRUE(t.is_uniform());
}

TEST(OneMissing, Errors)
{
    EXPECT_THROW((void)DigitSystem::one_missing(2, 0), ParameterError);
    EXPECT_THROW((void)DigitSystem::one_missing(5, 5), ParameterError);
    EXPECT_THROW((void)DigitSystem::one_missing(5, -1), ParameterError);
}

TEST(DigitSystem, InvariantsOnWeights)
{
    EXPECT_THROW((void)DigitSystem::from_weights(3, {Rational(1, 3), Rational(1, 3), Rational(1, 3)}), ParameterError);
    EXPECT_THROW((void)DigitSystem::from_weights(3, {Rational(1, 2), Rational(1, 3), Rational(0)}), ParameterError);
    EXPECT_THROW((void)DigitSystem::from_weights(3, {Rational(1), Rational(0), Rational(0)}), ParameterError);
    EXPECT_THROW((void)DigitSystem::from_weights(2, {Rational(3, 2), Rational(-1, 2)}), ParameterError);
    EXPECT_THROW((void)DigitSystem::from_weights(3, {Rational(1, 2), Rational(1, 2)}), ParameterError);
    const DigitSystem s = DigitSystem::from_weights(2, {Rational(1, 3), Rational(2, 3)});
    EXPECT_FALSE(s.is_uniform());
    EXPECT_FALSE(s.missing_digit().has_value());
}

TEST(DigitSystem, FromDigits)
{
    const DigitSystem s = DigitSystem::from_digits(10, {4, 0, 2});
    EXPECT_EQ(s.digits(), (std::vector<int>{0, 2, 4}));
    EXPECT_EQ(s.weights()[2], Rational(1, 3));
    EXPECT_THROW((void)DigitSystem::from_digits(10, {1}), ParameterError);
    EXPECT_THROW((void)DigitSystem::from_digits(10, {1, 1}), ParameterError);
    EXPECT_THROW((void)DigitSystem::from_digits(10, {1, 10}), ParameterError);
    EXPECT_THROW((void)DigitSystem::from_digits(3, {0, 1, 2}), ParameterError);
}

TEST(ParseSystem, AllForms)
{
    EXPECT_EQ(parse_system("b=5 missing=1"), DigitSystem::one_missing(5, 1));
    EXPECT_EQ(parse_system("  b=10   digits=0,2,4 "), DigitSystem::from_digits(10, {0, 2, 4}));
    const DigitSystem p = parse_system("b=4 probs=1/2,1/4,1/4,0");
    EXPECT_EQ(p.weights()[0], Rational(1, 2));
    EXPECT_EQ(p.weights()[3], Rational(0));
    EXPECT_EQ(parse_system("b=4 probs=0.5,0.25,0.25,0"), p);
    EXPECT_EQ(parse_system("b=10 digits=0,1,2,3,4,5,6,7,8"), DigitSystem::one_missing(10, 9));
}

TEST(ParseSystem, DescribeRoundTrips)
{
    for (const char* text : {"b=5 missing=1", "b=10 digits=0,2,4", "b=4 probs=1/2,1/4,1/4,0", "b=3 missing=0"}) {
        const DigitSystem s = parse_system(text);
        EXPECT_EQ(s.describe(), text);
        EXPECT_EQ(parse_system(s.describe()), s);
    }
}

TEST(ParseSystem, Errors)
{
    for (const char* bad : {"", "b=5", "missing=1", "b=5 missing=1 digits=0,1", "b=x missing=1", "b=5 missing=1 c=2",
                            "b=5 probs=1/2,1/2", "b=5 digits=", "b=5missing=1", "b=4 probs=1/2,1/4,1/4,1/4"})
        EXPECT_THROW((void)parse_system(bad), ParameterError) << bad;
}

TEST(APDigitSpec, Validation)
{
    const APDigitSpec ok{0, 2, 2};
    EXPECT_NO_THROW(ok.validate(3));
    EXPECT_EQ(ok.digits(), (std::vector<int>{0, 2}));
    EXPECT_NO_THROW((APDigitSpec{0, 1, 9}.validate(10)));
    EXPECT_THROW((APDigitSpec{0, 1, 4}.validate(4)), ParameterError);
    EXPECT_THROW((APDigitSpec{1, 3, 3}.validate(7)), ParameterError);
    EXPECT_THROW((APDigitSpec{0, 1, 1}.validate(5)), ParameterError);
    EXPECT_THROW((APDigitSpec{0, 0, 3}.validate(5)), ParameterError);
    EXPECT_THROW((APDigitSpec{-1, 1, 3}.validate(5)), ParameterError);
}
