#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace digitdim;
using testing_support::Contains;
using testing_support::Near;

namespace {

const Precision P = kDefaultPrecision;

Enclosure point(double x) { return Enclosure::from_doubles(x, x, P); }

Rational exact(double x) { return Rational(x); }

// f(t) at 1024 bits, as a rational; far more accurate than any enclosure
// endpoint it is compared against.
Rational reference(double t, int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t))
{
    mpfr_t x, y;
    mpfr_init2(x, 1024);
    mpfr_init2(y, 1024);
    mpfr_set_d(x, t, MPFR_RNDN);
    f(y, x, MPFR_RNDN);
    Rational r;
    mpfr_get_q(r.get_mpq_t(), y);
    mpfr_clear(x);
    mpfr_clear(y);
    return r;
}

// cos(2 pi t) or sin(2 pi t) at 1024 bits.
Rational reference_turn(double t, bool sine)
{
    mpfr_t x, y;
    mpfr_init2(x, 1024);
    mpfr_init2(y, 1024);
    mpfr_const_pi(x, MPFR_RNDN);
    mpfr_mul_d(x, x, 2 * t, MPFR_RNDN);
    if (sine)
        mpfr_sin(y, x, MPFR_RNDN);
    else
        mpfr_cos(y, x, MPFR_RNDN);
    Rational r;
    mpfr_get_q(r.get_mpq_t(), y);
    mpfr_clear(x);
    mpfr_clear(y);
    return r;
}

// Width of x measured in units of the last place of its upper endpoint.
double width_in_ulps(const Enclosure& x)
{
    if (mpfr_zero_p(x.hi()) && mpfr_zero_p(x.lo()))
        return 0;
    mpfr_srcptr far = mpfr_cmpabs(x.lo(), x.hi()) > 0 ? x.lo() : x.hi();
    const double ulp = std::ldexp(1.0, static_cast<int>(mpfr_get_exp(far) - x.precision().bits));
    return x.width() / ulp;
}

} // namespace

TEST(Arith, Examples)
{
    const Enclosure three = arith(Enclosure(1, P), Enclosure(2, P), ArithOp::add);
    EXPECT_TRUE(Contains(three, 3));
    EXPECT_LE(width_in_ulps(three), 2);

    const Enclosure sym = Enclosure::symmetric_unit(P);
    const Enclosure sq = arith(sym, sym, ArithOp::mul);
    EXPECT_EQ(sq.lower(), -1.0);
    EXPECT_EQ(sq.upper(), 1.0);

    EXPECT_THROW((void)arith(Enclosure(1, P), Enclosure::from_rationals(0, 1, P), ArithOp::div), DomainError);
}

TEST(Arith, MultiplicationSignCases)
{
    const double vals[][2] = {{2, 3}, {-3, -2}, {-1, 4}, {0, 0}, {-5, 0}, {0, 2}};
    for (const auto& a : vals) {
        for (const auto& b : vals) {
            const Enclosure x = Enclosure::from_doubles(a[0], a[1], P);
            const Enclosure y = Enclosure::from_doubles(b[0], b[1], P);
            const Enclosure r = x * y;
            const double c[] = {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
            EXPECT_EQ(r.lower(), *std::min_element(std::begin(c), std::end(c)));
            EXPECT_EQ(r.upper(), *std::max_element(std::begin(c), std::end(c)));
        }
    }
}

TEST(Elementary, Examples)
{
    EXPECT_TRUE(Contains(elementary(Enclosure(1, P), ElementaryFn::log), 0));
    EXPECT_TRUE(Contains(elementary(Enclosure(0, P), ElementaryFn::exp), 1));
    EXPECT_THROW((void)elementary(Enclosure::from_rationals(0, 1, P), ElementaryFn::log), DomainError);
    EXPECT_THROW((void)sqrt(Enclosure::from_rationals(-1, 1, P)), DomainError);
    EXPECT_TRUE(Near(exp(Enclosure(1, P)), std::numbers::e, 1e-15));
}

TEST(CompareThreshold, Examples)
{
    const Rational half(1, 2);
    EXPECT_EQ(compare_threshold(Enclosure::from_decimal("0.4", "0.45", P), half), Comparison::below);
    EXPECT_EQ(compare_threshold(Enclosure::from_decimal("0.6", "0.7", P), half), Comparison::above);
    EXPECT_EQ(compare_threshold(Enclosure::from_decimal("0.49", "0.51", P), half), Comparison::straddles);
    EXPECT_EQ(compare_threshold(Enclosure::from_rational(half, P), half), Comparison::straddles);
}

TEST(UnitCircle, Examples)
{
    const ComplexBox one = unit_circle(Enclosure(0, P));
    EXPECT_TRUE(Contains(one.re, 1));
    EXPECT_TRUE(Contains(one.im, 0));

    const ComplexBox quarter = unit_circle(Enclosure::from_rational(Rational(1, 4), P));
    EXPECT_TRUE(Contains(quarter.re, 0));
    EXPECT_TRUE(Contains(quarter.im, 1));

    const ComplexBox full = unit_circle(Enclosure::from_rationals(0, 1, P));
    EXPECT_EQ(full.re.lower(), -1.0);
    EXPECT_EQ(full.re.upper(), 1.0);
    EXPECT_EQ(full.im.lower(), -1.0);
    EXPECT_EQ(full.im.upper(), 1.0);
}

TEST(UnitCircle, ExactRationalReductionHandlesLargeArguments)
{
    const Rational t = Rational(Integer(1) << 200) + Rational(1, 8);
    const ComplexBox z = unit_circle(t, P);
    EXPECT_TRUE(Near(z.re, std::sqrt(0.5), 1e-15));
    EXPECT_TRUE(Near(z.im, std::sqrt(0.5), 1e-15));
}

TEST(UnitCircle, IntervalArgumentsContainEveryPoint)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> start(-3.0, 3.0);
    std::uniform_real_distribution<double> len(0.0, 0.3);
    for (int n = 0; n < 2000; ++n) {
        const double lo = start(rng);
        const double hi = lo + len(rng);
        const ComplexBox box = unit_circle(Enclosure::from_doubles(lo, hi, P));
        for (int k = 0; k <= 8; ++k) {
            const double t = lo + (hi - lo) * k / 8;
            EXPECT_TRUE(box.re.contains(reference_turn(t, false))) << t;
            EXPECT_TRUE(box.im.contains(reference_turn(t, true))) << t;
        }
        EXPECT_GE(box.re.lower(), -1.0);
        EXPECT_LE(box.re.upper(), 1.0);
        EXPECT_GE(box.im.lower(), -1.0);
        EXPECT_LE(box.im.upper(), 1.0);
    }
}

TEST(UnitCircle, ModulusOfPointContainsOne)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-100000, 100000);
    std::uniform_int_distribution<long> den(1, 99991);
    for (int n = 0; n < 1000; ++n) {
        const Rational t(num(rng), den(rng));
        EXPECT_TRUE(Contains(modulus(unit_circle(t, P)), 1));
    }
}

TEST(Modulus, Examples)
{
    EXPECT_TRUE(Contains(modulus(ComplexBox(Enclosure(1, P), Enclosure(0, P))), 1));
    EXPECT_TRUE(Contains(modulus(ComplexBox(Enclosure(3, P), Enclosure(4, P))), 5));
    const Enclosure corner = modulus(ComplexBox(Enclosure::symmetric_unit(P), Enclosure::symmetric_unit(P)));
    EXPECT_EQ(corner.lower(), 0.0);
    EXPECT_NEAR(corner.upper(), std::sqrt(2.0), 1e-15);
    EXPECT_GE(corner.upper(), std::sqrt(2.0) - 1e-16);
}

TEST(ContainmentFuzz, PointRingOperationsAreExactlyContained)
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-40, 40);
    auto draw = [&] { return std::ldexp(mant(rng), expo(rng)); };
    for (int n = 0; n < 20000; ++n) {
        const double x = draw();
        const double y = draw();
        const Enclosure ex = point(x);
        const Enclosure ey = point(y);
        ASSERT_TRUE(Contains(ex + ey, exact(x) + exact(y)));
        ASSERT_TRUE(Contains(ex - ey, exact(x) - exact(y)));
        ASSERT_TRUE(Contains(ex * ey, exact(x) * exact(y)));
        EXPECT_LE(width_in_ulps(ex + ey), 4);
        EXPECT_LE(width_in_ulps(ex * ey), 4);
        if (y != 0.0) {
            ASSERT_TRUE(Contains(ex / ey, exact(x) / exact(y)));
            EXPECT_LE(width_in_ulps(ex / ey), 4);
        }
    }
}

TEST(ContainmentFuzz, ElementaryFunctionsContainReference)
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> pos(1e-6, 50.0);
    for (int n = 0; n < 5000; ++n) {
        const double x = pos(rng);
        ASSERT_TRUE(Contains(log(point(x)), reference(x, mpfr_log)));
        ASSERT_TRUE(Contains(exp(point(x / 10)), reference(x / 10, mpfr_exp)));
        ASSERT_TRUE(Contains(sqrt(point(x)), reference(x, mpfr_sqrt)));
    }
}

TEST(MonotoneContainment, WiderInputGivesWiderOutput)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 4.0);
    for (int n = 0; n < 2000; ++n) {
        double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        if (a > b)
            std::swap(a, b);
        if (c > d)
            std::swap(c, d);
        const Enclosure inner = Enclosure::from_doubles(std::max(a, c), std::max(a, c) + (b - a) / 4, P);
        const Enclosure outer = hull(Enclosure::from_doubles(a, b, P), inner);
        EXPECT_TRUE(log(outer).contains(log(inner)));
        EXPECT_TRUE(exp(outer).contains(exp(inner)));
        EXPECT_TRUE(sqrt(outer).contains(sqrt(inner)));
        EXPECT_TRUE(sqr(outer - Enclosure(2, P)).contains(sqr(inner - Enclosure(2, P))));
        EXPECT_TRUE(abs(outer - Enclosure(1, P)).contains(abs(inner - Enclosure(1, P))));
        EXPECT_TRUE(modulus(unit_circle(outer)).contains(modulus(unit_circle(inner))));
    }
}

TEST(Enclosure, DecimalOutputIsDirected)
{
    const Enclosure third = Enclosure::from_rational(Rational(1, 3), P);
    const Enclosure back = Enclosure::from_decimal(third.lower_decimal(), third.upper_decimal(), P);
    EXPECT_TRUE(back.contains(third));
    EXPECT_TRUE(Contains(back, Rational(1, 3)));
    EXPECT_EQ(Enclosure(0, P).lower_decimal(), "0");
    EXPECT_THROW((void)Enclosure::from_decimal("1.0x", "2", P), ParameterError);
    EXPECT_THROW((void)Enclosure::from_decimal("2", "1", P), ParameterError);
}

TEST(Enclosure, IntersectAndHull)
{
    const Enclosure a = Enclosure::from_rationals(0, 2, P);
    const Enclosure b = Enclosure::from_rationals(1, 3, P);
    const Enclosure i = intersect(a, b);
    EXPECT_EQ(i.lower(), 1.0);
    EXPECT_EQ(i.upper(), 2.0);
    const Enclosure h = hull(a, b);
    EXPECT_EQ(h.lower(), 0.0);
    EXPECT_EQ(h.upper(), 3.0);
    EXPECT_THROW((void)intersect(Enclosure(0, P), Enclosure(1, P)), std::logic_error);
}

TEST(Enclosure, CopyAndMoveKeepValues)
{
    Enclosure a = Enclosure::from_rationals(1, 2, P);
    Enclosure b = a;
    Enclosure c = std::move(a);
    EXPECT_EQ(b.lower(), 1.0);
    EXPECT_EQ(c.upper(), 2.0);
    a = c;
    EXPECT_EQ(a.upper(), 2.0);
    Enclosure d(5, Precision{256});
    d = std::move(b);
    EXPECT_EQ(d.lower(), 1.0);
}

TEST(Enclosure, PrecisionIsCarried)
{
    const Enclosure x = Enclosure::pi(Precision{256});
    EXPECT_EQ(x.precision().bits, 256);
    EXPECT_LT(x.width(), 1e-70);
    EXPECT_TRUE(Near(x, std::numbers::pi, 1e-15));
}
