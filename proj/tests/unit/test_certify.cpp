#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracle.hpp"

using namespace digitdim;
using testing_support::Contains;
using testing_support::Near;
using testing_support::q;

namespace {

const Precision P = kDefaultPrecision;
const DigitSystem S31 = DigitSystem::one_missing(3, 1);

bool same_endpoints(const Enclosure& a, const Enclosure& b)
{
    return mpfr_equal_p(a.lo(), b.lo()) && mpfr_equal_p(a.hi(), b.hi());
}

} // namespace

TEST(GridSpec, CountsAndCoverage)
{
    EXPECT_EQ(GridSpec::make(5, 4, q("5e-7")).count, 1601);
    EXPECT_EQ(GridSpec::make(4, 2, q("1e-5")).count, 3126);
    EXPECT_EQ(GridSpec::make(3, 1, q("1e-4")).count, 1668);
    EXPECT_EQ(GridSpec::make(3, 2, q("1e-4")).count, 557);
    for (auto [b, L, d] : {std::tuple{5, 2, "1e-5"}, std::tuple{7, 1, "3/1000"}, std::tuple{3, 3, "1/54"}}) {
        const GridSpec g = GridSpec::make(b, L, q(d));
        const Rational half(Integer(1), Integer(2) * power(b, static_cast<unsigned long>(L)));
        EXPECT_GE(g.abscissa(g.count - 1), half);
        EXPECT_LT(g.abscissa(g.count - 2), half);
    }
    EXPECT_THROW((void)GridSpec::make(3, 0, q("1e-4")), ParameterError);
    EXPECT_THROW((void)GridSpec::make(3, 1, q("0")), ParameterError);
}

TEST(Lipschitz, Examples)
{
    EXPECT_TRUE(Near(lipschitz_bound(S31, 1, P), 12 * std::numbers::pi, 1e-12));
    EXPECT_TRUE(Near(lipschitz_bound(DigitSystem::one_missing(4, 0), 2, P), 480 * std::numbers::pi, 1e-10));
    EXPECT_GT(lipschitz_bound(DigitSystem::one_missing(7, 3), 3, P).lower(), 0.0);
}

TEST(GridExtrema, Examples)
{
    const GridExtrema ex = grid_extrema(S31, GridSpec::make(3, 1, q("1e-4")));
    EXPECT_EQ(ex.count, 1668);
    EXPECT_GE(ex.max.upper(), 2.0);
    EXPECT_TRUE(Contains(ex.max, 2));
    EXPECT_LE(ex.min.lower(), std::sqrt(3.0) + 1e-2);
    EXPECT_TRUE(Near(ex.min, 1.7322602090894605, 1e-12));

    const GridSpec single{1, q("1"), 1};
    const GridExtrema one = grid_extrema(S31, single);
    EXPECT_TRUE(same_endpoints(one.max, one.min));
    EXPECT_TRUE(Contains(one.max, 2));
}

TEST(GridExtrema, IndependentOfWorkersAndChunks)
{
    const DigitSystem s = DigitSystem::one_missing(4, 1);
    const GridSpec grid = GridSpec::make(4, 2, q("1e-4"));
    const GridExtrema base = grid_extrema(s, grid);
    for (unsigned workers : {2U, 3U, 8U}) {
        for (std::int64_t chunk : {1, 7, 4096}) {
            EvalOptions opts;
            opts.workers = workers;
            opts.max_chunk = chunk;
            const GridExtrema ex = grid_extrema(s, grid, opts);
            EXPECT_TRUE(same_endpoints(ex.max, base.max));
            EXPECT_TRUE(same_endpoints(ex.min, base.min));
        }
    }
}

TEST(GridExtrema, ProgressIsReported)
{
    std::int64_t last = 0;
    EvalOptions opts;
    opts.max_chunk = 100;
    opts.progress = [&](std::int64_t done, std::int64_t total) {
        EXPECT_EQ(total, 1668);
        EXPECT_GT(done, last);
        last = done;
    };
    (void)grid_extrema(S31, GridSpec::make(3, 1, q("1e-4")), opts);
    EXPECT_EQ(last, 1668);
}

TEST(VerifyLower, SmallSystem)
{
    const Certificate c = verify_lower(S31, 1, q("1e-4"), q("3/10"));
    EXPECT_EQ(c.verdict, Verdict::pass);
    EXPECT_EQ(c.grid_count, 1668);
    EXPECT_TRUE(Near(c.threshold, std::pow(3.0, 0.7) - 6 * std::numbers::pi * 1e-4, 1e-12));
    EXPECT_TRUE(Near(c.slack, 6 * std::numbers::pi * 1e-4, 1e-15));
    EXPECT_EQ(rederive_verdict(c), c.verdict);
    EXPECT_EQ(c.system, "b=3 missing=1");

    EXPECT_EQ(verify_lower(S31, 1, q("1e-4"), q("1/2")).verdict, Verdict::fail);
}

TEST(VerifyLower, PaperParameters)
{
    EXPECT_EQ(verify_lower(DigitSystem::one_missing(5, 0), 2, q("1e-5"), q("1/2")).verdict, Verdict::pass);
}

TEST(VerifyLower, ThresholdMustBePositive)
{
    EXPECT_THROW((void)verify_lower(S31, 1, q("1/10"), q("1/2")), ParameterError);
    EXPECT_THROW((void)verify_lower(S31, 1, q("1e-4"), q("0")), ParameterError);
    EXPECT_THROW((void)verify_lower(S31, 1, q("1e-4"), q("1")), ParameterError);
}

TEST(VerifyUpper, Examples)
{
    const Certificate c = verify_upper(DigitSystem::one_missing(3, 0), 2, q("1e-4"), q("1/2"));
    EXPECT_EQ(c.verdict, Verdict::pass);
    EXPECT_EQ(c.direction, Direction::upper);
    EXPECT_TRUE(Near(c.slack, 2 * 1e-4 * 9 * 8 * std::numbers::pi, 1e-12));
    EXPECT_EQ(verify_upper(DigitSystem::one_missing(4, 1), 2, q("1e-4"), q("1/2")).verdict, Verdict::pass);
    EXPECT_EQ(verify_upper(DigitSystem::one_missing(5, 0), 2, q("1e-5"), q("1/2")).verdict, Verdict::fail);
}

TEST(Verdict, DerivationRules)
{
    const auto e = [](double lo, double hi) { return Enclosure::from_doubles(lo, hi, P); };
    EXPECT_EQ(derive_verdict(Direction::lower, e(1, 2), e(0, 0), e(3, 4)), Verdict::pass);
    EXPECT_EQ(derive_verdict(Direction::lower, e(1, 3.5), e(0, 0), e(3, 4)), Verdict::inconclusive);
    EXPECT_EQ(derive_verdict(Direction::lower, e(4, 5), e(0, 0), e(3, 4)), Verdict::fail);
    EXPECT_EQ(derive_verdict(Direction::upper, e(0, 0), e(5, 6), e(3, 4)), Verdict::pass);
    EXPECT_EQ(derive_verdict(Direction::upper, e(0, 0), e(3.5, 6), e(3, 4)), Verdict::inconclusive);
    EXPECT_EQ(derive_verdict(Direction::upper, e(0, 0), e(1, 3), e(3, 4)), Verdict::fail);
}

TEST(Verify, InconclusiveRetriesAtDoublePrecision)
{
    // Threshold within about 2e-7 of the grid maximum 2: straddles at 16 bits.
    const Rational tau = q("0.3682127");
    EvalOptions opts;
    opts.precision = Precision{16};
    opts.retry_inconclusive = false;
    const Certificate coarse = verify_lower(S31, 1, q("1e-4"), tau, opts);
    EXPECT_EQ(coarse.verdict, Verdict::inconclusive);
    EXPECT_EQ(coarse.precision.bits, 16);

    opts.retry_inconclusive = true;
    const Certificate retried = verify_lower(S31, 1, q("1e-4"), tau, opts);
    EXPECT_EQ(retried.precision.bits, 32);
    EXPECT_NE(retried.verdict, Verdict::inconclusive);
    EXPECT_EQ(retried.verdict, verify_lower(S31, 1, q("1e-4"), tau).verdict);
}

TEST(Verify, MonotoneInDelta)
{
    const DigitSystem s = DigitSystem::one_missing(4, 0);
    const Certificate coarse = verify_lower(s, 2, q("1e-5"), q("1/2"));
    const Certificate fine = verify_lower(s, 2, q("5e-6"), q("1/2"));
    EXPECT_EQ(coarse.verdict, Verdict::pass);
    EXPECT_EQ(fine.verdict, Verdict::pass);
    EXPECT_GE(fine.grid_max.upper(), coarse.grid_max.lower());
}

TEST(CertifiedLowerBound, FromCertificate)
{
    const Certificate c = verify_lower(S31, 1, q("1e-4"), q("3/10"));
    const Enclosure v = certified_lower_bound(c);
    EXPECT_TRUE(Near(v, 1 - std::log(2 + 6 * std::numbers::pi * 1e-4) / std::log(3.0), 1e-12));
    EXPECT_GT(v.lower(), 0.3);
}

TEST(BoundBracket, SmallSystem)
{
    const BoundBracket b = bound_bracket(S31, 1, q("1e-4"));
    ASSERT_TRUE(b.complete());
    EXPECT_TRUE(Near(*b.lower, 0.3682128, 1e-6));
    EXPECT_LE(b.upper->upper(), 0.501);
    EXPECT_TRUE(Near(*b.upper, 0.5008810, 1e-6));
    EXPECT_LE(b.lower->lower(), b.upper->upper());
    EXPECT_NEAR(b.width(), 0.5008810 - 0.3682128, 1e-6);
}

TEST(BoundBracket, UpperAbsentWhenSlackTooLarge)
{
    const BoundBracket b = bound_bracket(S31, 2, q("1/20"));
    EXPECT_TRUE(b.lower.has_value());
    EXPECT_FALSE(b.upper.has_value());
    EXPECT_FALSE(b.complete());
    EXPECT_THROW((void)b.width(), std::logic_error);
}

TEST(BoundBracket, NestingAcrossLevels)
{
    for (const auto& s : {S31, DigitSystem::one_missing(4, 0)}) {
        std::vector<BoundBracket> brackets;
        for (int L = 1; L <= 2; ++L)
            brackets.push_back(bound_bracket(s, L, q("1e-4")));
        for (const auto& a : brackets)
            for (const auto& b : brackets)
                if (a.lower && b.upper)
                    EXPECT_LE(a.lower->lower(), b.upper->upper());
    }
}

TEST(Refine, Examples)
{
    const RefineResult r = refine_dimension(S31, q("0.2"), RefineBudget{});
    EXPECT_EQ(r.status, RefineStatus::converged);
    ASSERT_TRUE(r.bracket.complete());
    EXPECT_LE(r.bracket.width(), 0.2);
    EXPECT_LE(r.bracket.lower->lower(), 0.501);
    EXPECT_GE(r.bracket.upper->upper(), 0.369);

    const RefineResult wide = refine_dimension(DigitSystem::one_missing(5, 0), q("2"), RefineBudget{});
    EXPECT_EQ(wide.status, RefineStatus::converged);
    EXPECT_EQ(wide.bracket.level, 1);

    RefineBudget none;
    none.max_grid_points = 0;
    const RefineResult empty = refine_dimension(S31, q("0.2"), none);
    EXPECT_EQ(empty.status, RefineStatus::budget_exhausted);
    EXPECT_FALSE(empty.bracket.lower.has_value());
    EXPECT_FALSE(empty.bracket.upper.has_value());
    EXPECT_EQ(empty.grid_points, 0U);

    EXPECT_THROW((void)refine_dimension(S31, q("0"), RefineBudget{}), ParameterError);
}

TEST(Refine, HistoryKeepsBestBounds)
{
    const RefineResult r = refine_dimension(S31, q("0.1"), RefineBudget{3, 200000, 4});
    ASSERT_FALSE(r.history.empty());
    for (const auto& h : r.history) {
        if (h.lower)
            EXPECT_LE(h.lower->lower(), r.bracket.lower->lower());
        if (h.upper)
            EXPECT_GE(h.upper->upper(), r.bracket.upper->upper());
    }
    EXPECT_LE(r.grid_points, 200000U);
}

TEST(Induction, Examples)
{
    const InductionCheck one = induction_sum_check(S31, 1, Rational(0));
    EXPECT_TRUE(Contains(one.lhs, 2));
    EXPECT_GE(one.rhs.upper(), 2.0);
    EXPECT_TRUE(one.holds);
    EXPECT_TRUE(induction_sum_check(S31, 4, Rational(0)).holds);
    EXPECT_TRUE(induction_sum_check(DigitSystem::one_missing(5, 3), 1, Rational(0)).holds);
    EXPECT_THROW((void)induction_sum_check(DigitSystem::one_missing(11, 3), 6, Rational(0)), ParameterError);
    EXPECT_THROW((void)induction_sum_check(S31, 0, Rational(0)), ParameterError);
}

TEST(Induction, LhsMatchesOracle)
{
    const auto p = oracle::one_missing_weights(4, 1);
    double expected = 0;
    for (int xi = 0; xi < 64; ++xi) {
        double prod = 1;
        for (int j = 1; j <= 3; ++j)
            prod *= oracle::g(p, (1.0 / 7 + xi) / std::pow(4.0, j));
        expected += prod;
    }
    EXPECT_TRUE(Near(induction_sum_check(DigitSystem::one_missing(4, 1), 3, Rational(1, 7)).lhs, expected, 1e-9));
}

TEST(Names, RoundTrip)
{
    for (auto d : {Direction::lower, Direction::upper})
        EXPECT_EQ(parse_direction(to_string(d)), d);
    for (auto v : {Verdict::pass, Verdict::fail, Verdict::inconclusive})
        EXPECT_EQ(parse_verdict(to_string(v)), v);
    EXPECT_THROW((void)parse_direction("sideways"), ParameterError);
    EXPECT_EQ(to_string(RefineStatus::budget_exhausted), "budget_exhausted");
}
