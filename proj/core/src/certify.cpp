#include "digitdim/certify.hpp"

#include <algorithm>
#include <chrono>

#include "digitdim/errors.hpp"

namespace digitdim {

namespace {

Enclosure upper_point(const Enclosure& x)
{
    return Enclosure::from_rational(x.upper_rational(), x.precision());
}

Enclosure lower_point(const Enclosure& x)
{
    return Enclosure::from_rational(x.lower_rational(), x.precision());
}

/// b^e for an exact rational exponent.
Enclosure rational_power(int base, const Rational& exponent, Precision prec)
{
    if (exponent.get_den() == 1) {
        const Integer& n = exponent.get_num();
        if (sgn(n) >= 0 && n.fits_ulong_p())
            return Enclosure::from_rational(Rational(power(base, n.get_ui())), prec);
        if (sgn(n) < 0 && Integer(-n).fits_ulong_p())
            return Enclosure::from_rational(Rational(Integer(1), power(base, Integer(-n).get_ui())), prec);
    }
    return exp(Enclosure::from_rational(exponent, prec) * log(Enclosure(base, prec)));
}

/// 1 - log(m) / (L log b), the exponent tau with b^{(1-tau)L} = m.
Enclosure exponent_of(const DigitSystem& sys, int level, const Enclosure& m)
{
    const Precision prec = m.precision();
    const Enclosure denom = log(Enclosure(sys.base(), prec)) * Rational(level);
    return Enclosure(1, prec) - log(m) / denom;
}

Enclosure slack_for(const Enclosure& lip, const Rational& delta, const Rational& radius)
{
    return lip * (delta * radius);
}

Certificate run_verify(const DigitSystem& sys, Direction direction, int level, const Rational& delta,
                       const Rational& tau, const EvalOptions& opts)
{
    if (tau <= 0 || tau >= 1)
        throw ParameterError("tau must lie in (0, 1), got " + to_string(tau));
    const auto start = std::chrono::steady_clock::now();
    const Precision prec = opts.precision;
    const GridSpec grid = GridSpec::make(sys.base(), level, delta);

    Certificate cert;
    cert.system = sys.describe();
    cert.direction = direction;
    cert.level = level;
    cert.delta = delta;
    cert.tau = tau;
    cert.grid_count = grid.count;
    cert.precision = prec;
    cert.lipschitz = lipschitz_bound(sys, level, prec);
    const Rational& radius = direction == Direction::lower ? opts.slack.lower_radius : opts.slack.upper_radius;
    cert.slack = slack_for(cert.lipschitz, delta, radius);
    const Enclosure target = rational_power(sys.base(), (Rational(1) - tau) * Rational(level), prec);
    if (direction == Direction::lower) {
        cert.threshold = target - cert.slack;
        if (mpfr_sgn(cert.threshold.hi()) <= 0)
            throw ParameterError("slack exceeds b^{(1-tau)L}; decrease delta");
    } else {
        cert.threshold = target + cert.slack;
    }

    GridExtrema ex = grid_extrema(sys, grid, opts);
    cert.grid_max = std::move(ex.max);
    cert.grid_min = std::move(ex.min);
    cert.verdict = derive_verdict(direction, cert.grid_max, cert.grid_min, cert.threshold);
    cert.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cert;
}

} // namespace

std::string to_string(Direction d)
{
    return d == Direction::lower ? "lower" : "upper";
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

std::string to_string(RefineStatus s)
{
    return s == RefineStatus::converged ? "converged" : "budget_exhausted";
}

Direction parse_direction(std::string_view s)
{
    if (s == "lower")
        return Direction::lower;
    if (s == "upper")
        return Direction::upper;
    throw ParameterError("direction must be 'lower' or 'upper', got '" + std::string(s) + "'");
}

Verdict parse_verdict(std::string_view s)
{
    if (s == "PASS")
        return Verdict::pass;
    if (s == "FAIL")
        return Verdict::fail;
    if (s == "INCONCLUSIVE")
        return Verdict::inconclusive;
    throw ParameterError("unknown verdict '" + std::string(s) + "'");
}

Verdict derive_verdict(Direction direction, const Enclosure& grid_max, const Enclosure& grid_min,
                       const Enclosure& threshold)
{
    if (direction == Direction::lower) {
        if (mpfr_less_p(grid_max.hi(), threshold.lo()))
            return Verdict::pass;
        if (mpfr_greaterequal_p(grid_max.lo(), threshold.hi()))
            return Verdict::fail;
        return Verdict::inconclusive;
    }
    if (mpfr_greater_p(grid_min.lo(), threshold.hi()))
        return Verdict::pass;
    if (mpfr_lessequal_p(grid_min.hi(), threshold.lo()))
        return Verdict::fail;
    return Verdict::inconclusive;
}

Verdict rederive_verdict(const Certificate& cert)
{
    return derive_verdict(cert.direction, cert.grid_max, cert.grid_min, cert.threshold);
}

Certificate verify(const DigitSystem& sys, Direction direction, int level, const Rational& delta,
                   const Rational& tau, const EvalOptions& opts)
{
    Certificate cert = run_verify(sys, direction, level, delta, tau, opts);
    if (cert.verdict == Verdict::inconclusive && opts.retry_inconclusive) {
        EvalOptions again = opts;
        again.precision = opts.precision.doubled();
        again.retry_inconclusive = false;
        const double first = cert.wall_time_seconds;
        cert = run_verify(sys, direction, level, delta, tau, again);
        cert.wall_time_seconds += first;
    }
    return cert;
}

Certificate verify_lower(const DigitSystem& sys, int level, const Rational& delta, const Rational& tau,
                         const EvalOptions& opts)
{
    return verify(sys, Direction::lower, level, delta, tau, opts);
}

Certificate verify_upper(const DigitSystem& sys, int level, const Rational& delta, const Rational& tau,
                         const EvalOptions& opts)
{
    return verify(sys, Direction::upper, level, delta, tau, opts);
}

Enclosure certified_lower_bound(const Certificate& cert)
{
    const DigitSystem sys = parse_system(cert.system);
    const Enclosure half_slack = slack_for(cert.lipschitz, cert.delta, Rational(1, 2));
    return exponent_of(sys, cert.level, upper_point(cert.grid_max) + half_slack);
}

double BoundBracket::width() const
{
    if (!complete())
        throw std::logic_error("width() of an incomplete bracket");
    return upper->upper() - lower->lower();
}

BoundBracket bracket_from_extrema(const DigitSystem& sys, int level, const Rational& delta, const GridExtrema& ex,
                                  Precision prec)
{
    BoundBracket out;
    out.level = level;
    out.delta = delta;
    const Enclosure slack = slack_for(lipschitz_bound(sys, level, prec), delta, Rational(1, 2));
    out.lower = exponent_of(sys, level, upper_point(ex.max) + slack);
    const Enclosure floor_value = lower_point(ex.min) - slack;
    if (floor_value.is_positive())
        out.upper = exponent_of(sys, level, floor_value);
    return out;
}

BoundBracket bound_bracket(const DigitSystem& sys, int level, const Rational& delta, const EvalOptions& opts)
{
    const GridSpec grid = GridSpec::make(sys.base(), level, delta);
    const GridExtrema ex = grid_extrema(sys, grid, opts);
    return bracket_from_extrema(sys, level, delta, ex, opts.precision);
}

RefineResult refine_dimension(const DigitSystem& sys, const Rational& eps, const RefineBudget& budget,
                              const EvalOptions& opts)
{
    if (eps <= 0)
        throw ParameterError("eps must be positive");
    RefineResult result;
    auto absorb = [&](const BoundBracket& b) {
        result.history.push_back(b);
        BoundBracket& best = result.bracket;
        if (b.lower && (!best.lower || mpfr_greater_p(b.lower->lo(), best.lower->lo())))
            best.lower = b.lower;
        if (b.upper && (!best.upper || mpfr_less_p(b.upper->hi(), best.upper->hi())))
            best.upper = b.upper;
        best.level = b.level;
        best.delta = b.delta;
    };
    auto converged = [&] {
        if (!result.bracket.complete())
            return false;
        const Enclosure gap = upper_point(*result.bracket.upper) - lower_point(*result.bracket.lower);
        return mpfr_cmp_q(gap.hi(), eps.get_mpq_t()) <= 0;
    };

    for (int level = 1; level <= budget.max_level; ++level) {
        const Integer period = power(sys.base(), static_cast<unsigned long>(level));
        Rational delta = std::min(Rational(1, 10000), Rational(Integer(1), period * period));
        const Enclosure lip = lipschitz_bound(sys, level, opts.precision);
        for (int halving = 0; halving <= budget.max_halvings; ++halving, delta /= 2) {
            const GridSpec grid = GridSpec::make(sys.base(), level, delta);
            // Each F_L evaluation runs through b^L terms.
            const auto cost = static_cast<std::uint64_t>(grid.count);
            if (result.grid_points + cost > budget.max_grid_points) {
                result.status = converged() ? RefineStatus::converged : RefineStatus::budget_exhausted;
                return result;
            }
            result.grid_points += cost;
            const GridExtrema ex = grid_extrema(sys, grid, opts);
            absorb(bracket_from_extrema(sys, level, delta, ex, opts.precision));
            if (converged()) {
                result.status = RefineStatus::converged;
                return result;
            }
            const Enclosure slack = slack_for(lip, delta, Rational(1, 2));
            if (compare(slack, ex.min * Rational(1, 100)) == Comparison::below)
                break;
        }
    }
    result.status = converged() ? RefineStatus::converged : RefineStatus::budget_exhausted;
    return result;
}

InductionCheck induction_sum_check(const DigitSystem& sys, int depth, const Rational& y, const EvalOptions& opts)
{
    if (depth < 1)
        throw ParameterError("depth must be >= 1");
    const Integer count = power(sys.base(), static_cast<unsigned long>(depth));
    if (count > 1000000)
        throw ParameterError("b^N = " + count.get_str() + " exceeds the enumeration limit of 10^6");
    const Precision prec = opts.precision;

    Enclosure lhs(prec);
    const Rational scale(Integer(1), count);
    const long n = count.get_si();
    for (long xi = 0; xi < n; ++xi)
        lhs += cocycle_product(sys, depth, (y + Rational(xi)) * scale, prec, opts.symbol);

    const Rational delta(1, 10000);
    const GridExtrema ex = grid_extrema(sys, GridSpec::make(sys.base(), 1, delta), opts);
    const Enclosure slack = slack_for(lipschitz_bound(sys, 1, prec), delta, Rational(1, 2));
    const Enclosure rhs = pow(upper_point(upper_point(ex.max) + slack), static_cast<unsigned>(depth));

    InductionCheck out{lhs, rhs, false};
    out.holds = mpfr_lessequal_p(lhs.lo(), rhs.hi()) != 0;
    return out;
}

} // namespace digitdim
