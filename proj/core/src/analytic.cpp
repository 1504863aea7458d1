#include "digitdim/analytic.hpp"

#include <numeric>

#include "digitdim/errors.hpp"

namespace digitdim {

namespace {

Enclosure log_of(long n, Precision prec)
{
    return log(Enclosure(n, prec));
}

constexpr long kMaxPrecisionBits = 1L << 14;

} // namespace

Enclosure expsum_bound(int base, int length, Precision prec)
{
    if (length < 3 || length > base)
        throw ParameterError("expsum bound requires 3 <= l <= b, got b=" + std::to_string(base) +
                             " l=" + std::to_string(length));
    const Enclosure one(1, prec);
    return Enclosure(base, prec) * (one + log_of(2L * length, prec)) + Enclosure(3L * length + 2, prec);
}

Enclosure lower_bound_one_missing(int base, Precision prec)
{
    if (base < 3)
        throw ParameterError("one-missing-digit bound requires b >= 3, got " + std::to_string(base));
    const Enclosure log_b = log_of(base, prec);
    const Enclosure inner = Enclosure(5, prec) + log_of(2L * base, prec) + Enclosure::from_rational(Rational(2, base), prec);
    return (log_of(base - 1, prec) - log(inner)) / log_b;
}

APBound lower_bound_ap(int base, const APDigitSpec& spec, Precision prec)
{
    spec.validate(base);
    APBound out{log_of(spec.length, prec) / log_of(base, prec), Enclosure(prec), {}};
    const Enclosure inner = Enclosure(4, prec) + log_of(2L * spec.length, prec);
    out.bound = out.dimension - log(inner) / log_of(base, prec);
    if (std::gcd(spec.step, base) > 1)
        out.warnings.push_back("gcd(d, b) = " + std::to_string(std::gcd(spec.step, base)) +
                               " > 1: the exponential-sum estimate assumes d coprime to b");
    return out;
}

std::string to_string(AnalyticKind k)
{
    switch (k) {
    case AnalyticKind::expsum: return "expsum";
    case AnalyticKind::one_missing: return "one_missing";
    case AnalyticKind::ap_digits: return "ap_digits";
    }
    return "?";
}

AnalyticBound analytic_expsum(int base, int length, Precision prec)
{
    AnalyticBound out;
    out.kind = AnalyticKind::expsum;
    out.base = base;
    out.length = length;
    out.value = expsum_bound(base, length, prec);
    return out;
}

AnalyticBound analytic_one_missing(int base, Precision prec)
{
    AnalyticBound out;
    out.kind = AnalyticKind::one_missing;
    out.base = base;
    out.length = base - 1;
    out.value = lower_bound_one_missing(base, prec);
    out.dimension = log_of(base - 1, prec) / log_of(base, prec);
    return out;
}

AnalyticBound analytic_ap(int base, const APDigitSpec& spec, Precision prec)
{
    APBound b = lower_bound_ap(base, spec, prec);
    AnalyticBound out;
    out.kind = AnalyticKind::ap_digits;
    out.base = base;
    out.length = spec.length;
    out.ap = spec;
    out.value = std::move(b.bound);
    out.dimension = std::move(b.dimension);
    out.warnings = std::move(b.warnings);
    return out;
}

BaseCriterion parse_base_criterion(std::string_view s)
{
    if (s == "one_missing" || s == "one-missing")
        return BaseCriterion::one_missing;
    if (s == "one_missing_times_dim" || s == "one-missing-times-dim")
        return BaseCriterion::one_missing_times_dim;
    throw ParameterError("unknown criterion '" + std::string(s) + "'");
}

std::string to_string(BaseCriterion c)
{
    return c == BaseCriterion::one_missing ? "one_missing" : "one_missing_times_dim";
}

Enclosure base_criterion_value(int base, BaseCriterion kind, Precision prec)
{
    Enclosure v = lower_bound_one_missing(base, prec);
    if (kind == BaseCriterion::one_missing_times_dim)
        v *= log_of(base - 1, prec) / log_of(base, prec);
    return v;
}

SmallestBase smallest_base(const Rational& threshold, BaseCriterion kind, Precision prec, int limit)
{
    if (threshold <= 0 || threshold >= 1)
        throw ParameterError("threshold must lie in (0, 1), got " + to_string(threshold));
    std::optional<Enclosure> previous;
    for (int b = 3; b <= limit; ++b) {
        Precision p = prec;
        Enclosure v = base_criterion_value(b, kind, p);
        Comparison c = compare_threshold(v, threshold);
        while (c == Comparison::straddles) {
            p = p.doubled();
            if (p.bits > kMaxPrecisionBits)
                throw UnsupportedError("criterion at b=" + std::to_string(b) + " cannot be separated from " +
                                       to_string(threshold));
            v = base_criterion_value(b, kind, p);
            c = compare_threshold(v, threshold);
        }
        if (c == Comparison::above)
            return SmallestBase{b, std::move(v), std::move(previous), p};
        previous = std::move(v);
    }
    throw NotFoundError("no base b <= " + std::to_string(limit) + " has " + to_string(kind) + " bound above " +
                        to_string(threshold));
}

} // namespace digitdim
