#ifndef DIGITDIM_ANALYTIC_HPP
#define DIGITDIM_ANALYTIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "digitdim/digit_system.hpp"
#include "digitdim/enclosure.hpp"

namespace digitdim {

// Closed-form lower bounds on the Fourier l1 dimension. All logarithms are
// natural.

/// b (1 + log 2l) + 3l + 2, a uniform bound on sum_x |sum_{k<l} e(x(kd+a)/b)|
/// over the b-th roots; requires 3 <= l <= b.
Enclosure expsum_bound(int base, int length, Precision prec = kDefaultPrecision);

/// log(b-1)/log b - log(5 + log 2b + 2/b)/log b for one missing digit; b >= 3.
Enclosure lower_bound_one_missing(int base, Precision prec = kDefaultPrecision);

struct APBound {
    /// log l / log b
    Enclosure dimension;
    /// dimension - log(4 + log 2l) / log b
    Enclosure bound;
    /// Set when gcd(d, b) > 1, where the exponential-sum estimate behind the
    /// bound assumes coprimality.
    std::vector<std::string> warnings;
};

APBound lower_bound_ap(int base, const APDigitSpec& spec, Precision prec = kDefaultPrecision);

enum class AnalyticKind { expsum, one_missing, ap_digits };
std::string to_string(AnalyticKind k);

/// One evaluated closed form with its parameters, as reported by the CLI.
struct AnalyticBound {
    AnalyticKind kind = AnalyticKind::one_missing;
    int base = 0;
    int length = 0;
    std::optional<APDigitSpec> ap;
    Enclosure value;
    std::optional<Enclosure> dimension;
    std::vector<std::string> warnings;
};

AnalyticBound analytic_expsum(int base, int length, Precision prec = kDefaultPrecision);
AnalyticBound analytic_one_missing(int base, Precision prec = kDefaultPrecision);
AnalyticBound analytic_ap(int base, const APDigitSpec& spec, Precision prec = kDefaultPrecision);

enum class BaseCriterion {
    /// lower_bound_one_missing(b)
    one_missing,
    /// lower_bound_one_missing(b) * log(b-1)/log b
    one_missing_times_dim,
};
BaseCriterion parse_base_criterion(std::string_view s);
std::string to_string(BaseCriterion c);

Enclosure base_criterion_value(int base, BaseCriterion kind, Precision prec = kDefaultPrecision);

struct SmallestBase {
    int base = 0;
    /// Criterion value at base, certifiably above the threshold.
    Enclosure value;
    /// Criterion value at base - 1 (certifiably not above), absent for b = 3.
    std::optional<Enclosure> previous;
    /// Precision at which the value at base was certified.
    Precision precision;
};

/// Smallest b in [3, limit] whose criterion value certifiably exceeds the
/// threshold. A candidate whose enclosure straddles the threshold is
/// re-evaluated at doubled precision. Throws NotFoundError past the limit.
SmallestBase smallest_base(const Rational& threshold, BaseCriterion kind, Precision prec = kDefaultPrecision,
                           int limit = 1'000'000);

} // namespace digitdim

#endif
