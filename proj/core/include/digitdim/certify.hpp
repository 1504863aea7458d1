#ifndef DIGITDIM_CERTIFY_HPP
#define DIGITDIM_CERTIFY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "digitdim/digit_system.hpp"
#include "digitdim/enclosure.hpp"
#include "digitdim/measure.hpp"

namespace digitdim {

/// The abscissae k * delta for k = 0..ceil((2 b^L delta)^-1). The last one
/// reaches 1/(2 b^L), so the grid covers a half period of F_L, which is
/// even and 1/b^L-periodic.
struct GridSpec {
    int level = 1;
    Rational delta;
    std::int64_t count = 0;

    static GridSpec make(int base, int level, const Rational& delta);
    [[nodiscard]] Rational abscissa(std::int64_t k) const { return delta * Rational(k); }
};

/// Lipschitz slack is radius * Lip(F_L) * delta.
struct SlackPolicy {
    Rational lower_radius{1, 2};
    Rational upper_radius{1};
};

struct EvalOptions {
    Precision precision = kDefaultPrecision;
    unsigned workers = 1;
    /// Upper bound on abscissae per work chunk.
    std::int64_t max_chunk = 4096;
    SymbolOptions symbol;
    SlackPolicy slack;
    /// Re-run once at doubled precision when a verdict straddles.
    bool retry_inconclusive = true;
    /// Called from worker threads (serialized) after each finished chunk.
    std::function<void(std::int64_t done, std::int64_t total)> progress;
};

struct GridExtrema {
    /// Contains the maximum of F_L over the grid: [max of lo, max of hi].
    Enclosure max;
    /// Contains the minimum of F_L over the grid: [min of lo, min of hi].
    Enclosure min;
    std::int64_t count = 0;
};

/// F_L on every grid abscissa, reduced to max/min enclosures. The result
/// does not depend on the number of workers or the chunking.
GridExtrema grid_extrema(const DigitSystem& sys, const GridSpec& grid, const EvalOptions& opts = {});

/// 2 pi b^L (b^L - 1), an upper bound for Lip(F_L).
Enclosure lipschitz_bound(const DigitSystem& sys, int level, Precision prec);

enum class Direction { lower, upper };
enum class Verdict { pass, fail, inconclusive };

std::string to_string(Direction d);
std::string to_string(Verdict v);
Direction parse_direction(std::string_view s);
Verdict parse_verdict(std::string_view s);

/// Record of one grid verification. The verdict is a function of the
/// stored enclosures alone (see rederive_verdict).
struct Certificate {
    std::string system;
    Direction direction = Direction::lower;
    int level = 1;
    Rational delta;
    Rational tau;
    std::int64_t grid_count = 0;
    Enclosure grid_max;
    Enclosure grid_min;
    Enclosure lipschitz;
    Enclosure slack;
    Enclosure threshold;
    Verdict verdict = Verdict::inconclusive;
    Precision precision = kDefaultPrecision;
    double wall_time_seconds = 0.0;
};

/// lower: PASS iff max.hi < threshold.lo, FAIL iff max.lo >= threshold.hi.
/// upper: PASS iff min.lo > threshold.hi, FAIL iff min.hi <= threshold.lo.
Verdict derive_verdict(Direction direction, const Enclosure& grid_max, const Enclosure& grid_min,
                       const Enclosure& threshold);
Verdict rederive_verdict(const Certificate& cert);

/// Tests max_grid F_L < b^{(1-tau)L} - slack; PASS certifies kappa1 >= tau.
Certificate verify_lower(const DigitSystem& sys, int level, const Rational& delta, const Rational& tau,
                         const EvalOptions& opts = {});
/// Tests min_grid F_L > b^{(1-tau)L} + slack; PASS certifies kappa1 < tau.
Certificate verify_upper(const DigitSystem& sys, int level, const Rational& delta, const Rational& tau,
                         const EvalOptions& opts = {});
Certificate verify(const DigitSystem& sys, Direction direction, int level, const Rational& delta,
                   const Rational& tau, const EvalOptions& opts = {});

/// The lower bound on kappa1 implied by a certificate's grid maximum:
/// -log(b^-L (max.hi + Lip delta / 2)) / (L log b).
Enclosure certified_lower_bound(const Certificate& cert);

/// Certified two-sided bounds on the Fourier l1 dimension from one grid.
/// The lower bound is valid where lower.lo is used; the upper where
/// upper.hi is used. upper is absent when min - slack is not positive.
struct BoundBracket {
    std::optional<Enclosure> lower;
    std::optional<Enclosure> upper;
    int level = 0;
    Rational delta;

    [[nodiscard]] bool complete() const { return lower && upper; }
    /// upper.hi - lower.lo; requires complete().
    [[nodiscard]] double width() const;
};

BoundBracket bound_bracket(const DigitSystem& sys, int level, const Rational& delta, const EvalOptions& opts = {});
BoundBracket bracket_from_extrema(const DigitSystem& sys, int level, const Rational& delta, const GridExtrema& ex,
                                  Precision prec);

struct RefineBudget {
    int max_level = 6;
    /// Total F_L evaluations across all grids.
    std::uint64_t max_grid_points = 4'000'000;
    int max_halvings = 40;
};

enum class RefineStatus { converged, budget_exhausted };
std::string to_string(RefineStatus s);

struct RefineResult {
    /// Best lower (largest lo) and best upper (smallest hi) seen.
    BoundBracket bracket;
    RefineStatus status = RefineStatus::budget_exhausted;
    std::uint64_t grid_points = 0;
    std::vector<BoundBracket> history;
};

/// Brackets at L = 1, 2, ... until upper.hi - lower.lo <= eps or the budget
/// runs out. delta starts at min(1e-4, b^-2L) and is halved until the slack
/// is below 1% of the grid minimum.
RefineResult refine_dimension(const DigitSystem& sys, const Rational& eps, const RefineBudget& budget,
                              const EvalOptions& opts = {});

struct InductionCheck {
    Enclosure lhs;
    Enclosure rhs;
    bool holds = false;
};

/// lhs = sum_{xi < b^N} prod_{j=1}^{N} g(b^-j (y + xi)) by enumeration;
/// rhs = (certified max of F_1 with delta = 1e-4)^N.
InductionCheck induction_sum_check(const DigitSystem& sys, int depth, const Rational& y, const EvalOptions& opts = {});

} // namespace digitdim

#endif
