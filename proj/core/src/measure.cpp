#include "digitdim/measure.hpp"

#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "digitdim/errors.hpp"
#include "measure_detail.hpp"

namespace digitdim {

namespace detail {

Abscissa::Abscissa(const Rational& q, Precision prec)
    : value_(fractional_part(q)), prec_(prec)
{
}

Abscissa::Abscissa(Enclosure x)
    : value_(std::move(x)), prec_(std::get<Enclosure>(value_).precision())
{
}

ComplexBox Abscissa::circle() const
{
    if (const auto* q = std::get_if<Rational>(&value_))
        return unit_circle(*q, prec_);
    return unit_circle(std::get<Enclosure>(value_));
}

Abscissa Abscissa::scaled(const Integer& k) const
{
    if (const auto* q = std::get_if<Rational>(&value_))
        return Abscissa(*q * Rational(k), prec_);
    return Abscissa(std::get<Enclosure>(value_) * Rational(k));
}

Abscissa Abscissa::shifted(const Rational& s) const
{
    if (const auto* q = std::get_if<Rational>(&value_))
        return Abscissa(*q + s, prec_);
    return Abscissa(std::get<Enclosure>(value_) + s);
}

namespace {

Enclosure unit_range(Precision prec)
{
    return hull(Enclosure(0, prec), Enclosure(1, prec));
}

Enclosure direct_symbol(const DigitSystem& sys, const ComplexBox& ey)
{
    const Precision prec = ey.precision();
    const auto missing = sys.missing_digit();
    ComplexBox sum(prec);
    ComplexBox power(Enclosure(1, prec), Enclosure(prec));
    const auto weights = sys.weights();
    for (int j = 0; j < sys.base(); ++j) {
        if (weights[j] != 0) {
            if (missing)
                sum += power;
            else
                sum += power * Enclosure::from_rational(weights[j], prec);
        }
        if (j + 1 < sys.base())
            power = power * ey;
    }
    Enclosure g = modulus(sum);
    if (missing)
        g = g / Rational(sys.base() - 1);
    return intersect(g, unit_range(prec));
}

} // namespace

Enclosure symbol_from_circle(const DigitSystem& sys, const ComplexBox& ey, const std::function<ComplexBox()>& eby,
                             const SymbolOptions& opts, SymbolPath* taken)
{
    const auto missing = sys.missing_digit();
    const bool want_closed = missing && (!opts.force_path || *opts.force_path == SymbolPath::closed_form);
    if (!want_closed) {
        if (taken)
            *taken = SymbolPath::direct;
        return direct_symbol(sys, ey);
    }
    const Precision prec = ey.precision();
    const Enclosure one(1, prec);
    ComplexBox shifted = ey - one;
    Enclosure gap = modulus(shifted);
    if (compare_threshold(gap, opts.near_integer_guard) != Comparison::above) {
        if (taken)
            *taken = SymbolPath::direct;
        return direct_symbol(sys, ey);
    }
    if (taken)
        *taken = SymbolPath::closed_form;
    // |(e(by) - 1)/(e(y) - 1) - e(ay)| = |e(by) - 1 - e(ay)(e(y) - 1)| / |e(y) - 1|
    const ComplexBox eay = pow(ey, static_cast<unsigned>(*missing));
    ComplexBox numerator = (eby() - one) - eay * shifted;
    Enclosure g = modulus(numerator) / (gap * Rational(sys.base() - 1));
    return intersect(g, unit_range(prec));
}

Enclosure symbol_at(const DigitSystem& sys, const Abscissa& y, const SymbolOptions& opts, SymbolPath* taken)
{
    const ComplexBox ey = y.circle();
    return symbol_from_circle(
        sys, ey, [&] { return y.scaled(Integer(sys.base())).circle(); }, opts, taken);
}

Enclosure cocycle_at(const DigitSystem& sys, int level, const Abscissa& x, const SymbolOptions& opts)
{
    if (level < 1)
        throw ParameterError("cocycle product needs L >= 1");
    Enclosure product = symbol_at(sys, x, opts, nullptr);
    Integer scale = 1;
    for (int j = 1; j < level; ++j) {
        scale *= sys.base();
        product *= symbol_at(sys, x.scaled(scale), opts, nullptr);
    }
    return product;
}

namespace {

constexpr std::int64_t kMaxCachedRoots = std::int64_t{1} << 16;

// e(i/n) for i < n, cached per thread and precision.
const std::vector<ComplexBox>& roots_of_unity(std::int64_t n, Precision prec)
{
    thread_local std::map<std::pair<long, std::int64_t>, std::vector<ComplexBox>> cache;
    const auto key = std::make_pair(prec.bits, n);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;
    if (cache.size() >= 64)
        cache.clear();
    std::vector<ComplexBox> table;
    table.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        table.push_back(unit_circle(Rational(i, n), prec));
    return cache.emplace(key, std::move(table)).first->second;
}

} // namespace

Enclosure grid_sum_at(const DigitSystem& sys, int level, const Abscissa& x, const SymbolOptions& opts)
{
    if (level < 1)
        throw ParameterError("grid sum needs L >= 1");
    const long b = sys.base();
    const std::int64_t terms = checked_power(b, level);
    if (terms > (std::int64_t{1} << 26))
        throw ParameterError("b^L = " + std::to_string(terms) + " terms is beyond the supported grid sum size");

    // counts[j] = b^(L-j), the number of distinct abscissae at level j.
    std::vector<std::int64_t> counts(static_cast<std::size_t>(level) + 1);
    counts[static_cast<std::size_t>(level)] = 1;
    for (int j = level - 1; j >= 0; --j)
        counts[static_cast<std::size_t>(j)] = counts[static_cast<std::size_t>(j) + 1] * b;

    std::vector<std::vector<ComplexBox>> circles(static_cast<std::size_t>(level) + 1);
    Integer scale = 1;
    for (int j = 0; j <= level; ++j) {
        const Abscissa base_point = x.scaled(scale);
        const std::int64_t n = counts[static_cast<std::size_t>(j)];
        auto& row = circles[static_cast<std::size_t>(j)];
        row.reserve(static_cast<std::size_t>(n));
        row.push_back(base_point.circle());
        if (n <= kMaxCachedRoots) {
            const auto& roots = roots_of_unity(n, x.precision());
            for (std::int64_t i = 1; i < n; ++i)
                row.push_back(row.front() * roots[static_cast<std::size_t>(i)]);
        } else {
            for (std::int64_t i = 1; i < n; ++i)
                row.push_back(base_point.shifted(Rational(i, n)).circle());
        }
        scale *= b;
    }

    // partial[r] = prod_{k >= j} g at level k, index r mod b^(L-k); built
    // from the top level down, since b^(L-j-1) divides b^(L-j).
    std::vector<Enclosure> partial;
    for (int j = level - 1; j >= 0; --j) {
        const std::int64_t n = counts[static_cast<std::size_t>(j)];
        const std::int64_t next = counts[static_cast<std::size_t>(j) + 1];
        const auto& row = circles[static_cast<std::size_t>(j)];
        const auto& up = circles[static_cast<std::size_t>(j) + 1];
        std::vector<Enclosure> current;
        current.reserve(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) {
            const auto r = static_cast<std::size_t>(i % next);
            Enclosure g = symbol_from_circle(sys, row[static_cast<std::size_t>(i)], [&] { return up[r]; }, opts, nullptr);
            if (!partial.empty())
                g *= partial[r];
            current.push_back(std::move(g));
        }
        partial = std::move(current);
    }

    Enclosure sum(x.precision());
    for (const auto& term : partial)
        sum += term;
    return sum;
}

} // namespace detail

Enclosure symbol_modulus(const DigitSystem& sys, const Enclosure& x, const SymbolOptions& opts)
{
    return detail::symbol_at(sys, detail::Abscissa(x), opts, nullptr);
}

Enclosure symbol_modulus(const DigitSystem& sys, const Rational& x, Precision prec, const SymbolOptions& opts)
{
    return detail::symbol_at(sys, detail::Abscissa(x, prec), opts, nullptr);
}

SymbolPath symbol_path(const DigitSystem& sys, const Rational& x, Precision prec, const SymbolOptions& opts)
{
    SymbolPath taken = SymbolPath::direct;
    (void)detail::symbol_at(sys, detail::Abscissa(x, prec), opts, &taken);
    return taken;
}

Enclosure cocycle_product(const DigitSystem& sys, int level, const Enclosure& x, const SymbolOptions& opts)
{
    return detail::cocycle_at(sys, level, detail::Abscissa(x), opts);
}

Enclosure cocycle_product(const DigitSystem& sys, int level, const Rational& x, Precision prec,
                          const SymbolOptions& opts)
{
    return detail::cocycle_at(sys, level, detail::Abscissa(x, prec), opts);
}

Enclosure grid_sum(const DigitSystem& sys, int level, const Enclosure& x, const SymbolOptions& opts)
{
    return detail::grid_sum_at(sys, level, detail::Abscissa(x), opts);
}

Enclosure grid_sum(const DigitSystem& sys, int level, const Rational& x, Precision prec, const SymbolOptions& opts)
{
    return detail::grid_sum_at(sys, level, detail::Abscissa(x, prec), opts);
}

Enclosure hausdorff_dimension(const DigitSystem& sys, Precision prec)
{
    if (!sys.is_uniform())
        throw UnsupportedError("Hausdorff dimension is only provided for weights uniform on the digit set");
    return log(Enclosure(static_cast<long>(sys.digits().size()), prec)) / log(Enclosure(sys.base(), prec));
}

Enclosure fourier_coefficient_truncated(const DigitSystem& sys, const Integer& xi, int depth, Precision prec,
                                        const SymbolOptions& opts)
{
    if (depth < 1)
        throw ParameterError("truncation depth must be >= 1");
    Enclosure product(1, prec);
    Integer scale = 1;
    for (int j = 1; j <= depth; ++j) {
        scale *= sys.base();
        Rational arg(xi, scale);
        arg.canonicalize();
        product *= symbol_modulus(sys, arg, prec, opts);
    }
    return product;
}

Enclosure empirical_kappa1(const DigitSystem& sys, long modulus_q, int depth, Precision prec,
                           const SymbolOptions& opts)
{
    if (modulus_q < 2)
        throw ParameterError("empirical kappa needs Q >= 2");
    Enclosure sum(prec);
    for (long n = 0; n < modulus_q; ++n)
        sum += fourier_coefficient_truncated(sys, Integer(n), depth, prec, opts);
    const Enclosure q(modulus_q, prec);
    return -log(sum / q) / log(q);
}

} // namespace digitdim
