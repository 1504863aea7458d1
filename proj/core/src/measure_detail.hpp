#ifndef DIGITDIM_SRC_MEASURE_DETAIL_HPP
#define DIGITDIM_SRC_MEASURE_DETAIL_HPP

#include <functional>
#include <variant>

#include "digitdim/measure.hpp"

namespace digitdim::detail {

// Argument of g: an exact rational kept reduced modulo 1, or an enclosure.
class Abscissa {
public:
    Abscissa(const Rational& q, Precision prec);
    explicit Abscissa(Enclosure x);

    [[nodiscard]] ComplexBox circle() const;
    [[nodiscard]] Abscissa scaled(const Integer& k) const;
    [[nodiscard]] Abscissa shifted(const Rational& s) const;
    [[nodiscard]] Precision precision() const { return prec_; }

private:
    std::variant<Rational, Enclosure> value_;
    Precision prec_;
};

// g(y) given e(y); e(b y) is requested only on the closed-form path.
Enclosure symbol_from_circle(const DigitSystem& sys, const ComplexBox& ey, const std::function<ComplexBox()>& eby,
                             const SymbolOptions& opts, SymbolPath* taken);

Enclosure symbol_at(const DigitSystem& sys, const Abscissa& y, const SymbolOptions& opts, SymbolPath* taken);
Enclosure cocycle_at(const DigitSystem& sys, int level, const Abscissa& x, const SymbolOptions& opts);
Enclosure grid_sum_at(const DigitSystem& sys, int level, const Abscissa& x, const SymbolOptions& opts);

} // namespace digitdim::detail

#endif
