#ifndef DIGITDIM_MEASURE_HPP
#define DIGITDIM_MEASURE_HPP

#include <optional>

#include "digitdim/digit_system.hpp"
#include "digitdim/enclosure.hpp"

namespace digitdim {

/// How g is evaluated for uniform one-missing-digit systems.
enum class SymbolPath {
    /// sum_j p_j e(j x)
    direct,
    /// |(e(b x) - 1)/(e(x) - 1) - e(a x)| / (b - 1)
    closed_form,
};

struct SymbolOptions {
    /// The closed form is used only when the enclosure of |e(x) - 1| stays
    /// at least this far from zero; otherwise the direct sum is taken.
    Rational near_integer_guard{1, 10000000000};
    /// Forces a path (testing); closed_form still falls back to direct near
    /// integers, and generic weight vectors are always direct.
    std::optional<SymbolPath> force_path;
};

/// g(x) = |sum_j p_j e(j x)|, the modulus of the digit distribution's
/// Fourier transform. Z-periodic, even, 0 <= g <= 1 and g(0) = 1.
Enclosure symbol_modulus(const DigitSystem& sys, const Enclosure& x, const SymbolOptions& opts = {});
Enclosure symbol_modulus(const DigitSystem& sys, const Rational& x, Precision prec, const SymbolOptions& opts = {});

/// Path actually taken by symbol_modulus for this argument.
SymbolPath symbol_path(const DigitSystem& sys, const Rational& x, Precision prec, const SymbolOptions& opts = {});

/// S_L(x) = prod_{j<L} g(b^j x).
Enclosure cocycle_product(const DigitSystem& sys, int level, const Enclosure& x, const SymbolOptions& opts = {});
Enclosure cocycle_product(const DigitSystem& sys, int level, const Rational& x, Precision prec,
                          const SymbolOptions& opts = {});

/// F_L(x) = sum_{i < b^L} S_L(x + i / b^L).
///
/// Evaluated level by level: the factor g(b^j (x + i/b^L)) depends on i
/// only through i mod b^(L-j), so each level needs b^(L-j) distinct values
/// and e(b y) for level j is e(y) of level j+1.
Enclosure grid_sum(const DigitSystem& sys, int level, const Enclosure& x, const SymbolOptions& opts = {});
Enclosure grid_sum(const DigitSystem& sys, int level, const Rational& x, Precision prec,
                   const SymbolOptions& opts = {});

/// log #D / log b for weights uniform on D; UnsupportedError otherwise.
Enclosure hausdorff_dimension(const DigitSystem& sys, Precision prec);

/// prod_{j=1}^{depth} g(b^{-j} xi). Every omitted factor is at most 1, so this
/// bounds |nu^(xi)| from above.
Enclosure fourier_coefficient_truncated(const DigitSystem& sys, const Integer& xi, int depth, Precision prec,
                                        const SymbolOptions& opts = {});

/// -log(Q^{-1} sum_{n<Q} c_n) / log Q with c_n the truncated coefficients.
/// A finite-Q diagnostic, not a certified bound.
Enclosure empirical_kappa1(const DigitSystem& sys, long modulus_q, int depth, Precision prec,
                           const SymbolOptions& opts = {});

} // namespace digitdim

#endif
