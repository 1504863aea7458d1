#ifndef DIGITDIM_CONSEQUENCES_HPP
#define DIGITDIM_CONSEQUENCES_HPP

#include <string>

#include "digitdim/enclosure.hpp"

namespace digitdim {

// Exponents derived from a certified lower bound v on the Fourier l1
// dimension of a measure with Hausdorff dimension kappa. Every function
// requires 0 < kappa < 1 and 1/2 < v < 1 certifiably (endpoint-wise) and
// throws DomainError otherwise.

/// E = 2 kappa - (1 - kappa)(2v - 1)/(1 - v), the exponent of the rational
/// counting function near the support.
Enclosure counting_exponent(const Enclosure& kappa, const Enclosure& v);

/// rho = (1 - kappa)(2v - 1)/(1 - v) = 2 kappa - E.
Enclosure rho_counting(const Enclosure& kappa, const Enclosure& v);

struct IntrinsicThreshold {
    /// E / kappa; approximation order beyond which the set is null.
    Enclosure alpha_star;
    /// 2 - alpha_star = rho / kappa.
    Enclosure rho_intrinsic;
};

IntrinsicThreshold intrinsic_threshold(const Enclosure& kappa, const Enclosure& v);

enum class BDVerdict { holds, fails, inconclusive };
std::string to_string(BDVerdict v);

struct BDCheck {
    Enclosure product;
    BDVerdict verdict = BDVerdict::inconclusive;
};

/// Tests kappa_hat * kappa > 1/2. Inputs must lie in [0, 1].
BDCheck bd_check(const Enclosure& kappa_hat_lower, const Enclosure& kappa);

struct TauBD {
    /// A decimal rational with exact >= tau(b) and exact - tau(b) < 10^-24.
    Rational exact;
    /// Enclosure of tau(b) = log b / (2 log(b-1)).
    Enclosure value;
};

/// The exponent tau(b) with tau(b) * log(b-1)/log b = 1/2, so that
/// kappa_hat >= tau(b) gives kappa_hat * dim = 1/2 for one missing digit.
TauBD tau_for_bd(int base, Precision prec = kDefaultPrecision);

struct ExponentReport {
    std::string system;
    /// Where v came from: "certificate", "analytic" or "given".
    std::string v_source;
    Enclosure kappa;
    Enclosure v;
    Enclosure counting_exponent;
    Enclosure rho_counting;
    Enclosure alpha_star;
    Enclosure rho_intrinsic;
    Enclosure bd_product;
    BDVerdict bd_holds = BDVerdict::inconclusive;
};

ExponentReport exponent_report(const Enclosure& kappa, const Enclosure& v);

} // namespace digitdim

#endif
