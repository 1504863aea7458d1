#include "digitdim/consequences.hpp"

#include "digitdim/errors.hpp"

namespace digitdim {

namespace {

void require_domain(const Enclosure& kappa, const Enclosure& v)
{
    if (!(mpfr_sgn(kappa.lo()) > 0 && mpfr_cmp_si(kappa.hi(), 1) < 0))
        throw DomainError("kappa must lie in (0, 1), got [" + kappa.lower_decimal() + ", " + kappa.upper_decimal() +
                          "]");
    const Rational half(1, 2);
    if (!(mpfr_cmp_q(v.lo(), half.get_mpq_t()) > 0 && mpfr_cmp_si(v.hi(), 1) < 0))
        throw DomainError("v must lie in (1/2, 1), got [" + v.lower_decimal() + ", " + v.upper_decimal() + "]");
}

Enclosure correction(const Enclosure& kappa, const Enclosure& v)
{
    const Precision prec = kappa.precision();
    const Enclosure one(1, prec);
    return (one - kappa) * (v * Rational(2) - one) / (one - v);
}

} // namespace

Enclosure counting_exponent(const Enclosure& kappa, const Enclosure& v)
{
    require_domain(kappa, v);
    return kappa * Rational(2) - correction(kappa, v);
}

Enclosure rho_counting(const Enclosure& kappa, const Enclosure& v)
{
    require_domain(kappa, v);
    return correction(kappa, v);
}

IntrinsicThreshold intrinsic_threshold(const Enclosure& kappa, const Enclosure& v)
{
    Enclosure alpha = counting_exponent(kappa, v) / kappa;
    Enclosure rho = Enclosure(2, kappa.precision()) - alpha;
    return IntrinsicThreshold{std::move(alpha), std::move(rho)};
}

std::string to_string(BDVerdict v)
{
    switch (v) {
    case BDVerdict::holds: return "holds";
    case BDVerdict::fails: return "fails";
    case BDVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

BDCheck bd_check(const Enclosure& kappa_hat_lower, const Enclosure& kappa)
{
    const auto in_unit = [](const Enclosure& x) { return mpfr_sgn(x.lo()) >= 0 && mpfr_cmp_si(x.hi(), 1) <= 0; };
    if (!in_unit(kappa_hat_lower) || !in_unit(kappa))
        throw DomainError("bd_check inputs must lie in [0, 1]");
    BDCheck out{kappa_hat_lower * kappa, BDVerdict::inconclusive};
    switch (compare_threshold(out.product, Rational(1, 2))) {
    case Comparison::above: out.verdict = BDVerdict::holds; break;
    case Comparison::below: out.verdict = BDVerdict::fails; break;
    case Comparison::straddles: break;
    }
    return out;
}

TauBD tau_for_bd(int base, Precision prec)
{
    if (base < 3)
        throw ParameterError("tau(b) requires b >= 3, got " + std::to_string(base));
    Enclosure value = log(Enclosure(base, prec)) / (log(Enclosure(base - 1, prec)) * Rational(2));
    Rational exact = decimal_ceiling(value.upper_rational(), 24);
    return TauBD{std::move(exact), std::move(value)};
}

ExponentReport exponent_report(const Enclosure& kappa, const Enclosure& v)
{
    ExponentReport r;
    r.kappa = kappa;
    r.v = v;
    r.counting_exponent = counting_exponent(kappa, v);
    r.rho_counting = rho_counting(kappa, v);
    IntrinsicThreshold t = intrinsic_threshold(kappa, v);
    r.alpha_star = std::move(t.alpha_star);
    r.rho_intrinsic = std::move(t.rho_intrinsic);
    BDCheck bd = bd_check(v, kappa);
    r.bd_product = std::move(bd.product);
    r.bd_holds = bd.verdict;
    return r;
}

} // namespace digitdim
