#ifndef DIGITDIM_ENCLOSURE_HPP
#define DIGITDIM_ENCLOSURE_HPP

#include <string>
#include <string_view>

#include <mpfr.h>

#include "digitdim/exact.hpp"

namespace digitdim {

/// Working precision in binary fraction bits.
struct Precision {
    long bits = 128;

    [[nodiscard]] Precision doubled() const { return Precision{bits * 2}; }
    friend bool operator==(Precision, Precision) = default;
};

inline constexpr Precision kDefaultPrecision{128};

/// A closed real interval [lo, hi] with endpoints rounded outward.
///
/// Every operation below returns an enclosure of the exact image of its
/// inputs. Invalid domains raise DomainError; an enclosure is never empty
/// and never holds NaN. Results carry the larger of the operand precisions.
class Enclosure {
public:
    /// The point enclosure [0, 0].
    explicit Enclosure(Precision prec = kDefaultPrecision);
    Enclosure(long value, Precision prec);

    static Enclosure from_rational(const Rational& q, Precision prec);
    static Enclosure from_rationals(const Rational& lo, const Rational& hi, Precision prec);
    static Enclosure from_doubles(double lo, double hi, Precision prec);
    /// Parses decimal endpoint strings, rounding lo down and hi up. A string
    /// produced by lower_decimal/upper_decimal at the same precision parses
    /// back to the endpoint it was printed from.
    static Enclosure from_decimal(std::string_view lo, std::string_view hi, Precision prec);
    static Enclosure pi(Precision prec);
    /// [-1, 1].
    static Enclosure symmetric_unit(Precision prec);

    Enclosure(const Enclosure& other);
    Enclosure(Enclosure&& other) noexcept;
    Enclosure& operator=(const Enclosure& other);
    Enclosure& operator=(Enclosure&& other) noexcept;
    ~Enclosure();

    [[nodiscard]] mpfr_srcptr lo() const { return lo_; }
    [[nodiscard]] mpfr_srcptr hi() const { return hi_; }
    [[nodiscard]] Precision precision() const { return Precision{mpfr_get_prec(lo_)}; }

    /// Lower endpoint rounded down to double.
    [[nodiscard]] double lower() const;
    /// Upper endpoint rounded up to double.
    [[nodiscard]] double upper() const;
    [[nodiscard]] double midpoint() const;
    /// hi - lo, rounded up.
    [[nodiscard]] double width() const;

    [[nodiscard]] bool is_point() const;
    [[nodiscard]] bool contains(const Rational& q) const;
    [[nodiscard]] bool contains(double x) const;
    [[nodiscard]] bool contains(const Enclosure& inner) const;
    [[nodiscard]] bool intersects(const Enclosure& other) const;
    [[nodiscard]] bool contains_zero() const;
    [[nodiscard]] bool is_positive() const;
    [[nodiscard]] bool is_nonnegative() const;

    /// Decimal endpoint strings; lo is rounded toward -inf and hi toward
    /// +inf, so parsing them back always yields a superset.
    [[nodiscard]] std::string lower_decimal() const;
    [[nodiscard]] std::string upper_decimal() const;

    /// Exact dyadic value of the endpoints.
    [[nodiscard]] Rational lower_rational() const;
    [[nodiscard]] Rational upper_rational() const;

    Enclosure& operator+=(const Enclosure& rhs);
    Enclosure& operator-=(const Enclosure& rhs);
    Enclosure& operator*=(const Enclosure& rhs);
    Enclosure& operator/=(const Enclosure& rhs);

    friend Enclosure operator-(const Enclosure& x);
    friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator/(const Enclosure& a, const Enclosure& b);

    friend Enclosure sqr(const Enclosure& x);
    friend Enclosure sqrt(const Enclosure& x);
    friend Enclosure abs(const Enclosure& x);
    friend Enclosure log(const Enclosure& x);
    friend Enclosure exp(const Enclosure& x);
    friend Enclosure hull(const Enclosure& a, const Enclosure& b);
    friend Enclosure max_endpoints(const Enclosure& a, const Enclosure& b);
    friend Enclosure min_endpoints(const Enclosure& a, const Enclosure& b);
    friend Enclosure clamp_nonnegative(const Enclosure& x);
    friend class EnclosureAccess;

private:
    struct Uninitialized {};
    Enclosure(Uninitialized, Precision prec);

    mpfr_t lo_;
    mpfr_t hi_;
};

Enclosure operator+(const Enclosure& a, const Rational& b);
Enclosure operator-(const Enclosure& a, const Rational& b);
Enclosure operator*(const Enclosure& a, const Rational& b);
Enclosure operator*(const Rational& a, const Enclosure& b);
Enclosure operator/(const Enclosure& a, const Rational& b);

/// Intersection of two enclosures of the same quantity; throws
/// std::logic_error when they are disjoint.
Enclosure intersect(const Enclosure& a, const Enclosure& b);

/// base^exponent for a strictly positive base.
Enclosure pow(const Enclosure& base, const Enclosure& exponent);
/// x^n by repeated squaring, n >= 0.
Enclosure pow(const Enclosure& x, unsigned n);

enum class ArithOp { add, sub, mul, div };
Enclosure arith(const Enclosure& a, const Enclosure& b, ArithOp op);

enum class ElementaryFn { log, exp };
Enclosure elementary(const Enclosure& x, ElementaryFn fn);

enum class Comparison { below, above, straddles };

/// below iff hi < t; above iff lo > t; straddles otherwise.
Comparison compare_threshold(const Enclosure& x, const Rational& t);
/// below iff x.hi < y.lo; above iff x.lo > y.hi; straddles otherwise.
Comparison compare(const Enclosure& x, const Enclosure& y);

std::string to_string(Comparison c);

/// Rectangular complex enclosure re + i*im.
struct ComplexBox {
    Enclosure re;
    Enclosure im;

    explicit ComplexBox(Precision prec = kDefaultPrecision)
        : re(prec), im(prec) {}
    ComplexBox(Enclosure real, Enclosure imag)
        : re(std::move(real)), im(std::move(imag)) {}

    [[nodiscard]] Precision precision() const { return re.precision(); }
    [[nodiscard]] bool contains(double x, double y) const { return re.contains(x) && im.contains(y); }
    [[nodiscard]] bool intersects(const ComplexBox& o) const { return re.intersects(o.re) && im.intersects(o.im); }

    ComplexBox& operator+=(const ComplexBox& rhs);
    ComplexBox& operator-=(const ComplexBox& rhs);
};

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator-(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator*(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator*(const ComplexBox& a, const Enclosure& s);
ComplexBox operator-(const ComplexBox& a, const Enclosure& s);
ComplexBox conj(const ComplexBox& z);
/// z^n by repeated squaring, n >= 0.
ComplexBox pow(const ComplexBox& z, unsigned n);

/// Box containing e(t) = exp(2 pi i t) for every t in x. The argument is
/// reduced modulo 1 and evaluated by octant symmetry, so the result stays
/// tight for large arguments with small width.
ComplexBox unit_circle(const Enclosure& x);
/// e(t) for an exact rational, reduced modulo 1 exactly before conversion.
ComplexBox unit_circle(const Rational& t, Precision prec);

/// Enclosure of |w| over all w in z; always nonnegative.
Enclosure modulus(const ComplexBox& z);

} // namespace digitdim

#endif
