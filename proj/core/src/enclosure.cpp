#include "digitdim/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "digitdim/errors.hpp"

namespace digitdim {

class EnclosureAccess {
public:
    static Enclosure make(Precision prec) { return Enclosure(Enclosure::Uninitialized{}, prec); }
    static mpfr_ptr lo(Enclosure& e) { return e.lo_; }
    static mpfr_ptr hi(Enclosure& e) { return e.hi_; }
};

namespace {

using A = EnclosureAccess;

// Scoped mpfr_t temporary.
class Temp {
public:
    explicit Temp(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    Temp(const Temp&) = delete;
    Temp& operator=(const Temp&) = delete;
    ~Temp() { mpfr_clear(v_); }
    operator mpfr_ptr() { return v_; }
    operator mpfr_srcptr() const { return v_; }
    mpfr_ptr operator->() { return v_; }
    mpfr_srcptr operator->() const { return v_; }

private:
    mpfr_t v_;
};

Precision wider(const Enclosure& a, const Enclosure& b)
{
    return Precision{std::max(a.precision().bits, b.precision().bits)};
}

void require_finite(const Enclosure& x, const char* what)
{
    if (!mpfr_number_p(x.lo()) || !mpfr_number_p(x.hi()))
        throw DomainError(std::string(what) + ": non-finite enclosure");
}

std::string format_decimal(mpfr_srcptr x, mpfr_rnd_t rnd)
{
    if (mpfr_zero_p(x))
        return "0";
    if (!mpfr_number_p(x))
        throw DomainError("cannot format a non-finite endpoint");
    const auto digits = static_cast<std::size_t>(std::ceil(static_cast<double>(mpfr_get_prec(x)) * 0.30102999566398120)) + 2;
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, digits, x, rnd);
    std::string s(raw);
    mpfr_free_str(raw);
    std::string out;
    std::size_t pos = 0;
    if (s[0] == '-') {
        out.push_back('-');
        pos = 1;
    }
    out.push_back(s[pos]);
    out.push_back('.');
    out.append(s, pos + 1, std::string::npos);
    // trailing zeros of the mantissa carry no information
    while (out.back() == '0')
        out.pop_back();
    if (out.back() == '.')
        out.pop_back();
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
}

} // namespace

Enclosure::Enclosure(Precision prec)
{
    mpfr_init2(lo_, prec.bits);
    mpfr_init2(hi_, prec.bits);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Enclosure::Enclosure(long value, Precision prec)
{
    mpfr_init2(lo_, prec.bits);
    mpfr_init2(hi_, prec.bits);
    mpfr_set_si(lo_, value, MPFR_RNDD);
    mpfr_set_si(hi_, value, MPFR_RNDU);
}

Enclosure::Enclosure(Uninitialized, Precision prec)
{
    mpfr_init2(lo_, prec.bits);
    mpfr_init2(hi_, prec.bits);
}

Enclosure::Enclosure(const Enclosure& other)
{
    mpfr_init2(lo_, mpfr_get_prec(other.lo_));
    mpfr_init2(hi_, mpfr_get_prec(other.hi_));
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Enclosure::Enclosure(Enclosure&& other) noexcept
{
    std::memcpy(lo_, other.lo_, sizeof(mpfr_t));
    std::memcpy(hi_, other.hi_, sizeof(mpfr_t));
    other.lo_->_mpfr_d = nullptr;
    other.hi_->_mpfr_d = nullptr;
}

Enclosure& Enclosure::operator=(const Enclosure& other)
{
    if (this == &other)
        return *this;
    if (lo_->_mpfr_d == nullptr) {
        mpfr_init2(lo_, mpfr_get_prec(other.lo_));
        mpfr_init2(hi_, mpfr_get_prec(other.hi_));
    } else {
        mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
        mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
    }
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
    return *this;
}

Enclosure& Enclosure::operator=(Enclosure&& other) noexcept
{
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
}

Enclosure::~Enclosure()
{
    if (lo_->_mpfr_d != nullptr)
        mpfr_clear(lo_);
    if (hi_->_mpfr_d != nullptr)
        mpfr_clear(hi_);
}

Enclosure Enclosure::from_rational(const Rational& q, Precision prec)
{
    return from_rationals(q, q, prec);
}

Enclosure Enclosure::from_rationals(const Rational& lo, const Rational& hi, Precision prec)
{
    if (lo > hi)
        throw ParameterError("enclosure endpoints out of order");
    Enclosure r(Uninitialized{}, prec);
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::from_doubles(double lo, double hi, Precision prec)
{
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("non-finite enclosure endpoint");
    if (lo > hi)
        throw ParameterError("enclosure endpoints out of order");
    Enclosure r(Uninitialized{}, prec);
    mpfr_set_d(r.lo_, lo, MPFR_RNDD);
    mpfr_set_d(r.hi_, hi, MPFR_RNDU);
    return r;
}

Enclosure Enclosure::from_decimal(std::string_view lo, std::string_view hi, Precision prec)
{
    Enclosure r(Uninitialized{}, prec);
    const auto parse = [](mpfr_ptr dst, const std::string& text, mpfr_rnd_t rnd) {
        char* end = nullptr;
        mpfr_strtofr(dst, text.c_str(), &end, 10, rnd);
        if (text.empty() || end == nullptr || *end != '\0' || !mpfr_number_p(dst))
            throw ParameterError("malformed decimal endpoint '" + text + "'");
    };
    // An endpoint printed by lower_decimal/upper_decimal at this precision
    // lies within one ulp of a unique binary value, which is recovered so
    // that print and parse round-trip.
    const auto parse_endpoint = [&](mpfr_ptr dst, const std::string& text, mpfr_rnd_t outward, mpfr_rnd_t inward) {
        parse(dst, text, inward);
        if (format_decimal(dst, outward) != text)
            parse(dst, text, outward);
    };
    parse_endpoint(r.lo_, std::string(lo), MPFR_RNDD, MPFR_RNDU);
    parse_endpoint(r.hi_, std::string(hi), MPFR_RNDU, MPFR_RNDD);
    if (mpfr_greater_p(r.lo_, r.hi_))
        throw ParameterError("enclosure endpoints out of order");
    return r;
}

Enclosure Enclosure::pi(Precision prec)
{
    Enclosure r(Uninitialized{}, prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Enclosure Enclosure::symmetric_unit(Precision prec)
{
    Enclosure r(Uninitialized{}, prec);
    mpfr_set_si(r.lo_, -1, MPFR_RNDD);
    mpfr_set_si(r.hi_, 1, MPFR_RNDU);
    return r;
}

double Enclosure::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Enclosure::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Enclosure::midpoint() const
{
    Temp m(mpfr_get_prec(lo_) + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    return mpfr_get_d(m, MPFR_RNDN);
}

double Enclosure::width() const
{
    Temp w(mpfr_get_prec(lo_));
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    return mpfr_get_d(w, MPFR_RNDU);
}

bool Enclosure::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

bool Enclosure::contains(const Rational& q) const
{
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Enclosure::contains(double x) const
{
    return mpfr_cmp_d(lo_, x) <= 0 && mpfr_cmp_d(hi_, x) >= 0;
}

bool Enclosure::contains(const Enclosure& inner) const
{
    return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_lessequal_p(inner.hi_, hi_);
}

bool Enclosure::intersects(const Enclosure& other) const
{
    return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

bool Enclosure::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Enclosure::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool Enclosure::is_nonnegative() const { return mpfr_sgn(lo_) >= 0; }

std::string Enclosure::lower_decimal() const { return format_decimal(lo_, MPFR_RNDD); }
std::string Enclosure::upper_decimal() const { return format_decimal(hi_, MPFR_RNDU); }

Rational Enclosure::lower_rational() const
{
    Rational q;
    mpfr_get_q(q.get_mpq_t(), lo_);
    return q;
}

Rational Enclosure::upper_rational() const
{
    Rational q;
    mpfr_get_q(q.get_mpq_t(), hi_);
    return q;
}

Enclosure& Enclosure::operator+=(const Enclosure& rhs) { return *this = *this + rhs; }
Enclosure& Enclosure::operator-=(const Enclosure& rhs) { return *this = *this - rhs; }
Enclosure& Enclosure::operator*=(const Enclosure& rhs) { return *this = *this * rhs; }
Enclosure& Enclosure::operator/=(const Enclosure& rhs) { return *this = *this / rhs; }

Enclosure operator-(const Enclosure& x)
{
    Enclosure r(Enclosure::Uninitialized{}, x.precision());
    mpfr_neg(r.lo_, x.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
    return r;
}

Enclosure operator+(const Enclosure& a, const Enclosure& b)
{
    Enclosure r(Enclosure::Uninitialized{}, wider(a, b));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Enclosure operator-(const Enclosure& a, const Enclosure& b)
{
    Enclosure r(Enclosure::Uninitialized{}, wider(a, b));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

namespace {

// Sign classes: 1 nonnegative, -1 nonpositive, 0 straddling zero.
int sign_class(mpfr_srcptr lo, mpfr_srcptr hi)
{
    if (mpfr_sgn(lo) >= 0)
        return 1;
    if (mpfr_sgn(hi) <= 0)
        return -1;
    return 0;
}

// [rlo, rhi] = [alo, ahi] * [blo, bhi]; outputs must not alias inputs.
void mul_endpoints(mpfr_ptr rlo, mpfr_ptr rhi, mpfr_srcptr alo, mpfr_srcptr ahi, mpfr_srcptr blo,
                   mpfr_srcptr bhi)
{
    const int sa = sign_class(alo, ahi);
    const int sb = sign_class(blo, bhi);
    const auto set = [&](mpfr_srcptr l1, mpfr_srcptr l2, mpfr_srcptr h1, mpfr_srcptr h2) {
        mpfr_mul(rlo, l1, l2, MPFR_RNDD);
        mpfr_mul(rhi, h1, h2, MPFR_RNDU);
    };
    if (sa == 1) {
        if (sb == 1)
            return set(alo, blo, ahi, bhi);
        if (sb == -1)
            return set(ahi, blo, alo, bhi);
        return set(ahi, blo, ahi, bhi);
    }
    if (sa == -1) {
        if (sb == 1)
            return set(alo, bhi, ahi, blo);
        if (sb == -1)
            return set(ahi, bhi, alo, blo);
        return set(alo, bhi, alo, blo);
    }
    if (sb == 1)
        return set(alo, bhi, ahi, bhi);
    if (sb == -1)
        return set(ahi, blo, alo, blo);
    Temp t(mpfr_get_prec(rlo));
    mpfr_mul(rlo, alo, bhi, MPFR_RNDD);
    mpfr_mul(t, ahi, blo, MPFR_RNDD);
    mpfr_min(rlo, rlo, t, MPFR_RNDD);
    mpfr_mul(rhi, alo, blo, MPFR_RNDU);
    mpfr_mul(t, ahi, bhi, MPFR_RNDU);
    mpfr_max(rhi, rhi, t, MPFR_RNDU);
}

void sqr_endpoints(mpfr_ptr rlo, mpfr_ptr rhi, mpfr_srcptr lo, mpfr_srcptr hi)
{
    if (mpfr_sgn(lo) >= 0) {
        mpfr_sqr(rlo, lo, MPFR_RNDD);
        mpfr_sqr(rhi, hi, MPFR_RNDU);
    } else if (mpfr_sgn(hi) <= 0) {
        mpfr_sqr(rlo, hi, MPFR_RNDD);
        mpfr_sqr(rhi, lo, MPFR_RNDU);
    } else {
        mpfr_srcptr far = mpfr_cmpabs(lo, hi) > 0 ? lo : hi;
        mpfr_sqr(rhi, far, MPFR_RNDU);
        mpfr_set_zero(rlo, 1);
    }
}

// Per-thread temporaries for the fused complex kernels.
class Scratch {
public:
    static constexpr int kSize = 4;
    Scratch()
    {
        for (auto& v : v_)
            mpfr_init2(v, kDefaultPrecision.bits);
    }
    Scratch(const Scratch&) = delete;
    Scratch& operator=(const Scratch&) = delete;
    ~Scratch()
    {
        for (auto& v : v_)
            mpfr_clear(v);
    }
    mpfr_ptr at(int i, mpfr_prec_t prec)
    {
        if (mpfr_get_prec(v_[i]) != prec)
            mpfr_set_prec(v_[i], prec);
        return v_[i];
    }

private:
    mpfr_t v_[kSize];
};

Scratch& scratch()
{
    thread_local Scratch s;
    return s;
}

} // namespace

Enclosure operator*(const Enclosure& a, const Enclosure& b)
{
    Enclosure r(Enclosure::Uninitialized{}, wider(a, b));
    mul_endpoints(r.lo_, r.hi_, a.lo_, a.hi_, b.lo_, b.hi_);
    return r;
}

Enclosure operator/(const Enclosure& a, const Enclosure& b)
{
    if (b.contains_zero())
        throw DomainError("division by an enclosure containing zero");
    const Precision prec = wider(a, b);
    Enclosure r(Enclosure::Uninitialized{}, prec);
    mpfr_srcptr as[2] = {a.lo_, a.hi_};
    mpfr_srcptr bs[2] = {b.lo_, b.hi_};
    Temp t(prec.bits);
    bool first = true;
    for (auto x : as) {
        for (auto y : bs) {
            mpfr_div(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t, r.lo_))
                mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_div(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, r.hi_))
                mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    }
    return r;
}

Enclosure sqr(const Enclosure& x)
{
    Enclosure r(Enclosure::Uninitialized{}, x.precision());
    sqr_endpoints(r.lo_, r.hi_, x.lo_, x.hi_);
    return r;
}

Enclosure sqrt(const Enclosure& x)
{
    if (mpfr_sgn(x.lo_) < 0)
        throw DomainError("sqrt of an enclosure with negative part");
    Enclosure r(Enclosure::Uninitialized{}, x.precision());
    mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

Enclosure abs(const Enclosure& x)
{
    if (mpfr_sgn(x.lo_) >= 0)
        return x;
    if (mpfr_sgn(x.hi_) <= 0)
        return -x;
    Enclosure r(Enclosure::Uninitialized{}, x.precision());
    mpfr_set_zero(r.lo_, 1);
    if (mpfr_cmpabs(x.lo_, x.hi_) > 0)
        mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
    else
        mpfr_set(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

Enclosure log(const Enclosure& x)
{
    require_finite(x, "log");
    if (mpfr_sgn(x.lo_) <= 0)
        throw DomainError("log of an enclosure that is not strictly positive");
    Enclosure r(Enclosure::Uninitialized{}, x.precision());
    mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

Enclosure exp(const Enclosure& x)
{
    require_finite(x, "exp");
    Enclosure r(Enclosure::Uninitialized{}, x.precision());
    mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
    if (!mpfr_number_p(r.hi_))
        throw DomainError("exp overflow");
    return r;
}

Enclosure hull(const Enclosure& a, const Enclosure& b)
{
    Enclosure r(Enclosure::Uninitialized{}, wider(a, b));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Enclosure max_endpoints(const Enclosure& a, const Enclosure& b)
{
    Enclosure r(Enclosure::Uninitialized{}, wider(a, b));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Enclosure min_endpoints(const Enclosure& a, const Enclosure& b)
{
    Enclosure r(Enclosure::Uninitialized{}, wider(a, b));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Enclosure intersect(const Enclosure& a, const Enclosure& b)
{
    if (!a.intersects(b))
        throw std::logic_error("intersect: disjoint enclosures of the same quantity");
    Enclosure r = max_endpoints(a, b);
    mpfr_min(EnclosureAccess::hi(r), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

Enclosure clamp_nonnegative(const Enclosure& x)
{
    if (mpfr_sgn(x.lo_) >= 0)
        return x;
    if (mpfr_sgn(x.hi_) < 0)
        throw DomainError("enclosure is entirely negative");
    Enclosure r(x);
    mpfr_set_zero(r.lo_, 1);
    return r;
}

Enclosure operator+(const Enclosure& a, const Rational& b) { return a + Enclosure::from_rational(b, a.precision()); }
Enclosure operator-(const Enclosure& a, const Rational& b) { return a - Enclosure::from_rational(b, a.precision()); }
namespace {

bool small_integer(const Rational& q)
{
    return q.get_den() == 1 && q.get_num().fits_slong_p();
}

// x * n or x / n for a machine integer n != 0 (division).
Enclosure scale_by_integer(const Enclosure& x, long n, bool divide)
{
    Enclosure r = A::make(x.precision());
    mpfr_srcptr lo = n >= 0 ? x.lo() : x.hi();
    mpfr_srcptr hi = n >= 0 ? x.hi() : x.lo();
    if (divide) {
        mpfr_div_si(A::lo(r), lo, n, MPFR_RNDD);
        mpfr_div_si(A::hi(r), hi, n, MPFR_RNDU);
    } else {
        mpfr_mul_si(A::lo(r), lo, n, MPFR_RNDD);
        mpfr_mul_si(A::hi(r), hi, n, MPFR_RNDU);
    }
    return r;
}

} // namespace

Enclosure operator*(const Enclosure& a, const Rational& b)
{
    if (small_integer(b))
        return scale_by_integer(a, b.get_num().get_si(), false);
    return a * Enclosure::from_rational(b, a.precision());
}

Enclosure operator*(const Rational& a, const Enclosure& b) { return b * a; }

Enclosure operator/(const Enclosure& a, const Rational& b)
{
    if (b == 0)
        throw DomainError("division by zero");
    if (small_integer(b))
        return scale_by_integer(a, b.get_num().get_si(), true);
    return a / Enclosure::from_rational(b, a.precision());
}

Enclosure pow(const Enclosure& base, const Enclosure& exponent)
{
    if (!base.is_positive())
        throw DomainError("pow requires a strictly positive base");
    return exp(exponent * log(base));
}

Enclosure pow(const Enclosure& x, unsigned n)
{
    Enclosure result(1, x.precision());
    Enclosure square(x);
    bool first = true;
    while (n != 0) {
        if (n & 1U) {
            result = first ? square : result * square;
            first = false;
        }
        n >>= 1U;
        if (n != 0)
            square = sqr(square);
    }
    return result;
}

Enclosure arith(const Enclosure& a, const Enclosure& b, ArithOp op)
{
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
    }
    throw ParameterError("unknown arithmetic operation");
}

Enclosure elementary(const Enclosure& x, ElementaryFn fn)
{
    return fn == ElementaryFn::log ? log(x) : exp(x);
}

Comparison compare_threshold(const Enclosure& x, const Rational& t)
{
    if (mpfr_cmp_q(x.hi(), t.get_mpq_t()) < 0)
        return Comparison::below;
    if (mpfr_cmp_q(x.lo(), t.get_mpq_t()) > 0)
        return Comparison::above;
    return Comparison::straddles;
}

Comparison compare(const Enclosure& x, const Enclosure& y)
{
    if (mpfr_less_p(x.hi(), y.lo()))
        return Comparison::below;
    if (mpfr_greater_p(x.lo(), y.hi()))
        return Comparison::above;
    return Comparison::straddles;
}

std::string to_string(Comparison c)
{
    switch (c) {
    case Comparison::below: return "below";
    case Comparison::above: return "above";
    case Comparison::straddles: return "straddles";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Complex boxes

ComplexBox& ComplexBox::operator+=(const ComplexBox& rhs)
{
    re += rhs.re;
    im += rhs.im;
    return *this;
}

ComplexBox& ComplexBox::operator-=(const ComplexBox& rhs)
{
    re -= rhs.re;
    im -= rhs.im;
    return *this;
}

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) { return {a.re + b.re, a.im + b.im}; }
ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) { return {a.re - b.re, a.im - b.im}; }

ComplexBox operator*(const ComplexBox& a, const ComplexBox& b)
{
    const mpfr_prec_t p = std::max(mpfr_get_prec(a.re.lo()), mpfr_get_prec(b.re.lo()));
    Scratch& s = scratch();
    mpfr_ptr t1lo = s.at(0, p), t1hi = s.at(1, p), t2lo = s.at(2, p), t2hi = s.at(3, p);
    Enclosure re = A::make(Precision{p});
    Enclosure im = A::make(Precision{p});
    mul_endpoints(t1lo, t1hi, a.re.lo(), a.re.hi(), b.re.lo(), b.re.hi());
    mul_endpoints(t2lo, t2hi, a.im.lo(), a.im.hi(), b.im.lo(), b.im.hi());
    mpfr_sub(A::lo(re), t1lo, t2hi, MPFR_RNDD);
    mpfr_sub(A::hi(re), t1hi, t2lo, MPFR_RNDU);
    mul_endpoints(t1lo, t1hi, a.re.lo(), a.re.hi(), b.im.lo(), b.im.hi());
    mul_endpoints(t2lo, t2hi, a.im.lo(), a.im.hi(), b.re.lo(), b.re.hi());
    mpfr_add(A::lo(im), t1lo, t2lo, MPFR_RNDD);
    mpfr_add(A::hi(im), t1hi, t2hi, MPFR_RNDU);
    return {std::move(re), std::move(im)};
}

ComplexBox operator*(const ComplexBox& a, const Enclosure& s) { return {a.re * s, a.im * s}; }
ComplexBox operator-(const ComplexBox& a, const Enclosure& s) { return {a.re - s, a.im}; }
ComplexBox conj(const ComplexBox& z) { return {z.re, -z.im}; }

ComplexBox pow(const ComplexBox& z, unsigned n)
{
    if (n == 1)
        return z;
    ComplexBox result(Enclosure(1, z.precision()), Enclosure(z.precision()));
    ComplexBox square(z);
    bool first = true;
    while (n != 0) {
        if (n & 1U) {
            result = first ? square : result * square;
            first = false;
        }
        n >>= 1U;
        if (n != 0)
            square = square * square;
    }
    return result;
}

namespace {

void clamp_unit(mpfr_ptr lo, mpfr_ptr hi)
{
    if (mpfr_cmp_si(lo, -1) < 0)
        mpfr_set_si(lo, -1, MPFR_RNDD);
    if (mpfr_cmp_si(hi, 1) > 0)
        mpfr_set_si(hi, 1, MPFR_RNDU);
}

// e(t) for t in [tlo, thi], both inside the octant [k/8, (k+1)/8] of [0, 2).
// With u the distance to the nearest quarter turn, e(t) = i^q e(+-u) and
// theta = 2 pi u lies in [0, pi/4], where cos decreases and sin increases.
ComplexBox octant_eval(long k, mpfr_srcptr tlo, mpfr_srcptr thi, Precision prec)
{
    const mpfr_prec_t p = prec.bits;
    Temp ulo(p), uhi(p), edge(p), pilo(p), pihi(p), th_lo(p), th_hi(p), s1(p), c1(p), s2(p), c2(p);
    const bool even = (k % 2) == 0;
    const long quarter = even ? k / 2 : (k + 1) / 2;
    if (even) {
        mpfr_set_si(edge, k, MPFR_RNDN);
        mpfr_div_2ui(edge, edge, 3, MPFR_RNDN);
        mpfr_sub(ulo, tlo, edge, MPFR_RNDD);
        mpfr_sub(uhi, thi, edge, MPFR_RNDU);
    } else {
        mpfr_set_si(edge, k + 1, MPFR_RNDN);
        mpfr_div_2ui(edge, edge, 3, MPFR_RNDN);
        mpfr_sub(ulo, edge, thi, MPFR_RNDD);
        mpfr_sub(uhi, edge, tlo, MPFR_RNDU);
    }
    if (mpfr_sgn(ulo) < 0)
        mpfr_set_zero(ulo, 1);

    mpfr_const_pi(pilo, MPFR_RNDD);
    mpfr_const_pi(pihi, MPFR_RNDU);
    mpfr_mul(th_lo, ulo, pilo, MPFR_RNDD);
    mpfr_mul_2ui(th_lo, th_lo, 1, MPFR_RNDD);
    mpfr_mul(th_hi, uhi, pihi, MPFR_RNDU);
    mpfr_mul_2ui(th_hi, th_hi, 1, MPFR_RNDU);

    mpfr_sin_cos(s1, c1, th_lo, MPFR_RNDN);
    if (mpfr_equal_p(th_lo, th_hi)) {
        mpfr_set(s2, s1, MPFR_RNDN);
        mpfr_set(c2, c1, MPFR_RNDN);
    } else {
        mpfr_sin_cos(s2, c2, th_hi, MPFR_RNDN);
    }

    // Correctly rounded to nearest, so one step outward is a rigorous bound.
    Enclosure cosv = EnclosureAccess::make(prec);
    Enclosure sinv = EnclosureAccess::make(prec);
    mpfr_ptr clo = EnclosureAccess::lo(cosv), chi = EnclosureAccess::hi(cosv);
    mpfr_ptr slo = EnclosureAccess::lo(sinv), shi = EnclosureAccess::hi(sinv);
    mpfr_set(clo, c2, MPFR_RNDD);
    mpfr_set(chi, c1, MPFR_RNDU);
    mpfr_set(slo, s1, MPFR_RNDD);
    mpfr_set(shi, s2, MPFR_RNDU);
    if (!mpfr_zero_p(th_hi) || !mpfr_zero_p(th_lo)) {
        mpfr_nextbelow(clo);
        mpfr_nextabove(chi);
        if (!mpfr_zero_p(th_lo))
            mpfr_nextbelow(slo);
        mpfr_nextabove(shi);
    }
    clamp_unit(clo, chi);
    clamp_unit(slo, shi);
    if (mpfr_sgn(slo) < 0)
        mpfr_set_zero(slo, 1);
    if (mpfr_sgn(clo) < 0)
        mpfr_set_zero(clo, 1);

    if (!even)
        sinv = -sinv;
    switch (quarter % 4) {
    case 0: return {std::move(cosv), std::move(sinv)};
    case 1: return {-sinv, std::move(cosv)};
    case 2: return {-cosv, -sinv};
    default: return {std::move(sinv), -cosv};
    }
}

long octant_of(mpfr_srcptr t)
{
    Temp scaled(mpfr_get_prec(t) + 4);
    mpfr_mul_2ui(scaled, t, 3, MPFR_RNDN);
    mpfr_floor(scaled, scaled);
    return mpfr_get_si(scaled, MPFR_RNDN);
}

bool contains_point(mpfr_srcptr lo, mpfr_srcptr hi, long num, unsigned long den_log2)
{
    Temp v(64);
    mpfr_set_si(v, num, MPFR_RNDN);
    mpfr_div_2ui(v, v, den_log2, MPFR_RNDN);
    return mpfr_lessequal_p(lo, v) && mpfr_lessequal_p(v, hi);
}

} // namespace

ComplexBox unit_circle(const Enclosure& x)
{
    require_finite(x, "unit_circle");
    const Precision prec = x.precision();
    const mpfr_prec_t p = prec.bits;

    Temp n(mpfr_get_prec(x.lo())), tlo(p), thi(p), w(p);
    mpfr_floor(n, x.lo());
    mpfr_sub(tlo, x.lo(), n, MPFR_RNDD);
    mpfr_sub(thi, x.hi(), n, MPFR_RNDU);
    mpfr_sub(w, thi, tlo, MPFR_RNDD);
    if (mpfr_cmp_si(w, 1) >= 0)
        return {Enclosure::symmetric_unit(prec), Enclosure::symmetric_unit(prec)};

    const long klo = octant_of(tlo);
    const long khi = octant_of(thi);
    if (klo == khi)
        return octant_eval(klo, tlo, thi, prec);

    // Not monotone across octants: hull of the endpoint values plus the
    // extrema at interior critical points.
    ComplexBox a = octant_eval(klo, tlo, tlo, prec);
    ComplexBox b = octant_eval(khi, thi, thi, prec);
    ComplexBox r(hull(a.re, b.re), hull(a.im, b.im));
    mpfr_ptr rlo = EnclosureAccess::lo(r.re), rhi = EnclosureAccess::hi(r.re);
    mpfr_ptr ilo = EnclosureAccess::lo(r.im), ihi = EnclosureAccess::hi(r.im);
    if (contains_point(tlo, thi, 1, 0))
        mpfr_set_si(rhi, 1, MPFR_RNDU);
    if (contains_point(tlo, thi, 1, 1) || contains_point(tlo, thi, 3, 1))
        mpfr_set_si(rlo, -1, MPFR_RNDD);
    if (contains_point(tlo, thi, 1, 2) || contains_point(tlo, thi, 5, 2))
        mpfr_set_si(ihi, 1, MPFR_RNDU);
    if (contains_point(tlo, thi, 3, 2) || contains_point(tlo, thi, 7, 2))
        mpfr_set_si(ilo, -1, MPFR_RNDD);
    return r;
}

ComplexBox unit_circle(const Rational& t, Precision prec)
{
    return unit_circle(Enclosure::from_rational(fractional_part(t), prec));
}

Enclosure modulus(const ComplexBox& z)
{
    const mpfr_prec_t p = mpfr_get_prec(z.re.lo());
    Scratch& s = scratch();
    mpfr_ptr t1lo = s.at(0, p), t1hi = s.at(1, p), t2lo = s.at(2, p), t2hi = s.at(3, p);
    sqr_endpoints(t1lo, t1hi, z.re.lo(), z.re.hi());
    sqr_endpoints(t2lo, t2hi, z.im.lo(), z.im.hi());
    Enclosure r = A::make(Precision{p});
    mpfr_add(t1lo, t1lo, t2lo, MPFR_RNDD);
    mpfr_add(t1hi, t1hi, t2hi, MPFR_RNDU);
    mpfr_sqrt(A::lo(r), t1lo, MPFR_RNDD);
    mpfr_sqrt(A::hi(r), t1hi, MPFR_RNDU);
    return r;
}

} // namespace digitdim
