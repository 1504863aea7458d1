#include "digitdim/exact.hpp"

#include <cctype>
#include <limits>

#include "digitdim/errors.hpp"

namespace digitdim {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

Integer parse_integer(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s))
        throw ParameterError("malformed number: '" + std::string(whole) + "'");
    Integer v(std::string(s), 10);
    return negative ? Integer(-v) : v;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text.empty())
        throw ParameterError("empty number");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash), text);
        Integer den = parse_integer(text.substr(slash + 1), text);
        if (den == 0)
            throw ParameterError("zero denominator: '" + std::string(text) + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        Integer ev = parse_integer(text.substr(e + 1), text);
        if (!ev.fits_slong_p() || abs(ev) > 100000)
            throw ParameterError("exponent out of range: '" + std::string(text) + "'");
        exponent = ev.get_si();
    }

    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    auto dot = mantissa.find('.');
    if (dot == std::string_view::npos) {
        digits = std::string(mantissa);
    } else {
        auto ip = mantissa.substr(0, dot);
        auto fp = mantissa.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
            throw ParameterError("malformed number: '" + std::string(text) + "'");
        digits = std::string(ip) + std::string(fp);
        exponent -= static_cast<long>(fp.size());
    }
    if (!all_digits(digits))
        throw ParameterError("malformed number: '" + std::string(text) + "'");

    Rational q{Integer(digits, 10)};
    if (exponent > 0)
        q *= Rational(power(10, static_cast<unsigned long>(exponent)));
    else if (exponent < 0)
        q /= Rational(power(10, static_cast<unsigned long>(-exponent)));
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& value)
{
    Rational q = value;
    q.canonicalize();
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer floor(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rational fractional_part(const Rational& q)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rational f(r, q.get_den());
    f.canonicalize();
    return f;
}

Integer power(long base, unsigned long exponent)
{
    Integer r;
    Integer b(base);
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exponent);
    return r;
}

std::int64_t checked_power(std::int64_t base, int exponent)
{
    if (exponent < 0)
        throw ParameterError("negative exponent");
    std::int64_t r = 1;
    for (int i = 0; i < exponent; ++i)
        if (__builtin_mul_overflow(r, base, &r))
            throw ParameterError("integer power " + std::to_string(base) + "^" + std::to_string(exponent)
                                 + " overflows 64 bits");
    return r;
}

Rational decimal_ceiling(const Rational& q, unsigned digits)
{
    Integer scale = power(10, digits);
    Rational scaled = q * Rational(scale);
    Rational r(ceil(scaled), scale);
    r.canonicalize();
    return r;
}

} // namespace digitdim
