#include "digitdim/digit_system.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "digitdim/errors.hpp"

namespace digitdim {

namespace {

constexpr int kMaxBase = 1 << 20;

void check_base(int base)
{
    if (base < 2 || base > kMaxBase)
        throw ParameterError("base must lie in [2, " + std::to_string(kMaxBase) + "], got " + std::to_string(base));
}

int parse_int(std::string_view s, std::string_view what)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParameterError("invalid integer for " + std::string(what) + ": '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

} // namespace

DigitSystem::DigitSystem(int base, std::vector<Rational> weights)
    : base_(base), weights_(std::move(weights))
{
    check_base(base_);
    if (static_cast<int>(weights_.size()) != base_)
        throw ParameterError("expected " + std::to_string(base_) + " weights, got " + std::to_string(weights_.size()));
    Rational total = 0;
    for (int j = 0; j < base_; ++j) {
        if (weights_[j] < 0)
            throw ParameterError("negative weight for digit " + std::to_string(j));
        total += weights_[j];
        if (weights_[j] != 0)
            digits_.push_back(j);
    }
    if (total != 1)
        throw ParameterError("weights sum to " + to_string(total) + ", not 1");
    if (digits_.size() < 2)
        throw ParameterError("at least two digits must have positive weight");
    const Rational& w0 = weights_[digits_.front()];
    uniform_ = std::all_of(digits_.begin(), digits_.end(), [&](int j) { return weights_[j] == w0; });
    if (static_cast<int>(digits_.size()) == base_ && uniform_)
        throw ParameterError("the uniform probability vector on all digits is excluded");
}

DigitSystem DigitSystem::one_missing(int base, int missing)
{
    if (base < 3)
        throw ParameterError("one-missing-digit systems need base >= 3, got " + std::to_string(base));
    if (missing < 0 || missing >= base)
        throw ParameterError("missing digit " + std::to_string(missing) + " outside [0, " + std::to_string(base - 1) + "]");
    std::vector<Rational> w(static_cast<std::size_t>(base), Rational(1, base - 1));
    w[static_cast<std::size_t>(missing)] = 0;
    return DigitSystem(base, std::move(w));
}

DigitSystem DigitSystem::from_digits(int base, std::vector<int> digits)
{
    check_base(base);
    std::sort(digits.begin(), digits.end());
    if (std::adjacent_find(digits.begin(), digits.end()) != digits.end())
        throw ParameterError("repeated digit in digit set");
    for (int d : digits)
        if (d < 0 || d >= base)
            throw ParameterError("digit " + std::to_string(d) + " outside [0, " + std::to_string(base - 1) + "]");
    if (digits.size() < 2)
        throw ParameterError("at least two digits are required");
    std::vector<Rational> w(static_cast<std::size_t>(base), Rational(0));
    const Rational share(1, static_cast<long>(digits.size()));
    for (int d : digits)
        w[static_cast<std::size_t>(d)] = share;
    return DigitSystem(base, std::move(w));
}

DigitSystem DigitSystem::from_weights(int base, std::vector<Rational> weights)
{
    return DigitSystem(base, std::move(weights));
}

std::optional<int> DigitSystem::missing_digit() const
{
    if (!uniform_ || static_cast<int>(digits_.size()) != base_ - 1)
        return std::nullopt;
    for (int j = 0; j < base_; ++j)
        if (weights_[j] == 0)
            return j;
    return std::nullopt;
}

std::string DigitSystem::describe() const
{
    std::string out = "b=" + std::to_string(base_);
    if (auto m = missing_digit())
        return out + " missing=" + std::to_string(*m);
    if (uniform_) {
        out += " digits=";
        for (std::size_t i = 0; i < digits_.size(); ++i)
            out += (i ? "," : "") + std::to_string(digits_[i]);
        return out;
    }
    out += " probs=";
    for (int j = 0; j < base_; ++j)
        out += (j ? "," : "") + to_string(weights_[j]);
    return out;
}

DigitSystem parse_system(std::string_view text)
{
    std::optional<int> base;
    std::optional<std::string_view> missing, digits, probs;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i >= text.size())
            break;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        std::string_view token = text.substr(i, j - i);
        i = j;
        auto eq = token.find('=');
        if (eq == std::string_view::npos)
            throw ParameterError("expected key=value in system spec, got '" + std::string(token) + "'");
        auto key = token.substr(0, eq);
        auto value = token.substr(eq + 1);
        if (key == "b")
            base = parse_int(value, "b");
        else if (key == "missing")
            missing = value;
        else if (key == "digits")
            digits = value;
        else if (key == "probs")
            probs = value;
        else
            throw ParameterError("unknown key '" + std::string(key) + "' in system spec");
    }
    if (!base)
        throw ParameterError("system spec needs b=<int>");
    const int kinds = (missing ? 1 : 0) + (digits ? 1 : 0) + (probs ? 1 : 0);
    if (kinds != 1)
        throw ParameterError("system spec needs exactly one of missing=, digits=, probs=");
    if (missing)
        return DigitSystem::one_missing(*base, parse_int(*missing, "missing"));
    if (digits) {
        std::vector<int> d;
        for (auto part : split(*digits, ','))
            d.push_back(parse_int(part, "digits"));
        return DigitSystem::from_digits(*base, std::move(d));
    }
    std::vector<Rational> w;
    for (auto part : split(*probs, ','))
        w.push_back(parse_rational(part));
    return DigitSystem::from_weights(*base, std::move(w));
}

void APDigitSpec::validate(int base) const
{
    if (base < 3)
        throw ParameterError("base must be >= 3");
    if (offset < 0 || step < 1 || length < 2)
        throw ParameterError("need offset >= 0, step >= 1, length >= 2");
    const long last = static_cast<long>(offset) + static_cast<long>(step) * (length - 1);
    if (last > base - 1)
        throw ParameterError("progression exceeds the largest digit " + std::to_string(base - 1));
    if (length == base)
        throw ParameterError("digit set is not a proper subset of {0, ..., b-1}");
}

std::vector<int> APDigitSpec::digits() const
{
    std::vector<int> d;
    d.reserve(static_cast<std::size_t>(length));
    for (int k = 0; k < length; ++k)
        d.push_back(offset + k * step);
    return d;
}

} // namespace digitdim
