#ifndef DIGITDIM_TESTS_HELPERS_HPP
#define DIGITDIM_TESTS_HELPERS_HPP

#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "digitdim/digitdim.hpp"

namespace testing_support {

inline digitdim::Rational q(const char* text)
{
    return digitdim::parse_rational(text);
}

/// The enclosure lies within tol of value (both endpoints).
inline ::testing::AssertionResult Near(const digitdim::Enclosure& x, double value, double tol)
{
    if (std::abs(x.lower() - value) <= tol && std::abs(x.upper() - value) <= tol)
        return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "[" << x.lower_decimal() << ", " << x.upper_decimal() << "] is not within "
                                         << tol << " of " << value;
}

inline ::testing::AssertionResult Contains(const digitdim::Enclosure& x, const digitdim::Rational& v)
{
    if (x.contains(v))
        return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "[" << x.lower_decimal() << ", " << x.upper_decimal()
                                         << "] does not contain " << v.get_str();
}

} // namespace testing_support

#endif
