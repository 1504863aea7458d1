#ifndef DIGITDIM_DIGIT_SYSTEM_HPP
#define DIGITDIM_DIGIT_SYSTEM_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "digitdim/exact.hpp"

namespace digitdim {

/// A base b together with an exact probability vector p_0..p_{b-1} on the
/// digits. It describes the missing-digit measure obtained from i.i.d.
/// base-b digits distributed according to p.
///
/// Invariants: weights are nonnegative and sum to 1, at least two digits
/// carry positive weight, and p is not uniform on all b digits.
class DigitSystem {
public:
    /// Uniform weights 1/(b-1) on every digit except `missing`; b >= 3.
    static DigitSystem one_missing(int base, int missing);
    /// Uniform weights on the given digit set.
    static DigitSystem from_digits(int base, std::vector<int> digits);
    static DigitSystem from_weights(int base, std::vector<Rational> weights);

    [[nodiscard]] int base() const { return base_; }
    [[nodiscard]] std::span<const Rational> weights() const { return weights_; }
    /// Digits with positive weight, ascending.
    [[nodiscard]] const std::vector<int>& digits() const { return digits_; }

    /// Weights are equal on every digit of digits().
    [[nodiscard]] bool is_uniform() const { return uniform_; }

    /// The omitted digit when the system is uniform on b-1 digits.
    [[nodiscard]] std::optional<int> missing_digit() const;

    /// Canonical text form accepted by parse_system().
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const DigitSystem&, const DigitSystem&) = default;

private:
    DigitSystem(int base, std::vector<Rational> weights);

    int base_ = 0;
    std::vector<Rational> weights_;
    std::vector<int> digits_;
    bool uniform_ = false;
};

/// Parses "b=5 missing=1", "b=10 digits=0,2,4" or "b=4 probs=1/2,1/4,1/4,0".
DigitSystem parse_system(std::string_view text);

/// Arithmetic-progression digit set {a + k d : k = 0..l-1}.
struct APDigitSpec {
    int offset = 0;
    int step = 1;
    int length = 2;

    /// Throws ParameterError unless the progression is a proper subset of
    /// {0, ..., base-1} with length >= 2.
    void validate(int base) const;
    [[nodiscard]] std::vector<int> digits() const;
};

} // namespace digitdim

#endif
