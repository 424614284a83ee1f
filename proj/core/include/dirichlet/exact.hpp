#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace dirichlet {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = boost::multiprecision::cpp_rational;

/// A named irrational constant with a certified double enclosure
/// lower < value < upper.
///
/// Recognized names: "pi", "e", and "sqrtN" for any positive integer N that
/// is not a perfect square.
struct IrrationalTag {
    std::string name;
    double lower = 0.0;
    double upper = 0.0;
    double nominal = 0.0;  ///< Closest double, inside the enclosure.

    friend bool operator==(const IrrationalTag& a, const IrrationalTag& b) {
        return a.name == b.name;
    }
};

/// Looks up (and certifies) the tag called `name`. Throws ValidationError for
/// unknown names and for sqrt of a perfect square.
IrrationalTag lookupTag(std::string_view name);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

/// Exact number q0 + q1 * xi for rationals q0, q1 and one declared irrational
/// xi. Rationality is decided exactly: the value is rational iff q1 == 0.
///
/// Arithmetic between two values with nonzero irrational parts requires the
/// same tag; mixing tags throws ValidationError.
class ExactReal {
public:
    ExactReal() = default;
    ExactReal(Rational rational);  // NOLINT(google-explicit-constructor)
    ExactReal(long long integer) : ExactReal(Rational(integer)) {}  // NOLINT
    ExactReal(Rational rational, Rational irrational, std::optional<IrrationalTag> tag);

    /// Grammar: signed sums of terms, each `RAT`, `RAT*TAG` or `TAG`, where
    /// RAT is an integer, `p/q`, or a decimal literal. "0.3" parses as 3/10.
    static ExactReal parse(std::string_view text);

    const Rational& rationalPart() const noexcept { return rat_; }
    const Rational& irrationalPart() const noexcept { return irr_; }
    const std::optional<IrrationalTag>& tag() const noexcept { return tag_; }

    bool isRational() const noexcept { return irr_ == 0; }

    /// Nearest-double style approximation using the tag's nominal value.
    double toFloat() const;

    /// Outward-rounded enclosure of the exact value.
    Interval enclosure() const;

    /// Canonical form `RAT` or `RAT(+|-)RAT*TAG`; parse(toString()) == *this.
    std::string toString() const;

    ExactReal operator-() const;
    friend ExactReal operator+(const ExactReal& x, const ExactReal& y);
    friend ExactReal operator-(const ExactReal& x, const ExactReal& y);
    friend ExactReal operator*(const ExactReal& x, const Rational& factor);
    friend ExactReal operator*(const Rational& factor, const ExactReal& x) {
        return x * factor;
    }

    friend bool operator==(const ExactReal& x, const ExactReal& y);

private:
    Rational rat_{0};
    Rational irr_{0};
    std::optional<IrrationalTag> tag_;
};

/// Sign of x: exact when x is rational, otherwise decided from the tag's
/// enclosure (an irrational value is never zero). Throws DomainError when the
/// enclosure straddles zero.
int sign(const ExactReal& x);

/// sign(x - y).
int compare(const ExactReal& x, const ExactReal& y);

/// True iff x is an integer divisible by 2 (exactly; irrational values never are).
bool isEvenInteger(const ExactReal& x);

Rational parseRational(std::string_view text);
std::string formatRational(const Rational& value);

/// Eigenvalues of the Dirichlet Laplacian on a rectangle are simple when the
/// declared side ratio is irrational.
bool rectangleSpectrumSimple(const ExactReal& sideRatio);

}  // namespace dirichlet
