#include "dirichlet/exact.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <utility>

#include "dirichlet/errors.hpp"

namespace dirichlet {
namespace {

using boost::multiprecision::cpp_int;

double toDouble(const Rational& value) { return value.convert_to<double>(); }

double roundDown(const Rational& value) {
    const double d = toDouble(value);
    return Rational(d) > value ? std::nextafter(d, -std::numeric_limits<double>::infinity())
                               : d;
}

double roundUp(const Rational& value) {
    const double d = toDouble(value);
    return Rational(d) < value ? std::nextafter(d, std::numeric_limits<double>::infinity())
                               : d;
}

IrrationalTag makeSqrtTag(std::string_view name, std::string_view digits) {
    if (digits.empty() || digits.size() > 15) {
        throw ValidationError("bad irrational tag '" + std::string(name) + "'");
    }
    long long radicand = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw ValidationError("bad irrational tag '" + std::string(name) + "'");
        }
        radicand = radicand * 10 + (c - '0');
    }
    const auto root = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(radicand))));
    for (long long r = std::max(0LL, root - 1); r <= root + 1; ++r) {
        if (r * r == radicand) {
            throw ValidationError("sqrt" + std::string(digits) +
                                  " is rational; write it as an integer");
        }
    }
    const double s = std::sqrt(static_cast<double>(radicand));
    const double lo = std::nextafter(s, 0.0);
    const double hi = std::nextafter(s, std::numeric_limits<double>::infinity());
    const Rational n(radicand);
    if (!(Rational(lo) * Rational(lo) < n && n < Rational(hi) * Rational(hi))) {
        throw ValidationError("could not certify enclosure for " + std::string(name));
    }
    return {std::string(name), lo, hi, s};
}

// --- parser -------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExactReal parseExpression() {
        skipSpace();
        if (atEnd()) {
            fail("empty number");
        }
        ExactReal total;
        bool first = true;
        while (true) {
            skipSpace();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1 : 1;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            ExactReal term = parseTerm();
            total = total + (sign < 0 ? -term : term);
            first = false;
            skipSpace();
            if (atEnd()) {
                return total;
            }
        }
    }

    Rational parseRationalOnly() {
        skipSpace();
        int sign = 1;
        if (peek() == '+' || peek() == '-') {
            sign = get() == '-' ? -1 : 1;
        }
        skipSpace();
        Rational value = parseRat();
        skipSpace();
        if (!atEnd()) {
            fail("trailing characters");
        }
        return sign < 0 ? Rational(-value) : value;
    }

private:
    ExactReal parseTerm() {
        skipSpace();
        if (std::isalpha(static_cast<unsigned char>(peek()))) {
            return ExactReal(Rational(0), Rational(1), lookupTag(parseIdentifier()));
        }
        Rational coefficient = parseRat();
        skipSpace();
        if (peek() == '*') {
            get();
            skipSpace();
            if (!std::isalpha(static_cast<unsigned char>(peek()))) {
                fail("expected irrational tag after '*'");
            }
            return ExactReal(Rational(0), coefficient, lookupTag(parseIdentifier()));
        }
        return ExactReal(coefficient);
    }

    Rational parseRat() {
        skipSpace();
        std::string whole;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            whole += get();
        }
        if (peek() == '.') {
            get();
            std::string frac;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                frac += get();
            }
            if (whole.empty() && frac.empty()) {
                fail("expected digits");
            }
            cpp_int numerator(whole.empty() ? std::string("0") : whole);
            cpp_int scale = 1;
            for (char c : frac) {
                numerator = numerator * 10 + (c - '0');
                scale *= 10;
            }
            return Rational(numerator, scale);
        }
        if (whole.empty()) {
            fail("expected a number");
        }
        cpp_int numerator(whole);
        skipSpace();
        if (peek() == '/') {
            get();
            skipSpace();
            std::string den;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                den += get();
            }
            if (den.empty()) {
                fail("expected denominator");
            }
            cpp_int denominator(den);
            if (denominator == 0) {
                fail("zero denominator");
            }
            return Rational(numerator, denominator);
        }
        return Rational(numerator);
    }

    std::string parseIdentifier() {
        std::string id;
        while (std::isalnum(static_cast<unsigned char>(peek()))) {
            id += get();
        }
        return id;
    }

    void skipSpace() {
        while (!atEnd() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }
    bool atEnd() const { return pos_ >= text_.size(); }
    char peek() const { return atEnd() ? '\0' : text_[pos_]; }
    char get() { return text_[pos_++]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ValidationError("cannot parse exact number '" + std::string(text_) +
                              "': " + what + " at position " + std::to_string(pos_));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

IrrationalTag lookupTag(std::string_view name) {
    if (name == "pi") {
        // 0x400921FB54442D18 < pi < next double
        const double lo = 3.141592653589793;
        return {"pi", lo, std::nextafter(lo, 4.0), lo};
    }
    if (name == "e") {
        // 0x4005BF0A8B145769 < e < next double
        const double lo = 2.718281828459045;
        return {"e", lo, std::nextafter(lo, 3.0), lo};
    }
    if (name.starts_with("sqrt")) {
        return makeSqrtTag(name, name.substr(4));
    }
    throw ValidationError("unknown irrational tag '" + std::string(name) + "'");
}

ExactReal::ExactReal(Rational rational) : rat_(std::move(rational)) {}

ExactReal::ExactReal(Rational rational, Rational irrational,
                     std::optional<IrrationalTag> tag)
    : rat_(std::move(rational)), irr_(std::move(irrational)), tag_(std::move(tag)) {
    if (irr_ != 0 && !tag_) {
        throw ValidationError("nonzero irrational part requires a tag");
    }
    if (irr_ == 0) {
        tag_.reset();
    }
}

ExactReal ExactReal::parse(std::string_view text) { return Parser(text).parseExpression(); }

double ExactReal::toFloat() const {
    if (isRational()) {
        return toDouble(rat_);
    }
    return toDouble(rat_ + irr_ * Rational(tag_->nominal));
}

Interval ExactReal::enclosure() const {
    if (isRational()) {
        return {roundDown(rat_), roundUp(rat_)};
    }
    Rational a = rat_ + irr_ * Rational(tag_->lower);
    Rational b = rat_ + irr_ * Rational(tag_->upper);
    if (a > b) {
        std::swap(a, b);
    }
    return {roundDown(a), roundUp(b)};
}

std::string ExactReal::toString() const {
    if (isRational()) {
        return formatRational(rat_);
    }
    const Rational magnitude = irr_ < 0 ? Rational(-irr_) : irr_;
    return formatRational(rat_) + (irr_ < 0 ? "-" : "+") + formatRational(magnitude) +
           "*" + tag_->name;
}

ExactReal ExactReal::operator-() const {
    return ExactReal(Rational(-rat_), Rational(-irr_), tag_);
}

namespace {
std::optional<IrrationalTag> commonTag(const ExactReal& x, const ExactReal& y) {
    if (x.isRational()) {
        return y.tag();
    }
    if (y.isRational()) {
        return x.tag();
    }
    if (!(*x.tag() == *y.tag())) {
        throw ValidationError("cannot combine irrational tags '" + x.tag()->name +
                              "' and '" + y.tag()->name + "'");
    }
    return x.tag();
}
}  // namespace

ExactReal operator+(const ExactReal& x, const ExactReal& y) {
    auto tag = commonTag(x, y);
    return ExactReal(x.rat_ + y.rat_, x.irr_ + y.irr_, std::move(tag));
}

ExactReal operator-(const ExactReal& x, const ExactReal& y) { return x + (-y); }

ExactReal operator*(const ExactReal& x, const Rational& factor) {
    return ExactReal(x.rat_ * factor, x.irr_ * factor, x.tag_);
}

bool operator==(const ExactReal& x, const ExactReal& y) {
    return x.rat_ == y.rat_ && x.irr_ == y.irr_ && x.tag_ == y.tag_;
}

int sign(const ExactReal& x) {
    if (x.isRational()) {
        return x.rationalPart() > 0 ? 1 : (x.rationalPart() < 0 ? -1 : 0);
    }
    const auto& tag = *x.tag();
    const Rational a = x.rationalPart() + x.irrationalPart() * Rational(tag.lower);
    const Rational b = x.rationalPart() + x.irrationalPart() * Rational(tag.upper);
    if (a > 0 && b > 0) {
        return 1;
    }
    if (a < 0 && b < 0) {
        return -1;
    }
    throw DomainError("sign of " + x.toString() +
                      " is not decidable from the enclosure of " + tag.name);
}

int compare(const ExactReal& x, const ExactReal& y) { return sign(x - y); }

bool isEvenInteger(const ExactReal& x) {
    if (!x.isRational()) {
        return false;
    }
    const Rational& r = x.rationalPart();
    if (boost::multiprecision::denominator(r) != 1) {
        return false;
    }
    const cpp_int n = boost::multiprecision::numerator(r);
    return n % 2 == 0;
}

Rational parseRational(std::string_view text) { return Parser(text).parseRationalOnly(); }

std::string formatRational(const Rational& value) {
    const auto num = boost::multiprecision::numerator(value);
    const auto den = boost::multiprecision::denominator(value);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

bool rectangleSpectrumSimple(const ExactReal& sideRatio) { return !sideRatio.isRational(); }

}  // namespace dirichlet
