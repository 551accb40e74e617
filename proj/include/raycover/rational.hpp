#pragma once

// Exact rational scalar used for every coordinate and predicate in the
// library.  Backed by an arbitrary-precision integer; no operation ever
// rounds.  Values are kept in lowest terms with a positive denominator at
// all times, so equality is structural and bit_length() is well defined.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace raycover {

using BigInt = boost::multiprecision::cpp_int;

/// Number of bits of |v|; 0 for v == 0.
inline int bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return static_cast<int>(boost::multiprecision::msb(boost::multiprecision::abs(v))) + 1;
}

inline BigInt big_factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Exact rational number, always in lowest terms, denominator > 0.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(BigInt v) : num_(std::move(v)), den_(1) {}
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const { return Rational(unchecked{}, -num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const BigInt lhs = a.num_ * b.den_;
        const BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    /// Max bit length over numerator and denominator.
    int bit_length() const {
        return std::max(raycover::bit_length(num_), raycover::bit_length(den_));
    }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// "num/den" in lowest terms; plain "num" when the denominator is 1.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) {
            s += '/';
            s += den_.str();
        }
        return s;
    }

    /// Parses "num" or "num/den"; throws std::invalid_argument on malformed input.
    static Rational parse(std::string_view text) {
        auto slash = text.find('/');
        if (slash == std::string_view::npos)
            return Rational(parse_int(text), 1);
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }

private:
    struct unchecked {};
    Rational(unchecked, BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static BigInt parse_int(std::string_view text) {
        while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
        while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
        if (text.empty()) throw std::invalid_argument("Rational: empty integer token");
        std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
        if (i == text.size()) throw std::invalid_argument("Rational: sign without digits");
        for (; i < text.size(); ++i)
            if (text[i] < '0' || text[i] > '9')
                throw std::invalid_argument("Rational: bad digit in '" + std::string(text) + "'");
        return BigInt(std::string(text));
    }

    BigInt num_;
    BigInt den_;  // > 0
};

inline Rational rat(long long num, long long den) { return Rational(BigInt(num), BigInt(den)); }

}  // namespace raycover
