#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace toughham {

// Exact ratio of 64-bit integers with a distinguished +infinity.  Toughness
// values and all degree/order thresholds are compared through this type;
// floating point never enters the library.
class Rational {
public:
    Rational() : num_(0), den_(1), inf_(false) {}

    Rational(std::int64_t value) : num_(value), den_(1), inf_(false) {}

    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den), inf_(false) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    static Rational infinity() {
        Rational r;
        r.inf_ = true;
        return r;
    }

    static Rational parse(const std::string& text) {
        if (text == "inf" || text == "+inf") return infinity();
        auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(text));
        return Rational(std::stoll(text.substr(0, slash)),
                        std::stoll(text.substr(slash + 1)));
    }

    bool is_infinite() const { return inf_; }
    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    friend bool operator<(const Rational& a, const Rational& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.inf_ || b.inf_) return infinity();
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.inf_) return infinity();
        if (b.inf_) throw std::domain_error("Rational: inf subtrahend");
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.inf_ || b.inf_) return infinity();
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.inf_) throw std::domain_error("Rational: inf divisor");
        if (a.inf_) return infinity();
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    std::string to_string() const {
        if (inf_) return "inf";
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_;
    std::int64_t den_;
    bool inf_;
};

}  // namespace toughham
