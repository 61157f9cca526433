#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stacky {

// Exact rational arithmetic on int64. Ages, c-values and (a,b)-invariants
// are tiny fractions, so no big-integer backend is needed; operations check
// nothing beyond gcd normalization.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rat operator+(const Rat& o) const { return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    Rat operator-(const Rat& o) const { return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
    Rat operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }
    Rat operator/(const Rat& o) const {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        return Rat(num_ * o.den_, den_ * o.num_);
    }
    Rat operator-() const { return Rat(-num_, den_); }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Rat& o) const { return num_ * o.den_ <= o.num_ * den_; }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return o <= *this; }

    Rat inv() const {
        if (num_ == 0) throw std::domain_error("inverse of zero");
        return Rat(den_, num_);
    }

    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    long long ceil() const { return -(-*this).floor(); }
    // fractional part {x} = x - floor(x), always in [0,1)
    Rat frac() const { return *this - Rat(floor()); }

    double to_double() const { return double(num_) / double(den_); }

    // "p/q", or just "p" for integers
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Rat parse(const std::string& s);

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    long long num_;
    long long den_;
};

inline Rat Rat::parse(const std::string& s) {
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            size_t pos = 0;
            long long n = std::stoll(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return Rat(n);
        }
        size_t pos = 0;
        long long n = std::stoll(s.substr(0, slash), &pos);
        if (pos != slash) throw std::invalid_argument(s);
        long long d = std::stoll(s.substr(slash + 1), &pos);
        if (pos != s.size() - slash - 1) throw std::invalid_argument(s);
        return Rat(n, d);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    }
}

}  // namespace stacky
