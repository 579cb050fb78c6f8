#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "bispec/errors.hpp"

namespace bispec {

/// Arbitrary-precision rational number. Values are kept in lowest terms
/// with a positive denominator at all times; every operation is exact.
///
/// Serialized form is "p/q", or just "p" when q = 1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(long num, long den) {
        if (den == 0) throw degenerate_parameter_error("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    static Rational from_string(std::string_view s) {
        if (!looks_like_rational(s))
            throw parse_error("bad rational literal: '" + std::string(s) + "'");
        mpq_class v;
        if (v.set_str(std::string(s), 10) != 0)
            throw parse_error("bad rational literal: '" + std::string(s) + "'");
        if (v.get_den() == 0)
            throw parse_error("zero denominator in rational literal: '" + std::string(s) + "'");
        v.canonicalize();
        return Rational(std::move(v));
    }

    std::string str() const { return v_.get_str(); }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    /// Exact integer power; e may be negative (requires nonzero base).
    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        if (is_zero()) {
            if (e > 0) return Rational(0);
            throw degenerate_parameter_error("negative power of zero");
        }
        const unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), k);
        mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), k);
        mpq_class r = (e > 0) ? mpq_class(n, d) : mpq_class(d, n);
        r.canonicalize();
        return Rational(std::move(r));
    }

    Rational inverse() const {
        if (is_zero()) throw degenerate_parameter_error("inverse of zero");
        mpq_class r(v_.get_den(), v_.get_num());
        r.canonicalize();
        return Rational(std::move(r));
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw degenerate_parameter_error("division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

private:
    static bool looks_like_rational(std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        std::size_t digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++digits; }
        if (digits == 0) return false;
        if (i == s.size()) return true;
        if (s[i] != '/') return false;
        ++i;
        digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++digits; }
        return digits > 0 && i == s.size();
    }

    mpq_class v_;
};

inline Rational pow(const Rational& b, long e) { return b.pow(e); }

}  // namespace bispec
