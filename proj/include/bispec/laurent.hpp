#pragma once

#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "bispec/errors.hpp"
#include "bispec/rational.hpp"

namespace bispec {

enum class Parity { even, odd, mixed };

/// Sparse univariate Laurent polynomial over Rational: a finite map from
/// (possibly negative) exponents to nonzero coefficients. The canonical
/// zero is the empty map. A value is "proper" iff its lowest exponent
/// is >= 0, i.e. it is an ordinary polynomial.
class Laurent {
public:
    using Terms = std::map<long, Rational>;

    Laurent() = default;

    static Laurent zero() { return Laurent(); }
    static Laurent one() { return monomial(0); }
    static Laurent x() { return monomial(1); }

    static Laurent monomial(long k, Rational c = Rational(1)) {
        Laurent p;
        p.add_term(k, std::move(c));
        return p;
    }

    static Laurent constant(Rational c) { return monomial(0, std::move(c)); }

    bool is_zero() const { return terms_.empty(); }

    /// Adds c * x^k, dropping the entry if the sum cancels.
    void add_term(long k, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Rational coeff(long k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    long degree() const {
        if (is_zero()) throw error("degree of the zero polynomial");
        return terms_.rbegin()->first;
    }

    long low_degree() const {
        if (is_zero()) throw error("low degree of the zero polynomial");
        return terms_.begin()->first;
    }

    bool proper() const { return is_zero() || low_degree() >= 0; }

    std::size_t term_count() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    /// Zero is reported as even (its exponent set satisfies both parities;
    /// the even projector fixes it).
    Parity parity() const {
        bool has_even = false, has_odd = false;
        for (const auto& [k, c] : terms_) ((k % 2) == 0 ? has_even : has_odd) = true;
        if (has_even && has_odd) return Parity::mixed;
        if (has_odd) return Parity::odd;
        return Parity::even;
    }

    /// f(x) -> f(-x); an involution.
    Laurent reflect() const {
        Laurent r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, (k % 2) ? -c : c);
        return r;
    }

    /// Even or odd part: pi_0 = (1+R)/2, pi_1 = (1-R)/2.
    Laurent project(Parity p) const {
        if (p == Parity::mixed) throw parity_error("cannot project onto 'mixed'");
        Laurent r;
        const long want = (p == Parity::even) ? 0 : 1;
        for (const auto& [k, c] : terms_)
            if (((k % 2) + 2) % 2 == want) r.terms_.emplace(k, c);
        return r;
    }

    Laurent operator-() const {
        Laurent r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }

    Laurent& operator+=(const Laurent& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }

    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
        return r;
    }

    friend Laurent operator*(const Rational& c, const Laurent& p) {
        Laurent r;
        if (c.is_zero()) return r;
        for (const auto& [k, pc] : p.terms_) r.terms_.emplace(k, c * pc);
        return r;
    }
    friend Laurent operator*(const Laurent& p, const Rational& c) { return c * p; }

    friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

    /// Exact evaluation; x = 0 is rejected when negative exponents are present.
    Rational evaluate(const Rational& x) const {
        Rational acc(0);
        for (const auto& [k, c] : terms_) {
            if (k < 0 && x.is_zero())
                throw degenerate_parameter_error("evaluating a negative power at zero");
            acc += c * (k == 0 ? Rational(1) : x.pow(k));
        }
        return acc;
    }

    /// x -> x^2: doubles every exponent.
    Laurent substitute_square() const {
        Laurent r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(2 * k, c);
        return r;
    }

    /// Inverse of substitute_square on even-exponent input. Rejects anything else.
    Laurent halve_exponents() const {
        Laurent r;
        for (const auto& [k, c] : terms_) {
            if (k % 2 != 0)
                throw parity_error("halve_exponents needs even exponents only");
            r.terms_.emplace(k / 2, c);
        }
        return r;
    }

    /// Multiplies by x^d (d may be negative).
    Laurent shift_exponents(long d) const {
        Laurent r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(k + d, c);
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [k, c] = *it;
            if (!first) os << (c.sign() < 0 ? " - " : " + ");
            else if (c.sign() < 0) os << "-";
            first = false;
            Rational ac = c.sign() < 0 ? -c : c;
            if (k == 0 || !ac.is_one()) os << ac.str();
            if (k != 0) {
                if (!ac.is_one()) os << "*";
                os << "x";
                if (k != 1) os << "^" << k;
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Laurent& p) { return os << p.str(); }

private:
    Terms terms_;
};

}  // namespace bispec
