#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bispec/errors.hpp"
#include "bispec/family.hpp"
#include "bispec/laurent.hpp"
#include "bispec/rational.hpp"

namespace bispec {

/// One exactly-representable operator building block. Every atom has a
/// closed-form action on any Laurent monomial x^k (k may be negative):
///
///   qshift_up      x^k -> q^k x^k          (f(x) -> f(qx))
///   qshift_down    x^k -> q^{-k} x^k       (f(x) -> f(x/q))
///   derivative     x^k -> k x^{k-1}
///   second_derivative x^k -> k(k-1) x^{k-2}
///   multiply_x_power  x^k -> x^{k+power}
///   reflection     x^k -> (-1)^k x^k
///   identity       x^k -> x^k
///
/// The action is multiplied by `scale`; q-shifts read `q`.
struct OperatorAtom {
    enum class Kind {
        qshift_up,
        qshift_down,
        derivative,
        second_derivative,
        multiply_x_power,
        reflection,
        identity,
    };

    Kind kind = Kind::identity;
    Rational scale = Rational(1);
    long power = 0;   // multiply_x_power only
    Rational q;       // q-shifts only

    Laurent apply(const Laurent& p) const {
        Laurent out;
        for (const auto& [k, c] : p.terms()) {
            switch (kind) {
                case Kind::qshift_up: out.add_term(k, c * scale * q.pow(k)); break;
                case Kind::qshift_down: out.add_term(k, c * scale * q.pow(-k)); break;
                case Kind::derivative: out.add_term(k - 1, c * scale * Rational(k)); break;
                case Kind::second_derivative:
                    out.add_term(k - 2, c * scale * Rational(k) * Rational(k - 1));
                    break;
                case Kind::multiply_x_power: out.add_term(k + power, c * scale); break;
                case Kind::reflection: out.add_term(k, (k % 2) ? -(c * scale) : c * scale); break;
                case Kind::identity: out.add_term(k, c * scale); break;
            }
        }
        return out;
    }

    static OperatorAtom mulx(long power, Rational scale) {
        return {Kind::multiply_x_power, std::move(scale), power, Rational()};
    }
    static OperatorAtom shift_up(Rational q, Rational scale = Rational(1)) {
        return {Kind::qshift_up, std::move(scale), 0, std::move(q)};
    }
    static OperatorAtom shift_down(Rational q, Rational scale = Rational(1)) {
        return {Kind::qshift_down, std::move(scale), 0, std::move(q)};
    }
    static OperatorAtom d1(Rational scale = Rational(1)) {
        return {Kind::derivative, std::move(scale), 0, Rational()};
    }
    static OperatorAtom d2(Rational scale = Rational(1)) {
        return {Kind::second_derivative, std::move(scale), 0, Rational()};
    }
};

/// A composition of atoms, written left-to-right in operator order: the
/// last element acts first.
using AtomChain = std::vector<OperatorAtom>;

inline Laurent apply_chain(const AtomChain& chain, Laurent p) {
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) p = it->apply(p);
    return p;
}

/// L = L_0 pi_0 + L_1 pi_1: the even part acts on the even projection of
/// the input, the odd part on the odd projection. Individual terms may
/// produce negative powers; they must cancel in the assembled output.
struct RealizedOperator {
    FamilySpec spec;
    std::vector<AtomChain> even_part;
    std::vector<AtomChain> odd_part;
};

namespace detail {

inline Laurent apply_part(const std::vector<AtomChain>& part, const Laurent& p) {
    Laurent out;
    for (const auto& chain : part) out += apply_chain(chain, p);
    return out;
}

}  // namespace detail

/// The concrete q-difference / differential form of the family operator.
/// GeneralizedQLaguerre has no such form and is rejected.
inline RealizedOperator build_realization(const FamilySpec& s) {
    RealizedOperator op;
    op.spec = s;
    const Rational one(1);
    switch (s.kind) {
        case FamilyKind::generalized_little_q_jacobi: {
            const Rational& q = s.q;
            const Rational rq = s.rho * q;
            const Rational q2 = q * q;
            // L_0 = (-a + b x^{-2})(T_q^+ - I) + (1 - x^{-2})(T_q^- - I) + eps0
            op.even_part = {
                {OperatorAtom::mulx(0, -s.a), OperatorAtom::shift_up(q)},
                {OperatorAtom::mulx(-2, s.b), OperatorAtom::shift_up(q)},
                {OperatorAtom::mulx(0, one), OperatorAtom::shift_down(q)},
                {OperatorAtom::mulx(-2, -one), OperatorAtom::shift_down(q)},
                {OperatorAtom::mulx(0, s.a - one + s.eps0)},
                {OperatorAtom::mulx(-2, one - s.b)},
            };
            // L_1 = rho q (a - b x^{-2}) T_q^+ + rho q (-1 + x^{-2}) T_q^-
            //       + (eps1 + rho - a rho q^2) + rho (b q^2 - 1) x^{-2}
            op.odd_part = {
                {OperatorAtom::mulx(0, rq * s.a), OperatorAtom::shift_up(q)},
                {OperatorAtom::mulx(-2, -rq * s.b), OperatorAtom::shift_up(q)},
                {OperatorAtom::mulx(0, -rq), OperatorAtom::shift_down(q)},
                {OperatorAtom::mulx(-2, rq), OperatorAtom::shift_down(q)},
                {OperatorAtom::mulx(0, s.eps1 + s.rho - s.a * s.rho * q2)},
                {OperatorAtom::mulx(-2, s.rho * (s.b * q2 - one))},
            };
            break;
        }
        case FamilyKind::generalized_gegenbauer: {
            const Rational a1 = s.a + one, b1 = s.b + one;
            // L_0 = (1 - x^2) d^2 + ((b+1) x^{-1} - (a+1) x) d + eps0
            op.even_part = {
                {OperatorAtom::d2()},
                {OperatorAtom::mulx(2, -one), OperatorAtom::d2()},
                {OperatorAtom::mulx(-1, b1), OperatorAtom::d1()},
                {OperatorAtom::mulx(1, -a1), OperatorAtom::d1()},
                {OperatorAtom::mulx(0, s.eps0)},
            };
            // L_1 = rho (x^2 - 1) d^2 + rho ((a+1) x - (b+1) x^{-1}) d
            //       + eps1 - rho (a+1) + rho (b+1) x^{-2}
            op.odd_part = {
                {OperatorAtom::mulx(2, s.rho), OperatorAtom::d2()},
                {OperatorAtom::d2(-s.rho)},
                {OperatorAtom::mulx(1, s.rho * a1), OperatorAtom::d1()},
                {OperatorAtom::mulx(-1, -s.rho * b1), OperatorAtom::d1()},
                {OperatorAtom::mulx(0, s.eps1 - s.rho * a1)},
                {OperatorAtom::mulx(-2, s.rho * b1)},
            };
            break;
        }
        case FamilyKind::generalized_laguerre: {
            const Rational b1 = s.b + one;
            // L_0 = d^2 + (-x + (b+1) x^{-1}) d + eps0
            op.even_part = {
                {OperatorAtom::d2()},
                {OperatorAtom::mulx(1, -one), OperatorAtom::d1()},
                {OperatorAtom::mulx(-1, b1), OperatorAtom::d1()},
                {OperatorAtom::mulx(0, s.eps0)},
            };
            // L_1 = -rho d^2 + rho (x - (b+1) x^{-1}) d + eps1 - rho + rho (b+1) x^{-2}
            op.odd_part = {
                {OperatorAtom::d2(-s.rho)},
                {OperatorAtom::mulx(1, s.rho), OperatorAtom::d1()},
                {OperatorAtom::mulx(-1, -s.rho * b1), OperatorAtom::d1()},
                {OperatorAtom::mulx(0, s.eps1 - s.rho)},
                {OperatorAtom::mulx(-2, s.rho * b1)},
            };
            break;
        }
        case FamilyKind::generalized_q_laguerre:
            throw realization_error(
                "GeneralizedQLaguerre has no difference/differential realization; "
                "only its abstract monomial action is available");
    }
    return op;
}

/// Applies the assembled operator to a proper polynomial. Negative powers
/// produced by individual terms must cancel; a surviving one signals an
/// inconsistent realization (or bad parameters).
inline Laurent apply_realized(const RealizedOperator& op, const Laurent& p) {
    if (!p.proper()) throw realization_error("apply_realized needs a proper polynomial");
    Laurent out = detail::apply_part(op.even_part, p.project(Parity::even)) +
                  detail::apply_part(op.odd_part, p.project(Parity::odd));
    if (!out.proper())
        throw realization_error("realization produced a non-cancelling negative power x^" +
                                std::to_string(out.low_degree()));
    return out;
}

inline Laurent apply_realized_monomial(const RealizedOperator& op, long n) {
    return apply_realized(op, Laurent::monomial(n));
}

/// If the even and odd parts agree as operators (checked exactly on all
/// monomials up to the bound), the reflection drops out of the assembled
/// operator and the single reflection-free form is returned.
inline std::optional<std::vector<AtomChain>> classical_collapse(const RealizedOperator& op,
                                                                long monomial_bound = 80) {
    for (long n = 0; n <= monomial_bound; ++n) {
        const Laurent mono = Laurent::monomial(n);
        if (!(detail::apply_part(op.even_part, mono) == detail::apply_part(op.odd_part, mono)))
            return std::nullopt;
    }
    return op.even_part;
}

}  // namespace bispec
