#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bispec/errors.hpp"
#include "bispec/laurent.hpp"
#include "bispec/rational.hpp"

namespace bispec {

enum class FamilyKind {
    generalized_little_q_jacobi,
    generalized_q_laguerre,
    generalized_gegenbauer,
    generalized_laguerre,
};

inline const char* kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::generalized_little_q_jacobi: return "GeneralizedLittleQJacobi";
        case FamilyKind::generalized_q_laguerre: return "GeneralizedQLaguerre";
        case FamilyKind::generalized_gegenbauer: return "GeneralizedGegenbauer";
        case FamilyKind::generalized_laguerre: return "GeneralizedLaguerre";
    }
    return "?";
}

inline std::optional<FamilyKind> kind_from_name(const std::string& s) {
    if (s == "GeneralizedLittleQJacobi") return FamilyKind::generalized_little_q_jacobi;
    if (s == "GeneralizedQLaguerre") return FamilyKind::generalized_q_laguerre;
    if (s == "GeneralizedGegenbauer") return FamilyKind::generalized_gegenbauer;
    if (s == "GeneralizedLaguerre") return FamilyKind::generalized_laguerre;
    return std::nullopt;
}

/// One of the four classified families together with its exact parameters.
/// q is used by the q-kinds only and must lie in (0,1); a is absent for the
/// Laguerre kinds. rho, eps0, eps1 are the gauge parameters; when not given
/// they default to the values that make the associated operator algebra
/// simplest (sl2 for Laguerre, the quadratic Jacobi algebra for Gegenbauer,
/// the Askey-Wilson form for little q-Jacobi). The q-Laguerre kind has no
/// distinguished gauge; its defaults are rho = 1, eps0 = 0, eps1 = -1.
struct FamilySpec {
    FamilyKind kind = FamilyKind::generalized_laguerre;
    Rational q;  // q-kinds only
    Rational a;  // little q-Jacobi, Gegenbauer
    Rational b;
    Rational rho;
    Rational eps0;
    Rational eps1;

    bool has_q() const {
        return kind == FamilyKind::generalized_little_q_jacobi ||
               kind == FamilyKind::generalized_q_laguerre;
    }
    bool has_a() const {
        return kind == FamilyKind::generalized_little_q_jacobi ||
               kind == FamilyKind::generalized_gegenbauer;
    }

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

/// Gauge freedom xi1*L + xi2*L*R + eta1*I + eta2*R with xi1 fixed to 1.
struct GaugeTransform {
    Rational xi2;
    Rational eta1;
    Rational eta2;
};

namespace detail {

inline void validate_basics(const FamilySpec& s) {
    if (s.has_q() && !(Rational(0) < s.q && s.q < Rational(1)))
        throw degenerate_parameter_error("q must satisfy 0 < q < 1");
    if (s.rho.is_zero())
        throw degenerate_parameter_error("rho must be nonzero");
}

}  // namespace detail

/// Fills the gauge defaults for whichever of rho/eps0/eps1 are not supplied
/// and validates the basic parameter constraints.
inline FamilySpec make_family(FamilyKind kind, Rational q = Rational(0), Rational a = Rational(0),
                              Rational b = Rational(0),
                              std::optional<Rational> rho = std::nullopt,
                              std::optional<Rational> eps0 = std::nullopt,
                              std::optional<Rational> eps1 = std::nullopt) {
    FamilySpec s;
    s.kind = kind;
    s.q = std::move(q);
    s.a = std::move(a);
    s.b = std::move(b);
    switch (kind) {
        case FamilyKind::generalized_little_q_jacobi:
            s.rho = rho ? *rho : -s.q.inverse();
            s.eps0 = eps0 ? *eps0 : Rational(1) - s.a;
            s.eps1 = eps1 ? *eps1 : s.q.inverse() - s.a * s.q;
            break;
        case FamilyKind::generalized_q_laguerre:
            s.rho = rho ? *rho : Rational(1);
            s.eps0 = eps0 ? *eps0 : Rational(0);
            s.eps1 = eps1 ? *eps1 : Rational(-1);
            break;
        case FamilyKind::generalized_gegenbauer:
            s.rho = rho ? *rho : Rational(-1);
            s.eps0 = eps0 ? *eps0 : Rational(1) - s.a * s.a / Rational(4);
            s.eps1 = eps1 ? *eps1 : -s.a - s.a * s.a / Rational(4);
            break;
        case FamilyKind::generalized_laguerre:
            s.rho = rho ? *rho : Rational(-1);
            s.eps0 = eps0 ? *eps0 : Rational(-1) - s.b / Rational(2);
            s.eps1 = eps1 ? *eps1 : Rational(-2) - s.b / Rational(2);
            break;
    }
    detail::validate_basics(s);
    return s;
}

namespace detail {

// Even rows of the merged table: (lambda^{(U)}_m, nu^{(U)}_m).
inline std::pair<Rational, Rational> uv_even(const FamilySpec& s, long m) {
    switch (s.kind) {
        case FamilyKind::generalized_little_q_jacobi: {
            const Rational p = s.q.pow(2 * m);          // q^{2m}
            const Rational pi = s.q.pow(-2 * m);        // q^{-2m}
            return {(Rational(1) - p) * (pi + s.a) + s.eps0, (p - Rational(1)) * (pi + s.b)};
        }
        case FamilyKind::generalized_q_laguerre: {
            const Rational p = s.q.pow(2 * m);
            const Rational pi = s.q.pow(-2 * m);
            return {(Rational(1) - p) + s.eps0, (Rational(1) - p) * (pi - s.b)};
        }
        case FamilyKind::generalized_gegenbauer: {
            const Rational n2(2 * m);
            return {-n2 * (n2 + s.a) + s.eps0, n2 * (n2 + s.b)};
        }
        case FamilyKind::generalized_laguerre: {
            const Rational n2(2 * m);
            return {-n2 + s.eps0, n2 * (n2 + s.b)};
        }
    }
    throw error("unreachable");
}

// Odd rows of the merged table: (lambda^{(V)}_m, nu^{(V)}_m).
inline std::pair<Rational, Rational> uv_odd(const FamilySpec& s, long m) {
    switch (s.kind) {
        case FamilyKind::generalized_little_q_jacobi: {
            const Rational p = s.q.pow(2 * m);
            const Rational pi = s.q.pow(-2 * m);
            const Rational q2 = s.q * s.q;
            return {s.rho * (p - Rational(1)) * (pi + s.a * q2) + s.eps1,
                    s.rho * (Rational(1) - p) * (pi + s.b * q2)};
        }
        case FamilyKind::generalized_q_laguerre: {
            const Rational p = s.q.pow(2 * m);
            return {s.rho * (Rational(1) - p) + s.eps1,
                    s.rho * (Rational(1) - p) * (s.q.pow(-2 * m - 2) - s.b)};
        }
        case FamilyKind::generalized_gegenbauer: {
            const Rational n2(2 * m);
            return {Rational(2) * s.rho * Rational(m) * (n2 + s.a + Rational(2)) + s.eps1,
                    Rational(-2) * s.rho * Rational(m) * (n2 + s.b + Rational(2))};
        }
        case FamilyKind::generalized_laguerre: {
            return {Rational(2) * s.rho * Rational(m) + s.eps1,
                    Rational(-2) * s.rho * Rational(m) * (Rational(2 * m) + s.b + Rational(2))};
        }
    }
    throw error("unreachable");
}

}  // namespace detail

/// (lambda_n, nu_n) of the merged table: even n reads the U-sequence at
/// n/2, odd n the V-sequence at (n-1)/2.
inline std::pair<Rational, Rational> lambda_nu(const FamilySpec& s, long n) {
    if (n < 0) throw error("lambda_nu needs n >= 0");
    return (n % 2 == 0) ? detail::uv_even(s, n / 2) : detail::uv_odd(s, (n - 1) / 2);
}

inline Rational lambda_of(const FamilySpec& s, long n) { return lambda_nu(s, n).first; }
inline Rational nu_of(const FamilySpec& s, long n) { return lambda_nu(s, n).second; }

/// Closed-form recurrence coefficient u_n of P_{n+1} + u_n P_{n-1} = x P_n.
inline Rational u_closed(const FamilySpec& s, long n) {
    if (n < 1) throw error("u_closed needs n >= 1");
    const long m = (n % 2 == 0) ? n / 2 : (n - 1) / 2;
    switch (s.kind) {
        case FamilyKind::generalized_little_q_jacobi: {
            const Rational q = s.q;
            if (n % 2 == 0) {
                const Rational den =
                    (Rational(1) + s.a * q.pow(4 * m)) * (Rational(1) + s.a * q.pow(4 * m - 2));
                if (den.is_zero())
                    throw degenerate_parameter_error("degenerate parameters: 1 + a*q^{4m} = 0");
                return q.pow(2 * m) * (Rational(1) - q.pow(2 * m)) *
                       (s.a * q.pow(2 * m - 2) - s.b) / den;
            }
            const Rational den =
                (Rational(1) + s.a * q.pow(4 * m)) * (Rational(1) + s.a * q.pow(4 * m + 2));
            if (den.is_zero())
                throw degenerate_parameter_error("degenerate parameters: 1 + a*q^{4m} = 0");
            return q.pow(2 * m) * (s.b * q.pow(2 * m + 2) + Rational(1)) *
                   (s.a * q.pow(2 * m) + Rational(1)) / den;
        }
        case FamilyKind::generalized_q_laguerre: {
            const Rational q = s.q;
            if (n % 2 == 0) return q.pow(-4 * m) * (q.pow(2 * m) - Rational(1));
            return s.b * q.pow(-2 * m) - q.pow(-4 * m - 2);
        }
        case FamilyKind::generalized_gegenbauer: {
            if (n % 2 == 0) {
                const Rational den = (s.a + Rational(4 * m)) * (s.a + Rational(4 * m - 2));
                if (den.is_zero())
                    throw degenerate_parameter_error("degenerate parameters: a + 4m = 0");
                return Rational(2 * m) * (Rational(2 * m - 2) + s.a - s.b) / den;
            }
            const Rational den = (s.a + Rational(4 * m + 2)) * (s.a + Rational(4 * m));
            if (den.is_zero())
                throw degenerate_parameter_error("degenerate parameters: a + 4m = 0");
            return (Rational(2 * m) + s.a) * (Rational(2 * m + 2) + s.b) / den;
        }
        case FamilyKind::generalized_laguerre:
            if (n % 2 == 0) return Rational(2 * m);
            return Rational(2 * m + 2) + s.b;
    }
    throw error("unreachable");
}

/// Gauged eigenvalue data of xi1*L + xi2*L*R + eta1*I + eta2*R (xi1 = 1):
/// lambda~_n = (1 + (-1)^n xi2) lambda_n + eta1 + (-1)^n eta2, and the
/// x^{n-2} coefficient scales the same way: nu~_n = (1 + (-1)^n xi2) nu_n.
inline std::pair<Rational, Rational> gauged_lambda_nu(const FamilySpec& s, const GaugeTransform& g,
                                                      long n) {
    const auto [lam, nu] = lambda_nu(s, n);
    const Rational sgn = (n % 2 == 0) ? Rational(1) : Rational(-1);
    const Rational scale = Rational(1) + sgn * g.xi2;
    return {scale * lam + g.eta1 + sgn * g.eta2, scale * nu};
}

/// Gauged eigenvalues over 0..n_max; throws if the gauge collapses two of them.
inline std::vector<Rational> gauge_eigenvalues(const FamilySpec& s, const GaugeTransform& g,
                                               long n_max) {
    std::vector<Rational> lam;
    lam.reserve(static_cast<std::size_t>(n_max) + 1);
    for (long n = 0; n <= n_max; ++n) lam.push_back(gauged_lambda_nu(s, g, n).first);
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (std::size_t j = i + 1; j < lam.size(); ++j)
            if (lam[i] == lam[j])
                throw degenerate_parameter_error("inadmissible gauge: eigenvalue collision at (" +
                                                 std::to_string(i) + ", " + std::to_string(j) + ")");
    return lam;
}

/// Report of the per-range nondegeneracy and positivity scan.
struct FamilyAdmissibility {
    bool lambdas_distinct = true;
    std::optional<std::pair<long, long>> lambda_collision;
    bool nu_pattern_ok = true;  // nu_0 = nu_1 = 0 and nu_n != 0 for 2 <= n <= n_max
    std::optional<long> nu_violation;
    bool positive_definite = true;  // u_n > 0 over 1..n_max (reported, not enforced)
    std::optional<long> first_nonpositive_u;
};

inline FamilyAdmissibility check_admissibility(const FamilySpec& s, long n_max) {
    FamilyAdmissibility rep;
    std::vector<Rational> lam;
    for (long n = 0; n <= n_max; ++n) {
        const auto [l, nu] = lambda_nu(s, n);
        lam.push_back(l);
        const bool want_zero = (n < 2);
        if (nu.is_zero() != want_zero && rep.nu_pattern_ok) {
            rep.nu_pattern_ok = false;
            rep.nu_violation = n;
        }
    }
    for (std::size_t i = 0; i < lam.size() && rep.lambdas_distinct; ++i)
        for (std::size_t j = i + 1; j < lam.size(); ++j)
            if (lam[i] == lam[j]) {
                rep.lambdas_distinct = false;
                rep.lambda_collision = {static_cast<long>(i), static_cast<long>(j)};
                break;
            }
    for (long n = 1; n <= n_max; ++n) {
        Rational u;
        try {
            u = u_closed(s, n);
        } catch (const degenerate_parameter_error&) {
            rep.positive_definite = false;
            rep.first_nonpositive_u = n;
            break;
        }
        if (u.sign() <= 0) {
            rep.positive_definite = false;
            rep.first_nonpositive_u = n;
            break;
        }
    }
    return rep;
}

/// Which classical (reflection-free) special case a spec lands on, if any.
enum class ClassicalCase { none, big_q_jacobi, gegenbauer, hermite };

struct ClassicalReduction {
    bool classical = false;
    ClassicalCase which = ClassicalCase::none;
};

/// Detects the parameter loci where the even and odd operator parts agree,
/// so the assembled operator loses its reflection term:
///   little q-Jacobi: b = rho = -1/q and eps1 = eps0 + (1/q - 1)(a q + 1)
///   Gegenbauer:      b = -1, rho = -1, eps0 = eps1 + a + 1
///   Laguerre:        b = -1, rho = -1, eps0 = eps1 + 1  (Hermite)
inline ClassicalReduction classical_reduction_check(const FamilySpec& s) {
    ClassicalReduction r;
    switch (s.kind) {
        case FamilyKind::generalized_little_q_jacobi: {
            const Rational minus_inv_q = -s.q.inverse();
            if (s.b == minus_inv_q && s.rho == minus_inv_q &&
                s.eps1 == s.eps0 + (s.q.inverse() - Rational(1)) * (s.a * s.q + Rational(1))) {
                r.classical = true;
                r.which = ClassicalCase::big_q_jacobi;
            }
            break;
        }
        case FamilyKind::generalized_gegenbauer:
            if (s.b == Rational(-1) && s.rho == Rational(-1) &&
                s.eps0 == s.eps1 + s.a + Rational(1)) {
                r.classical = true;
                r.which = ClassicalCase::gegenbauer;
            }
            break;
        case FamilyKind::generalized_laguerre:
            if (s.b == Rational(-1) && s.rho == Rational(-1) && s.eps0 == s.eps1 + Rational(1)) {
                r.classical = true;
                r.which = ClassicalCase::hermite;
            }
            break;
        case FamilyKind::generalized_q_laguerre:
            break;
    }
    return r;
}

/// Gegenbauer recurrence coefficients u_n = n(n+a-1)/((2n+a)(2n+a-2)),
/// the b = -1 reduction target.
inline Rational classical_u_gegenbauer(const Rational& a, long n) {
    const Rational den = (Rational(2 * n) + a) * (Rational(2 * n) + a - Rational(2));
    if (den.is_zero()) throw degenerate_parameter_error("degenerate parameters: 2n + a = 0");
    return Rational(n) * (Rational(n) + a - Rational(1)) / den;
}

/// Symmetric big q-Jacobi recurrence coefficients
/// u_n = q^{n-1}(1-q^n)(1+a q^{n-1}) / ((1+a q^{2n})(1+a q^{2n-2})),
/// the b = rho = -1/q reduction target.
inline Rational classical_u_big_qjacobi(const Rational& q, const Rational& a, long n) {
    const Rational den = (Rational(1) + a * q.pow(2 * n)) * (Rational(1) + a * q.pow(2 * n - 2));
    if (den.is_zero()) throw degenerate_parameter_error("degenerate parameters: 1 + a*q^{2n} = 0");
    return q.pow(n - 1) * (Rational(1) - q.pow(n)) * (Rational(1) + a * q.pow(n - 1)) / den;
}

/// The abstract action of the family operator on a proper polynomial:
/// L x^n = lambda_n x^n + nu_n x^{n-2}.
inline Laurent apply_abstract(const FamilySpec& s, const Laurent& p) {
    if (!p.proper()) throw error("apply_abstract needs a proper polynomial");
    Laurent out;
    for (const auto& [k, c] : p.terms()) {
        const auto [lam, nu] = lambda_nu(s, k);
        out.add_term(k, c * lam);
        if (!nu.is_zero()) out.add_term(k - 2, c * nu);
    }
    return out;
}

}  // namespace bispec
