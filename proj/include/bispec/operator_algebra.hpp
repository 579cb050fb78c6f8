#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bispec/errors.hpp"
#include "bispec/family.hpp"
#include "bispec/laurent.hpp"
#include "bispec/moments.hpp"
#include "bispec/rational.hpp"

namespace bispec {

/// A linear operator on polynomials given by its exact action on each
/// monomial x^n, n >= 0. Operators here are banded (finitely many exponent
/// offsets per operator), so compositions, sums and commutators stay exact
/// for every n: no truncation, no boundary effects.
class MonomialOperator {
public:
    using Rule = std::function<Laurent(long)>;

    MonomialOperator() : rule_([](long) { return Laurent::zero(); }) {}
    explicit MonomialOperator(Rule r) : rule_(std::move(r)) {}

    Laurent apply_monomial(long n) const { return rule_(n); }

    Laurent apply(const Laurent& p) const {
        Laurent out;
        for (const auto& [k, c] : p.terms()) {
            if (k < 0) throw error("monomial operators act on proper polynomials");
            out += c * rule_(k);
        }
        return out;
    }

    static MonomialOperator zero() { return MonomialOperator(); }

    static MonomialOperator identity() {
        return MonomialOperator([](long n) { return Laurent::monomial(n); });
    }

    static MonomialOperator reflection() {
        return MonomialOperator([](long n) {
            return Laurent::monomial(n, (n % 2) ? Rational(-1) : Rational(1));
        });
    }

    /// Multiplication by x^k; Y = multiply_x_power(2).
    static MonomialOperator multiply_x_power(long k) {
        return MonomialOperator([k](long n) { return Laurent::monomial(n + k); });
    }

    /// The family operator: L x^n = lambda_n x^n + nu_n x^{n-2}.
    static MonomialOperator family_action(FamilySpec s) {
        return MonomialOperator([s = std::move(s)](long n) {
            const auto [lam, nu] = lambda_nu(s, n);
            Laurent out = Laurent::monomial(n, lam);
            if (!nu.is_zero()) out.add_term(n - 2, nu);
            return out;
        });
    }

    friend MonomialOperator operator+(const MonomialOperator& a, const MonomialOperator& b) {
        return MonomialOperator(
            [a, b](long n) { return a.apply_monomial(n) + b.apply_monomial(n); });
    }
    friend MonomialOperator operator-(const MonomialOperator& a, const MonomialOperator& b) {
        return MonomialOperator(
            [a, b](long n) { return a.apply_monomial(n) - b.apply_monomial(n); });
    }
    friend MonomialOperator operator*(const Rational& c, const MonomialOperator& a) {
        return MonomialOperator([c, a](long n) { return c * a.apply_monomial(n); });
    }
    /// Composition: (A * B) x^n = A(B x^n).
    friend MonomialOperator operator*(const MonomialOperator& a, const MonomialOperator& b) {
        return MonomialOperator([a, b](long n) { return a.apply(b.apply_monomial(n)); });
    }

private:
    Rule rule_;
};

/// [A, B]_q = q AB - q^{-1} BA; the plain commutator at q = 1.
inline MonomialOperator q_commutator(const MonomialOperator& a, const MonomialOperator& b,
                                     const Rational& q) {
    if (q.is_zero()) throw degenerate_parameter_error("q-commutator needs q != 0");
    return q * (a * b) - q.inverse() * (b * a);
}

inline MonomialOperator commutator(const MonomialOperator& a, const MonomialOperator& b) {
    return q_commutator(a, b, Rational(1));
}

inline MonomialOperator anticommutator(const MonomialOperator& a, const MonomialOperator& b) {
    return (a * b) + (b * a);
}

/// Exact equality of monomial actions over 0..n_max; the mismatch index if any.
inline std::optional<long> first_mismatch(const MonomialOperator& a, const MonomialOperator& b,
                                          long n_max) {
    for (long n = 0; n <= n_max; ++n)
        if (!(a.apply_monomial(n) == b.apply_monomial(n))) return n;
    return std::nullopt;
}

inline bool equal_on(const MonomialOperator& a, const MonomialOperator& b, long n_max) {
    return !first_mismatch(a, b, n_max).has_value();
}

/// The structure constant of the W-combinations: q^2 + q^{-2} for the
/// q-families, 2 for the polynomial ones.
inline Rational family_omega(const FamilySpec& s) {
    if (s.has_q()) return s.q * s.q + (s.q * s.q).inverse();
    return Rational(2);
}

/// The parameter entering the nested brackets: the family q, or 1 (plain
/// commutators) for the polynomial families.
inline Rational family_bracket_q(const FamilySpec& s) {
    return s.has_q() ? s.q : Rational(1);
}

struct WPair {
    MonomialOperator w1;  // L^2 Y + Y L^2 - Omega L Y L
    MonomialOperator w2;  // L Y^2 + Y^2 L - Omega Y L Y
};

/// W-combinations in the explicit Omega form.
inline WPair build_w(const FamilySpec& s, std::optional<Rational> omega = std::nullopt) {
    const Rational om = omega ? *omega : family_omega(s);
    const MonomialOperator L = MonomialOperator::family_action(s);
    const MonomialOperator Y = MonomialOperator::multiply_x_power(2);
    WPair w;
    w.w1 = (L * L * Y) + (Y * L * L) - om * (L * Y * L);
    w.w2 = (L * Y * Y) + (Y * Y * L) - om * (Y * L * Y);
    return w;
}

/// The same combinations as nested q-brackets:
/// W1 = [L, [L, Y]_q]_{1/q},  W2 = [Y, [Y, L]_q]_{1/q}.
inline WPair build_w_brackets(const FamilySpec& s, std::optional<Rational> bracket_q = std::nullopt) {
    const Rational q = bracket_q ? *bracket_q : family_bracket_q(s);
    const MonomialOperator L = MonomialOperator::family_action(s);
    const MonomialOperator Y = MonomialOperator::multiply_x_power(2);
    WPair w;
    w.w1 = q_commutator(L, q_commutator(L, Y, q), q.inverse());
    w.w2 = q_commutator(Y, q_commutator(Y, L, q), q.inverse());
    return w;
}

/// Scalars of the verified relations; the subset used depends on the family.
struct RelationCoefficients {
    Rational xi0, xi1, eta, zeta;  // little q-Jacobi
    Rational mu;                   // Gegenbauer central term
};

/// Closed forms for the little q-Jacobi relation constants at the algebra
/// gauge (rho = -1/q, eps0 = 1-a, eps1 = 1/q - aq):
///   W2 = Y (xi0 + xi1 R)
///   W1 = L (xi0 + xi1 R) + eta Y + zeta I
inline RelationCoefficients relation_coefficients_qjacobi(const Rational& q, const Rational& a,
                                                          const Rational& b) {
    const Rational qi = q.inverse();
    const Rational w = (q - qi) * (q - qi);
    const Rational half(1, 2);
    RelationCoefficients c;
    c.xi0 = half * (q + Rational(1)) * (b - qi) * w;
    c.xi1 = half * (Rational(1) - q) * (b + qi) * w;
    c.eta = a * (q * q - qi * qi) * (q * q - qi * qi);
    c.zeta = -(qi * qi) * (Rational(1) + q * q) * (a + b * q * q) * w;
    return c;
}

/// mu of the Gegenbauer relation [L,[L,Y]] = -8{L,Y} + 8L + 4(b+1)R + mu I.
inline Rational gegenbauer_mu(const Rational& a, const Rational& b) {
    return Rational(2) * a * a - Rational(4) * a * b - Rational(8) * a + Rational(4) * b +
           Rational(4);
}

struct RelationReport {
    std::string family;
    bool applicable = true;
    std::string note;
    std::vector<CheckReport> relations;

    bool passed() const {
        for (const auto& r : relations)
            if (!r.passed) return false;
        return true;
    }
};

namespace detail {

inline CheckReport check_operators_equal(std::string name, const MonomialOperator& lhs,
                                         const MonomialOperator& rhs, long n_max) {
    CheckReport rep(std::move(name));
    rep.checks = n_max + 1;
    if (auto n = first_mismatch(lhs, rhs, n_max)) {
        const Laurent l = lhs.apply_monomial(*n), r = rhs.apply_monomial(*n);
        rep.passed = false;
        rep.failure_indices = {*n};
        const Laurent diff = l - r;
        const long k = diff.is_zero() ? 0 : diff.degree();
        rep.failure_lhs = l.coeff(k);
        rep.failure_rhs = r.coeff(k);
    }
    return rep;
}

}  // namespace detail

/// Verifies the defining relations of the bispectral algebra at the
/// family's algebra gauge, exactly on x^n for 0 <= n <= n_max.
inline RelationReport verify_relation(const FamilySpec& s, long n_max) {
    RelationReport rep;
    rep.family = kind_name(s.kind);
    const MonomialOperator L = MonomialOperator::family_action(s);
    const MonomialOperator Y = MonomialOperator::multiply_x_power(2);
    const MonomialOperator R = MonomialOperator::reflection();
    const MonomialOperator I = MonomialOperator::identity();
    switch (s.kind) {
        case FamilyKind::generalized_little_q_jacobi: {
            const auto c = relation_coefficients_qjacobi(s.q, s.a, s.b);
            const WPair w = build_w_brackets(s);
            const MonomialOperator xi = c.xi0 * I + c.xi1 * R;
            rep.relations.push_back(detail::check_operators_equal(
                "[Y,[Y,L]_q]_{1/q} = Y(xi0 + xi1 R)", w.w2, Y * xi, n_max));
            rep.relations.push_back(detail::check_operators_equal(
                "[L,[L,Y]_q]_{1/q} = L(xi0 + xi1 R) + eta Y + zeta",
                w.w1, L * xi + c.eta * Y + c.zeta * I, n_max));
            break;
        }
        case FamilyKind::generalized_gegenbauer: {
            const MonomialOperator w2 = commutator(Y, commutator(Y, L));
            const MonomialOperator w1 = commutator(L, commutator(L, Y));
            const Rational mu = gegenbauer_mu(s.a, s.b);
            rep.relations.push_back(detail::check_operators_equal(
                "[Y,[Y,L]] = -8Y^2 + 8Y", w2,
                Rational(-8) * (Y * Y) + Rational(8) * Y, n_max));
            rep.relations.push_back(detail::check_operators_equal(
                "[L,[L,Y]] = -8{L,Y} + 8L + 4(b+1)R + mu", w1,
                Rational(-8) * anticommutator(L, Y) + Rational(8) * L +
                    (Rational(4) * (s.b + Rational(1))) * R + mu * I,
                n_max));
            break;
        }
        case FamilyKind::generalized_laguerre: {
            const MonomialOperator w2 = commutator(Y, commutator(Y, L));
            const MonomialOperator w1 = commutator(L, commutator(L, Y));
            rep.relations.push_back(
                detail::check_operators_equal("[Y,[Y,L]] = 8Y", w2, Rational(8) * Y, n_max));
            rep.relations.push_back(detail::check_operators_equal(
                "[L,[L,Y]] = 8L + 4Y", w1, Rational(8) * L + Rational(4) * Y, n_max));
            break;
        }
        case FamilyKind::generalized_q_laguerre:
            rep.applicable = false;
            rep.note = "no reference relations for this family; use the fit command";
            break;
    }
    return rep;
}

/// Degenerate q-Onsager relations for the little q-Jacobi family:
/// [Y, [Y,[Y,L]_q]_{1/q}] = 0 and [L, [L,[L,Y]_q]_{1/q}] = eta [L,Y].
inline RelationReport verify_q_onsager(const FamilySpec& s, long n_max) {
    RelationReport rep;
    rep.family = kind_name(s.kind);
    if (s.kind != FamilyKind::generalized_little_q_jacobi) {
        rep.applicable = false;
        rep.note = "q-Onsager relations are stated for the little q-Jacobi family";
        return rep;
    }
    const MonomialOperator L = MonomialOperator::family_action(s);
    const MonomialOperator Y = MonomialOperator::multiply_x_power(2);
    const WPair w = build_w_brackets(s);
    const Rational eta = relation_coefficients_qjacobi(s.q, s.a, s.b).eta;
    rep.relations.push_back(detail::check_operators_equal(
        "[Y, [Y,[Y,L]_q]_{1/q}] = 0", commutator(Y, w.w2), MonomialOperator::zero(), n_max));
    rep.relations.push_back(detail::check_operators_equal(
        "[L, [L,[L,Y]_q]_{1/q}] = eta [L,Y]", commutator(L, w.w1), eta * commutator(L, Y), n_max));
    return rep;
}

enum class RelationTemplate { qjacobi, gegenbauer, sl2 };

inline const char* template_name(RelationTemplate t) {
    switch (t) {
        case RelationTemplate::qjacobi: return "qjacobi";
        case RelationTemplate::gegenbauer: return "gegenbauer";
        case RelationTemplate::sl2: return "sl2";
    }
    return "?";
}

inline std::optional<RelationTemplate> template_from_name(const std::string& s) {
    if (s == "qjacobi") return RelationTemplate::qjacobi;
    if (s == "gegenbauer") return RelationTemplate::gegenbauer;
    if (s == "sl2") return RelationTemplate::sl2;
    return std::nullopt;
}

/// Result of fitting unknown scalars in a fixed operator ansatz. When the
/// overdetermined exact system is solvable the relation holds with the
/// fitted coefficients; otherwise the relation does not hold.
struct FitResult {
    bool consistent = false;
    std::string note;
    std::map<std::string, Rational> coefficients;
};

namespace detail {

/// Exact solve of an overdetermined linear system rows * t = rhs.
/// Returns the unique solution iff the system is consistent and has full
/// column rank.
inline std::optional<std::vector<Rational>> solve_exact(
    std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs, std::size_t unknowns) {
    const std::size_t m = rows.size();
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < unknowns && rank < m; ++col) {
        std::size_t p = rank;
        while (p < m && rows[p][col].is_zero()) ++p;
        if (p == m) continue;
        std::swap(rows[p], rows[rank]);
        std::swap(rhs[p], rhs[rank]);
        const Rational inv = rows[rank][col].inverse();
        for (std::size_t j = col; j < unknowns; ++j) rows[rank][j] *= inv;
        rhs[rank] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank || rows[i][col].is_zero()) continue;
            const Rational f = rows[i][col];
            for (std::size_t j = col; j < unknowns; ++j)
                rows[i][j] -= f * rows[rank][j];
            rhs[i] -= f * rhs[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank < unknowns) return std::nullopt;  // underdetermined ansatz
    for (std::size_t i = rank; i < m; ++i)
        if (!rhs[i].is_zero()) return std::nullopt;  // inconsistent
    std::vector<Rational> t(unknowns);
    for (std::size_t i = 0; i < rank; ++i) t[pivot_col[i]] = rhs[i];
    return t;
}

/// Fits lhs = sum_j t_j basis_j exactly on monomials 0..n_fit.
inline FitResult fit_operator_ansatz(const MonomialOperator& lhs,
                                     const std::vector<std::pair<std::string, MonomialOperator>>& basis,
                                     long n_fit) {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (long n = 0; n <= n_fit; ++n) {
        const Laurent target = lhs.apply_monomial(n);
        std::vector<Laurent> images;
        images.reserve(basis.size());
        std::map<long, bool> support;
        for (const auto& [k, c] : target.terms()) support[k] = true;
        for (const auto& [name, op] : basis) {
            images.push_back(op.apply_monomial(n));
            for (const auto& [k, c] : images.back().terms()) support[k] = true;
        }
        for (const auto& [k, used] : support) {
            std::vector<Rational> row;
            row.reserve(basis.size());
            for (const auto& img : images) row.push_back(img.coeff(k));
            rows.push_back(std::move(row));
            rhs.push_back(target.coeff(k));
        }
    }
    FitResult out;
    auto t = solve_exact(std::move(rows), std::move(rhs), basis.size());
    if (!t) {
        out.consistent = false;
        out.note = "no exact solution: the relation does not hold in this ansatz";
        return out;
    }
    out.consistent = true;
    for (std::size_t j = 0; j < basis.size(); ++j) out.coefficients[basis[j].first] = (*t)[j];
    return out;
}

}  // namespace detail

/// Fits the unknown scalars of the named relation shape against the exact
/// operator data; the fit is the independent oracle for the closed-form
/// relation constants.
inline FitResult fit_relation(const FamilySpec& s, RelationTemplate tmpl, long n_max = 12) {
    const MonomialOperator L = MonomialOperator::family_action(s);
    const MonomialOperator Y = MonomialOperator::multiply_x_power(2);
    const MonomialOperator R = MonomialOperator::reflection();
    const MonomialOperator I = MonomialOperator::identity();
    switch (tmpl) {
        case RelationTemplate::qjacobi: {
            const Rational q = family_bracket_q(s);
            const WPair w = build_w_brackets(s, q);
            FitResult f1 = detail::fit_operator_ansatz(
                w.w1, {{"xi0", L}, {"xi1", L * R}, {"eta", Y}, {"zeta", I}}, n_max);
            FitResult f2 =
                detail::fit_operator_ansatz(w.w2, {{"xi0", Y}, {"xi1", Y * R}}, n_max);
            if (!f1.consistent || !f2.consistent)
                return {false, "no exact solution: the relation does not hold in this ansatz", {}};
            if (f1.coefficients["xi0"] != f2.coefficients["xi0"] ||
                f1.coefficients["xi1"] != f2.coefficients["xi1"])
                return {false, "the two bracket relations disagree on xi0/xi1", {}};
            return f1;
        }
        case RelationTemplate::gegenbauer: {
            const MonomialOperator w1 = commutator(L, commutator(L, Y));
            const MonomialOperator w2 = commutator(Y, commutator(Y, L));
            FitResult f1 = detail::fit_operator_ansatz(
                w1, {{"anti", anticommutator(L, Y)}, {"l", L}, {"r", R}, {"mu", I}}, n_max);
            FitResult f2 = detail::fit_operator_ansatz(w2, {{"y2", Y * Y}, {"y", Y}}, n_max);
            if (!f1.consistent || !f2.consistent)
                return {false, "no exact solution: the relation does not hold in this ansatz", {}};
            f1.coefficients.insert(f2.coefficients.begin(), f2.coefficients.end());
            return f1;
        }
        case RelationTemplate::sl2: {
            const MonomialOperator w1 = commutator(L, commutator(L, Y));
            const MonomialOperator w2 = commutator(Y, commutator(Y, L));
            FitResult f1 = detail::fit_operator_ansatz(w1, {{"l", L}, {"y", Y}}, n_max);
            FitResult f2 = detail::fit_operator_ansatz(w2, {{"y", Y}}, n_max);
            if (!f1.consistent || !f2.consistent)
                return {false, "no exact solution: the relation does not hold in this ansatz", {}};
            f1.coefficients["yy_y"] = f2.coefficients["y"];
            return f1;
        }
    }
    throw error("unreachable");
}

}  // namespace bispec
