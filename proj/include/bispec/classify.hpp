#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bispec/errors.hpp"
#include "bispec/moments.hpp"
#include "bispec/rational.hpp"

namespace bispec {

/// Exact fit of the three-term linear difference equation
/// s_{n+1} + s_{n-1} - Omega s_n + B = 0 over the whole sequence.
struct DifferenceEquationFit {
    Rational omega;
    Rational b;
    bool residual_ok = false;  // every relation in range holds exactly
};

/// Solves (Omega, B) from two relations with distinct interior values and
/// then replays all remaining relations. Needs at least 5 terms. A constant
/// sequence (or one whose interior is constant) leaves the system singular.
inline DifferenceEquationFit fit_difference_equation(const std::vector<Rational>& seq) {
    const long n_terms = static_cast<long>(seq.size());
    if (n_terms < 5) throw error("fit_difference_equation needs at least 5 terms");
    const auto at = [&](long i) -> const Rational& { return seq[static_cast<std::size_t>(i)]; };
    long n1 = -1, n2 = -1;
    for (long i = 1; i + 1 < n_terms && n1 < 0; ++i)
        for (long j = i + 1; j + 1 < n_terms; ++j)
            if (at(i) != at(j)) {
                n1 = i;
                n2 = j;
                break;
            }
    if (n1 < 0)
        throw degenerate_parameter_error(
            "degenerate fit: all interior values coincide, Omega is undetermined");
    DifferenceEquationFit fit;
    fit.omega = (at(n1 + 1) + at(n1 - 1) - at(n2 + 1) - at(n2 - 1)) / (at(n1) - at(n2));
    fit.b = fit.omega * at(n1) - at(n1 + 1) - at(n1 - 1);
    fit.residual_ok = true;
    for (long n = 1; n + 1 < n_terms; ++n)
        if (!(at(n + 1) + at(n - 1) - fit.omega * at(n) + fit.b).is_zero()) {
            fit.residual_ok = false;
            break;
        }
    return fit;
}

/// Cross condition of the one-step classification, in cross-multiplied form:
/// (l_{n+1} - l_k)(v_n - v_{k+1}) = (l_n - l_{k+1})(v_{n+1} - v_k)
/// for every admissible pair (n, k).
inline CheckReport check_cross_condition(const std::vector<Rational>& lambda,
                                         const std::vector<Rational>& nu) {
    CheckReport rep("cross-condition");
    if (lambda.size() != nu.size() || lambda.size() < 3)
        throw error("cross condition needs equal-length sequences of at least 3 terms");
    const long n_terms = static_cast<long>(lambda.size());
    const auto l = [&](long i) { return lambda[static_cast<std::size_t>(i)]; };
    const auto v = [&](long i) { return nu[static_cast<std::size_t>(i)]; };
    for (long n = 0; n + 1 < n_terms; ++n)
        for (long k = 0; k + 1 < n_terms; ++k) {
            const Rational lhs = (l(n + 1) - l(k)) * (v(n) - v(k + 1));
            const Rational rhs = (l(n) - l(k + 1)) * (v(n + 1) - v(k));
            ++rep.checks;
            if (lhs != rhs) {
                rep.fail({n, k}, lhs, rhs);
                return rep;
            }
        }
    return rep;
}

namespace detail {

inline std::pair<std::vector<Rational>, std::vector<Rational>> split_even_odd(
    const std::vector<Rational>& seq) {
    std::vector<Rational> even, odd;
    for (std::size_t i = 0; i < seq.size(); ++i) ((i % 2 == 0) ? even : odd).push_back(seq[i]);
    return {std::move(even), std::move(odd)};
}

}  // namespace detail

/// The two halves of a merged table must be linked by the shifted
/// compatibility condition; in cross-multiplied form,
/// (lV_n - lV_m)(vU_{n+1} - vU_m) = (lU_{n+1} - lU_m)(vV_n - vV_m).
inline CheckReport check_uv_compatibility(const std::vector<Rational>& lambda,
                                          const std::vector<Rational>& nu) {
    CheckReport rep("uv-compatibility");
    if (lambda.size() != nu.size() || lambda.size() < 8)
        throw error("uv compatibility needs merged sequences of at least 8 terms");
    const auto [lu, lv] = detail::split_even_odd(lambda);
    const auto [vu, vv] = detail::split_even_odd(nu);
    const long nu_len = static_cast<long>(lu.size());
    const long nv_len = static_cast<long>(lv.size());
    for (long n = 0; n < nv_len && n + 1 < nu_len; ++n)
        for (long m = 0; m < nv_len && m < nu_len; ++m) {
            const Rational lhs = (lv[static_cast<std::size_t>(n)] - lv[static_cast<std::size_t>(m)]) *
                                 (vu[static_cast<std::size_t>(n + 1)] - vu[static_cast<std::size_t>(m)]);
            const Rational rhs = (lu[static_cast<std::size_t>(n + 1)] - lu[static_cast<std::size_t>(m)]) *
                                 (vv[static_cast<std::size_t>(n)] - vv[static_cast<std::size_t>(m)]);
            ++rep.checks;
            if (lhs != rhs) {
                rep.fail({n, m}, lhs, rhs);
                return rep;
            }
        }
    return rep;
}

enum class OmegaClass { q_class, jacobi, minus_one, unit_circle, inadmissible };

inline const char* omega_class_name(OmegaClass c) {
    switch (c) {
        case OmegaClass::q_class: return "QClass";
        case OmegaClass::jacobi: return "JacobiClass";
        case OmegaClass::minus_one: return "MinusOneClass";
        case OmegaClass::unit_circle: return "UnitCircleClass";
        case OmegaClass::inadmissible: return "Inadmissible";
    }
    return "?";
}

/// Outcome of the inverse classification of a merged (lambda, nu) table.
/// For QClass, q is the subsequence ratio parameter: the root of
/// x^2 - Omega x + 1 in (0,1) when it is rational (for a merged table of a
/// little q-Jacobi family this is the square of the family's q). Omega < -2
/// is reported as QClass with negative q and flagged in the detail string.
struct ClassifyResult {
    OmegaClass cls = OmegaClass::inadmissible;
    Rational omega;                 // fitted on the even (U) subsequence
    std::optional<Rational> q;      // rational subsequence q, when applicable
    bool q_irrational = false;
    std::vector<Rational> alpha;    // fitted shape of lambda^{(U)}
    std::vector<Rational> beta;     // fitted shape of nu^{(U)}
    bool compatible = false;
    std::string detail;
};

namespace detail {

inline std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    if (mpz_perfect_square_p(r.num().get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(r.den().get_mpz_t()) == 0) return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), r.num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.den().get_mpz_t());
    return Rational(mpq_class(n, d));
}

/// Solves a square exact linear system; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m,
                                                         std::vector<Rational> rhs) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m[p][col].is_zero()) ++p;
        if (p == n) return std::nullopt;
        std::swap(m[p], m[col]);
        std::swap(rhs[p], rhs[col]);
        const Rational inv = m[col][col].inverse();
        for (std::size_t j = col; j < n; ++j) m[col][j] *= inv;
        rhs[col] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            const Rational f = m[i][col];
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    return rhs;
}

/// Fits seq_n = a1 g1(n) + a2 g2(n) + a0 from the first three terms and
/// verifies the remaining ones; the g's are the class shape functions.
template <typename G1, typename G2>
std::optional<std::vector<Rational>> fit_shape(const std::vector<Rational>& seq, G1&& g1, G2&& g2) {
    std::vector<std::vector<Rational>> m;
    std::vector<Rational> rhs;
    for (long n = 0; n < 3; ++n) {
        m.push_back({Rational(1), g1(n), g2(n)});
        rhs.push_back(seq[static_cast<std::size_t>(n)]);
    }
    auto sol = solve_square(std::move(m), std::move(rhs));
    if (!sol) return std::nullopt;
    for (long n = 3; n < static_cast<long>(seq.size()); ++n) {
        const Rational want = (*sol)[0] + (*sol)[1] * g1(n) + (*sol)[2] * g2(n);
        if (want != seq[static_cast<std::size_t>(n)]) return std::nullopt;
    }
    return sol;  // {a0, a1-of-g1, a2-of-g2}
}

}  // namespace detail

/// Inverse problem: from raw merged sequences (lambda_n, nu_n), identify the
/// Omega class of the even/odd subsequences, fit the class shape parameters,
/// and decide compatibility.
inline ClassifyResult classify(const std::vector<Rational>& lambda,
                               const std::vector<Rational>& nu) {
    if (lambda.size() != nu.size() || lambda.size() < 10)
        throw error("classify needs merged sequences of at least 10 terms");
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (std::size_t j = i + 1; j < lambda.size(); ++j)
            if (lambda[i] == lambda[j])
                throw eigenvalue_collision_error("classify needs pairwise distinct eigenvalues");

    ClassifyResult out;
    if (!nu[0].is_zero() || !nu[1].is_zero()) {
        out.detail = "nu_0 and nu_1 must vanish";
        return out;
    }

    const auto [lu, lv] = detail::split_even_odd(lambda);
    const auto [vu, vv] = detail::split_even_odd(nu);

    DifferenceEquationFit flu, flv, fvu, fvv;
    try {
        flu = fit_difference_equation(lu);
        flv = fit_difference_equation(lv);
        fvu = fit_difference_equation(vu);
        fvv = fit_difference_equation(vv);
    } catch (const degenerate_parameter_error& e) {
        out.detail = std::string("degenerate subsequence fit: ") + e.what();
        return out;
    }
    if (!(flu.residual_ok && flv.residual_ok && fvu.residual_ok && fvv.residual_ok)) {
        out.detail = "a subsequence does not satisfy any three-term difference equation";
        return out;
    }
    if (!(flu.omega == flv.omega && flu.omega == fvu.omega && flu.omega == fvv.omega)) {
        out.detail = "inconsistent Omega between lambda and nu subsequences";
        return out;
    }

    out.omega = flu.omega;
    const Rational two(2), minus_two(-2);

    if (out.omega == two) {
        out.cls = OmegaClass::jacobi;
        const auto gn = [](long n) { return Rational(n); };
        const auto gn2 = [](long n) { return Rational(n) * Rational(n); };
        const auto a = detail::fit_shape(lu, gn, gn2);
        const auto b = detail::fit_shape(vu, gn, gn2);
        if (!a || !b) {
            out.cls = OmegaClass::inadmissible;
            out.detail = "Omega = 2 but the polynomial shape fit failed";
            return out;
        }
        out.alpha = {(*a)[0], (*a)[1], (*a)[2]};  // alpha_0 + alpha_1 n + alpha_2 n^2
        out.beta = {(*b)[0], (*b)[1], (*b)[2]};
    } else if (out.omega == minus_two) {
        out.cls = OmegaClass::minus_one;
        const auto g1 = [](long n) { return (n % 2) ? Rational(-1) : Rational(1); };
        const auto g2 = [&](long n) { return g1(n) * Rational(n); };
        const auto a = detail::fit_shape(lu, g1, g2);
        const auto b = detail::fit_shape(vu, g1, g2);
        if (!a || !b) {
            out.cls = OmegaClass::inadmissible;
            out.detail = "Omega = -2 but the alternating shape fit failed";
            return out;
        }
        out.alpha = {(*a)[0], (*a)[1], (*a)[2]};  // alpha_0 + alpha_1 (-1)^n + alpha_2 (-1)^n n
        out.beta = {(*b)[0], (*b)[1], (*b)[2]};
    } else if (out.omega > minus_two && out.omega < two) {
        out.cls = OmegaClass::unit_circle;
        out.detail = "|Omega| < 2: unit-circle class, not processed further";
        return out;
    } else {
        out.cls = OmegaClass::q_class;
        // q + 1/q = Omega; the two roots multiply to 1. For Omega > 2 take
        // the root in (0,1); for Omega < -2 both roots are negative.
        const Rational disc = out.omega * out.omega - Rational(4);
        const auto root = detail::rational_sqrt(disc);
        if (!root) {
            out.q_irrational = true;
            out.detail = "QClass with irrational q (Omega has no rational root)";
        } else {
            const Rational q = (out.omega - *root) / two;
            out.q = (out.omega > two) ? q : (out.omega + *root) / two;
            if (out.omega < minus_two)
                out.detail = "Omega < -2: QClass under q -> -q, flagged, not processed further";
            const Rational qq = *out.q;
            const auto g1 = [&](long n) { return qq.pow(n); };
            const auto g2 = [&](long n) { return qq.pow(-n); };
            const auto a = detail::fit_shape(lu, g1, g2);
            const auto b = detail::fit_shape(vu, g1, g2);
            if (!a || !b) {
                out.cls = OmegaClass::inadmissible;
                out.detail = "q-class shape fit failed";
                return out;
            }
            out.alpha = {(*a)[0], (*a)[1], (*a)[2]};  // alpha_0 + alpha_1 q^n + alpha_2 q^{-n}
            out.beta = {(*b)[0], (*b)[1], (*b)[2]};
        }
    }

    const CheckReport cross_u = check_cross_condition(lu, vu);
    const CheckReport cross_v = check_cross_condition(lv, vv);
    const CheckReport uv = check_uv_compatibility(lambda, nu);
    out.compatible = cross_u.passed && cross_v.passed && uv.passed;
    if (!out.compatible && out.detail.empty()) {
        if (!uv.passed)
            out.detail = "U/V compatibility fails at (n, m) = (" +
                         std::to_string(uv.failure_indices[0]) + ", " +
                         std::to_string(uv.failure_indices[1]) + ")";
        else
            out.detail = "cross condition fails on a subsequence";
    }
    return out;
}

}  // namespace bispec
