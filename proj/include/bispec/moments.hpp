#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bispec/eigen.hpp"
#include "bispec/errors.hpp"
#include "bispec/family.hpp"
#include "bispec/laurent.hpp"
#include "bispec/rational.hpp"

namespace bispec {

/// Moments c_n = <sigma, x^n> of the functional, normalized to c_0 = 1.
/// All odd moments of a symmetric family vanish.
class MomentFunctional {
public:
    MomentFunctional() : c_{Rational(1)} {}
    explicit MomentFunctional(std::vector<Rational> c) : c_(std::move(c)) {
        if (c_.empty() || !c_[0].is_one()) throw error("moment functional needs c_0 = 1");
    }

    long max_index() const { return static_cast<long>(c_.size()) - 1; }

    const Rational& c(long n) const {
        if (n < 0 || n > max_index())
            throw std::out_of_range("moment c_" + std::to_string(n) + " not available");
        return c_[static_cast<std::size_t>(n)];
    }

    const std::vector<Rational>& all() const { return c_; }

private:
    std::vector<Rational> c_;
};

/// Solves <sigma, P_n> = 0, n >= 1, with c_0 = 1: the system is triangular
/// with unit diagonal, c_n = -sum_{k<n} A_{n,k} c_k.
inline MomentFunctional moments_from_expansion(const ExpansionTable& table, long n_max) {
    std::vector<Rational> c(static_cast<std::size_t>(n_max) + 1);
    c[0] = Rational(1);
    for (long n = 1; n <= n_max; ++n) {
        Rational acc(0);
        for (long k = n - 2; k >= 0; k -= 2) acc += table.coeff(n, k) * c[static_cast<std::size_t>(k)];
        c[static_cast<std::size_t>(n)] = -acc;
    }
    return MomentFunctional(std::move(c));
}

inline MomentFunctional moments_of(const FamilySpec& s, long n_max) {
    return moments_from_expansion(ExpansionTable(s), n_max);
}

/// Brute-force oracle for c_{2m}: the sum over all nonnegative lattice
/// paths of 2m steps (+1/-1) from 0 to 0 of the product of u_h over the
/// down-steps taken from height h. Independent of the expansion route.
inline Rational moments_dyck_oracle(const RecurrenceCoefficients& rc, long m) {
    if (m == 0) return Rational(1);
    Rational total(0);
    // DFS over all paths, carrying the running product.
    auto walk = [&](auto&& self, long steps_left, long height, const Rational& prod) -> void {
        if (height > steps_left) return;  // cannot come back to 0
        if (steps_left == 0) {
            total += prod;
            return;
        }
        self(self, steps_left - 1, height + 1, prod);
        if (height > 0) self(self, steps_left - 1, height - 1, prod * rc.u(height));
    };
    walk(walk, 2 * m, 0, Rational(1));
    return total;
}

/// <sigma, p> for a proper polynomial within the available moment range.
inline Rational evaluate(const MomentFunctional& sigma, const Laurent& p) {
    Rational acc(0);
    for (const auto& [k, c] : p.terms()) {
        if (k < 0) throw std::out_of_range("functional evaluated on a negative power");
        acc += c * sigma.c(k);
    }
    return acc;
}

/// One verification outcome with an optional first counterexample.
struct CheckReport {
    CheckReport() = default;
    explicit CheckReport(std::string n) : name(std::move(n)) {}

    std::string name;
    bool passed = true;
    long checks = 0;
    std::vector<long> failure_indices;
    std::optional<Rational> failure_lhs;
    std::optional<Rational> failure_rhs;

    void fail(std::vector<long> idx, Rational lhs, Rational rhs) {
        if (!passed) return;
        passed = false;
        failure_indices = std::move(idx);
        failure_lhs = std::move(lhs);
        failure_rhs = std::move(rhs);
    }
};

/// (lambda_n - lambda_m) c_{n+m} + (nu_n - nu_m) c_{n+m-2} = 0 for all
/// 0 <= m < n <= n_max with n + m >= 2.
inline CheckReport check_ns_condition(const FamilySpec& s, const MomentFunctional& sigma,
                                      long n_max) {
    CheckReport rep("ns-condition");
    for (long n = 1; n <= n_max; ++n) {
        const auto [lam_n, nu_n] = lambda_nu(s, n);
        for (long m = 0; m < n; ++m) {
            if (n + m < 2) continue;
            const auto [lam_m, nu_m] = lambda_nu(s, m);
            const Rational v = (lam_n - lam_m) * sigma.c(n + m) + (nu_n - nu_m) * sigma.c(n + m - 2);
            ++rep.checks;
            if (!v.is_zero()) {
                rep.fail({n, m}, v, Rational(0));
                return rep;
            }
        }
    }
    return rep;
}

/// <sigma, g * (L f)> = <sigma, f * (L g)> with L acting abstractly.
inline CheckReport check_operator_symmetry(const FamilySpec& s, const MomentFunctional& sigma,
                                           const Laurent& f, const Laurent& g) {
    CheckReport rep("operator-symmetry");
    const Rational lhs = evaluate(sigma, g * apply_abstract(s, f));
    const Rational rhs = evaluate(sigma, f * apply_abstract(s, g));
    ++rep.checks;
    if (lhs != rhs) rep.fail({}, lhs, rhs);
    return rep;
}

namespace detail {

/// Determinant by fraction-free (Bareiss) elimination: rows are scaled to
/// integers first, so all intermediate divisions are exact over Z.
inline Rational determinant_bareiss(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    if (n == 0) return Rational(1);
    std::vector<std::vector<mpz_class>> z(n, std::vector<mpz_class>(n));
    mpz_class scale_den = 1;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m[i][j].den().get_mpz_t());
        for (std::size_t j = 0; j < n; ++j) z[i][j] = m[i][j].num() * (l / m[i][j].den());
        scale_den *= l;
    }
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (z[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && z[p][k] == 0) ++p;
            if (p == n) return Rational(0);
            std::swap(z[k], z[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = z[k][k] * z[i][j] - z[i][k] * z[k][j];
                mpz_divexact(z[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = z[k][k];
    }
    mpq_class det(z[n - 1][n - 1] * sign, scale_den);
    det.canonicalize();
    return Rational(std::move(det));
}

}  // namespace detail

/// Hankel determinant Delta_n = det |c_{i+k}|, i,k = 0..n; needs moments to 2n.
inline Rational hankel(const MomentFunctional& sigma, long n) {
    if (n < 0) throw std::out_of_range("hankel index must be >= 0");
    if (2 * n > sigma.max_index())
        throw std::out_of_range("hankel determinant needs moments up to 2n");
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(n) + 1,
                                         std::vector<Rational>(static_cast<std::size_t>(n) + 1));
    for (long i = 0; i <= n; ++i)
        for (long k = 0; k <= n; ++k)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = sigma.c(i + k);
    return detail::determinant_bareiss(std::move(m));
}

/// <sigma, P_n P_m> = h_n delta_{nm} with h_n = u_1 ... u_n, checked exactly.
struct OrthogonalityReport {
    long max_index = 0;
    bool passed = true;
    std::vector<Rational> norms;  // h_0 .. h_{max_index}
    std::optional<std::tuple<long, long, Rational>> first_failure;
};

inline OrthogonalityReport orthogonality_report(const FamilySpec& s, long n_max) {
    OrthogonalityReport rep;
    rep.max_index = n_max;
    const ExpansionTable table(s);
    const MomentFunctional sigma = moments_from_expansion(table, 2 * n_max);
    std::vector<Laurent> p;
    p.reserve(static_cast<std::size_t>(n_max) + 1);
    for (long n = 0; n <= n_max; ++n) p.push_back(table.polynomial(n));
    rep.norms.assign(1, Rational(1));  // h_0 = 1
    for (long n = 1; n <= n_max; ++n) rep.norms.push_back(rep.norms.back() * u_closed(s, n));
    for (long n = 0; n <= n_max && rep.passed; ++n)
        for (long m = 0; m <= n; ++m) {
            const Rational v = evaluate(sigma, p[static_cast<std::size_t>(n)] *
                                                   p[static_cast<std::size_t>(m)]);
            const Rational want = (n == m) ? rep.norms[static_cast<std::size_t>(n)] : Rational(0);
            if (v != want) {
                rep.passed = false;
                rep.first_failure = {n, m, v};
                break;
            }
        }
    return rep;
}

/// The split moments c^{(U)}_n = c_{2n} and c^{(V)}_n = c_{2n+2} must obey
/// the one-step conditions of their own (U/V) coefficient sequences:
/// (lambda_n - lambda_m) c_{n+m} + (nu_n - nu_m) c_{n+m-1} = 0.
inline CheckReport check_uv_moment_conditions(const FamilySpec& s, const MomentFunctional& sigma,
                                              long nm_max) {
    CheckReport rep("uv-moment-conditions");
    for (int part = 0; part < 2; ++part) {
        for (long n = 0; n <= nm_max; ++n)
            for (long m = 0; m < n; ++m) {
                if (n + m < 1) continue;
                const long merged_n = 2 * n + part;
                const long merged_m = 2 * m + part;
                const auto [lam_n, nu_n] = lambda_nu(s, merged_n);
                const auto [lam_m, nu_m] = lambda_nu(s, merged_m);
                const long s_hi = (part == 0) ? 2 * (n + m) : 2 * (n + m) + 2;
                if (s_hi > sigma.max_index()) continue;
                const Rational v =
                    (lam_n - lam_m) * sigma.c(s_hi) + (nu_n - nu_m) * sigma.c(s_hi - 2);
                ++rep.checks;
                if (!v.is_zero()) {
                    rep.fail({part, n, m}, v, Rational(0));
                    return rep;
                }
            }
    }
    return rep;
}

}  // namespace bispec
