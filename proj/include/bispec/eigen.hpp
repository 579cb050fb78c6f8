#pragma once

#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "bispec/errors.hpp"
#include "bispec/family.hpp"
#include "bispec/laurent.hpp"
#include "bispec/rational.hpp"

namespace bispec {

/// Recurrence coefficients u_1, u_2, ... of the symmetric three-term
/// recurrence P_{n+1} + u_n P_{n-1} = x P_n (the diagonal terms vanish).
class RecurrenceCoefficients {
public:
    RecurrenceCoefficients() = default;
    explicit RecurrenceCoefficients(std::vector<Rational> u_from_1) : u_(std::move(u_from_1)) {}

    static RecurrenceCoefficients from_family(const FamilySpec& s, long n_max) {
        std::vector<Rational> u;
        u.reserve(static_cast<std::size_t>(n_max));
        for (long n = 1; n <= n_max; ++n) u.push_back(u_closed(s, n));
        return RecurrenceCoefficients(std::move(u));
    }

    const Rational& u(long n) const {
        if (n < 1 || static_cast<std::size_t>(n) > u_.size())
            throw error("recurrence coefficient u_" + std::to_string(n) + " not available");
        return u_[static_cast<std::size_t>(n - 1)];
    }

    long max_index() const { return static_cast<long>(u_.size()); }

    /// Nonzero u_n is what keeps the moment functional nondegenerate.
    bool all_nonzero() const {
        for (const auto& v : u_)
            if (v.is_zero()) return false;
        return true;
    }

private:
    std::vector<Rational> u_;
};

/// Monomial expansion coefficients A_{n,k} of the monic eigenpolynomials,
/// P_n = sum_k A_{n,k} x^k, built by the spectral descent
///
///   A_{n,n} = 1,   A_{n,k} (lambda_n - lambda_k) = nu_{k+2} A_{n,k+2},
///
/// running top-down k = n-2, n-4, ... Entries with mismatched parity are
/// identically zero and are not stored. Rows are built lazily and cached;
/// reads are shared, fills exclusive.
class ExpansionTable {
public:
    explicit ExpansionTable(FamilySpec spec) : spec_(std::move(spec)) {}

    const FamilySpec& spec() const { return spec_; }

    /// A_{n,k}; zero for parity mismatch or k outside [0, n].
    Rational coeff(long n, long k) const {
        if (k < 0 || k > n || ((n - k) % 2) != 0) return Rational(0);
        ensure(n);
        std::shared_lock lock(mu_);
        return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>((n - k) / 2)];
    }

    Laurent polynomial(long n) const {
        if (n < 0) throw error("polynomial degree must be >= 0");
        ensure(n);
        std::shared_lock lock(mu_);
        Laurent p;
        const auto& row = rows_[static_cast<std::size_t>(n)];
        for (std::size_t j = 0; j < row.size(); ++j)
            p.add_term(n - 2 * static_cast<long>(j), row[j]);
        return p;
    }

private:
    void ensure(long n) const {
        {
            std::shared_lock lock(mu_);
            if (static_cast<std::size_t>(n) < rows_.size()) return;
        }
        std::unique_lock lock(mu_);
        while (static_cast<std::size_t>(n) >= rows_.size()) {
            const long d = static_cast<long>(rows_.size());
            while (static_cast<std::size_t>(d + 1) > lam_.size()) {
                const auto [lam, nu] = lambda_nu(spec_, static_cast<long>(lam_.size()));
                lam_.push_back(lam);
                nu_.push_back(nu);
            }
            std::vector<Rational> row(static_cast<std::size_t>(d / 2) + 1);
            row[0] = Rational(1);  // monic
            for (long j = 1; 2 * j <= d; ++j) {
                const long k = d - 2 * j;
                const Rational dl = lam_[static_cast<std::size_t>(d)] - lam_[static_cast<std::size_t>(k)];
                if (dl.is_zero())
                    throw eigenvalue_collision_error("lambda_" + std::to_string(d) + " = lambda_" +
                                                     std::to_string(k) +
                                                     ": nondegeneracy violated");
                row[static_cast<std::size_t>(j)] =
                    nu_[static_cast<std::size_t>(k + 2)] * row[static_cast<std::size_t>(j - 1)] / dl;
            }
            rows_.push_back(std::move(row));
        }
    }

    FamilySpec spec_;
    mutable std::shared_mutex mu_;
    mutable std::vector<std::vector<Rational>> rows_;
    mutable std::vector<Rational> lam_, nu_;
};

/// Monic eigenpolynomial P_n by spectral descent: L P_n = lambda_n P_n.
inline Laurent eigenpoly_descent(const ExpansionTable& table, long n) {
    return table.polynomial(n);
}

inline Laurent eigenpoly_descent(const FamilySpec& s, long n) {
    return ExpansionTable(s).polynomial(n);
}

/// Monic P_n from the three-term recurrence P_{k+1} = x P_k - u_k P_{k-1}.
inline Laurent eigenpoly_recurrence(const RecurrenceCoefficients& rc, long n) {
    if (n < 0) throw error("polynomial degree must be >= 0");
    Laurent prev = Laurent::one();
    if (n == 0) return prev;
    Laurent cur = Laurent::x();
    for (long k = 1; k < n; ++k) {
        Laurent next = cur.shift_exponents(1) - rc.u(k) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

inline Laurent eigenpoly_recurrence(const FamilySpec& s, long n) {
    return eigenpoly_recurrence(RecurrenceCoefficients::from_family(s, n > 1 ? n - 1 : 0), n);
}

/// u_n = nu_n/(lambda_n - lambda_{n-2}) - nu_{n+1}/(lambda_{n+1} - lambda_{n-1});
/// terms with vanishing nu are dropped before dividing, so n = 1 reduces to
/// -nu_2/(lambda_2 - lambda_0).
inline Rational u_via_descent(const FamilySpec& s, long n) {
    if (n < 1) throw error("u_via_descent needs n >= 1");
    Rational out(0);
    const auto [lam_n, nu_n] = lambda_nu(s, n);
    if (!nu_n.is_zero()) {
        const Rational dl = lam_n - lambda_of(s, n - 2);
        if (dl.is_zero()) throw eigenvalue_collision_error("lambda_n = lambda_{n-2}");
        out += nu_n / dl;
    }
    const auto [lam_n1, nu_n1] = lambda_nu(s, n + 1);
    if (!nu_n1.is_zero()) {
        const Rational dl = lam_n1 - lambda_of(s, n - 1);
        if (dl.is_zero()) throw eigenvalue_collision_error("lambda_{n+1} = lambda_{n-1}");
        out -= nu_n1 / dl;
    }
    return out;
}

/// Splits P_{2n}(x) = U_n(x^2) and P_{2n+1}(x) = x V_n(x^2) into (U_n, V_n).
inline std::pair<Laurent, Laurent> split_uv(const Laurent& p_even, const Laurent& p_odd) {
    if (p_even.parity() != Parity::even)
        throw parity_error("split_uv: first argument must be even");
    if (p_odd.parity() != Parity::odd && !p_odd.is_zero())
        throw parity_error("split_uv: second argument must be odd");
    return {p_even.halve_exponents(), p_odd.shift_exponents(-1).halve_exponents()};
}

/// Kernel (Christoffel) transform: V_n = (U_{n+1} - A_n U_n)/x with
/// A_n = U_{n+1}(0)/U_n(0). Requires U_n(0) != 0; the division is exact.
inline Laurent kernel_transform(const Laurent& u_n, const Laurent& u_n1) {
    const Rational u0 = u_n.coeff(0);
    if (u0.is_zero())
        throw kernel_undefined_error("kernel transform undefined: U_n(0) = 0");
    const Rational a_n = u_n1.coeff(0) / u0;
    const Laurent num = u_n1 - a_n * u_n;
    if (!num.coeff(0).is_zero()) throw error("kernel transform: division by x left a remainder");
    return num.shift_exponents(-1);
}

}  // namespace bispec
