// Acceptance suite: one pass/fail line per criterion, all checks in exact
// rational arithmetic with zero tolerance. Exit code = number of failures.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "bispec/classify.hpp"
#include "bispec/eigen.hpp"
#include "bispec/family.hpp"
#include "bispec/moments.hpp"
#include "bispec/operator_algebra.hpp"
#include "bispec/realization.hpp"

#include "support.hpp"

using namespace bispec;
using namespace bispec::testing;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string what;
    try {
        ok = body();
    } catch (const std::exception& e) {
        what = e.what();
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << label << "  ("
              << ms << " ms)";
    if (!what.empty()) std::cout << "  [" << what << "]";
    std::cout << "\n";
    if (!ok) ++failures;
}

std::vector<FamilySpec> specs_with_random(int per_kind) {
    Rng rng(0xacce97);
    std::vector<FamilySpec> specs = default_specs();
    for (auto kind :
         {FamilyKind::generalized_little_q_jacobi, FamilyKind::generalized_q_laguerre,
          FamilyKind::generalized_gegenbauer, FamilyKind::generalized_laguerre})
        for (int i = 0; i < per_kind; ++i) specs.push_back(random_family(kind, rng));
    return specs;
}

Laurent poly_of(std::initializer_list<std::pair<long, Rational>> terms) {
    Laurent p;
    for (const auto& [k, c] : terms) p.add_term(k, c);
    return p;
}

}  // namespace

int main() {
    const std::vector<FamilySpec> all_specs = specs_with_random(3);

    criterion(1, "eigen equation L P_n = lambda_n P_n, n <= 40, defaults + 3 random sets", [&] {
        for (const FamilySpec& s : all_specs) {
            const ExpansionTable table(s);
            for (long n = 0; n <= 40; ++n) {
                const Laurent p = table.polynomial(n);
                if (!(apply_abstract(s, p) == lambda_of(s, n) * p)) return false;
            }
        }
        return true;
    });

    criterion(2, "descent = recurrence from closed-form u_n, and u_n formulas agree, n <= 40",
              [&] {
                  for (const FamilySpec& s : all_specs) {
                      const ExpansionTable table(s);
                      const RecurrenceCoefficients rc = RecurrenceCoefficients::from_family(s, 40);
                      for (long n = 0; n <= 40; ++n)
                          if (!(table.polynomial(n) == eigenpoly_recurrence(rc, n))) return false;
                      for (long n = 1; n <= 40; ++n)
                          if (u_closed(s, n) != u_via_descent(s, n)) return false;
                  }
                  return true;
              });

    criterion(3, "Hermite anchor: u_n = n, P_2, P_3, and path-sum moments 1, 3, 15", [&] {
        const FamilySpec h = hermite();
        for (long n = 1; n <= 10; ++n)
            if (u_closed(h, n) != Rational(n)) return false;
        if (!(eigenpoly_descent(h, 2) == poly_of({{2, Rational(1)}, {0, Rational(-1)}})))
            return false;
        if (!(eigenpoly_descent(h, 3) == poly_of({{3, Rational(1)}, {1, Rational(-3)}})))
            return false;
        const MomentFunctional sigma = moments_of(h, 6);
        const RecurrenceCoefficients rc = RecurrenceCoefficients::from_family(h, 3);
        for (long m = 1; m <= 3; ++m)
            if (sigma.c(2 * m) != moments_dyck_oracle(rc, m)) return false;
        return sigma.c(2) == Rational(1) && sigma.c(4) == Rational(3) &&
               sigma.c(6) == Rational(15);
    });

    criterion(4, "Gegenbauer reduction u_n (n <= 30) and big q-Jacobi reduction u_n (n <= 20)",
              [&] {
                  for (const Rational& a : {Rational(3), Rational(5, 2), Rational(7)}) {
                      const FamilySpec s = make_family(FamilyKind::generalized_gegenbauer,
                                                       Rational(0), a, Rational(-1));
                      for (long n = 1; n <= 30; ++n)
                          if (u_closed(s, n) != classical_u_gegenbauer(a, n)) return false;
                  }
                  for (const auto& [q, a] : std::vector<std::pair<Rational, Rational>>{
                           {Rational(1, 2), Rational(2)}, {Rational(1, 3), Rational(3)}}) {
                      const FamilySpec s = make_family(FamilyKind::generalized_little_q_jacobi, q,
                                                       a, -q.inverse(), -q.inverse());
                      for (long n = 1; n <= 20; ++n)
                          if (u_closed(s, n) != classical_u_big_qjacobi(q, a, n)) return false;
                  }
                  return true;
              });

    criterion(5, "orthogonality <P_n, P_m> = h_n delta_nm (n <= 20), NS identity, 200 symmetry pairs",
              [&] {
                  Rng rng(0x5e1f);
                  for (const FamilySpec& s : default_specs()) {
                      const OrthogonalityReport rep = orthogonality_report(s, 20);
                      if (!rep.passed) return false;
                      const MomentFunctional sigma = moments_of(s, 40);
                      if (!check_ns_condition(s, sigma, 20).passed) return false;
                      const MomentFunctional sig12 = moments_of(s, 28);
                      for (int i = 0; i < 200; ++i) {
                          const Laurent f = rng.proper_poly(12), g = rng.proper_poly(12);
                          if (!check_operator_symmetry(s, sig12, f, g).passed) return false;
                      }
                  }
                  return true;
              });

    criterion(6, "realized L_0 pi_0 + L_1 pi_1 reproduces the monomial action, n <= 40", [&] {
        for (const FamilySpec& s : {hermite(), gegenbauer_default(), qjacobi_default()}) {
            const RealizedOperator op = build_realization(s);
            for (long n = 0; n <= 40; ++n) {
                Laurent want = Laurent::monomial(n, lambda_of(s, n));
                const Rational nu = nu_of(s, n);
                if (!nu.is_zero()) want.add_term(n - 2, nu);
                if (!(apply_realized_monomial(op, n) == want)) return false;
            }
        }
        return true;
    });

    criterion(7, "algebra relations + q-Onsager hold on x^n (n <= 30); fits recover all constants",
              [&] {
                  const std::vector<std::array<Rational, 3>> triples = {
                      {Rational(1, 2), Rational(2), Rational(1)},
                      {Rational(1, 3), Rational(3), Rational(2)},
                      {Rational(2, 5), Rational(1, 2), Rational(-3)}};
                  for (const auto& [q, a, b] : triples) {
                      const FamilySpec s =
                          make_family(FamilyKind::generalized_little_q_jacobi, q, a, b);
                      if (!verify_relation(s, 30).passed()) return false;
                      if (!verify_q_onsager(s, 25).passed()) return false;
                      const auto want = relation_coefficients_qjacobi(q, a, b);
                      if (want.eta != a * (q * q - (q * q).inverse()) *
                                          (q * q - (q * q).inverse()))
                          return false;
                      const FitResult fit = fit_relation(s, RelationTemplate::qjacobi, 14);
                      if (!fit.consistent) return false;
                      if (fit.coefficients.at("xi0") != want.xi0 ||
                          fit.coefficients.at("xi1") != want.xi1 ||
                          fit.coefficients.at("eta") != want.eta ||
                          fit.coefficients.at("zeta") != want.zeta)
                          return false;
                  }
                  const std::vector<std::pair<Rational, Rational>> geg_pairs = {
                      {Rational(3), Rational(1)},
                      {Rational(2), Rational(-1, 2)},
                      {Rational(5, 2), Rational(4)}};
                  for (const auto& [a, b] : geg_pairs) {
                      const FamilySpec s =
                          make_family(FamilyKind::generalized_gegenbauer, Rational(0), a, b);
                      if (!verify_relation(s, 30).passed()) return false;
                      const FitResult fit = fit_relation(s, RelationTemplate::gegenbauer, 12);
                      if (!fit.consistent) return false;
                      if (fit.coefficients.at("mu") != gegenbauer_mu(a, b)) return false;
                      if (fit.coefficients.at("r") != Rational(4) * (b + Rational(1)))
                          return false;
                  }
                  for (const Rational& b : {Rational(-1), Rational(2)}) {
                      const FamilySpec s =
                          make_family(FamilyKind::generalized_laguerre, Rational(0), Rational(0), b);
                      if (!verify_relation(s, 30).passed()) return false;
                      const FitResult fit = fit_relation(s, RelationTemplate::sl2, 12);
                      if (!fit.consistent) return false;
                      if (fit.coefficients.at("l") != Rational(8) ||
                          fit.coefficients.at("y") != Rational(4))
                          return false;
                  }
                  return true;
              });

    criterion(8, "degeneration switches: xi1 = 0 iff b = -1/q; reflection term 4(b+1) = 0 iff b = -1",
              [&] {
                  const Rational q(1, 2);
                  if (!relation_coefficients_qjacobi(q, Rational(2), -q.inverse()).xi1.is_zero())
                      return false;
                  if (relation_coefficients_qjacobi(q, Rational(2), Rational(1)).xi1.is_zero())
                      return false;
                  const FitResult on = fit_relation(
                      make_family(FamilyKind::generalized_little_q_jacobi, q, Rational(2),
                                  -q.inverse()),
                      RelationTemplate::qjacobi, 12);
                  if (!on.consistent || !on.coefficients.at("xi1").is_zero()) return false;
                  const FitResult geg_off = fit_relation(
                      make_family(FamilyKind::generalized_gegenbauer, Rational(0), Rational(3),
                                  Rational(-1)),
                      RelationTemplate::gegenbauer, 12);
                  if (!geg_off.consistent || !geg_off.coefficients.at("r").is_zero()) return false;
                  const FitResult geg_on =
                      fit_relation(gegenbauer_default(), RelationTemplate::gegenbauer, 12);
                  return geg_on.consistent && geg_on.coefficients.at("r") == Rational(8);
              });

    criterion(9, "classifier round-trip on length-20 tables; Omega = -2 input fails compatibility",
              [&] {
                  for (const FamilySpec& s : default_specs()) {
                      std::vector<Rational> lambda, nu;
                      for (long n = 0; n < 20; ++n) {
                          const auto [l, v] = lambda_nu(s, n);
                          lambda.push_back(l);
                          nu.push_back(v);
                      }
                      const ClassifyResult r = classify(lambda, nu);
                      const OmegaClass want =
                          s.has_q() ? OmegaClass::q_class : OmegaClass::jacobi;
                      if (r.cls != want || !r.compatible) return false;
                      if (s.has_q() && (!r.q || *r.q != s.q * s.q)) return false;
                      if (!check_uv_compatibility(lambda, nu).passed) return false;
                  }
                  // Interleaved Omega = -2 input: classified, but incompatible.
                  std::vector<Rational> lambda, nu;
                  for (long n = 0; n < 20; ++n) {
                      const long m = n / 2;
                      const Rational sgn = (m % 2 == 0) ? Rational(1) : Rational(-1);
                      if (n % 2 == 0) {
                          lambda.push_back(sgn * Rational(m));
                          nu.push_back(sgn * Rational(m + 1) - Rational(1));
                      } else {
                          lambda.push_back(sgn * Rational(m + 1));
                          nu.push_back(sgn * Rational(m + 2) - Rational(2));
                      }
                  }
                  const ClassifyResult r = classify(lambda, nu);
                  return r.cls == OmegaClass::minus_one && !r.compatible &&
                         !check_uv_compatibility(lambda, nu).passed;
              });

    criterion(10, "descent sign regression: flipped expansion sign contradicts the recurrence",
              [&] {
                  const FamilySpec h = hermite();
                  if (u_via_descent(h, 2) != u_closed(h, 2)) return false;
                  const Rational a20_flipped =
                      -nu_of(h, 2) / (lambda_of(h, 2) - lambda_of(h, 0));
                  Laurent p2_flipped = Laurent::monomial(2);
                  p2_flipped.add_term(0, a20_flipped);
                  const Laurent p2_recurrence = poly_of({{2, Rational(1)}, {0, -u_closed(h, 1)}});
                  if (p2_flipped == p2_recurrence) return false;  // must contradict
                  return eigenpoly_descent(h, 2) == p2_recurrence;
              });

    if (failures == 0)
        std::cout << "all acceptance criteria passed\n";
    else
        std::cout << failures << " acceptance criteria FAILED\n";
    return failures;
}
