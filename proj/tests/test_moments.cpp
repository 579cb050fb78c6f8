#include <catch2/catch_amalgamated.hpp>

#include "bispec/moments.hpp"

#include "support.hpp"

using namespace bispec;
using namespace bispec::testing;

TEST_CASE("Hermite moments from the expansion") {
    const MomentFunctional sigma = moments_of(hermite(), 8);
    CHECK(sigma.c(0) == Rational(1));
    CHECK(sigma.c(2) == Rational(1));
    CHECK(sigma.c(4) == Rational(3));
    CHECK(sigma.c(6) == Rational(15));
    for (long n = 1; n <= 7; n += 2) CHECK(sigma.c(n).is_zero());
}

TEST_CASE("odd moments vanish for every family") {
    for (const FamilySpec& s : default_specs()) {
        const MomentFunctional sigma = moments_of(s, 15);
        for (long n = 1; n <= 15; n += 2) CHECK(sigma.c(n).is_zero());
    }
}

TEST_CASE("first even moment is u_1") {
    const MomentFunctional sigma = moments_of(gegenbauer_default(), 2);
    CHECK(sigma.c(2) == Rational(3, 5));
}

TEST_CASE("path-sum oracle on small cases") {
    std::vector<Rational> u;
    for (long n = 1; n <= 12; ++n) u.push_back(Rational(n));
    const RecurrenceCoefficients rc{u};
    CHECK(moments_dyck_oracle(rc, 0) == Rational(1));
    CHECK(moments_dyck_oracle(rc, 1) == Rational(1));  // u_1
    CHECK(moments_dyck_oracle(rc, 2) == Rational(3));  // u_1(u_1 + u_2)
    CHECK(moments_dyck_oracle(rc, 3) == Rational(15));

    const RecurrenceCoefficients rc_geg = RecurrenceCoefficients::from_family(gegenbauer_default(), 4);
    CHECK(moments_dyck_oracle(rc_geg, 1) == Rational(3, 5));
}

TEST_CASE("expansion moments equal the path-sum oracle through c_24") {
    for (const FamilySpec& s : default_specs()) {
        const MomentFunctional sigma = moments_of(s, 24);
        const RecurrenceCoefficients rc = RecurrenceCoefficients::from_family(s, 12);
        for (long m = 0; m <= 12; ++m) CHECK(sigma.c(2 * m) == moments_dyck_oracle(rc, m));
    }
}

TEST_CASE("functional evaluation") {
    const MomentFunctional sigma = moments_of(hermite(), 8);
    Laurent p = Laurent::monomial(2);
    p.add_term(0, Rational(-1));  // x^2 - 1
    CHECK(evaluate(sigma, p) == Rational(0));
    CHECK(evaluate(sigma, Laurent::one()) == Rational(1));
    CHECK(evaluate(sigma, Laurent::monomial(4)) == Rational(3));
    CHECK_THROWS_AS(evaluate(sigma, Laurent::monomial(9)), std::out_of_range);
    CHECK_THROWS_AS(evaluate(sigma, Laurent::monomial(-1)), std::out_of_range);
}

TEST_CASE("orthogonality-style condition on the lambda/nu data") {
    const FamilySpec h = hermite();
    const MomentFunctional sigma = moments_of(h, 40);
    // (n, m) = (2, 0): (-2)(1) + (2)(1) = 0
    CHECK((lambda_of(h, 2) - lambda_of(h, 0)) * sigma.c(2) +
              (nu_of(h, 2) - nu_of(h, 0)) * sigma.c(0) ==
          Rational(0));
    // (n, m) = (3, 1): (-2)(3) + (6)(1) = 0
    CHECK((lambda_of(h, 3) - lambda_of(h, 1)) * sigma.c(4) +
              (nu_of(h, 3) - nu_of(h, 1)) * sigma.c(2) ==
          Rational(0));
    const CheckReport rep = check_ns_condition(h, sigma, 20);
    CHECK(rep.passed);
    CHECK(rep.checks > 0);
}

TEST_CASE("NS condition holds exactly for all four families") {
    for (const FamilySpec& s : default_specs()) {
        const MomentFunctional sigma = moments_of(s, 40);
        CHECK(check_ns_condition(s, sigma, 20).passed);
    }
}

TEST_CASE("NS condition flags a broken moment sequence") {
    const FamilySpec h = hermite();
    std::vector<Rational> c = moments_of(h, 10).all();
    c[4] = Rational(7);  // corrupt c_4
    const CheckReport rep = check_ns_condition(h, MomentFunctional(c), 5);
    CHECK_FALSE(rep.passed);
    REQUIRE(rep.failure_indices.size() == 2);
}

TEST_CASE("operator symmetry on fixed and random polynomials") {
    const FamilySpec h = hermite();
    const MomentFunctional sigma = moments_of(h, 40);
    // f = x^2, g = 1: both sides evaluate to lambda_0 c_2 = -1/2.
    const CheckReport basic =
        check_operator_symmetry(h, sigma, Laurent::monomial(2), Laurent::one());
    CHECK(basic.passed);
    CHECK(evaluate(sigma, apply_abstract(h, Laurent::monomial(2))) == Rational(-1, 2));

    Rng rng;
    for (const FamilySpec& s : default_specs()) {
        const MomentFunctional sig = moments_of(s, 28);
        for (int i = 0; i < 200; ++i) {
            const Laurent f = rng.proper_poly(12), g = rng.proper_poly(12);
            CHECK(check_operator_symmetry(s, sig, f, g).passed);
        }
    }
}

TEST_CASE("Hankel determinants") {
    const MomentFunctional sigma = moments_of(hermite(), 12);
    CHECK(hankel(sigma, 0) == Rational(1));
    CHECK(hankel(sigma, 1) == Rational(1));  // det [[1,0],[0,1]]
    // Delta_n = h_1 h_2 ... h_n with h_k = u_1 ... u_k.
    for (const FamilySpec& s : default_specs()) {
        const MomentFunctional sig = moments_of(s, 12);
        Rational h(1), delta_expected(1);
        for (long n = 1; n <= 6; ++n) {
            h *= u_closed(s, n);
            delta_expected *= h;
            CHECK(hankel(sig, n) == delta_expected);
        }
    }
    CHECK_THROWS_AS(hankel(sigma, 7), std::out_of_range);
}

TEST_CASE("orthogonality report") {
    const OrthogonalityReport rep = orthogonality_report(hermite(), 6);
    CHECK(rep.passed);
    CHECK(rep.norms[2] == Rational(2));
    CHECK(rep.norms[3] == Rational(6));
    CHECK(rep.norms[0] == Rational(1));

    CHECK(orthogonality_report(qjacobi_default(), 8).passed);
}

TEST_CASE("orthogonality holds to n = 20 for all families") {
    for (const FamilySpec& s : default_specs()) CHECK(orthogonality_report(s, 20).passed);
}

TEST_CASE("split moment sequences obey their own one-step conditions") {
    for (const FamilySpec& s : default_specs()) {
        const MomentFunctional sigma = moments_of(s, 42);
        const CheckReport rep = check_uv_moment_conditions(s, sigma, 20);
        CHECK(rep.passed);
        CHECK(rep.checks > 0);
    }
}

TEST_CASE("moment functional construction validates c_0") {
    CHECK_THROWS_AS(MomentFunctional(std::vector<Rational>{Rational(2)}), error);
}
