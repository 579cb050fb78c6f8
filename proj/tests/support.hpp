#pragma once

#include <random>
#include <vector>

#include "bispec/eigen.hpp"
#include "bispec/family.hpp"
#include "bispec/laurent.hpp"
#include "bispec/rational.hpp"

namespace bispec::testing {

inline FamilySpec hermite() {
    return make_family(FamilyKind::generalized_laguerre, Rational(0), Rational(0), Rational(-1));
}

inline FamilySpec gegenbauer_default() {
    return make_family(FamilyKind::generalized_gegenbauer, Rational(0), Rational(3), Rational(1));
}

inline FamilySpec qjacobi_default() {
    return make_family(FamilyKind::generalized_little_q_jacobi, Rational(1, 2), Rational(2),
                       Rational(1));
}

inline FamilySpec qlaguerre_default() {
    return make_family(FamilyKind::generalized_q_laguerre, Rational(1, 2), Rational(0),
                       Rational(1));
}

inline std::vector<FamilySpec> default_specs() {
    return {hermite(), gegenbauer_default(), qjacobi_default(), qlaguerre_default()};
}

/// Deterministic source of small rationals and polynomials. Raw engine
/// draws only, so sequences are identical on every platform.
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(unsigned long long seed = 0xb15bec) : engine(seed) {}

    long below(long n) { return static_cast<long>(engine() % static_cast<unsigned long>(n)); }

    Rational rational(long num_span, long den_max, bool nonzero = false) {
        for (;;) {
            const Rational r(below(2 * num_span + 1) - num_span, 1 + below(den_max));
            if (!nonzero || !r.is_zero()) return r;
        }
    }

    /// q uniform-ish over small fractions in (0, 1).
    Rational q_in_unit_interval() {
        const long den = 2 + below(5);
        const long num = 1 + below(den - 1);
        return Rational(num, den);
    }

    Laurent proper_poly(long max_degree) {
        Laurent p;
        for (long k = 0; k <= max_degree; ++k)
            if (below(3) != 0) p.add_term(k, rational(6, 3));
        if (p.is_zero()) p.add_term(0, Rational(1));
        return p;
    }

    Laurent laurent_poly(long lo, long hi) {
        Laurent p;
        for (long k = lo; k <= hi; ++k)
            if (below(2) != 0) p.add_term(k, rational(6, 3));
        return p;
    }
};

/// Randomized family parameters, rejected until the whole working range is
/// nondegenerate (distinct eigenvalues, the right nu-zero pattern, and all
/// closed-form u_n defined).
inline FamilySpec random_family(FamilyKind kind, Rng& rng, long range = 45) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        FamilySpec s;
        try {
            switch (kind) {
                case FamilyKind::generalized_little_q_jacobi:
                    s = make_family(kind, rng.q_in_unit_interval(), rng.rational(4, 3, true),
                                    rng.rational(4, 3, true));
                    break;
                case FamilyKind::generalized_q_laguerre:
                    s = make_family(kind, rng.q_in_unit_interval(), Rational(0),
                                    rng.rational(4, 3, true));
                    break;
                case FamilyKind::generalized_gegenbauer:
                    s = make_family(kind, Rational(0), rng.rational(5, 2, true),
                                    rng.rational(5, 2, true));
                    break;
                case FamilyKind::generalized_laguerre:
                    s = make_family(kind, Rational(0), Rational(0), rng.rational(5, 2, true));
                    break;
            }
            const FamilyAdmissibility adm = check_admissibility(s, range);
            if (adm.lambdas_distinct && adm.nu_pattern_ok) {
                for (long n = 1; n <= range; ++n) (void)u_closed(s, n);  // throws if degenerate
                return s;
            }
        } catch (const degenerate_parameter_error&) {
        }
    }
    throw error("could not draw a nondegenerate family spec");
}

}  // namespace bispec::testing
