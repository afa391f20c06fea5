#pragma once

// Exact real-root counting over Q with Sturm sequences.

#include "qhl/arith.hpp"

#include <utility>
#include <vector>

namespace qhl {

/// Univariate polynomial over Q, coefficients ascending.
struct QPoly {
    std::vector<Rational> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    Rational eval(const Rational& x) const;
    QPoly derivative() const;
    void trim();
};

std::vector<QPoly> sturm_sequence(const QPoly& f);

/// Distinct real roots of f in the half-open interval (lo, hi].
int sturm_count(const std::vector<QPoly>& seq, const Rational& lo, const Rational& hi);

/// Distinct real roots of f over the whole line.
int count_real_roots(const QPoly& f);

/// Disjoint isolating intervals (lo, hi], one per distinct real root, with
/// f(lo) f(hi) < 0 when f is squarefree. Ascending.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const QPoly& f);

/// Cauchy bound: every root has |x| < bound.
Rational root_bound(const QPoly& f);

}  // namespace qhl
