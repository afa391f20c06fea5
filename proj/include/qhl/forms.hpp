#pragma once

// Integral binary quartic forms: invariants, matrix action, covariants and
// the structural predicates (irreducibility, maximality, stabilizer).

#include "qhl/arith.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qhl {

/// F(x,y) = a0 x^4 + a1 x^3 y + a2 x^2 y^2 + a3 x y^3 + a4 y^4.
struct BinaryQuarticForm {
    std::array<Integer, 5> a{0, 0, 0, 0, 0};

    BinaryQuarticForm() = default;
    BinaryQuarticForm(Integer a0, Integer a1, Integer a2, Integer a3, Integer a4)
        : a{std::move(a0), std::move(a1), std::move(a2), std::move(a3), std::move(a4)} {}

    const Integer& operator[](std::size_t i) const { return a[i]; }
    Integer& operator[](std::size_t i) { return a[i]; }

    Integer operator()(const Integer& x, const Integer& y) const;
    bool is_zero() const;

    friend bool operator==(const BinaryQuarticForm& f, const BinaryQuarticForm& g) { return f.a == g.a; }
    friend bool operator!=(const BinaryQuarticForm& f, const BinaryQuarticForm& g) { return !(f == g); }
};

BinaryQuarticForm operator*(const Integer& c, const BinaryQuarticForm& f);
BinaryQuarticForm operator-(const BinaryQuarticForm& f);

/// Parses five integers separated by commas and/or whitespace (order a0..a4).
BinaryQuarticForm parse_form(const std::string& text);
std::string to_string(const BinaryQuarticForm& f);  // "a0,a1,a2,a3,a4"

/// (a b; c d); acts on forms by F^A(x,y) = F(ax + by, cx + dy).
struct IntegerMatrix2x2 {
    Integer a = 1, b = 0, c = 0, d = 1;

    Integer det() const { return a * d - b * c; }
    bool is_unimodular() const {
        Integer dt = det();
        return dt == 1 || dt == -1;
    }
    static IntegerMatrix2x2 identity() { return {}; }

    friend bool operator==(const IntegerMatrix2x2& m, const IntegerMatrix2x2& n) {
        return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
    }
};

IntegerMatrix2x2 operator*(const IntegerMatrix2x2& m, const IntegerMatrix2x2& n);

BinaryQuarticForm apply_matrix(const BinaryQuarticForm& f, const IntegerMatrix2x2& m);

struct InvariantData {
    Integer I;
    Integer J;
    Integer D;
    Rational H;                    // max(|I^3|, J^2/4)
    std::optional<int> signature;  // pairs of complex roots; absent when D == 0
};

Integer invariant_I(const BinaryQuarticForm& f);
Integer invariant_J(const BinaryQuarticForm& f);
Integer discriminant(const BinaryQuarticForm& f);
Rational height(const Integer& I, const Integer& J);

InvariantData invariants(const BinaryQuarticForm& f);

/// Positive gcd of the coefficients. Throws on the zero form.
Integer content(const BinaryQuarticForm& f);
BinaryQuarticForm primitive_part(const BinaryQuarticForm& f);

// ---------------------------------------------------------------------------
// Binary forms of arbitrary degree, used for covariants.

/// coeffs[k] multiplies x^(n-k) y^k where n = coeffs.size() - 1.
struct BinaryForm {
    std::vector<Integer> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Integer content() const;
};

BinaryForm to_binary_form(const BinaryQuarticForm& f);
BinaryForm operator*(const BinaryForm& f, const BinaryForm& g);
BinaryForm operator-(const BinaryForm& f, const BinaryForm& g);
BinaryForm d_dx(const BinaryForm& f);
BinaryForm d_dy(const BinaryForm& f);

/// Hessian F_xx F_yy - F_xy^2 (degree 4). Vanishes mod p when F = c L^4 mod p.
BinaryForm hessian(const BinaryQuarticForm& f);
/// Jacobian of F and its Hessian (degree 6). Vanishes mod p when F = c M^2 mod p.
BinaryForm sextic_covariant(const BinaryQuarticForm& f);

// ---------------------------------------------------------------------------
// Real roots.

/// Pairs of complex-conjugate roots of F (projectively; the root (1:0) counts as real).
int real_signature(const BinaryQuarticForm& f);

/// Number of distinct real roots of the projective form, counting (1:0) when a0 == 0.
int count_real_roots(const BinaryQuarticForm& f);

// ---------------------------------------------------------------------------
// Admissibility of invariant pairs.

bool invariant_pair_admissible(const Integer& I, const Integer& J);

/// Best-effort search for a form with the given invariants; nullopt does not
/// certify non-existence. Throws on inadmissible pairs.
std::optional<BinaryQuarticForm> realize_invariants(const Integer& I, const Integer& J,
                                                    long search_bound = 12);

// ---------------------------------------------------------------------------
// Irreducibility.

struct IrreducibilityCertificate {
    bool irreducible = false;
    // "modular": factor-degree patterns mod the listed primes leave only {4};
    // "exhaustive": rational-root and integral quadratic-factor search.
    std::string method;
    std::vector<std::pair<std::uint64_t, std::vector<int>>> patterns;
    std::optional<BinaryForm> factor;  // a proper factor when reducible
};

IrreducibilityCertificate irreducibility(const BinaryQuarticForm& f);
bool is_irreducible(const BinaryQuarticForm& f);

/// Exhaustive rational-root and quadratic-factor decision. Requires factoring a0 and a4.
IrreducibilityCertificate irreducibility_exhaustive(const BinaryQuarticForm& f);

// ---------------------------------------------------------------------------
// Maximality.

struct PrimeMaximality {
    Integer p;
    bool maximal_at_p = true;
    std::optional<IntegerMatrix2x2> witness;  // C with F^C / p^4 integral
};

struct MaximalityReport {
    bool maximal = true;
    bool complete = true;             // false when the candidate filter could not be factored
    Integer candidate_filter;         // gcd(D, content(Hessian))
    std::vector<PrimeMaximality> primes;  // primes with p^12 | D among those dividing the filter
};

MaximalityReport maximality(const BinaryQuarticForm& f);
bool is_maximal(const BinaryQuarticForm& f);

/// True iff F^C / p^4 is integral for one of the p+1 index-p lattice matrices C.
std::optional<IntegerMatrix2x2> non_maximal_witness(const BinaryQuarticForm& f, const Integer& p);

// ---------------------------------------------------------------------------
// Stabilizer in GL2(Q).

enum class StabilizerVerdict { Trivial, NonTrivial, Unknown };

struct StabilizerReport {
    StabilizerVerdict verdict = StabilizerVerdict::Unknown;
    unsigned precision_bits = 0;
    std::optional<IntegerMatrix2x2> witness;  // primitive integral A' with F^A' = c F, |c| a 4th power
    Integer scale;                            // c
};

StabilizerReport stabilizer(const BinaryQuarticForm& f, unsigned max_precision_bits = 1024);

/// True iff the only rational A with F^A = +-F are +-identity. Throws if Unknown.
bool stabilizer_is_trivial(const BinaryQuarticForm& f);

/// Exact check: F^A == c F with |c| a rational fourth power and A not scalar.
std::optional<Integer> stabilizes(const BinaryQuarticForm& f, const IntegerMatrix2x2& a);

}  // namespace qhl
