#pragma once

// Binary quartic forms over F_p: projective roots, complete splitting and the
// local shape predicates used by the construction.

#include "qhl/forms.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace qhl {

/// Dense univariate polynomial over F_p, coefficients ascending (c[0] + c[1] X + ...).
class FpPoly {
public:
    FpPoly(Integer p, std::vector<Integer> coeffs);
    static FpPoly x(const Integer& p);
    static FpPoly constant(const Integer& p, const Integer& c);

    const Integer& modulus() const { return p_; }
    const std::vector<Integer>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Integer& lead() const { return c_.back(); }

    FpPoly monic() const;
    FpPoly derivative() const;
    Integer eval(const Integer& x) const;

    friend FpPoly operator+(const FpPoly& f, const FpPoly& g);
    friend FpPoly operator-(const FpPoly& f, const FpPoly& g);
    friend FpPoly operator*(const FpPoly& f, const FpPoly& g);
    friend bool operator==(const FpPoly& f, const FpPoly& g) { return f.c_ == g.c_; }

    /// Quotient and remainder; g must be nonzero.
    static std::pair<FpPoly, FpPoly> divmod(const FpPoly& f, const FpPoly& g);
    static FpPoly gcd(FpPoly f, FpPoly g);  // monic, or zero
    static FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& m);

private:
    void trim();
    Integer p_;
    std::vector<Integer> c_;
};

/// A point of P^1(F_p): either a residue b (the root x = b y) or infinity (y = 0).
struct ProjectiveRoot {
    std::optional<Integer> value;  // nullopt encodes infinity

    bool is_infinity() const { return !value.has_value(); }
    static ProjectiveRoot infinity() { return {}; }
    static ProjectiveRoot finite(Integer b) { return {std::move(b)}; }

    friend bool operator==(const ProjectiveRoot& r, const ProjectiveRoot& s) { return r.value == s.value; }
    /// Ascending residues, infinity last.
    friend bool operator<(const ProjectiveRoot& r, const ProjectiveRoot& s);
};

std::string to_string(const ProjectiveRoot& r);  // residue or "inf"

struct RootWithMultiplicity {
    ProjectiveRoot root;
    int multiplicity = 0;
};

using ResidueForm = std::array<Integer, 5>;

/// Coefficients reduced into [0, p). Rejects composite p.
ResidueForm reduce_mod_p(const BinaryQuarticForm& f, const Integer& p);

/// All projective roots over F_p with multiplicities, sorted (infinity last).
/// Exhaustive over P^1(F_p) for p <= 10^6, gcd/equal-degree splitting above.
std::vector<RootWithMultiplicity> roots_mod_p(const BinaryQuarticForm& f, const Integer& p);

struct SplitData {
    Integer p;
    Integer m0;                        // unit leading factor
    std::vector<ProjectiveRoot> roots;  // exactly four, sorted, infinity last
};

/// F = m0 prod(x - b_i y) or m0 y prod(x - b_i y) mod p with four distinct
/// simple roots, never both 0 and infinity. Requires p >= 5.
std::optional<SplitData> splits_completely(const BinaryQuarticForm& f, const Integer& p);

/// F = c M(x,y)^2 mod p for a constant c and a binary quadratic M over F_p.
bool is_square_class(const BinaryQuarticForm& f, const Integer& p);

/// c (x - b1 y)^2 (x - b2 y)^2, c (x - b1 y)^2 y^2 or c L^4 mod p: square classes
/// whose square root splits over F_p.
bool is_split_square_class(const BinaryQuarticForm& f, const Integer& p);

/// Linear form u x + v y over F_p.
struct LinearForm {
    Integer u;
    Integer v;
};

struct L1L2Cubed {
    Integer c;  // F = c L1 L2^3 mod p
    LinearForm l1;
    LinearForm l2;
};

std::optional<L1L2Cubed> is_L1_L2cubed(const BinaryQuarticForm& f, const Integer& p);

/// Degrees of the irreducible factors of F mod l (sorted ascending) for l not dividing D(F).
std::vector<int> factor_degree_pattern(const BinaryQuarticForm& f, const Integer& l);

/// Product of the factors c prod(x - b y) [* y] expanded back into a residue form.
ResidueForm expand_split(const Integer& p, const Integer& m0, const std::vector<ProjectiveRoot>& roots);

// ---------------------------------------------------------------------------
// Small-prime kernels used by exhaustive enumeration (p < 2^31).

using SmallResidues = std::array<std::uint32_t, 5>;

/// Root multiplicities over P^1(F_p) by exhaustive evaluation; empty for the zero form.
/// Entry i in [0, p) is the finite root i, entry p is infinity.
std::vector<std::pair<std::uint32_t, int>> small_root_multiplicities(const SmallResidues& c, std::uint32_t p);

bool small_splits_completely(const SmallResidues& c, std::uint32_t p);
bool small_is_L1_L2cubed(const SmallResidues& c, std::uint32_t p);
bool small_is_split_square_class(const SmallResidues& c, std::uint32_t p);
bool small_is_square_class(const SmallResidues& c, std::uint32_t p);

}  // namespace qhl
