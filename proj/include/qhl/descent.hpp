#pragma once

// Descent at a simple root mod p: F(px + by, y)/p for a finite root b and
// F(y, px)/p for the root at infinity, the 64-member family over three primes,
// and the solution maps between a form and its quotients.

#include "qhl/forms.hpp"
#include "qhl/modular.hpp"

#include <array>
#include <utility>
#include <vector>

namespace qhl {

struct DescentLabel {
    Integer p;
    ProjectiveRoot root;

    friend bool operator==(const DescentLabel& l, const DescentLabel& m) { return l.p == m.p && l.root == m.root; }
};

std::string to_string(const DescentLabel& l);  // "p:b" or "p:inf"

/// The label's root is not a root of F mod p.
class NotARootError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// The label's root is a multiple root of F mod p.
class MultipleRootError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// (p b; 0 1) for a finite root, (0 1; p 0) for infinity.
IntegerMatrix2x2 descent_matrix(const Integer& p, const ProjectiveRoot& root);

/// The integral quotient F^C / p for the descent matrix C of the label.
/// Asserts integrality, the y^3 L residual shape and the invariant scaling.
BinaryQuarticForm descend_at(const BinaryQuarticForm& f, const Integer& p, const ProjectiveRoot& root);

struct Descendant {
    DescentLabel label;
    BinaryQuarticForm form;
};

/// One quotient per simple root, roots ascending with infinity last. F must split completely mod p.
std::vector<Descendant> descend_all(const BinaryQuarticForm& f, const Integer& p);

struct FamilyMember {
    std::array<DescentLabel, 3> path;
    BinaryQuarticForm form;
};

struct GFamily {
    Integer h;
    std::array<Integer, 3> primes;  // ascending
    BinaryQuarticForm parent;
    std::vector<FamilyMember> members;  // 64, paths in lexicographic order
};

struct FamilyOptions {
    bool check_irreducible = true;
    bool check_stabilizer = true;
};

/// Descends at p1, then p2, then p3 (sorted ascending). Requires distinct primes > 4
/// coprime to h and complete splitting of F at each of them.
GFamily build_family(const BinaryQuarticForm& f, std::array<Integer, 3> primes, const Integer& h,
                     const FamilyOptions& options = {});

using Point = std::pair<Integer, Integer>;

/// One step up: a solution of the quotient to a solution of the parent.
Point push_step(const DescentLabel& label, const Point& q);

/// Up the whole path (last label first); requires a primitive input.
Point push_solution(const std::vector<DescentLabel>& path, const Point& q);
Point push_solution(const std::array<DescentLabel, 3>& path, const Point& q);

struct LiftedPoint {
    DescentLabel label;
    Point point;
};

/// The label picked out by a primitive (x, y) with p | F(x, y), and its preimage.
LiftedPoint lift_solution(const BinaryQuarticForm& f, const Integer& p, const Point& s);

}  // namespace qhl
