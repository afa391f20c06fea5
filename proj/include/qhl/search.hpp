#pragma once

// Primitive solutions of F(x, y) = m in a box, the solution-count bound and the
// check that the descent family accounts for every in-box solution.

#include "qhl/descent.hpp"

#include <vector>

namespace qhl {

struct SolutionSet {
    BinaryQuarticForm form;
    Integer m;
    long box = 0;
    std::vector<Point> points;  // primitive, |x|, |y| <= box, sorted, closed under negation
};

/// Exhaustive search over y in [0, B], x in [-B, B] using fourth differences mod 2^64;
/// every candidate is re-checked exactly. `jobs` splits the y range across threads.
SolutionSet primitive_solutions_in_box(const BinaryQuarticForm& f, const Integer& m, long box, unsigned jobs = 1);

/// 36 - 16 i + ceil((4 - i) / (3 eps)) for 0 < eps < 1/6.
long count_bound(int signature, const Rational& eps);

/// 0 < |m| <= |D|^(1/6 - eps) / (3.5^2 * 4^(2/3)), decided with exact integer powers.
bool bound_applicable(const Integer& d, const Integer& m, const Rational& eps);

struct CorrespondenceReport {
    Integer target;                    // h p1 p2 p3
    long box = 0;
    std::vector<Point> parent_solutions;
    std::vector<std::size_t> member_counts;  // in-box solutions of G_j = h
    std::size_t lifted = 0;                  // parent solutions lifted to some member solution
    std::size_t pushed_in_box = 0;           // member solutions whose image is in the parent box
    std::size_t pushed_outside_box = 0;      // box-boundary effect, reported separately
    std::vector<std::string> mismatches;
    bool bijective = false;                  // lifted == pushed_in_box == #parent and no mismatch
};

/// Forms along a descent path: result[k] is the quotient after k steps (result[0] is the parent).
std::vector<BinaryQuarticForm> path_forms(const BinaryQuarticForm& parent, const std::array<DescentLabel, 3>& path);

CorrespondenceReport verify_correspondence(const GFamily& family, long box, unsigned jobs = 1);

/// Same, reusing solution sets already computed for the parent (at h p1 p2 p3) and the 64 members (at h).
CorrespondenceReport verify_correspondence(const GFamily& family, const SolutionSet& parent,
                                           const std::vector<SolutionSet>& members);

}  // namespace qhl
