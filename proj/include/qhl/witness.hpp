#pragma once

// Explicit forms F for which F(x, y) = h p1 p2 p3 has few solutions while each of
// the 64 descended equations G_j(x, y) = h is locally soluble everywhere.

#include "qhl/descent.hpp"
#include "qhl/local.hpp"
#include "qhl/search.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace qhl {

/// The three smallest primes > 4 not dividing h.
std::array<Integer, 3> choose_primes(const Integer& h);

/// Prescribed residues of the coefficients modulo one prime power.
struct ResidueCondition {
    Integer modulus;                 // p_i, an odd prime q, or 16
    std::string shape;               // "split" or "L1L2^3"
    std::array<Integer, 5> residues; // coefficients of the target form mod modulus
    Integer c;                       // leading constant (m0 for split)
    std::vector<ProjectiveRoot> roots;  // split roots, or {root of L1, root of L2}
    std::array<LinearForm, 2> lines{};  // L1, L2 (L1L2^3 shape only)
};

struct WitnessSpec {
    Integer h;
    std::array<Integer, 3> primes;
    Integer modulus;                 // M0
    std::vector<ResidueCondition> conditions;
    int sign = 1;                    // required sign of a0
    Rational threshold;              // (7/2)^24 4^8 (p1 p2 p3)^12
    Rational eps{1, 12};
    std::uint64_t seed = 0;
    unsigned attempts = 0;           // candidates tried before success
};

Rational discriminant_threshold(const std::array<Integer, 3>& primes);

/// Every condition on F, each with the data needed to recheck it.
struct WitnessChecks {
    bool primitive = false;
    bool irreducible = false;
    std::string irreducibility_method;
    bool maximal = false;
    Integer maximality_filter;
    bool trivial_stabilizer = false;
    unsigned stabilizer_bits = 0;
    bool discriminant_large = false;
    bool bound_applicable = false;    // count bound applies at m = |h| p1 p2 p3
    std::array<bool, 3> splits{};     // split with the prescribed roots mod p_i
    std::vector<std::pair<Integer, bool>> shapes;  // L1 L2^3 shape per odd q; modulus 16 entry for 2
    Integer sextic_content;
    std::vector<std::pair<Integer, bool>> non_square_class;  // primes > 49 dividing the content
    bool sextic_content_factored = false;
    bool sign = false;
    bool all() const;
    std::string first_failure() const;
};

WitnessChecks check_witness(const WitnessSpec& spec, const BinaryQuarticForm& f);

struct WitnessOptions {
    unsigned max_attempts = 200;
    long multiplier_range = 64;  // seed-driven multiples of M0 in [-range, range]
};

struct Witness {
    WitnessSpec spec;
    BinaryQuarticForm form;
    WitnessChecks checks;
};

/// CRT construction followed by seeded retries until every check passes.
Witness construct_witness(const Integer& h, std::uint64_t seed, const WitnessOptions& options = {});

struct WitnessReport {
    Witness witness;
    InvariantData invariants;
    GFamily family;
    LocalReport parent_local;             // F = h p1 p2 p3
    std::vector<LocalReport> member_local;  // G_j = h
    SolutionSet parent_solutions;
    std::vector<SolutionSet> member_solutions;
    CorrespondenceReport correspondence;
    int signature = 0;
    long count_bound = 0;
    std::vector<std::size_t> empty_members;  // indices of members without in-box solutions
    long required_empty = 0;                 // 64 - count_bound
    bool members_locally_soluble = false;
    bool within_bound = false;
    bool enough_empty = false;
    bool verified = false;
};

/// Construction, family, local reports, box search and counting check.
WitnessReport verify_theorem(const Integer& h, long box, std::uint64_t seed, unsigned jobs = 1,
                             const WitnessOptions& options = {});

/// Failure of one pipeline stage.
class StageError : public std::runtime_error {
public:
    StageError(const std::string& stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(stage) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

}  // namespace qhl
