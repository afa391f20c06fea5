#pragma once

// Solubility of F(x, y) = h over R and over Z_p, with certificates.

#include "qhl/descent.hpp"
#include "qhl/forms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qhl {

enum class Verdict { Soluble, Insoluble, Unknown };

std::string to_string(Verdict v);

struct LocalCertificate {
    std::optional<Integer> prime;  // nullopt for the real place
    Verdict verdict = Verdict::Unknown;
    std::string method;
    // Soluble: the solution is p^scale * (x0, y0) with (x0, y0) primitive,
    // F(x0, y0) = h / p^(4 scale) mod p^precision and min v_p(F_x, F_y) = derivative_valuation,
    // precision >= 2 derivative_valuation + 1. Over R, point has sign(F(point)) = sign(h).
    std::optional<Point> point;
    unsigned scale = 0;
    unsigned precision = 0;
    unsigned derivative_valuation = 0;
    // Insoluble: no primitive (x, y) mod p^depth has F = h / p^(4j) for any 4j <= v_p(h).
    // Unknown: the depth at which the search stopped.
    unsigned depth = 0;
    std::uint64_t nodes = 0;
};

/// Re-checks a Soluble or Insoluble p-adic certificate (Insoluble only when p^depth is small).
bool verify_certificate(const BinaryQuarticForm& f, const Integer& h, const LocalCertificate& c);

LocalCertificate real_certificate(const BinaryQuarticForm& f, const Integer& h);
bool soluble_over_R(const BinaryQuarticForm& f, const Integer& h);

struct ZpOptions {
    std::optional<unsigned> max_depth;    // default 2 (v_p(D) + 4 v_p(h) + v_p(16)) + 3
    std::uint64_t node_budget = 4'000'000;
    std::uint64_t unit_scan_limit = 20'000'000;  // largest p for the linear scan at odd p not dividing the target
};

unsigned default_max_depth(const BinaryQuarticForm& f, const Integer& h, const Integer& p);

LocalCertificate soluble_over_Zp(const BinaryQuarticForm& f, const Integer& h, const Integer& p,
                                 const ZpOptions& options = {});

struct LargePrimeJustification {
    Integer sextic_content;            // content of Jac(F, Hessian)
    std::vector<Integer> checked;      // primes > 49 certified individually
    unsigned hasse_weil_min_at_53 = 0;  // q + 1 - floor(6 sqrt q) at q = 53, g = 3
    std::string argument;
};

struct LocalReport {
    BinaryQuarticForm form;
    Integer h;
    std::vector<LocalCertificate> certificates;  // R first, then primes ascending
    LargePrimeJustification large_primes;
    Verdict summary = Verdict::Unknown;  // Soluble means locally soluble everywhere
};

/// Certificates at R, every p <= 49, and every p > 49 that divides 2h or the content of the
/// sextic covariant (the only primes where F can be c M^2 mod p); other primes are covered by
/// the large-prime argument recorded in the report.
LocalReport local_everywhere(const BinaryQuarticForm& f, const Integer& h, const ZpOptions& options = {});

/// ceil(q + 1 - 2 g sqrt(q)), exactly.
Integer hasse_weil_min_points(const Integer& q, unsigned g);

/// u odd: true iff u = 1 mod 16, i.e. u is the fourth power of a 2-adic unit.
bool fourth_power_unit_2adic(const Integer& u);

}  // namespace qhl
