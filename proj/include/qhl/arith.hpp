#pragma once

// Exact integer and rational helpers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qhl {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an internal invariant fails; maps to CLI exit code 3.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when an input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void ensure(bool cond, const char* what) {
    if (!cond) throw InternalError(what);
}

inline void require(bool cond, const std::string& what) {
    if (!cond) throw PreconditionError(what);
}

Integer pow(const Integer& base, unsigned long exp);
Rational pow(const Rational& base, unsigned long exp);
Integer abs(const Integer& a);
Integer gcd(const Integer& a, const Integer& b);

/// Residue of a in [0, m).
Integer mod(const Integer& a, const Integer& m);
std::uint64_t mod_u64(const Integer& a, std::uint64_t m);

/// p-adic valuation; returns `cap` for a == 0.
unsigned valuation(const Integer& a, const Integer& p, unsigned cap = 1u << 30);

bool is_prime(const Integer& n);
bool is_prime(std::uint64_t n);

/// Primes in [2, limit].
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Integer square root floor(sqrt(n)), n >= 0.
Integer isqrt(const Integer& n);

/// Integer k-th root floor(n^(1/k)) for n >= 0; exact flag set when n is a perfect power.
std::pair<Integer, bool> iroot(const Integer& n, unsigned long k);

/// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
std::optional<Integer> inverse_mod(const Integer& a, const Integer& m);

struct PrimePower {
    Integer prime;
    unsigned exponent = 0;
};

/// Factorization of |n| by trial division and Pollard-Brent rho.
/// `complete` is false when the rho budget ran out before every cofactor was prime.
struct Factorization {
    std::vector<PrimePower> factors;  // ascending primes
    Integer unfactored = 1;           // product of cofactors left composite
    bool complete = true;
};

Factorization factorize(const Integer& n, std::uint64_t rho_budget = 2'000'000);

/// Chinese remaindering: x = r_i mod m_i for pairwise coprime moduli; result in [0, prod).
Integer crt(const std::vector<Integer>& residues, const std::vector<Integer>& moduli);

std::string to_string(const Integer& a);
std::string to_string(const Rational& q);  // "num/den", or "num" when den == 1
Integer parse_integer(const std::string& text);
Rational parse_rational(const std::string& text);

/// Decimal rendering of q with `digits` digits after the point (truncated toward zero).
std::string to_decimal(const Rational& q, unsigned digits);

}  // namespace qhl
