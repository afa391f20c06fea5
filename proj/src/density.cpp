#include "qhl/density.hpp"

#include "qhl/modular.hpp"

#include <algorithm>

namespace qhl {

namespace {

Rational reduced(Integer num, Integer den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

void require_prime(const Integer& p) { require(p >= 2 && is_prime(p), "density needs a prime"); }

}  // namespace

Rational sigma(const Integer& p) {
    require_prime(p);
    require(p >= 5, "sigma needs p >= 5");
    return reduced((p - 1) * (p - 1) * (p + 4) * (p - 2) * (p - 3), 24 * pow(p, 5));
}

Rational delta2() { return Rational(3, 16); }

Rational lambda(const Integer& p) {
    require_prime(p);
    Integer p5 = pow(p, 5);
    // (p-1)(p+1)p/2 split-square vectors with two distinct roots, (p-1)(p+1) of shape c L^4.
    Integer removed = (p - 1) * (p + 1) * p / 2 + (p - 1) * (p + 1);
    return reduced(p5 - removed, p5);
}

Rational gamma(const Integer& p) {
    require_prime(p);
    require(p != 2, "gamma needs an odd prime");
    return reduced((p + 1) * p * (p - 1), pow(p, 5));
}

std::string to_string(ShapePredicate s) {
    switch (s) {
        case ShapePredicate::SplitsCompletely: return "splits_completely";
        case ShapePredicate::L1L2Cubed: return "is_L1_L2cubed";
        case ShapePredicate::SplitSquareClass: return "is_split_square_class";
        case ShapePredicate::SquareClass: return "is_square_class";
    }
    return "unknown";
}

Rational brute_force_density(std::uint32_t p, ShapePredicate predicate) {
    require(p >= 2 && p <= 13 && is_prime(static_cast<std::uint64_t>(p)), "brute force density needs a prime p <= 13");
    auto test = [&](const SmallResidues& c) {
        switch (predicate) {
            case ShapePredicate::SplitsCompletely: return p >= 5 && small_splits_completely(c, p);
            case ShapePredicate::L1L2Cubed: return small_is_L1_L2cubed(c, p);
            case ShapePredicate::SplitSquareClass: return small_is_split_square_class(c, p);
            case ShapePredicate::SquareClass: return small_is_square_class(c, p);
        }
        return false;
    };
    std::uint64_t count = 0, total = 1;
    for (int i = 0; i < 5; ++i) total *= p;
    SmallResidues c{};
    for (std::uint64_t n = 0; n < total; ++n) {
        std::uint64_t r = n;
        for (auto& v : c) {
            v = static_cast<std::uint32_t>(r % p);
            r /= p;
        }
        if (n != 0 && test(c)) ++count;
    }
    return reduced(Integer(static_cast<unsigned long>(count)), Integer(static_cast<unsigned long>(total)));
}

Rational mu_prefactor(const std::array<Integer, 3>& primes) {
    return reduced(12, pow(Integer(primes[0] * primes[1] * primes[2]), 5));
}

DensityInterval mu_lower_bound(const Integer& h, const std::array<Integer, 3>& primes, std::uint64_t cutoff) {
    require(h != 0, "h must be nonzero");
    require(cutoff >= 49, "cutoff must be at least 49");
    for (std::size_t i = 0; i < 3; ++i) {
        require(primes[i] > 4 && is_prime(primes[i]), "each chosen prime must be a prime > 4");
        require(mod(h, primes[i]) != 0, "chosen primes must not divide h");
        for (std::size_t j = 0; j < i; ++j) require(primes[i] != primes[j], "chosen primes must be distinct");
    }
    auto in_p = [&](const Integer& q) { return std::find(primes.begin(), primes.end(), q) != primes.end(); };

    Rational mu = mu_prefactor(primes) * delta2();
    for (const auto& q : primes) mu *= sigma(q);
    for (std::uint64_t q : primes_up_to(cutoff)) {
        Integer qq(static_cast<unsigned long>(q));
        if (q == 2 || in_p(qq)) continue;
        bool divides_h = mod(h, qq) == 0;
        if (q < 49 || divides_h) mu *= gamma(qq);
        else mu *= lambda(qq);
    }
    // Odd primes above the cutoff dividing h contribute gamma instead of lambda.
    Factorization fh = factorize(h);
    ensure(fh.complete, "factorization of h incomplete");
    for (const auto& pp : fh.factors) {
        if (pp.prime <= Integer(static_cast<unsigned long>(cutoff)) || in_p(pp.prime)) continue;
        mu *= gamma(pp.prime);
    }
    Integer n(static_cast<unsigned long>(cutoff));
    Rational tail = 1 - Rational(1, 2 * n) - Rational(1, 2 * n * n);
    tail.canonicalize();
    DensityInterval out{mu * tail, mu};
    ensure(out.lower > 0 && out.lower <= out.upper && out.upper < 1, "density interval out of range");
    return out;
}

}  // namespace qhl
