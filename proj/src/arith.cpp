#include "qhl/arith.hpp"

#include <algorithm>
#include <map>

namespace qhl {

Integer pow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Rational pow(const Rational& base, unsigned long exp) {
    Rational r(pow(base.get_num(), exp), pow(base.get_den(), exp));
    r.canonicalize();
    return r;
}

Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::uint64_t mod_u64(const Integer& a, std::uint64_t m) {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_fdiv_ui(a.get_mpz_t(), m);
}

unsigned valuation(const Integer& a, const Integer& p, unsigned cap) {
    if (a == 0) return cap;
    Integer q = a;
    unsigned v = 0;
    while (v < cap && mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n % d == 0) return n == d;
    }
    if (n < 289) return true;
    Integer z(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

Integer isqrt(const Integer& n) {
    require(n >= 0, "isqrt of negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::pair<Integer, bool> iroot(const Integer& n, unsigned long k) {
    require(n >= 0, "iroot of negative integer");
    Integer r;
    int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return {r, exact != 0};
}

std::optional<Integer> inverse_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
    return mod(r, m);
}

namespace {

// Pollard-Brent rho; returns a nontrivial factor or 0 on budget exhaustion.
Integer rho_factor(const Integer& n, std::uint64_t budget) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1; c < 64 && budget > 0; ++c) {
        Integer y = 2, x, ys, q = 1, g = 1, t;
        std::uint64_t r = 1;
        const std::uint64_t m = 128;
        auto f = [&](Integer& v) {
            v = v * v + c;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        while (g == 1 && budget > 0) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) f(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    f(y);
                    t = abs(Integer(x - y));
                    q = q * t % n;
                }
                g = gcd(q, n);
                k += m;
                budget = budget > m ? budget - m : 0;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                f(ys);
                g = gcd(abs(Integer(x - ys)), n);
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

}  // namespace

Factorization factorize(const Integer& n, std::uint64_t rho_budget) {
    require(n != 0, "cannot factor zero");
    Factorization out;
    std::map<Integer, unsigned> found;
    Integer rest = abs(n);
    static const std::vector<std::uint64_t> small = primes_up_to(1u << 16);
    for (std::uint64_t p : small) {
        if (rest == 1) break;
        if (Integer(p) * p > rest) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            }
            found[Integer(p)] += e;
        }
    }
    std::vector<Integer> stack;
    if (rest > 1) stack.push_back(rest);
    while (!stack.empty()) {
        Integer m = stack.back();
        stack.pop_back();
        if (is_prime(m)) {
            found[m] += 1;
            continue;
        }
        auto [root, exact] = iroot(m, 2);
        if (exact) {
            stack.push_back(root);
            stack.push_back(root);
            continue;
        }
        Integer d = rho_factor(m, rho_budget);
        if (d == 0) {
            out.complete = false;
            out.unfactored *= m;
            continue;
        }
        stack.push_back(d);
        stack.push_back(Integer(m / d));
    }
    for (auto& [p, e] : found) out.factors.push_back({p, e});
    return out;
}

Integer crt(const std::vector<Integer>& residues, const std::vector<Integer>& moduli) {
    require(residues.size() == moduli.size(), "crt: size mismatch");
    Integer x = 0, m = 1;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        const Integer& mi = moduli[i];
        auto inv = inverse_mod(mod(m, mi), mi);
        require(inv.has_value(), "crt: moduli not coprime");
        Integer t = mod(Integer((residues[i] - x) * *inv), mi);
        x += m * t;
        m *= mi;
    }
    return mod(x, m);
}

std::string to_string(const Integer& a) { return a.get_str(); }

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer parse_integer(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    require(!s.empty(), "empty integer literal");
    std::size_t start = (s[0] == '-') ? 1 : 0;
    require(start < s.size(), "malformed integer literal '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
        require(s[i] >= '0' && s[i] <= '9', "malformed integer literal '" + text + "'");
    }
    return Integer(s, 10);
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(text));
    Integer den = parse_integer(text.substr(slash + 1));
    require(den != 0, "zero denominator in '" + text + "'");
    Rational q(parse_integer(text.substr(0, slash)), den);
    q.canonicalize();
    return q;
}

std::string to_decimal(const Rational& q, unsigned digits) {
    Integer num = q.get_num(), den = q.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    Integer scaled = num * pow(Integer(10), digits) / den;
    std::string s = scaled.get_str();
    if (s.size() <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
    std::string out = s.substr(0, s.size() - digits);
    if (digits > 0) out += "." + s.substr(s.size() - digits);
    return (neg ? "-" : "") + out;
}

}  // namespace qhl
