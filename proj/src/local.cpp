#include "qhl/local.hpp"

#include "qhl/sturm.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace qhl {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Soluble: return "soluble";
        case Verdict::Insoluble: return "insoluble";
        case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

Integer partial_x(const BinaryQuarticForm& f, const Integer& x, const Integer& y) {
    return ((4 * f[0] * x + 3 * f[1] * y) * x + 2 * f[2] * y * y) * x + f[3] * y * y * y;
}

Integer partial_y(const BinaryQuarticForm& f, const Integer& x, const Integer& y) {
    return f[1] * x * x * x + ((2 * f[2] * x + 3 * f[3] * y) * x + 4 * f[4] * y * y) * y;
}

constexpr unsigned kInfiniteValuation = 1u << 20;

unsigned val(const Integer& a, const Integer& p) { return valuation(a, p, kInfiniteValuation); }

int sign(const Integer& a) { return sgn(a); }

struct SearchResult {
    Verdict verdict = Verdict::Insoluble;
    Point point;
    unsigned precision = 0;
    unsigned derivative_valuation = 0;
    unsigned depth = 0;  // Insoluble: refutation modulus exponent; Unknown: depth reached
    std::uint64_t nodes = 0;
    std::string method;
};

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Odd p not dividing t: xF_x + yF_y = 4F is a unit at any solution mod p, so a
// primitive solution mod p lifts; scan the classes lambda (x, 1) and lambda (1, 0).
SearchResult unit_scan(const BinaryQuarticForm& f, const Integer& t, u64 p) {
    SearchResult out;
    out.method = "unit-scan";
    u64 e = (p - 1) / std::gcd<u64>(4, p - 1);
    u64 tt = mod_u64(t, p);
    std::array<u64, 5> c;
    for (int i = 0; i < 5; ++i) c[i] = mod_u64(f[i], p);
    auto fourth_root = [&](u64 target) -> std::optional<u64> {
        for (u64 l = 1; l < p; ++l) {
            u64 l2 = mulmod(l, l, p);
            if (mulmod(l2, l2, p) == target) return l;
        }
        return std::nullopt;
    };
    auto solve_class = [&](u64 value) -> std::optional<u64> {
        if (value == 0) return std::nullopt;
        u64 ratio = mulmod(tt, powmod(value, p - 2, p), p);
        if (powmod(ratio, e, p) != 1) return std::nullopt;
        return fourth_root(ratio);
    };
    for (u64 x = 0; x < p; ++x) {
        ++out.nodes;
        u64 v = c[0];
        for (int i = 1; i < 5; ++i) v = (mulmod(v, x, p) + c[i]) % p;
        if (auto l = solve_class(v)) {
            out.verdict = Verdict::Soluble;
            out.point = {Integer(static_cast<unsigned long>(mulmod(*l, x, p))), Integer(static_cast<unsigned long>(*l))};
            out.precision = 1;
            return out;
        }
    }
    ++out.nodes;
    if (auto l = solve_class(c[0])) {
        out.verdict = Verdict::Soluble;
        out.point = {Integer(static_cast<unsigned long>(*l)), Integer(0)};
        out.precision = 1;
        return out;
    }
    out.verdict = Verdict::Insoluble;
    out.depth = 1;
    return out;
}

// Class tree over primitive pairs mod p^k. A class (x, y) mod p^k with v the least
// valuation of the partials at its representative and w = v_p(F(rep) - t):
// w >= 2v + 1 lifts by Hensel; w < min(k + v, 2k) refutes the whole class mod p^(w+1).
SearchResult class_tree(const BinaryQuarticForm& f, const Integer& t, const Integer& p, unsigned max_depth,
                        std::uint64_t budget) {
    SearchResult out;
    out.method = "class-tree";
    struct Node {
        Integer x, y;
        unsigned k;
    };
    std::vector<Node> stack;
    bool small = p < 1'000'000;
    require(small, "class tree needs p < 10^6");
    unsigned long pu = p.get_ui();
    for (unsigned long x = pu; x-- > 0;)
        for (unsigned long y = pu; y-- > 0;)
            if (x != 0 || y != 0) stack.push_back({Integer(x), Integer(y), 1});
    bool unknown = false;
    unsigned reached = 0;
    while (!stack.empty()) {
        Node n = std::move(stack.back());
        stack.pop_back();
        if (++out.nodes > budget) {
            unknown = true;
            reached = std::max(reached, n.k);
            break;
        }
        Integer value = f(n.x, n.y) - t;
        unsigned w = val(value, p);
        unsigned v = std::min(val(partial_x(f, n.x, n.y), p), val(partial_y(f, n.x, n.y), p));
        if (v < kInfiniteValuation && w >= 2 * v + 1) {
            out.verdict = Verdict::Soluble;
            out.point = {n.x, n.y};
            out.precision = std::min(w, kInfiniteValuation - 1);
            out.derivative_valuation = v;
            return out;
        }
        unsigned e = std::min(n.k + v, 2 * n.k);
        if (w < e) {
            out.depth = std::max(out.depth, w + 1);
            continue;
        }
        if (n.k + 1 > max_depth) {
            unknown = true;
            reached = std::max(reached, n.k);
            continue;
        }
        Integer pk = pow(p, n.k);
        for (unsigned long i = pu; i-- > 0;)
            for (unsigned long j = pu; j-- > 0;)
                stack.push_back({n.x + pk * i, n.y + pk * j, n.k + 1});
    }
    if (unknown) {
        out.verdict = Verdict::Unknown;
        out.depth = reached;
    }
    return out;
}

}  // namespace

unsigned default_max_depth(const BinaryQuarticForm& f, const Integer& h, const Integer& p) {
    return 2 * (valuation(discriminant(f), p, 64) + 4 * valuation(h, p, 64) + valuation(Integer(16), p)) + 3;
}

LocalCertificate soluble_over_Zp(const BinaryQuarticForm& f, const Integer& h, const Integer& p,
                                 const ZpOptions& options) {
    require(is_prime(p), "modulus " + to_string(p) + " is not prime");
    require(h != 0, "h must be nonzero");
    require(!f.is_zero() && discriminant(f) != 0, "local solubility needs D != 0");
    unsigned max_depth = options.max_depth.value_or(default_max_depth(f, h, p));
    LocalCertificate cert;
    cert.prime = p;
    unsigned vh = valuation(h, p);
    bool unknown = false;
    unsigned depth = 0;
    for (unsigned j = 0; 4 * j <= vh; ++j) {
        Integer t = h / pow(p, 4 * j);
        SearchResult r;
        bool unit_target = p != 2 && mod(t, p) != 0;
        if (unit_target && p <= options.unit_scan_limit) {
            r = unit_scan(f, t, p.get_ui());
        } else if (unit_target || p >= 1'000'000) {
            r.verdict = Verdict::Unknown;
            r.method = "too-large";
        } else {
            r = class_tree(f, t, p, max_depth, options.node_budget);
        }
        cert.nodes += r.nodes;
        if (r.verdict == Verdict::Soluble) {
            cert.verdict = Verdict::Soluble;
            cert.method = r.method;
            cert.point = r.point;
            cert.scale = j;
            cert.precision = std::max(r.precision, 2 * r.derivative_valuation + 1);
            cert.derivative_valuation = r.derivative_valuation;
            return cert;
        }
        if (r.verdict == Verdict::Unknown) unknown = true;
        depth = std::max(depth, r.depth);
        cert.method = r.method;
    }
    cert.verdict = unknown ? Verdict::Unknown : Verdict::Insoluble;
    cert.depth = unknown ? max_depth : depth;
    return cert;
}

LocalCertificate real_certificate(const BinaryQuarticForm& f, const Integer& h) {
    require(h != 0, "h must be nonzero");
    int i = real_signature(f);
    LocalCertificate cert;
    cert.method = i < 2 ? "indefinite" : "definite";
    std::vector<Point> candidates{{1, 0}, {0, 1}, {1, 1}, {-1, 1}};
    if (i < 2) {
        QPoly q;
        for (int k = 4; k >= 0; --k) q.c.push_back(Rational(f[k]));
        q.trim();
        for (auto& [lo, hi] : isolate_real_roots(q)) {
            for (const Rational& r : {lo, hi}) candidates.push_back({r.get_num(), r.get_den()});
        }
    }
    for (const auto& pt : candidates) {
        if (sign(f(pt.first, pt.second)) == sign(h)) {
            cert.verdict = Verdict::Soluble;
            cert.point = pt;
            return cert;
        }
    }
    ensure(i == 2, "indefinite form without a sign witness");
    cert.verdict = Verdict::Insoluble;
    return cert;
}

bool soluble_over_R(const BinaryQuarticForm& f, const Integer& h) {
    return real_certificate(f, h).verdict == Verdict::Soluble;
}

bool verify_certificate(const BinaryQuarticForm& f, const Integer& h, const LocalCertificate& c) {
    if (!c.prime) {
        if (c.verdict == Verdict::Soluble) return c.point && sign(f(c.point->first, c.point->second)) == sign(h);
        if (c.verdict == Verdict::Insoluble) return real_signature(f) == 2 && sign(f[0]) != sign(h);
        return false;
    }
    const Integer& p = *c.prime;
    if (c.verdict == Verdict::Soluble) {
        if (!c.point) return false;
        const auto& [x, y] = *c.point;
        if (mod(x, p) == 0 && mod(y, p) == 0) return false;
        Integer s = pow(p, 4 * c.scale);
        if (!mpz_divisible_p(h.get_mpz_t(), s.get_mpz_t())) return false;
        Integer t = h / s;
        unsigned v = std::min(val(partial_x(f, x, y), p), val(partial_y(f, x, y), p));
        return v == c.derivative_valuation && c.precision >= 2 * v + 1 && val(f(x, y) - t, p) >= c.precision;
    }
    if (c.verdict == Verdict::Insoluble) {
        Integer pk = pow(p, c.depth);
        require(pk * pk <= Integer(1) << 24, "insoluble certificate too large to re-enumerate");
        unsigned long n = pk.get_ui();
        unsigned vh = valuation(h, p);
        for (unsigned j = 0; 4 * j <= vh; ++j) {
            Integer t = mod(Integer(h / pow(p, 4 * j)), pk);
            for (unsigned long x = 0; x < n; ++x)
                for (unsigned long y = 0; y < n; ++y) {
                    if (mpz_divisible_p(Integer(x).get_mpz_t(), p.get_mpz_t()) &&
                        mpz_divisible_p(Integer(y).get_mpz_t(), p.get_mpz_t()))
                        continue;
                    if (mod(f(Integer(x), Integer(y)), pk) == t) return false;
                }
        }
        return true;
    }
    return false;
}

LocalReport local_everywhere(const BinaryQuarticForm& f, const Integer& h, const ZpOptions& options) {
    require(h != 0, "h must be nonzero");
    require(!f.is_zero() && content(f) == 1, "local report needs a primitive form");
    require(discriminant(f) != 0, "local report needs D != 0");
    require(is_irreducible(f), "local report needs an irreducible form");
    LocalReport report{f, h, {}, {}, Verdict::Soluble};
    report.certificates.push_back(real_certificate(f, h));
    for (auto p : primes_up_to(49)) report.certificates.push_back(soluble_over_Zp(f, h, Integer(p), options));

    auto& lp = report.large_primes;
    lp.sextic_content = sextic_covariant(f).content();
    lp.hasse_weil_min_at_53 = static_cast<unsigned>(hasse_weil_min_points(53, 3).get_ui());
    bool complete = true;
    std::vector<Integer> large;
    for (const Integer& n : {lp.sextic_content, Integer(2 * h)}) {
        Factorization fac = factorize(n);
        complete = complete && fac.complete;
        for (const auto& pp : fac.factors)
            if (pp.prime > 49) large.push_back(pp.prime);
    }
    std::sort(large.begin(), large.end());
    large.erase(std::unique(large.begin(), large.end()), large.end());
    for (const auto& p : large) {
        report.certificates.push_back(soluble_over_Zp(f, h, p, options));
        lp.checked.push_back(p);
    }
    lp.argument =
        "every other prime p > 49 divides neither h nor the content of the sextic covariant, so F is not c*M^2 "
        "mod p; then h z^4 = F(x,y) has an F_p-point with z != 0 (Hasse-Weil, genus <= 3, q + 1 - 6 sqrt(q) "
        "increasing for q > 49), which is smooth because x F_x + y F_y = 4 F is a unit, and lifts by Hensel";
    if (!complete) lp.argument = "incomplete: could not factor the sextic covariant content or 2h";

    for (const auto& c : report.certificates) {
        if (c.verdict == Verdict::Insoluble) report.summary = Verdict::Insoluble;
        else if (c.verdict == Verdict::Unknown && report.summary == Verdict::Soluble) report.summary = Verdict::Unknown;
    }
    if (!complete && report.summary == Verdict::Soluble) report.summary = Verdict::Unknown;
    return report;
}

Integer hasse_weil_min_points(const Integer& q, unsigned g) {
    require(q >= 2, "q must be a prime power");
    Integer s = isqrt(Integer(4) * g * g * q);  // floor(2 g sqrt(q))
    return q + 1 - s;
}

bool fourth_power_unit_2adic(const Integer& u) {
    require(mpz_odd_p(u.get_mpz_t()) != 0, "u must be odd");
    return mod(u, 16) == 1;
}

}  // namespace qhl
