#include "qhl/forms.hpp"

#include "qhl/modular.hpp"
#include "qhl/sturm.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace qhl {

Integer BinaryQuarticForm::operator()(const Integer& x, const Integer& y) const {
    // Horner in x with powers of y
    Integer acc = a[0];
    Integer ypow = y;
    for (int i = 1; i < 5; ++i) {
        acc = acc * x + a[i] * ypow;
        ypow *= y;
    }
    return acc;
}

bool BinaryQuarticForm::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const Integer& v) { return v == 0; });
}

BinaryQuarticForm operator*(const Integer& c, const BinaryQuarticForm& f) {
    BinaryQuarticForm g = f;
    for (auto& v : g.a) v *= c;
    return g;
}

BinaryQuarticForm operator-(const BinaryQuarticForm& f) { return Integer(-1) * f; }

BinaryQuarticForm parse_form(const std::string& text) {
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<Integer> coeffs;
    std::string tok;
    while (in >> tok) coeffs.push_back(parse_integer(tok));
    require(coeffs.size() == 5, "a quartic form needs exactly five coefficients, got " +
                                    std::to_string(coeffs.size()) + " in '" + text + "'");
    return {coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]};
}

std::string to_string(const BinaryQuarticForm& f) {
    std::string out;
    for (int i = 0; i < 5; ++i) out += (i ? "," : "") + to_string(f[i]);
    return out;
}

IntegerMatrix2x2 operator*(const IntegerMatrix2x2& m, const IntegerMatrix2x2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

// ---------------------------------------------------------------------------
// Binary forms

Integer BinaryForm::content() const {
    Integer g = 0;
    for (const auto& c : coeffs) g = gcd(g, c);
    return g;
}

BinaryForm to_binary_form(const BinaryQuarticForm& f) { return {{f[0], f[1], f[2], f[3], f[4]}}; }

BinaryForm operator*(const BinaryForm& f, const BinaryForm& g) {
    BinaryForm h{std::vector<Integer>(f.coeffs.size() + g.coeffs.size() - 1, 0)};
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        for (std::size_t j = 0; j < g.coeffs.size(); ++j) h.coeffs[i + j] += f.coeffs[i] * g.coeffs[j];
    return h;
}

BinaryForm operator-(const BinaryForm& f, const BinaryForm& g) {
    require(f.degree() == g.degree(), "degree mismatch");
    BinaryForm h = f;
    for (std::size_t i = 0; i < g.coeffs.size(); ++i) h.coeffs[i] -= g.coeffs[i];
    return h;
}

BinaryForm d_dx(const BinaryForm& f) {
    int n = f.degree();
    if (n == 0) return {{0}};
    BinaryForm out{std::vector<Integer>(n, 0)};
    for (int k = 0; k < n; ++k) out.coeffs[k] = f.coeffs[k] * (n - k);
    return out;
}

BinaryForm d_dy(const BinaryForm& f) {
    int n = f.degree();
    if (n == 0) return {{0}};
    BinaryForm out{std::vector<Integer>(n, 0)};
    for (int k = 1; k <= n; ++k) out.coeffs[k - 1] = f.coeffs[k] * k;
    return out;
}

BinaryForm hessian(const BinaryQuarticForm& f) {
    BinaryForm g = to_binary_form(f);
    BinaryForm fx = d_dx(g), fy = d_dy(g);
    return d_dx(fx) * d_dy(fy) - d_dy(fx) * d_dy(fx);
}

BinaryForm sextic_covariant(const BinaryQuarticForm& f) {
    BinaryForm g = to_binary_form(f);
    BinaryForm h = hessian(f);
    return d_dx(g) * d_dy(h) - d_dy(g) * d_dx(h);
}

// ---------------------------------------------------------------------------
// Invariants and action

BinaryQuarticForm apply_matrix(const BinaryQuarticForm& f, const IntegerMatrix2x2& m) {
    BinaryForm l1{{m.a, m.b}}, l2{{m.c, m.d}};
    std::vector<BinaryForm> p1{{{1}}}, p2{{{1}}};
    for (int k = 1; k <= 4; ++k) {
        p1.push_back(p1.back() * l1);
        p2.push_back(p2.back() * l2);
    }
    BinaryQuarticForm out;
    for (int i = 0; i < 5; ++i) {
        if (f[i] == 0) continue;
        BinaryForm term = p1[4 - i] * p2[i];
        for (int k = 0; k < 5; ++k) out[k] += f[i] * term.coeffs[k];
    }
    return out;
}

Integer invariant_I(const BinaryQuarticForm& f) {
    return f[2] * f[2] - 3 * f[1] * f[3] + 12 * f[0] * f[4];
}

Integer invariant_J(const BinaryQuarticForm& f) {
    return 2 * f[2] * f[2] * f[2] - 9 * f[1] * f[2] * f[3] + 27 * f[1] * f[1] * f[4] -
           72 * f[0] * f[2] * f[4] + 27 * f[0] * f[3] * f[3];
}

namespace {

Integer discriminant_from(const Integer& I, const Integer& J) {
    Integer num = 4 * I * I * I - J * J;
    ensure(mpz_divisible_ui_p(num.get_mpz_t(), 27) != 0, "27 does not divide 4I^3 - J^2");
    Integer d;
    mpz_divexact_ui(d.get_mpz_t(), num.get_mpz_t(), 27);
    return d;
}

}  // namespace

Integer discriminant(const BinaryQuarticForm& f) { return discriminant_from(invariant_I(f), invariant_J(f)); }

Rational height(const Integer& I, const Integer& J) {
    Rational cube(abs(Integer(I * I * I)));
    Rational sq(Integer(J * J), 4);
    sq.canonicalize();
    return cube > sq ? cube : sq;
}

InvariantData invariants(const BinaryQuarticForm& f) {
    InvariantData out;
    out.I = invariant_I(f);
    out.J = invariant_J(f);
    out.D = discriminant_from(out.I, out.J);
    out.H = height(out.I, out.J);
    if (out.D != 0) out.signature = real_signature(f);
    return out;
}

Integer content(const BinaryQuarticForm& f) {
    require(!f.is_zero(), "content of the zero form is undefined");
    Integer g = 0;
    for (const auto& c : f.a) g = gcd(g, c);
    return g;
}

BinaryQuarticForm primitive_part(const BinaryQuarticForm& f) {
    Integer c = content(f);
    BinaryQuarticForm g = f;
    for (auto& v : g.a) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    return g;
}

// ---------------------------------------------------------------------------
// Real roots

int count_real_roots(const BinaryQuarticForm& f) {
    QPoly p;
    for (int k = 4; k >= 0; --k) p.c.push_back(Rational(f[k]));
    p.trim();
    int roots = qhl::count_real_roots(p);
    if (f[0] == 0) ++roots;  // (1:0)
    return roots;
}

int real_signature(const BinaryQuarticForm& f) {
    require(discriminant(f) != 0, "real signature needs D != 0");
    int r = count_real_roots(f);
    ensure(r % 2 == 0 && r <= 4, "real root count of a squarefree quartic must be even");
    return (4 - r) / 2;
}

// ---------------------------------------------------------------------------
// Admissibility

bool invariant_pair_admissible(const Integer& I, const Integer& J) {
    Integer i3 = mod(I, 3), i9 = mod(I, 9), j27 = mod(J, 27);
    if (i3 == 0 && j27 == 0) return true;
    if (i9 == 1 && (j27 == 2 || j27 == 25)) return true;
    if (i9 == 4 && (j27 == 16 || j27 == 11)) return true;
    if (i9 == 7 && (j27 == 7 || j27 == 20)) return true;
    return false;
}

std::optional<BinaryQuarticForm> realize_invariants(const Integer& I, const Integer& J, long search_bound) {
    require(invariant_pair_admissible(I, J),
            "invariant pair (" + to_string(I) + ", " + to_string(J) + ") is not admissible");
    // a0 = 0, a1 = 1: I = a2^2 - 3 a3, J = 2 a2^3 - 9 a2 a3 + 27 a4
    for (long k = 0; k <= 27; ++k) {
        for (long a2v : {k, -k}) {
            if (k == 0 && a2v < 0) continue;
            Integer a2 = a2v;
            Integer t = a2 * a2 - I;
            if (!mpz_divisible_ui_p(t.get_mpz_t(), 3)) continue;
            Integer a3 = t / 3;
            Integer u = J - 2 * a2 * a2 * a2 + 9 * a2 * a3;
            if (!mpz_divisible_ui_p(u.get_mpz_t(), 27)) continue;
            BinaryQuarticForm f(0, 1, a2, a3, Integer(u / 27));
            ensure(invariant_I(f) == I && invariant_J(f) == J, "closed family mismatch");
            return f;
        }
    }
    // bounded search: choose a0..a3, solve a4 from I (a0 != 0) or from J (a0 == 0)
    for (long a0 = -search_bound; a0 <= search_bound; ++a0)
        for (long a1 = -search_bound; a1 <= search_bound; ++a1)
            for (long a2 = -search_bound; a2 <= search_bound; ++a2)
                for (long a3 = -search_bound; a3 <= search_bound; ++a3) {
                    Integer A0 = a0, A1 = a1, A2 = a2, A3 = a3, a4;
                    if (a0 != 0) {
                        Integer t = I - A2 * A2 + 3 * A1 * A3;
                        Integer den = 12 * A0;
                        if (!mpz_divisible_p(t.get_mpz_t(), den.get_mpz_t())) continue;
                        a4 = t / den;
                    } else {
                        if (A2 * A2 - 3 * A1 * A3 != I || a1 == 0) continue;
                        Integer t = J - 2 * A2 * A2 * A2 + 9 * A1 * A2 * A3;
                        Integer den = 27 * A1 * A1;
                        if (!mpz_divisible_p(t.get_mpz_t(), den.get_mpz_t())) continue;
                        a4 = t / den;
                    }
                    BinaryQuarticForm f(A0, A1, A2, A3, a4);
                    if (invariant_I(f) == I && invariant_J(f) == J) return f;
                }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Irreducibility

namespace {

using Partition = std::vector<int>;

// Can the parts of `fine` be grouped so the group sums are exactly `coarse`?
bool refines(Partition fine, const Partition& coarse) {
    std::vector<int> remaining = coarse;
    std::sort(fine.rbegin(), fine.rend());
    std::function<bool(std::size_t)> place = [&](std::size_t i) {
        if (i == fine.size()) return std::all_of(remaining.begin(), remaining.end(), [](int r) { return r == 0; });
        for (std::size_t k = 0; k < remaining.size(); ++k) {
            if (remaining[k] >= fine[i]) {
                remaining[k] -= fine[i];
                if (place(i + 1)) return true;
                remaining[k] += fine[i];
            }
        }
        return false;
    };
    return place(0);
}

std::vector<Integer> positive_divisors(const Integer& n) {
    Factorization fac = factorize(n);
    require(fac.complete, "could not factor " + to_string(n) + " for divisor enumeration");
    std::vector<Integer> divs{1};
    for (const auto& pp : fac.factors) {
        std::size_t sz = divs.size();
        Integer pk = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            pk *= pp.prime;
            for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

void require_primitive_nondegenerate(const BinaryQuarticForm& f) {
    require(!f.is_zero() && content(f) == 1, "form must be primitive");
    require(discriminant(f) != 0, "form must have nonzero discriminant");
}

}  // namespace

IrreducibilityCertificate irreducibility_exhaustive(const BinaryQuarticForm& f) {
    require_primitive_nondegenerate(f);
    IrreducibilityCertificate cert;
    cert.method = "exhaustive";
    if (f[0] == 0) {
        cert.factor = BinaryForm{{0, 1}};  // y
        return cert;
    }
    if (f[4] == 0) {
        cert.factor = BinaryForm{{1, 0}};  // x
        return cert;
    }
    auto d0 = positive_divisors(f[0]);
    auto d4 = positive_divisors(f[4]);
    // linear factors t x - s y with t | a0, s | a4
    for (const auto& t : d0)
        for (const auto& s : d4)
            for (int sg : {1, -1}) {
                Integer ss = s * sg;
                if (f(ss, t) == 0) {
                    cert.factor = BinaryForm{{t, Integer(-ss)}};
                    return cert;
                }
            }
    // quadratic factors (q0 x^2 + q1 xy + q2 y^2)(r0 x^2 + r1 xy + r2 y^2), q0 > 0
    for (const auto& q0 : d0) {
        Integer r0 = f[0] / q0;
        for (const auto& q2abs : d4)
            for (int sg : {1, -1}) {
                Integer q2 = q2abs * sg;
                Integer r2 = f[4] / q2;
                Integer det = r0 * q2 - q0 * r2;
                std::vector<std::pair<Integer, Integer>> candidates;  // (q1, r1)
                if (det != 0) {
                    Integer nq = f[1] * q2 - q0 * f[3];
                    Integer nr = r0 * f[3] - r2 * f[1];
                    if (mpz_divisible_p(nq.get_mpz_t(), det.get_mpz_t()) &&
                        mpz_divisible_p(nr.get_mpz_t(), det.get_mpz_t()))
                        candidates.push_back({nq / det, nr / det});
                } else {
                    // r1 = (a1 - r0 q1)/q0 and q1 r1 = K  =>  r0 q1^2 - a1 q1 + q0 K = 0
                    Integer K = f[2] - q0 * r2 - q2 * r0;
                    Integer disc = f[1] * f[1] - 4 * r0 * q0 * K;
                    if (disc >= 0) {
                        auto [root, exact] = iroot(disc, 2);
                        if (exact) {
                            for (Integer num : {Integer(f[1] + root), Integer(f[1] - root)}) {
                                Integer den = 2 * r0;
                                if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) continue;
                                Integer q1 = num / den;
                                Integer t = f[1] - r0 * q1;
                                if (!mpz_divisible_p(t.get_mpz_t(), q0.get_mpz_t())) continue;
                                candidates.push_back({q1, t / q0});
                            }
                        }
                    }
                }
                for (auto& [q1, r1] : candidates) {
                    BinaryForm q{{q0, q1, q2}}, r{{r0, r1, r2}};
                    BinaryForm prod = q * r;
                    if (prod.coeffs == to_binary_form(f).coeffs) {
                        cert.factor = q;
                        return cert;
                    }
                }
            }
    }
    cert.irreducible = true;
    return cert;
}

IrreducibilityCertificate irreducibility(const BinaryQuarticForm& f) {
    require_primitive_nondegenerate(f);
    Integer D = discriminant(f);
    std::vector<Partition> rational{{4}, {1, 3}, {2, 2}, {1, 1, 2}, {1, 1, 1, 1}};
    IrreducibilityCertificate cert;
    cert.method = "modular";
    static const std::vector<std::uint64_t> primes = primes_up_to(2000);
    for (std::uint64_t l : primes) {
        if (mpz_divisible_ui_p(D.get_mpz_t(), l)) continue;
        Partition pat = factor_degree_pattern(f, Integer(l));
        std::vector<Partition> keep;
        for (auto& sigma : rational)
            if (refines(pat, sigma)) keep.push_back(sigma);
        if (keep.size() < rational.size()) cert.patterns.push_back({l, pat});
        rational = std::move(keep);
        if (rational.size() == 1) {
            cert.irreducible = true;
            return cert;
        }
    }
    return irreducibility_exhaustive(f);
}

bool is_irreducible(const BinaryQuarticForm& f) { return irreducibility(f).irreducible; }

// ---------------------------------------------------------------------------
// Maximality

std::optional<IntegerMatrix2x2> non_maximal_witness(const BinaryQuarticForm& f, const Integer& p) {
    Integer p4 = pow(p, 4);
    auto integral = [&](const IntegerMatrix2x2& c) {
        BinaryQuarticForm g = apply_matrix(f, c);
        return std::all_of(g.a.begin(), g.a.end(),
                           [&](const Integer& v) { return mpz_divisible_p(v.get_mpz_t(), p4.get_mpz_t()) != 0; });
    };
    std::vector<IntegerMatrix2x2> candidates;
    if (p <= 100000) {
        for (Integer b = 0; b < p; ++b) candidates.push_back({p, b, 0, 1});
        candidates.push_back({1, 0, 0, p});
    } else {
        // F^C / p^4 integral forces F = c (x - b y)^4 mod p (or c y^4)
        for (const auto& rm : roots_mod_p(f, p)) {
            if (rm.multiplicity != 4) continue;
            if (rm.root.is_infinity()) candidates.push_back({1, 0, 0, p});
            else candidates.push_back({p, *rm.root.value, 0, 1});
        }
    }
    for (const auto& c : candidates)
        if (integral(c)) return c;
    return std::nullopt;
}

MaximalityReport maximality(const BinaryQuarticForm& f) {
    require_primitive_nondegenerate(f);
    MaximalityReport report;
    Integer D = discriminant(f);
    // a form that is non-maximal at p is c L^4 mod p, so its Hessian vanishes mod p
    report.candidate_filter = gcd(D, hessian(f).content());
    if (report.candidate_filter == 1) return report;
    Factorization fac = factorize(report.candidate_filter);
    report.complete = fac.complete;
    for (const auto& pp : fac.factors) {
        if (valuation(D, pp.prime, 12) < 12) continue;
        PrimeMaximality pm;
        pm.p = pp.prime;
        pm.witness = non_maximal_witness(f, pp.prime);
        pm.maximal_at_p = !pm.witness.has_value();
        if (!pm.maximal_at_p) report.maximal = false;
        report.primes.push_back(pm);
    }
    return report;
}

bool is_maximal(const BinaryQuarticForm& f) {
    MaximalityReport r = maximality(f);
    if (!r.maximal) return false;
    require(r.complete, "maximality undecided: could not factor " + to_string(r.candidate_filter));
    return true;
}

}  // namespace qhl
