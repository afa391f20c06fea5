#include "qhl/descent.hpp"

#include <algorithm>

namespace qhl {

std::string to_string(const DescentLabel& l) { return to_string(l.p) + ":" + to_string(l.root); }

IntegerMatrix2x2 descent_matrix(const Integer& p, const ProjectiveRoot& root) {
    if (root.is_infinity()) return {0, 1, p, 0};
    return {p, *root.value, 0, 1};
}

BinaryQuarticForm descend_at(const BinaryQuarticForm& f, const Integer& p, const ProjectiveRoot& root) {
    require(is_prime(p), "descent modulus " + to_string(p) + " is not prime");
    require(!f.is_zero() && content(f) == 1, "descent needs a primitive form");
    // derivative at the root: f'(b) for finite b, a1 at infinity
    Integer value, slope;
    if (root.is_infinity()) {
        value = f[0];
        slope = f[1];
    } else {
        const Integer& b = *root.value;
        value = f(b, Integer(1));
        slope = 4 * f[0] * b * b * b + 3 * f[1] * b * b + 2 * f[2] * b + f[3];
    }
    if (mod(value, p) != 0)
        throw NotARootError(to_string(root) + " is not a root of " + to_string(f) + " mod " + to_string(p));
    if (mod(slope, p) == 0)
        throw MultipleRootError(to_string(root) + " is a multiple root of " + to_string(f) + " mod " + to_string(p));

    BinaryQuarticForm g = apply_matrix(f, descent_matrix(p, root));
    for (auto& c : g.a) {
        ensure(mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t()) != 0, "descent quotient is not integral");
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
    }
    // g = y^3 (slope x + c y) mod p
    ensure(mod(g[0], p) == 0 && mod(g[1], p) == 0 && mod(g[2], p) == 0, "descent residual is not y^3 L");
    ensure(mod(Integer(g[3] - slope), p) == 0, "descent residual has the wrong L coefficient");
    ensure(invariant_I(g) == p * p * invariant_I(f), "descent I scaling");
    ensure(invariant_J(g) == p * p * p * invariant_J(f), "descent J scaling");
    return g;
}

std::vector<Descendant> descend_all(const BinaryQuarticForm& f, const Integer& p) {
    auto split = splits_completely(f, p);
    require(split.has_value(), to_string(f) + " does not split completely mod " + to_string(p));
    std::vector<Descendant> out;
    for (const auto& r : split->roots) out.push_back({{p, r}, descend_at(f, p, r)});
    return out;
}

GFamily build_family(const BinaryQuarticForm& f, std::array<Integer, 3> primes, const Integer& h,
                     const FamilyOptions& options) {
    std::sort(primes.begin(), primes.end());
    require(h != 0, "h must be nonzero");
    for (std::size_t i = 0; i < 3; ++i) {
        require(is_prime(primes[i]) && primes[i] > 4, "family primes must be primes > 4");
        require(i == 0 || primes[i] != primes[i - 1], "family primes must be distinct");
        require(gcd(primes[i], h) == 1, "family primes must be coprime to h");
    }
    require(!f.is_zero() && content(f) == 1, "family parent must be primitive");
    for (const auto& p : primes)
        require(splits_completely(f, p).has_value(), to_string(f) + " does not split completely mod " + to_string(p));
    if (options.check_irreducible) require(is_irreducible(f), "family parent must be irreducible");
    if (options.check_stabilizer) require(stabilizer_is_trivial(f), "family parent must have trivial stabilizer");

    GFamily fam{h, primes, f, {}};
    Integer d = discriminant(f);
    for (const auto& d1 : descend_all(f, primes[0])) {
        ensure(splits_completely(d1.form, primes[1]) && splits_completely(d1.form, primes[2]),
               "splitting did not persist after the first descent");
        for (const auto& d2 : descend_all(d1.form, primes[1])) {
            ensure(splits_completely(d2.form, primes[2]).has_value(), "splitting did not persist after the second descent");
            for (const auto& d3 : descend_all(d2.form, primes[2]))
                fam.members.push_back({{d1.label, d2.label, d3.label}, d3.form});
        }
    }
    ensure(fam.members.size() == 64, "family does not have 64 members");
    Integer scale = primes[0] * primes[1] * primes[2];
    Integer s6 = pow(scale, 6);
    for (const auto& m : fam.members) {
        Integer dg = discriminant(m.form);
        ensure(dg == s6 * d, "member discriminant scaling");
        for (const auto& p : primes) ensure(valuation(dg, p, 7) == 6, "p^6 does not exactly divide a member discriminant");
    }
    return fam;
}

Point push_step(const DescentLabel& label, const Point& q) {
    const auto& [X, Y] = q;
    if (label.root.is_infinity()) return {Y, label.p * X};
    return {label.p * X + *label.root.value * Y, Y};
}

Point push_solution(const std::vector<DescentLabel>& path, const Point& q) {
    require(gcd(q.first, q.second) == 1, "push needs a primitive point");
    Point s = q;
    for (auto it = path.rbegin(); it != path.rend(); ++it) s = push_step(*it, s);
    return s;
}

Point push_solution(const std::array<DescentLabel, 3>& path, const Point& q) {
    return push_solution(std::vector<DescentLabel>(path.begin(), path.end()), q);
}

LiftedPoint lift_solution(const BinaryQuarticForm& f, const Integer& p, const Point& s) {
    const auto& [x, y] = s;
    require(gcd(x, y) == 1, "lift needs a primitive point");
    require(mod(f(x, y), p) == 0, "lift needs p | F(x, y)");
    if (mod(y, p) == 0) return {{p, ProjectiveRoot::infinity()}, {Integer(y / p), x}};
    Integer b = mod(Integer(x * *inverse_mod(y, p)), p);
    Integer X = x - b * y;
    ensure(mpz_divisible_p(X.get_mpz_t(), p.get_mpz_t()) != 0, "lift residue");
    return {{p, ProjectiveRoot::finite(b)}, {Integer(X / p), y}};
}

}  // namespace qhl
