#include "qhl/witness.hpp"

#include "qhl/modular.hpp"

#include <algorithm>
#include <random>

namespace qhl {

namespace {

using Poly = std::array<Integer, 5>;

// Coefficients of c * prod (u x + v y), reduced mod n.
Poly expand_lines(const Integer& c, const std::vector<LinearForm>& lines, const Integer& n) {
    std::vector<Integer> p{c};
    for (const auto& l : lines) {
        std::vector<Integer> q(p.size() + 1, 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i] += p[i] * l.u;
            q[i + 1] += p[i] * l.v;
        }
        p = std::move(q);
    }
    ensure(p.size() == 5, "expected four linear factors");
    Poly out;
    for (std::size_t i = 0; i < 5; ++i) out[i] = mod(p[i], n);
    return out;
}

LinearForm line_through(const ProjectiveRoot& r, const Integer& q) {
    if (r.is_infinity()) return {0, 1};
    return {1, mod(-*r.value, q)};
}

Integer uniform(std::mt19937_64& rng, const Integer& n) {
    return Integer(static_cast<unsigned long>(rng() % n.get_ui()));
}

ResidueCondition split_condition(const Integer& p) {
    ResidueCondition c;
    c.modulus = p;
    c.shape = "split";
    c.c = 1;
    for (int b = 1; b <= 4; ++b) c.roots.push_back(ProjectiveRoot::finite(b));
    c.residues = expand_split(p, 1, c.roots);
    return c;
}

ResidueCondition l1l2cubed_condition(const Integer& q, std::mt19937_64& rng) {
    ResidueCondition c;
    c.modulus = q;
    c.shape = "L1L2^3";
    auto draw_root = [&]() {
        Integer r = uniform(rng, q + 1);
        return r == q ? ProjectiveRoot::infinity() : ProjectiveRoot::finite(r);
    };
    ProjectiveRoot r1 = draw_root(), r2 = draw_root();
    while (r2 == r1) r2 = draw_root();
    c.roots = {r1, r2};
    c.c = 1 + uniform(rng, q - 1);
    c.lines = {line_through(r1, q), line_through(r2, q)};
    c.residues = expand_lines(c.c, {c.lines[0], c.lines[1], c.lines[1], c.lines[1]}, q);
    return c;
}

// Mod 16: c L1 L2^3 with L1, L2 independent mod 2 and c odd.
ResidueCondition two_adic_condition(std::mt19937_64& rng) {
    ResidueCondition c;
    c.modulus = 16;
    c.shape = "L1L2^3";
    Integer u1, v1, u2, v2;
    do {
        u1 = uniform(rng, 16), v1 = uniform(rng, 16), u2 = uniform(rng, 16), v2 = uniform(rng, 16);
    } while (mpz_even_p(Integer(u1 * v2 - u2 * v1).get_mpz_t()));
    c.c = 2 * uniform(rng, 8) + 1;
    c.lines = {LinearForm{u1, v1}, LinearForm{u2, v2}};
    c.residues = expand_lines(c.c, {c.lines[0], c.lines[1], c.lines[1], c.lines[1]}, 16);
    return c;
}

// x = r_i mod n_i for pairwise coprime n_i, as the residue in [0, prod n_i).
Integer crt(const std::vector<std::pair<Integer, Integer>>& congruences) {
    Integer x = 0, n = 1;
    for (const auto& [r, m] : congruences) {
        auto inv = inverse_mod(mod(n, m), m);
        ensure(inv.has_value(), "CRT moduli not coprime");
        Integer t = mod((r - x) * *inv, m);
        x += n * t;
        n *= m;
    }
    return x;
}

bool is_odd_prime_below_49(const Integer& q) { return q < 49 && q != 2; }

}  // namespace

std::array<Integer, 3> choose_primes(const Integer& h) {
    require(h != 0, "h must be nonzero");
    std::array<Integer, 3> out;
    std::size_t k = 0;
    for (Integer p = 5; k < 3; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t()))
        if (mod(h, p) != 0) out[k++] = p;
    return out;
}

Rational discriminant_threshold(const std::array<Integer, 3>& primes) {
    Rational t = pow(Rational(7, 2), 24) * Rational(pow(Integer(4), 8)) *
                 Rational(pow(Integer(primes[0] * primes[1] * primes[2]), 12));
    t.canonicalize();
    return t;
}

bool WitnessChecks::all() const { return first_failure().empty(); }

std::string WitnessChecks::first_failure() const {
    if (!sign) return "sign of leading coefficient";
    if (!primitive) return "primitive";
    if (!discriminant_large) return "discriminant threshold";
    if (!bound_applicable) return "count bound applicability";
    for (std::size_t i = 0; i < 3; ++i)
        if (!splits[i]) return "complete splitting";
    for (const auto& [q, ok] : shapes)
        if (!ok) return "L1L2^3 shape mod " + q.get_str();
    if (!sextic_content_factored) return "sextic covariant content factorization";
    for (const auto& [p, ok] : non_square_class)
        if (!ok) return "square class mod " + p.get_str();
    if (!irreducible) return "irreducible";
    if (!maximal) return "maximal";
    if (!trivial_stabilizer) return "trivial stabilizer";
    return "";
}

WitnessChecks check_witness(const WitnessSpec& spec, const BinaryQuarticForm& f) {
    WitnessChecks c;
    c.sign = f[0] != 0 && (f[0] > 0) == (spec.sign > 0);
    if (f.is_zero()) return c;
    c.primitive = content(f) == 1;
    Integer d = discriminant(f);
    c.discriminant_large = Rational(abs(d)) > spec.threshold;
    Integer m = abs(spec.h) * spec.primes[0] * spec.primes[1] * spec.primes[2];
    c.bound_applicable = d != 0 && bound_applicable(d, m, spec.eps);
    for (const auto& cond : spec.conditions) {
        if (cond.shape == "split") {
            auto s = splits_completely(f, cond.modulus);
            bool ok = s && s->m0 == mod(cond.c, cond.modulus) && s->roots == cond.roots;
            for (std::size_t i = 0; i < 3; ++i)
                if (spec.primes[i] == cond.modulus) c.splits[i] = ok;
        } else if (cond.modulus == 16) {
            bool ok = is_L1_L2cubed(f, 2).has_value();
            for (std::size_t i = 0; i < 5; ++i) ok = ok && mod(f[i], 16) == cond.residues[i];
            c.shapes.emplace_back(16, ok);
        } else {
            c.shapes.emplace_back(cond.modulus, is_L1_L2cubed(f, cond.modulus).has_value());
        }
    }
    if (d == 0) return c;
    c.sextic_content = sextic_covariant(f).content();
    Factorization fac = factorize(c.sextic_content);
    c.sextic_content_factored = fac.complete;
    for (const auto& pp : fac.factors)
        if (pp.prime > 49) c.non_square_class.emplace_back(pp.prime, !is_square_class(f, pp.prime));
    if (!c.primitive) return c;
    IrreducibilityCertificate irr = irreducibility(f);
    c.irreducible = irr.irreducible;
    c.irreducibility_method = irr.method;
    MaximalityReport mr = maximality(f);
    c.maximal = mr.complete && mr.maximal;
    c.maximality_filter = mr.candidate_filter;
    if (c.irreducible) {
        StabilizerReport st = stabilizer(f);
        c.trivial_stabilizer = st.verdict == StabilizerVerdict::Trivial;
        c.stabilizer_bits = st.precision_bits;
    }
    return c;
}

Witness construct_witness(const Integer& h, std::uint64_t seed, const WitnessOptions& options) {
    require(h != 0, "h must be nonzero");
    require(options.multiplier_range >= 1, "multiplier range must be positive");
    std::mt19937_64 rng(seed);
    WitnessSpec spec;
    spec.h = h;
    spec.seed = seed;
    spec.primes = choose_primes(h);
    spec.sign = h > 0 ? 1 : -1;
    spec.threshold = discriminant_threshold(spec.primes);

    std::vector<Integer> odd;
    for (auto q : primes_up_to(47))
        if (q != 2) odd.push_back(Integer(static_cast<unsigned long>(q)));
    Factorization fh = factorize(h);
    require(fh.complete, "could not factor h");
    for (const auto& pp : fh.factors)
        if (pp.prime != 2 && !is_odd_prime_below_49(pp.prime)) odd.push_back(pp.prime);
    auto in_p = [&](const Integer& q) { return std::find(spec.primes.begin(), spec.primes.end(), q) != spec.primes.end(); };

    for (const auto& p : spec.primes) spec.conditions.push_back(split_condition(p));
    spec.conditions.push_back(two_adic_condition(rng));
    for (const auto& q : odd)
        if (!in_p(q)) spec.conditions.push_back(l1l2cubed_condition(q, rng));

    spec.modulus = 1;
    for (const auto& c : spec.conditions) spec.modulus *= c.modulus;
    Poly base;
    for (std::size_t k = 0; k < 5; ++k) {
        std::vector<std::pair<Integer, Integer>> cong;
        for (const auto& c : spec.conditions) cong.emplace_back(c.residues[k], c.modulus);
        base[k] = crt(cong);
        if (k > 0 && 2 * base[k] > spec.modulus) base[k] -= spec.modulus;
    }

    const auto range = static_cast<std::uint64_t>(options.multiplier_range);
    std::string last;
    for (unsigned attempt = 1; attempt <= options.max_attempts; ++attempt) {
        BinaryQuarticForm f;
        for (std::size_t k = 0; k < 5; ++k) {
            long t = static_cast<long>(rng() % (2 * range + 1)) - static_cast<long>(range);
            if (k == 0) t = spec.sign > 0 ? static_cast<long>(rng() % (range + 1)) : -1 - static_cast<long>(rng() % range);
            f[k] = base[k] + Integer(t) * spec.modulus;
        }
        WitnessChecks checks = check_witness(spec, f);
        if (checks.all()) {
            spec.attempts = attempt;
            return {spec, f, checks};
        }
        last = checks.first_failure();
    }
    throw StageError("construct", "retry budget exhausted; last failure: " + last);
}

WitnessReport verify_theorem(const Integer& h, long box, std::uint64_t seed, unsigned jobs, const WitnessOptions& options) {
    require(h != 0, "h must be nonzero");
    require(box >= 1, "box must be at least 1");
    WitnessReport r;
    r.witness = construct_witness(h, seed, options);
    const auto& spec = r.witness.spec;
    const auto& f = r.witness.form;
    WitnessChecks again = check_witness(spec, f);
    if (!again.all()) throw StageError("recheck", again.first_failure());
    r.invariants = invariants(f);

    try {
        r.family = build_family(f, spec.primes, h);
    } catch (const std::exception& e) {
        throw StageError("family", e.what());
    }
    Integer m = h * spec.primes[0] * spec.primes[1] * spec.primes[2];
    r.parent_local = local_everywhere(f, m);
    r.members_locally_soluble = true;
    for (const auto& g : r.family.members) {
        r.member_local.push_back(local_everywhere(g.form, h));
        r.members_locally_soluble = r.members_locally_soluble && r.member_local.back().summary == Verdict::Soluble;
    }

    r.parent_solutions = primitive_solutions_in_box(f, m, box, jobs);
    for (const auto& g : r.family.members) r.member_solutions.push_back(primitive_solutions_in_box(g.form, h, box, jobs));
    r.correspondence = verify_correspondence(r.family, r.parent_solutions, r.member_solutions);

    r.signature = real_signature(f);
    r.count_bound = count_bound(r.signature, spec.eps);
    r.within_bound = static_cast<long>(r.parent_solutions.points.size()) <= r.count_bound;
    for (std::size_t j = 0; j < r.member_solutions.size(); ++j)
        if (r.member_solutions[j].points.empty()) r.empty_members.push_back(j);
    r.required_empty = static_cast<long>(r.family.members.size()) - r.count_bound;
    r.enough_empty = static_cast<long>(r.empty_members.size()) >= r.required_empty;
    r.verified = again.all() && r.family.members.size() == 64 && r.members_locally_soluble &&
                 r.correspondence.bijective && r.within_bound && r.enough_empty;
    return r;
}

}  // namespace qhl
