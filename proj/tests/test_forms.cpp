#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qhl/forms.hpp"

#include <random>
#include <set>

using namespace qhl;

namespace {

BinaryQuarticForm F(long a0, long a1, long a2, long a3, long a4) { return {a0, a1, a2, a3, a4}; }

// Discriminant of a0 != 0 quartic as Res(f, f') / a0 via the Sylvester determinant.
Integer sylvester_discriminant(const BinaryQuarticForm& f) {
    std::vector<Rational> p{Rational(f[0]), Rational(f[1]), Rational(f[2]), Rational(f[3]), Rational(f[4])};
    std::vector<Rational> d{Rational(4 * f[0]), Rational(3 * f[1]), Rational(2 * f[2]), Rational(f[3])};
    const int n = 7;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, 0));
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 5; ++k) m[r][r + k] = p[k];
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) m[3 + r][r + k] = d[k];
    Rational det = 1;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            Rational t = m[r][c] / m[c][c];
            for (int k = c; k < n; ++k) m[r][k] -= t * m[c][k];
        }
    }
    Rational disc = det / Rational(f[0]);
    REQUIRE(disc.get_den() == 1);
    return disc.get_num();
}

// Bounded search for an integral factor: linear u x + v y or quadratic with q0 | a0, q2 | a4.
bool has_small_factor(const BinaryQuarticForm& f, long bound) {
    for (long u = 0; u <= bound; ++u)
        for (long v = -bound; v <= bound; ++v) {
            if (u == 0 && v <= 0) continue;
            if (f(Integer(-v), Integer(u)) == 0) return true;  // root (x:y) = (-v:u)
        }
    long a0 = f[0].get_si(), a4 = f[4].get_si();
    for (long q0 = 1; q0 <= std::labs(a0); ++q0) {
        if (a0 % q0) continue;
        for (long q2 = -std::labs(a4); q2 <= std::labs(a4); ++q2) {
            if (q2 == 0 || a4 % q2) continue;
            for (long q1 = -bound; q1 <= bound; ++q1) {
                // divide f(x,1) by q0 x^2 + q1 x + q2 over Q and test for zero remainder
                std::vector<Rational> r{Rational(f[0]), Rational(f[1]), Rational(f[2]), Rational(f[3]), Rational(f[4])};
                for (int k = 0; k < 3; ++k) {
                    Rational t = r[k] / q0;
                    r[k] -= t * q0;
                    r[k + 1] -= t * q1;
                    r[k + 2] -= t * q2;
                }
                if (r[3] == 0 && r[4] == 0) return true;
            }
        }
    }
    return false;
}

}  // namespace

TEST_CASE("invariants of x^4 + y^4") {
    auto d = invariants(F(1, 0, 0, 0, 1));
    CHECK(d.I == 12);
    CHECK(d.J == 0);
    CHECK(d.D == 256);
    CHECK(d.H == 1728);
    CHECK(d.signature == 2);
}

TEST_CASE("zero form is degenerate") {
    auto d = invariants(F(0, 0, 0, 0, 0));
    CHECK(d.I == 0);
    CHECK(d.J == 0);
    CHECK(d.D == 0);
    CHECK_FALSE(d.signature.has_value());
}

TEST_CASE("unimodular image keeps I and J") {
    auto d = invariants(F(1, 4, 6, 4, 2));
    CHECK(d.I == 12);
    CHECK(d.J == 0);
}

TEST_CASE("matrix action") {
    CHECK(apply_matrix(F(1, 0, 0, 0, 1), {1, 1, 0, 1}) == F(1, 4, 6, 4, 2));
    CHECK(apply_matrix(F(3, -1, 4, 1, -5), IntegerMatrix2x2::identity()) == F(3, -1, 4, 1, -5));
    auto g = apply_matrix(F(1, 0, 0, 0, 1), {1, 0, 0, 2});
    CHECK(g == F(1, 0, 0, 0, 16));
    CHECK(discriminant(g) == 256 * pow(Integer(2), 12));
}

TEST_CASE("composition of actions") {
    IntegerMatrix2x2 a{2, -1, 3, 5}, b{1, 4, -2, 1};
    auto f = F(3, 1, -4, 1, 5);
    CHECK(apply_matrix(apply_matrix(f, a), b) == apply_matrix(f, a * b));
}

TEST_CASE("invariant weights under random matrices") {
    std::mt19937_64 rng(7);
    auto r = [&](long k) { return static_cast<long>(rng() % (2 * k + 1)) - k; };
    for (int t = 0; t < 300; ++t) {
        auto f = F(r(20), r(20), r(20), r(20), r(20));
        IntegerMatrix2x2 a{r(6), r(6), r(6), r(6)};
        auto g = apply_matrix(f, a);
        Integer det = a.det();
        CHECK(invariant_I(g) == pow(det, 4) * invariant_I(f));
        CHECK(invariant_J(g) == pow(det, 6) * invariant_J(f));
        CHECK(discriminant(g) == pow(det, 12) * discriminant(f));
        auto hf = height(invariant_I(f), invariant_J(f));
        CHECK(height(invariant_I(g), invariant_J(g)) == hf * Rational(pow(det, 12)));
        Integer I = invariant_I(f), J = invariant_J(f);
        CHECK(27 * discriminant(f) == 4 * I * I * I - J * J);
        CHECK(invariant_pair_admissible(I, J));
        if (f[0] != 0) CHECK(discriminant(f) == sylvester_discriminant(f));
        if (discriminant(f) != 0 && a.is_unimodular()) CHECK(real_signature(f) == real_signature(g));
        if (!f.is_zero()) CHECK(content(Integer(-6) * f) == 6 * content(f));
    }
}

TEST_CASE("content and primitive part") {
    CHECK(content(F(2, 4, 6, 8, 10)) == 2);
    CHECK(primitive_part(F(2, 4, 6, 8, 10)) == F(1, 2, 3, 4, 5));
    CHECK(content(F(1, 0, 0, 0, 1)) == 1);
    CHECK(content(F(-3, 0, 6, 0, -9)) == 3);
    CHECK_THROWS_AS(content(F(0, 0, 0, 0, 0)), PreconditionError);
}

TEST_CASE("real signature") {
    CHECK(real_signature(F(1, 0, 0, 0, 1)) == 2);
    CHECK(real_signature(F(1, 0, -5, 0, 6)) == 0);
    CHECK(real_signature(F(1, 0, -1, 0, -2)) == 1);
    CHECK(real_signature(F(0, 1, 0, -1, 0)) == 0);  // y x (x-y)(x+y)
    CHECK(real_signature(F(0, 1, 0, 1, 0)) == 1);   // x y (x^2 + y^2)
    CHECK_THROWS_AS(real_signature(F(1, 2, 1, 0, 0)), PreconditionError);
}

TEST_CASE("covariants vanish on square classes") {
    // c M^2 has identically zero sextic covariant; c L^4 has zero Hessian
    BinaryForm m{{3, -2, 5}};
    BinaryForm sq = m * m;
    BinaryQuarticForm f(sq.coeffs[0], sq.coeffs[1], sq.coeffs[2], sq.coeffs[3], sq.coeffs[4]);
    for (const auto& c : sextic_covariant(f).coeffs) CHECK(c == 0);
    BinaryForm l{{2, 7}};
    BinaryForm l4 = l * l * l * l;
    BinaryQuarticForm g(l4.coeffs[0], l4.coeffs[1], l4.coeffs[2], l4.coeffs[3], l4.coeffs[4]);
    for (const auto& c : hessian(g).coeffs) CHECK(c == 0);
    CHECK(sextic_covariant(F(1, 0, 0, 0, 1)).degree() == 6);
}

TEST_CASE("admissibility") {
    CHECK(invariant_pair_admissible(12, 0));
    CHECK(invariant_pair_admissible(1, 2));
    CHECK(invariant_pair_admissible(1, -2));
    CHECK_FALSE(invariant_pair_admissible(2, 5));
    CHECK_FALSE(invariant_pair_admissible(1, 3));
}

TEST_CASE("admissibility agrees with realized small forms") {
    // every (I mod 9, J mod 27) class hit by a small form is admissible, and every
    // admissible class is hit
    std::set<std::pair<int, int>> hit;
    for (int a0 = -2; a0 <= 2; ++a0)
        for (int a1 = -2; a1 <= 2; ++a1)
            for (int a2 = -3; a2 <= 3; ++a2)
                for (int a3 = -3; a3 <= 3; ++a3)
                    for (int a4 = -3; a4 <= 3; ++a4) {
                        auto f = F(a0, a1, a2, a3, a4);
                        hit.insert({static_cast<int>(mod(invariant_I(f), 9).get_si()),
                                    static_cast<int>(mod(invariant_J(f), 27).get_si())});
                    }
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 27; ++j) CHECK(invariant_pair_admissible(i, j) == (hit.count({i, j}) > 0));
}

TEST_CASE("realize invariants") {
    auto f = realize_invariants(-3, 27);
    REQUIRE(f);
    CHECK(*f == F(0, 1, 0, 1, 1));
    auto g = realize_invariants(0, 0);
    REQUIRE(g);
    CHECK(*g == F(0, 1, 0, 0, 0));
    CHECK_THROWS_AS(realize_invariants(2, 5), PreconditionError);
    for (long i = -20; i <= 20; ++i)
        for (long j = -60; j <= 60; ++j) {
            if (!invariant_pair_admissible(i, j)) continue;
            auto h = realize_invariants(i, j);
            REQUIRE(h);
            CHECK(invariant_I(*h) == i);
            CHECK(invariant_J(*h) == j);
        }
}

TEST_CASE("irreducibility examples") {
    CHECK(is_irreducible(F(1, 0, 0, 0, 1)));
    CHECK_FALSE(is_irreducible(F(1, 0, -5, 0, 6)));
    CHECK_FALSE(is_irreducible(F(0, 1, 0, 0, 1)));
    CHECK(irreducibility_exhaustive(F(1, 0, 0, 0, 1)).irreducible);
    auto c = irreducibility(F(1, 0, -5, 0, 6));
    REQUIRE(c.factor);
    CHECK_THROWS_AS(is_irreducible(F(2, 0, 0, 0, 2)), PreconditionError);
    CHECK_THROWS_AS(is_irreducible(F(1, 2, 1, 0, 0)), PreconditionError);
}

TEST_CASE("irreducibility agrees with bounded factor search") {
    std::mt19937_64 rng(11);
    auto r = [&](long k) { return static_cast<long>(rng() % (2 * k + 1)) - k; };
    int reducible = 0, irreducible = 0;
    for (int t = 0; t < 400; ++t) {
        BinaryQuarticForm f;
        if (t % 2 == 0) {
            BinaryForm a{{r(3), r(3), r(3)}}, b{{r(3), r(3), r(3)}};
            if (t % 4 == 0) a = BinaryForm{{r(3), r(3)}}, b = BinaryForm{{r(3), r(3), r(3), r(3)}};
            BinaryForm p = a * b;
            f = BinaryQuarticForm(p.coeffs[0], p.coeffs[1], p.coeffs[2], p.coeffs[3], p.coeffs[4]);
        } else {
            f = F(r(4), r(4), r(4), r(4), r(4));
        }
        if (f.is_zero() || content(f) != 1 || discriminant(f) == 0) continue;
        bool irr = is_irreducible(f);
        CHECK(irr == irreducibility_exhaustive(f).irreducible);
        CHECK(irr == !has_small_factor(f, 40));
        irr ? ++irreducible : ++reducible;
    }
    CHECK(reducible > 20);
    CHECK(irreducible > 20);
}

TEST_CASE("maximality") {
    CHECK_FALSE(is_maximal(F(1, 0, 0, 0, 16)));
    auto rep = maximality(F(1, 0, 0, 0, 16));
    REQUIRE(rep.primes.size() == 1);
    CHECK(rep.primes[0].p == 2);
    REQUIRE(rep.primes[0].witness);
    CHECK(is_maximal(F(1, 0, 0, 0, 1)));
    // squarefree discriminant: nothing to test
    auto f = F(1, 0, 0, 1, 1);
    CHECK(is_maximal(f));
    CHECK(maximality(f).primes.empty());
    CHECK_THROWS_AS(is_maximal(F(2, 0, 0, 0, 2)), PreconditionError);
}

TEST_CASE("maximality detects planted subforms") {
    std::mt19937_64 rng(3);
    auto r = [&](long k) { return static_cast<long>(rng() % (2 * k + 1)) - k; };
    for (long p : {2L, 3L, 5L, 7L}) {
        for (int t = 0; t < 20; ++t) {
            auto g = F(r(9), r(9), r(9), r(9), r(9));
            if (g.is_zero() || discriminant(g) == 0) continue;
            IntegerMatrix2x2 b = (t % 2) ? IntegerMatrix2x2{p, r(p), 0, 1} : IntegerMatrix2x2{1, 0, r(4), p};
            auto f = apply_matrix(g, b);
            if (content(f) != 1) continue;
            CHECK_FALSE(is_maximal(f));
            auto w = non_maximal_witness(f, p);
            REQUIRE(w);
            auto h = apply_matrix(f, *w);
            for (const auto& c : h.a) CHECK(mpz_divisible_ui_p(c.get_mpz_t(), p * p * p * p));
        }
    }
}

TEST_CASE("stabilizer") {
    CHECK_FALSE(stabilizer_is_trivial(F(1, 0, 0, 0, 1)));
    auto rep = stabilizer(F(1, 0, 0, 0, 1));
    CHECK(rep.verdict == StabilizerVerdict::NonTrivial);
    REQUIRE(rep.witness);
    CHECK(stabilizes(F(1, 0, 0, 0, 1), *rep.witness));
    CHECK(stabilizes(F(1, 0, 0, 0, 1), {0, 1, 1, 0}));
    CHECK(stabilizes(F(1, 0, 0, 0, 1), {1, 0, 0, -1}));
    CHECK_FALSE(stabilizes(F(1, 0, 0, 0, 1), {2, 0, 0, 2}));
    // F(y,-x) = F(x,y): the involution z -> -1/z has no rational fixed point
    CHECK_FALSE(stabilizer_is_trivial(F(1, 2, 3, -2, 1)));
    CHECK_THROWS_AS(stabilizer(F(1, 0, -5, 0, 6)), PreconditionError);
}

TEST_CASE("stabilizer on symmetric and conjugated forms") {
    std::mt19937_64 rng(5);
    auto r = [&](long k) { return static_cast<long>(rng() % (2 * k + 1)) - k; };
    int checked = 0;
    while (checked < 25) {
        long a = r(30), b = r(30), c = r(30);
        auto f = F(a, b, c, b, a);  // F(x,y) = F(y,x)
        if (a == 0 || discriminant(f) == 0 || content(f) != 1 || !is_irreducible(f)) continue;
        CHECK_FALSE(stabilizer_is_trivial(f));
        IntegerMatrix2x2 m{1, r(5), 0, 1};
        m = m * IntegerMatrix2x2{1, 0, r(5), 1};
        auto g = apply_matrix(f, m);
        CHECK_FALSE(stabilizer_is_trivial(g));
        ++checked;
    }
}

TEST_CASE("generic forms have trivial stabilizer") {
    std::mt19937_64 rng(9);
    int checked = 0;
    while (checked < 25) {
        auto big = [&] { return Integer(static_cast<long>(rng() % 2000001)) - 1000000; };
        BinaryQuarticForm f(big(), big(), big(), big(), big());
        if (f[0] == 0 || discriminant(f) == 0 || content(f) != 1 || !is_irreducible(f)) continue;
        CHECK(stabilizer_is_trivial(f));
        // no small integral matrix stabilizes it either
        for (long a = -2; a <= 2; ++a)
            for (long b = -2; b <= 2; ++b)
                for (long c = -2; c <= 2; ++c)
                    for (long d = -2; d <= 2; ++d) {
                        IntegerMatrix2x2 m{a, b, c, d};
                        if (m.det() == 0) continue;
                        CHECK_FALSE(stabilizes(f, m));
                    }
        ++checked;
    }
}

TEST_CASE("form text format") {
    CHECK(parse_form("1, -2,3 4 ,5") == F(1, -2, 3, 4, 5));
    CHECK(to_string(F(1, -2, 3, 4, 5)) == "1,-2,3,4,5");
    CHECK_THROWS_AS(parse_form("1 2 3"), PreconditionError);
    CHECK_THROWS_AS(parse_form("1 2 x 4 5"), PreconditionError);
}
