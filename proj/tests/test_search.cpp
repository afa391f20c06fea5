#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qhl/search.hpp"

#include <random>

using namespace qhl;

namespace {

BinaryQuarticForm F(long a0, long a1, long a2, long a3, long a4) { return {a0, a1, a2, a3, a4}; }

std::vector<Point> brute_force(const BinaryQuarticForm& f, const Integer& m, long box) {
    std::vector<Point> out;
    for (long x = -box; x <= box; ++x)
        for (long y = -box; y <= box; ++y)
            if (gcd(Integer(x), Integer(y)) == 1 && f(x, y) == m) out.push_back({x, y});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("search examples") {
    auto s = primitive_solutions_in_box(F(1, 0, 0, 0, 1), 2, 10);
    CHECK(s.points == std::vector<Point>{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}});
    CHECK(primitive_solutions_in_box(F(1, 0, 0, 0, 1), 3, 100).points.empty());
    auto t = primitive_solutions_in_box(F(2, -20, 70, -100, 53), 245, 10);
    CHECK(std::binary_search(t.points.begin(), t.points.end(), Point{6, 1}));
    CHECK(primitive_solutions_in_box(F(1, 0, 0, 0, 1), 1, 5).points.size() == 4);
    CHECK_THROWS_AS(primitive_solutions_in_box(F(1, 0, 0, 0, 1), 0, 5), PreconditionError);
    CHECK_THROWS_AS(primitive_solutions_in_box(F(1, 0, 0, 0, 1), 1, 0), PreconditionError);
}

TEST_CASE("search agrees with brute force") {
    std::mt19937_64 rng(31);
    auto r = [&](long k) { return static_cast<long>(rng() % (2 * k + 1)) - k; };
    for (int t = 0; t < 60; ++t) {
        auto f = F(r(5), r(5), r(5), r(5), r(5));
        long x = r(6), y = r(6);
        Integer m = f(x, y);
        if (m == 0) continue;
        auto s = primitive_solutions_in_box(f, m, 15, 1 + t % 3);
        CHECK(s.points == brute_force(f, m, 15));
        for (const auto& p : s.points) CHECK(std::binary_search(s.points.begin(), s.points.end(), Point{-p.first, -p.second}));
    }
    // large coefficients exercise the wrapping arithmetic
    BinaryQuarticForm big(Integer("123456789012345678901234567"), Integer("-98765432109876543210"), 7,
                          Integer("555555555555555555555"), Integer("-3"));
    Integer m = big(3, -7);
    auto s = primitive_solutions_in_box(big, m, 20);
    CHECK(s.points == brute_force(big, m, 20));
    CHECK(std::binary_search(s.points.begin(), s.points.end(), Point{3, -7}));
}

TEST_CASE("unimodular change of variables maps solutions") {
    auto f = F(1, -1, 3, 2, -5);
    IntegerMatrix2x2 a{1, 1, 0, 1};
    auto g = apply_matrix(f, a);
    Integer m = f(2, 1);
    auto sf = primitive_solutions_in_box(f, m, 30);
    auto sg = primitive_solutions_in_box(g, m, 30);
    for (const auto& [x, y] : sg.points) {
        Point img{x + y, y};
        if (abs(img.first) <= 30) CHECK(std::binary_search(sf.points.begin(), sf.points.end(), img));
    }
}

TEST_CASE("count bound") {
    CHECK(count_bound(2, Rational(1, 12)) == 12);
    CHECK(count_bound(1, Rational(1, 12)) == 32);
    CHECK(count_bound(0, Rational(1, 12)) == 52);
    CHECK(count_bound(0, Rational(1, 7)) == 36 + 10);  // ceil(28/3)
    CHECK_THROWS_AS(count_bound(0, Rational(1, 6)), PreconditionError);
    CHECK_THROWS_AS(count_bound(0, Rational(0)), PreconditionError);
}

TEST_CASE("bound applicability boundary") {
    // eps = 1/12: m^72 49^72 <= |D|^6 4^24, i.e. |D| >= (49 m / 4)^12 4^8
    Integer m = 385;
    Integer d0 = pow(Integer(49 * 385), 12) * pow(Integer(4), 8);  // 4^12 |D| = that when |D| = this / 4^12
    // smallest integer |D| with 4^12 |D| >= 49^12 385^12 4^8 / ... checked by the defining inequality
    Integer lo = 1, hi = d0;
    while (lo < hi) {
        Integer mid = (lo + hi) / 2;
        if (pow(m, 72) * pow(Integer(49), 72) <= pow(mid, 6) * pow(Integer(4), 24)) hi = mid;
        else lo = mid + 1;
    }
    CHECK(bound_applicable(lo, m, Rational(1, 12)));
    CHECK(bound_applicable(-lo, -m, Rational(1, 12)));
    CHECK_FALSE(bound_applicable(lo - 1, m, Rational(1, 12)));
    // the same threshold as 2^8 |D| >= 7^24 385^12
    CHECK(Integer(256) * lo >= pow(Integer(7), 24) * pow(m, 12));
    CHECK(Integer(256) * (lo - 1) < pow(Integer(7), 24) * pow(m, 12));
}

TEST_CASE("correspondence on a small family") {
    std::vector<ProjectiveRoot> roots{ProjectiveRoot::finite(1), ProjectiveRoot::finite(2), ProjectiveRoot::finite(3),
                                      ProjectiveRoot::finite(4)};
    auto r5 = expand_split(5, 1, roots), r7 = expand_split(7, 1, roots), r11 = expand_split(11, 1, roots);
    std::mt19937_64 rng(6);
    for (;;) {
        BinaryQuarticForm f;
        for (int i = 0; i < 4; ++i)
            f[i] = crt({r5[i], r7[i], r11[i]}, {5, 7, 11}) + 385 * (static_cast<long>(rng() % 5) - 2);
        // choose a4 so that F(1, 1) = 385
        f[4] = 0;
        f[4] = 385 - f(1, 1);
        if (!splits_completely(f, 5) || !splits_completely(f, 7) || !splits_completely(f, 11)) continue;
        if (content(f) != 1 || discriminant(f) == 0 || !is_irreducible(f) || !stabilizer_is_trivial(f)) continue;
        auto fam = build_family(f, {Integer(5), Integer(7), Integer(11)}, 1);
        auto rep = verify_correspondence(fam, 60);
        CHECK(rep.parent_solutions.size() >= 2);
        CHECK(rep.mismatches.empty());
        CHECK(rep.bijective);
        break;
    }
}
