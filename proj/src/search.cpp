#include "qhl/search.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace qhl {

namespace {

using u64 = std::uint64_t;

// F(x, y) mod 2^64 with wrapping arithmetic.
u64 eval_wrapped(const std::array<u64, 5>& c, u64 x, u64 y) {
    u64 acc = c[0], ypow = y;
    for (int i = 1; i < 5; ++i) {
        acc = acc * x + c[i] * ypow;
        ypow *= y;
    }
    return acc;
}

u64 wrap(const Integer& a) {
    Integer r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), a.get_mpz_t(), 64);
    u64 out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, r.get_mpz_t());
    return out;
}

void scan_rows(const BinaryQuarticForm& f, const Integer& m, long box, long y_lo, long y_hi, std::vector<Point>& out) {
    std::array<u64, 5> c;
    for (int i = 0; i < 5; ++i) c[i] = wrap(f[i]);
    const u64 target = wrap(m);
    for (long y = std::max(y_lo, 1L); y <= y_hi; ++y) {
        u64 yy = static_cast<u64>(y);
        u64 x0 = static_cast<u64>(-box);
        // forward differences of x -> F(x, y) starting at x = -box
        std::array<u64, 5> v;
        for (int i = 0; i < 5; ++i) v[i] = eval_wrapped(c, x0 + static_cast<u64>(i), yy);
        for (int order = 1; order < 5; ++order)
            for (int i = 4; i >= order; --i) v[i] -= v[i - 1];
        u64 d0 = v[0], d1 = v[1], d2 = v[2], d3 = v[3];
        const u64 d4 = v[4];
        for (long x = -box; x <= box; ++x) {
            if (d0 == target) {
                Integer X = x, Y = y;
                if (gcd(X, Y) == 1 && f(X, Y) == m) {
                    out.push_back({X, Y});
                    out.push_back({Integer(-X), Integer(-Y)});
                }
            }
            d0 += d1;
            d1 += d2;
            d2 += d3;
            d3 += d4;
        }
    }
}

}  // namespace

SolutionSet primitive_solutions_in_box(const BinaryQuarticForm& f, const Integer& m, long box, unsigned jobs) {
    require(m != 0, "target must be nonzero");
    require(box >= 1, "box bound must be at least 1");
    require(box <= (1L << 40), "box bound too large");
    SolutionSet s{f, m, box, {}};
    if (f[0] == m) s.points = {{1, 0}, {-1, 0}};
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(box)));
    std::vector<std::vector<Point>> parts(jobs);
    if (jobs == 1) {
        scan_rows(f, m, box, 1, box, parts[0]);
    } else {
        std::vector<std::thread> pool;
        long chunk = (box + jobs - 1) / jobs;
        for (unsigned j = 0; j < jobs; ++j) {
            long lo = 1 + j * chunk, hi = std::min<long>(box, lo + chunk - 1);
            pool.emplace_back([&, lo, hi, j] { scan_rows(f, m, box, lo, hi, parts[j]); });
        }
        for (auto& t : pool) t.join();
    }
    for (auto& p : parts) s.points.insert(s.points.end(), p.begin(), p.end());
    std::sort(s.points.begin(), s.points.end());
    return s;
}

long count_bound(int signature, const Rational& eps) {
    require(signature >= 0 && signature <= 2, "signature must be 0, 1 or 2");
    require(eps > 0 && eps < Rational(1, 6), "epsilon must lie in (0, 1/6)");
    Rational q = Rational(4 - signature) / (3 * eps);
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return 36 - 16 * signature + c.get_si();
}

bool bound_applicable(const Integer& d, const Integer& m, const Rational& eps) {
    require(eps > 0 && eps < Rational(1, 6), "epsilon must lie in (0, 1/6)");
    if (m == 0 || d == 0) return false;
    // |m|^(6b) 49^(6b) <= |D|^(b - 6a) 4^(2b) for eps = a / b
    Integer a = eps.get_num(), b = eps.get_den();
    unsigned long b6 = Integer(6 * b).get_ui(), e = Integer(b - 6 * a).get_ui(), b2 = Integer(2 * b).get_ui();
    return pow(abs(m), b6) * pow(Integer(49), b6) <= pow(abs(d), e) * pow(Integer(4), b2);
}

std::vector<BinaryQuarticForm> path_forms(const BinaryQuarticForm& parent, const std::array<DescentLabel, 3>& path) {
    std::vector<BinaryQuarticForm> forms{parent};
    for (const auto& l : path) forms.push_back(descend_at(forms.back(), l.p, l.root));
    return forms;
}

CorrespondenceReport verify_correspondence(const GFamily& family, long box, unsigned jobs) {
    Integer target = family.h * family.primes[0] * family.primes[1] * family.primes[2];
    SolutionSet parent = primitive_solutions_in_box(family.parent, target, box, jobs);
    std::vector<SolutionSet> members;
    for (const auto& m : family.members) members.push_back(primitive_solutions_in_box(m.form, family.h, box, jobs));
    return verify_correspondence(family, parent, members);
}

CorrespondenceReport verify_correspondence(const GFamily& family, const SolutionSet& parent,
                                           const std::vector<SolutionSet>& members) {
    require(members.size() == family.members.size(), "one solution set per member");
    CorrespondenceReport r;
    r.target = family.h * family.primes[0] * family.primes[1] * family.primes[2];
    r.box = parent.box;
    require(parent.m == r.target, "parent solutions must be for h p1 p2 p3");
    r.parent_solutions = parent.points;
    std::map<std::string, std::size_t> index;
    for (std::size_t j = 0; j < family.members.size(); ++j) {
        const auto& p = family.members[j].path;
        index[to_string(p[0]) + "/" + to_string(p[1]) + "/" + to_string(p[2])] = j;
        r.member_counts.push_back(members[j].points.size());
    }
    // lift every parent solution down the path it selects
    for (const auto& s : parent.points) {
        BinaryQuarticForm g = family.parent;
        Point pt = s;
        std::string key;
        for (std::size_t k = 0; k < 3; ++k) {
            auto l = lift_solution(g, family.primes[k], pt);
            key += (k ? "/" : "") + to_string(l.label);
            g = descend_at(g, l.label.p, l.label.root);
            pt = l.point;
        }
        auto it = index.find(key);
        if (it == index.end()) {
            r.mismatches.push_back("lift of (" + to_string(s.first) + "," + to_string(s.second) + ") has no member");
            continue;
        }
        const auto& sols = members[it->second].points;
        if (g != family.members[it->second].form || g(pt.first, pt.second) != family.h) {
            r.mismatches.push_back("lift of (" + to_string(s.first) + "," + to_string(s.second) + ") is not a solution");
        } else if (!std::binary_search(sols.begin(), sols.end(), pt)) {
            r.mismatches.push_back("lift of (" + to_string(s.first) + "," + to_string(s.second) + ") left the box");
        } else {
            ++r.lifted;
        }
    }
    // push every member solution up to the parent
    for (std::size_t j = 0; j < members.size(); ++j) {
        for (const auto& t : members[j].points) {
            Point s = push_solution(family.members[j].path, t);
            if (family.parent(s.first, s.second) != r.target || gcd(s.first, s.second) != 1) {
                r.mismatches.push_back("push from member " + std::to_string(j) + " is not a primitive solution");
                continue;
            }
            if (abs(s.first) > parent.box || abs(s.second) > parent.box) {
                ++r.pushed_outside_box;
                continue;
            }
            if (!std::binary_search(parent.points.begin(), parent.points.end(), s))
                r.mismatches.push_back("push from member " + std::to_string(j) + " missing from parent search");
            else
                ++r.pushed_in_box;
        }
    }
    r.bijective = r.mismatches.empty() && r.lifted == parent.points.size() && r.pushed_in_box == parent.points.size();
    return r;
}

}  // namespace qhl
