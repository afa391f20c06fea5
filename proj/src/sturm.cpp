#include "qhl/sturm.hpp"

#include <algorithm>

namespace qhl {

Rational QPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly QPoly::derivative() const {
    QPoly d;
    for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * static_cast<unsigned long>(i));
    d.trim();
    return d;
}

void QPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

namespace {

QPoly remainder(QPoly f, const QPoly& g) {
    int dg = g.degree();
    while (f.degree() >= dg && !f.c.empty()) {
        Rational q = f.c.back() / g.c.back();
        int shift = f.degree() - dg;
        for (int j = 0; j <= dg; ++j) f.c[shift + j] -= q * g.c[j];
        f.c.pop_back();
        f.trim();
    }
    return f;
}

int sign(const Rational& q) { return sgn(q); }

int sign_changes(const std::vector<int>& signs) {
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int changes_at(const std::vector<QPoly>& seq, const Rational& x) {
    std::vector<int> s;
    for (const auto& p : seq) s.push_back(sign(p.eval(x)));
    return sign_changes(s);
}

int changes_at_infinity(const std::vector<QPoly>& seq, bool positive) {
    std::vector<int> s;
    for (const auto& p : seq) {
        int lead = sign(p.c.back());
        bool odd = p.degree() % 2 != 0;
        s.push_back(positive || !odd ? lead : -lead);
    }
    return sign_changes(s);
}

}  // namespace

std::vector<QPoly> sturm_sequence(const QPoly& f) {
    std::vector<QPoly> seq{f, f.derivative()};
    while (!seq.back().c.empty() && seq.back().degree() > 0) {
        QPoly r = remainder(seq[seq.size() - 2], seq.back());
        for (auto& v : r.c) v = -v;
        if (r.c.empty()) break;
        seq.push_back(r);
    }
    return seq;
}

int sturm_count(const std::vector<QPoly>& seq, const Rational& lo, const Rational& hi) {
    return changes_at(seq, lo) - changes_at(seq, hi);
}

int count_real_roots(const QPoly& f) {
    if (f.degree() <= 0) return 0;
    auto seq = sturm_sequence(f);
    return changes_at_infinity(seq, false) - changes_at_infinity(seq, true);
}

Rational root_bound(const QPoly& f) {
    Rational m = 0;
    for (int i = 0; i < f.degree(); ++i) {
        Rational r = abs(f.c[i] / f.c.back());
        if (r > m) m = r;
    }
    return m + 1;
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const QPoly& f) {
    std::vector<std::pair<Rational, Rational>> out;
    if (f.degree() <= 0) return out;
    auto seq = sturm_sequence(f);
    Rational b = root_bound(f);
    std::vector<std::pair<Rational, Rational>> work{{-b, b}};
    while (!work.empty()) {
        auto [lo, hi] = work.back();
        work.pop_back();
        int n = sturm_count(seq, lo, hi);
        if (n == 0) continue;
        if (n == 1 && sign(f.eval(lo)) * sign(f.eval(hi)) < 0) {
            out.push_back({lo, hi});
            continue;
        }
        // split points avoid exact roots so endpoints always carry a sign
        Rational mid = (lo + hi) / 2;
        while (f.eval(mid) == 0) mid = (lo + mid) / 2;
        work.push_back({lo, mid});
        work.push_back({mid, hi});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace qhl
