#include "qhl/modular.hpp"

#include <algorithm>

namespace qhl {

// ---------------------------------------------------------------------------
// FpPoly

FpPoly::FpPoly(Integer p, std::vector<Integer> coeffs) : p_(std::move(p)), c_(std::move(coeffs)) {
    for (auto& c : c_) c = mod(c, p_);
    trim();
}

FpPoly FpPoly::x(const Integer& p) { return FpPoly(p, {0, 1}); }
FpPoly FpPoly::constant(const Integer& p, const Integer& c) { return FpPoly(p, {c}); }

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monic() const {
    if (is_zero()) return *this;
    Integer inv = *inverse_mod(lead(), p_);
    std::vector<Integer> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * inv;
    return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::derivative() const {
    std::vector<Integer> out;
    for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * static_cast<unsigned long>(i));
    return FpPoly(p_, std::move(out));
}

Integer FpPoly::eval(const Integer& x) const {
    Integer acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = mod(Integer(acc * x + *it), p_);
    return acc;
}

FpPoly operator+(const FpPoly& f, const FpPoly& g) {
    std::vector<Integer> out(std::max(f.c_.size(), g.c_.size()), 0);
    for (std::size_t i = 0; i < f.c_.size(); ++i) out[i] += f.c_[i];
    for (std::size_t i = 0; i < g.c_.size(); ++i) out[i] += g.c_[i];
    return FpPoly(f.p_, std::move(out));
}

FpPoly operator-(const FpPoly& f, const FpPoly& g) {
    std::vector<Integer> out(std::max(f.c_.size(), g.c_.size()), 0);
    for (std::size_t i = 0; i < f.c_.size(); ++i) out[i] += f.c_[i];
    for (std::size_t i = 0; i < g.c_.size(); ++i) out[i] -= g.c_[i];
    return FpPoly(f.p_, std::move(out));
}

FpPoly operator*(const FpPoly& f, const FpPoly& g) {
    if (f.is_zero() || g.is_zero()) return FpPoly(f.p_, {});
    std::vector<Integer> out(f.c_.size() + g.c_.size() - 1, 0);
    for (std::size_t i = 0; i < f.c_.size(); ++i)
        for (std::size_t j = 0; j < g.c_.size(); ++j) out[i + j] += f.c_[i] * g.c_[j];
    return FpPoly(f.p_, std::move(out));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& f, const FpPoly& g) {
    require(!g.is_zero(), "polynomial division by zero");
    const Integer& p = f.p_;
    std::vector<Integer> rem = f.c_;
    int dg = g.degree();
    if (f.degree() < dg) return {FpPoly(p, {}), f};
    std::vector<Integer> quo(f.degree() - dg + 1, 0);
    Integer inv = *inverse_mod(g.lead(), p);
    for (int k = f.degree(); k >= dg; --k) {
        Integer q = mod(Integer(rem[k] * inv), p);
        if (q == 0) continue;
        quo[k - dg] = q;
        for (int j = 0; j <= dg; ++j) rem[k - dg + j] = mod(Integer(rem[k - dg + j] - q * g.c_[j]), p);
    }
    return {FpPoly(p, std::move(quo)), FpPoly(p, std::move(rem))};
}

FpPoly FpPoly::gcd(FpPoly f, FpPoly g) {
    while (!g.is_zero()) {
        FpPoly r = divmod(f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

FpPoly FpPoly::powmod(const FpPoly& base, const Integer& e, const FpPoly& m) {
    FpPoly result = constant(m.p_, 1);
    result = divmod(result, m).second;
    FpPoly b = divmod(base, m).second;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = divmod(result * result, m).second;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = divmod(result * b, m).second;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Projective roots

bool operator<(const ProjectiveRoot& r, const ProjectiveRoot& s) {
    if (r.is_infinity()) return false;
    if (s.is_infinity()) return true;
    return *r.value < *s.value;
}

std::string to_string(const ProjectiveRoot& r) { return r.is_infinity() ? "inf" : to_string(*r.value); }

namespace {

constexpr std::uint32_t kExhaustiveLimit = 1'000'000;

bool fits_small(const Integer& p) { return p <= kExhaustiveLimit; }

SmallResidues to_small(const ResidueForm& r) {
    SmallResidues s{};
    for (int i = 0; i < 5; ++i) s[i] = static_cast<std::uint32_t>(r[i].get_ui());
    return s;
}

void require_prime(const Integer& p) { require(is_prime(p), "modulus " + to_string(p) + " is not prime"); }

// f(X) = F(X, 1) mod p, ascending coefficients, and the multiplicity of infinity.
std::pair<FpPoly, int> dehomogenize(const ResidueForm& r, const Integer& p) {
    int inf = 0;
    while (inf < 5 && r[inf] == 0) ++inf;
    std::vector<Integer> asc;
    for (int k = 4; k >= 0; --k) asc.push_back(r[k]);  // X^0 .. X^4
    return {FpPoly(p, asc), inf};
}

// Distinct roots of a polynomial dividing X^p - X, by equal-degree splitting with
// deterministic shifts (X + a)^((p-1)/2).
void split_linear(const FpPoly& g, std::vector<Integer>& out) {
    const Integer& p = g.modulus();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        FpPoly m = g.monic();
        out.push_back(mod(Integer(-m.coeffs()[0]), p));
        return;
    }
    Integer half = (p - 1) / 2;
    for (Integer a = 0; a < p; ++a) {
        FpPoly shift(p, {a, 1});
        FpPoly t = FpPoly::powmod(shift, half, g) - FpPoly::constant(p, 1);
        FpPoly d = FpPoly::gcd(g, t);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear(d, out);
            split_linear(FpPoly::divmod(g, d).first, out);
            return;
        }
    }
    throw InternalError("equal-degree splitting failed");
}

std::vector<RootWithMultiplicity> roots_generic(const ResidueForm& r, const Integer& p) {
    auto [f, inf] = dehomogenize(r, p);
    std::vector<RootWithMultiplicity> out;
    if (f.degree() > 0) {
        FpPoly xp = FpPoly::powmod(FpPoly::x(p), p, f);
        FpPoly g = FpPoly::gcd(f, xp - FpPoly::x(p));
        std::vector<Integer> roots;
        split_linear(g, roots);
        std::sort(roots.begin(), roots.end());
        for (const Integer& b : roots) {
            FpPoly lin(p, {Integer(-b), 1});
            FpPoly cur = f;
            int mult = 0;
            for (;;) {
                auto [q, rem] = FpPoly::divmod(cur, lin);
                if (!rem.is_zero()) break;
                ++mult;
                cur = q;
            }
            out.push_back({ProjectiveRoot::finite(b), mult});
        }
    }
    if (inf > 0) out.push_back({ProjectiveRoot::infinity(), inf});
    return out;
}

std::vector<int> sorted_multiplicities(const std::vector<std::pair<std::uint32_t, int>>& roots) {
    std::vector<int> m;
    for (auto& [r, k] : roots) m.push_back(k);
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace

ResidueForm reduce_mod_p(const BinaryQuarticForm& f, const Integer& p) {
    require_prime(p);
    ResidueForm r;
    for (int i = 0; i < 5; ++i) r[i] = mod(f[i], p);
    return r;
}

std::vector<std::pair<std::uint32_t, int>> small_root_multiplicities(const SmallResidues& c, std::uint32_t p) {
    std::vector<std::pair<std::uint32_t, int>> out;
    int inf = 0;
    while (inf < 5 && c[inf] == 0) ++inf;
    if (inf == 5) return out;
    // descending coefficients of the finite part
    std::uint64_t poly[5];
    int n = 0;
    for (int i = inf; i < 5; ++i) poly[n++] = c[i];
    for (std::uint32_t b = 0; b < p && n > 1; ++b) {
        // quick evaluation first
        std::uint64_t acc = 0;
        for (int i = 0; i < n; ++i) acc = (acc * b + poly[i]) % p;
        if (acc != 0) continue;
        std::uint64_t cur[5];
        int m = n;
        std::copy(poly, poly + n, cur);
        int mult = 0;
        while (m > 1) {
            std::uint64_t q[5];
            q[0] = cur[0];
            for (int i = 1; i < m; ++i) q[i] = (cur[i] + q[i - 1] * b) % p;
            if (q[m - 1] != 0) break;
            ++mult;
            --m;
            std::copy(q, q + m, cur);
        }
        out.push_back({b, mult});
    }
    if (inf > 0) out.push_back({p, inf});
    return out;
}

bool small_splits_completely(const SmallResidues& c, std::uint32_t p) {
    auto roots = small_root_multiplicities(c, p);
    if (roots.size() != 4) return false;
    bool has_zero = false, has_inf = false;
    for (auto& [r, k] : roots) {
        if (k != 1) return false;
        has_zero |= (r == 0);
        has_inf |= (r == p);
    }
    return !(has_zero && has_inf);
}

bool small_is_L1_L2cubed(const SmallResidues& c, std::uint32_t p) {
    return sorted_multiplicities(small_root_multiplicities(c, p)) == std::vector<int>{1, 3};
}

bool small_is_split_square_class(const SmallResidues& c, std::uint32_t p) {
    auto m = sorted_multiplicities(small_root_multiplicities(c, p));
    return m == std::vector<int>{2, 2} || m == std::vector<int>{4};
}

bool small_is_square_class(const SmallResidues& c, std::uint32_t p) {
    ResidueForm r;
    for (int i = 0; i < 5; ++i) r[i] = c[i];
    BinaryQuarticForm f(r[0], r[1], r[2], r[3], r[4]);
    return is_square_class(f, Integer(p));
}

std::vector<RootWithMultiplicity> roots_mod_p(const BinaryQuarticForm& f, const Integer& p) {
    ResidueForm r = reduce_mod_p(f, p);
    bool zero = std::all_of(r.begin(), r.end(), [](const Integer& v) { return v == 0; });
    require(!zero, "form vanishes identically mod " + to_string(p));
    if (!fits_small(p)) return roots_generic(r, p);
    std::uint32_t ps = static_cast<std::uint32_t>(p.get_ui());
    std::vector<RootWithMultiplicity> out;
    for (auto& [b, k] : small_root_multiplicities(to_small(r), ps)) {
        out.push_back({b == ps ? ProjectiveRoot::infinity() : ProjectiveRoot::finite(Integer(b)), k});
    }
    return out;
}

std::optional<SplitData> splits_completely(const BinaryQuarticForm& f, const Integer& p) {
    require(p >= 5, "complete splitting needs p >= 5");
    require_prime(p);
    ResidueForm r = reduce_mod_p(f, p);
    if (std::all_of(r.begin(), r.end(), [](const Integer& v) { return v == 0; })) return std::nullopt;
    auto roots = roots_mod_p(f, p);
    if (roots.size() != 4) return std::nullopt;
    SplitData out;
    out.p = p;
    bool has_zero = false, has_inf = false;
    for (auto& rm : roots) {
        if (rm.multiplicity != 1) return std::nullopt;
        has_inf |= rm.root.is_infinity();
        has_zero |= (!rm.root.is_infinity() && *rm.root.value == 0);
        out.roots.push_back(rm.root);
    }
    if (has_zero && has_inf) return std::nullopt;
    out.m0 = has_inf ? r[1] : r[0];
    ensure(out.m0 != 0, "split form has zero leading unit");
    ensure(expand_split(p, out.m0, out.roots) == r, "split factorization does not re-expand");
    return out;
}

bool is_square_class(const BinaryQuarticForm& f, const Integer& p) {
    ResidueForm r = reduce_mod_p(f, p);
    require(!std::all_of(r.begin(), r.end(), [](const Integer& v) { return v == 0; }),
            "form vanishes identically mod " + to_string(p));
    if (p == 2) return r[1] == 0 && r[3] == 0;  // squares in char 2 only involve even powers
    if (r[0] != 0) {
        Integer inv = *inverse_mod(r[0], p);
        Integer inv2 = *inverse_mod(Integer(2), p);
        Integer e1 = mod(Integer(r[1] * inv), p), e2 = mod(Integer(r[2] * inv), p);
        Integer e3 = mod(Integer(r[3] * inv), p), e4 = mod(Integer(r[4] * inv), p);
        // monic f = (X^2 + s X + t)^2
        Integer s = mod(Integer(e1 * inv2), p);
        Integer t = mod(Integer((e2 - s * s) * inv2), p);
        return mod(Integer(2 * s * t - e3), p) == 0 && mod(Integer(t * t - e4), p) == 0;
    }
    if (r[1] != 0) return false;  // infinity has odd multiplicity
    // F = y^2 (a2 x^2 + a3 x y + a4 y^2); the quadratic must be c L^2
    if (r[2] == 0) return r[3] == 0;
    return mod(Integer(r[3] * r[3] - 4 * r[2] * r[4]), p) == 0;
}

bool is_split_square_class(const BinaryQuarticForm& f, const Integer& p) {
    std::vector<int> m;
    for (auto& rm : roots_mod_p(f, p)) m.push_back(rm.multiplicity);
    std::sort(m.begin(), m.end());
    return m == std::vector<int>{2, 2} || m == std::vector<int>{4};
}

std::optional<L1L2Cubed> is_L1_L2cubed(const BinaryQuarticForm& f, const Integer& p) {
    ResidueForm r = reduce_mod_p(f, p);
    if (std::all_of(r.begin(), r.end(), [](const Integer& v) { return v == 0; })) return std::nullopt;
    auto roots = roots_mod_p(f, p);
    if (roots.size() != 2) return std::nullopt;
    const RootWithMultiplicity* simple = nullptr;
    const RootWithMultiplicity* triple = nullptr;
    for (auto& rm : roots) {
        if (rm.multiplicity == 1) simple = &rm;
        if (rm.multiplicity == 3) triple = &rm;
    }
    if (!simple || !triple) return std::nullopt;
    auto linear = [&](const ProjectiveRoot& root) {
        return root.is_infinity() ? LinearForm{0, 1} : LinearForm{1, mod(Integer(-*root.value), p)};
    };
    L1L2Cubed out{0, linear(simple->root), linear(triple->root)};
    // leading unit: coefficient of the first nonzero monomial
    std::vector<ProjectiveRoot> all{simple->root, triple->root, triple->root, triple->root};
    std::sort(all.begin(), all.end());
    ResidueForm unit = expand_split(p, 1, all);
    for (int i = 0; i < 5; ++i) {
        if (unit[i] != 0) {
            out.c = mod(Integer(r[i] * *inverse_mod(unit[i], p)), p);
            break;
        }
    }
    ensure(expand_split(p, out.c, all) == r, "L1 L2^3 factorization does not re-expand");
    return out;
}

ResidueForm expand_split(const Integer& p, const Integer& m0, const std::vector<ProjectiveRoot>& roots) {
    BinaryForm acc{{m0}};
    for (const auto& root : roots) {
        BinaryForm lin = root.is_infinity() ? BinaryForm{{0, 1}} : BinaryForm{{1, Integer(-*root.value)}};
        acc = acc * lin;
    }
    require(acc.degree() == 4, "expand_split needs four roots");
    ResidueForm r;
    for (int i = 0; i < 5; ++i) r[i] = mod(acc.coeffs[i], p);
    return r;
}

std::vector<int> factor_degree_pattern(const BinaryQuarticForm& f, const Integer& l) {
    require(mod(discriminant(f), l) != 0, "factor pattern needs a prime not dividing D");
    ResidueForm r = reduce_mod_p(f, l);
    auto [poly, inf] = dehomogenize(r, l);
    std::vector<int> degrees(inf, 1);
    FpPoly rest = poly.monic();
    FpPoly x = FpPoly::x(l);
    FpPoly h = x;
    for (int d = 1; rest.degree() >= 2 * d; ++d) {
        h = FpPoly::powmod(h, l, rest);
        FpPoly g = FpPoly::gcd(rest, h - x);
        for (int k = 0; k < g.degree() / d; ++k) degrees.push_back(d);
        if (g.degree() > 0) {
            rest = FpPoly::divmod(rest, g).first;
            h = FpPoly::divmod(h, rest).second;
        }
    }
    if (rest.degree() > 0) degrees.push_back(rest.degree());
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

}  // namespace qhl
