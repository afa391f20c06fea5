#include "qhl/forms.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace qhl {

namespace {

using Real = boost::multiprecision::mpfr_float;

struct Complex {
    Real re, im;
};

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator/(const Complex& a, const Complex& b) {
    Real n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
Real magnitude(const Complex& a) { return boost::multiprecision::hypot(a.re, a.im); }

// Restores the thread's default MPFR precision on scope exit.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
        Real::default_precision(bits * 30103u / 100000u + 2);
    }
    ~PrecisionScope() { Real::default_precision(saved_); }

private:
    unsigned saved_;
};

Real to_real(const Integer& n) {
    Real r;
    mpfr_set_z(r.backend().data(), n.get_mpz_t(), MPFR_RNDN);
    return r;
}

Rational to_rational(const Real& x) {
    Integer m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x.backend().data());
    Rational q(m);
    if (e >= 0) mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    return q;
}

// Last continued-fraction convergent of x with denominator at most bound.
Rational best_approximation(const Rational& x, const Integer& bound) {
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Integer num = x.get_num(), den = x.get_den();
    while (den != 0) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > bound) break;
        p0 = p1, q0 = q1, p1 = p2, q1 = q2;
        Integer r = num - a * den;
        num = den, den = r;
    }
    if (q1 == 0) return Rational(0);
    return Rational(p1, q1);
}

unsigned bit_length(const Integer& n) { return n == 0 ? 0 : static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2)); }

// Simultaneous Aberth iteration on F(z, 1); a0 != 0 so all four roots are finite.
std::array<Complex, 4> quartic_roots(const BinaryQuarticForm& f, unsigned bits) {
    std::array<Real, 5> c;  // ascending in z
    for (int k = 0; k < 5; ++k) c[k] = to_real(f[4 - k]);
    Real bound = 0;
    for (int k = 0; k < 4; ++k) bound = std::max(bound, Real(abs(c[k] / c[4])));
    bound += 1;
    std::array<Complex, 4> z;
    for (int k = 0; k < 4; ++k) {
        double angle = 0.4 + 1.5707963267948966 * k;
        z[k] = {bound * std::cos(angle), bound * std::sin(angle)};
    }
    auto eval = [&](const Complex& x, Complex& fx, Complex& dfx) {
        fx = {c[4], 0};
        dfx = {0, 0};
        for (int k = 3; k >= 0; --k) {
            dfx = dfx * x + fx;
            fx = fx * x + Complex{c[k], 0};
        }
    };
    Real eps = ldexp(Real(1), -static_cast<int>(bits) + 8);
    for (int iter = 0; iter < 50 + static_cast<int>(bits); ++iter) {
        Real worst = 0;
        for (int k = 0; k < 4; ++k) {
            Complex fx, dfx;
            eval(z[k], fx, dfx);
            if (fx.re == 0 && fx.im == 0) continue;
            Complex w = fx / dfx;
            Complex s{0, 0};
            for (int j = 0; j < 4; ++j)
                if (j != k) s = s + Complex{1, 0} / (z[k] - z[j]);
            Complex step = w / (Complex{1, 0} - w * s);
            z[k] = z[k] - step;
            Real scale = std::max(Real(1), magnitude(z[k]));
            worst = std::max(worst, Real(magnitude(step) / scale));
        }
        if (worst < eps) break;
    }
    return z;
}

using CMatrix = std::array<Complex, 4>;  // a b c d

// Mobius map sending z1, z2, z3 to 0, 1, infinity.
CMatrix cross_ratio_matrix(const Complex& z1, const Complex& z2, const Complex& z3) {
    Complex u = z2 - z3, v = z2 - z1;
    return {u, Complex{0, 0} - z1 * u, v, Complex{0, 0} - z3 * v};
}

CMatrix compose(const CMatrix& m, const CMatrix& n) {
    return {m[0] * n[0] + m[1] * n[2], m[0] * n[1] + m[1] * n[3], m[2] * n[0] + m[3] * n[2],
            m[2] * n[1] + m[3] * n[3]};
}

CMatrix adjugate(const CMatrix& m) {
    Complex zero{0, 0};
    return {m[3], zero - m[1], zero - m[2], m[0]};
}

std::optional<IntegerMatrix2x2> reconstruct(const CMatrix& t, const Integer& denominator_bound, const Real& tol) {
    std::size_t big = 0;
    for (std::size_t i = 1; i < 4; ++i)
        if (magnitude(t[i]) > magnitude(t[big])) big = i;
    std::array<Rational, 4> q;
    for (std::size_t i = 0; i < 4; ++i) {
        Complex e = t[i] / t[big];
        if (abs(e.im) > tol) return std::nullopt;
        q[i] = best_approximation(to_rational(e.re), denominator_bound);
    }
    Integer l = 1;
    for (const auto& v : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    std::array<Integer, 4> m;
    Integer g = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        m[i] = q[i].get_num() * (l / q[i].get_den());
        g = gcd(g, m[i]);
    }
    if (g == 0) return std::nullopt;
    for (auto& v : m) v /= g;
    return IntegerMatrix2x2{m[0], m[1], m[2], m[3]};
}

}  // namespace

std::optional<Integer> stabilizes(const BinaryQuarticForm& f, const IntegerMatrix2x2& a) {
    require(a.det() != 0, "stabilizer test needs an invertible matrix");
    if (a.b == 0 && a.c == 0 && a.a == a.d) return std::nullopt;  // scalar
    BinaryQuarticForm g = primitive_part(f);
    BinaryQuarticForm ga = apply_matrix(g, a);
    std::size_t i = 0;
    while (g[i] == 0) ++i;
    for (std::size_t j = 0; j < 5; ++j)
        if (ga[j] * g[i] != ga[i] * g[j]) return std::nullopt;
    if (!mpz_divisible_p(ga[i].get_mpz_t(), g[i].get_mpz_t())) return std::nullopt;
    Integer c = ga[i] / g[i];
    if (!iroot(abs(c), 4).second) return std::nullopt;
    return c;
}

StabilizerReport stabilizer(const BinaryQuarticForm& form, unsigned max_precision_bits) {
    require(!form.is_zero() && discriminant(form) != 0, "stabilizer test needs a nondegenerate form");
    BinaryQuarticForm f = primitive_part(form);
    require(is_irreducible(f), "stabilizer test needs an irreducible form");

    // A rational involution fixing the roots has the shape (v, 2w; -2u, -v) with
    // u x^2 + v xy + w y^2 dividing the sextic covariant; its entries are bounded by
    // the Mignotte bound of that covariant.
    BinaryForm g6 = sextic_covariant(f);
    Integer norm2 = 0;
    for (const auto& c : g6.coeffs) norm2 += c * c;
    Integer denominator_bound = 4 * (isqrt(norm2) + 1);
    Integer max_coeff = 0;
    for (const auto& c : f.a) max_coeff = std::max(max_coeff, abs(c));
    unsigned required = 2 * bit_length(denominator_bound) + 64 + 2 * bit_length(max_coeff);

    StabilizerReport report;
    std::array<int, 4> perm{0, 1, 2, 3};
    for (unsigned bits = 128; bits <= max_precision_bits; bits *= 2) {
        PrecisionScope scope(bits);
        report.precision_bits = bits;
        auto z = quartic_roots(f, bits);
        Real tol = ldexp(Real(1), -static_cast<int>(bits / 2));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            if (perm == std::array<int, 4>{0, 1, 2, 3}) continue;
            CMatrix s = cross_ratio_matrix(z[0], z[1], z[2]);
            CMatrix w = cross_ratio_matrix(z[perm[0]], z[perm[1]], z[perm[2]]);
            CMatrix t = compose(adjugate(w), s);
            Complex image = (t[0] * z[3] + t[1]) / (t[2] * z[3] + t[3]);
            Real scale = std::max(Real(1), magnitude(z[perm[3]]));
            if (magnitude(image - z[perm[3]]) > tol * scale) continue;
            auto a = reconstruct(t, denominator_bound, tol);
            if (!a || a->det() == 0) continue;
            if (auto c = stabilizes(f, *a)) {
                report.verdict = StabilizerVerdict::NonTrivial;
                report.witness = *a;
                report.scale = *c;
                return report;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (bits >= required) {
            report.verdict = StabilizerVerdict::Trivial;
            return report;
        }
    }
    report.verdict = StabilizerVerdict::Unknown;
    return report;
}

bool stabilizer_is_trivial(const BinaryQuarticForm& f) {
    StabilizerReport r = stabilizer(f);
    if (r.verdict == StabilizerVerdict::Unknown)
        throw InternalError("stabilizer undecided at maximum working precision");
    return r.verdict == StabilizerVerdict::Trivial;
}

}  // namespace qhl
