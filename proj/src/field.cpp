#include "field.h"

#include <algorithm>

namespace alg {

void fail(const std::string& code, const std::string& msg) {
    throw AlgError(code, code + ": " + msg);
}

// ---------------------------------------------------------------- primality

static std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return mulmod_u64(a % p, b % p, p);
}

std::uint64_t fp_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) fail("DivisionByZero", "inverse of zero mod " + std::to_string(p));
    // extended Euclid over signed 128-bit to avoid overflow
    __int128 t = 0, newt = 1;
    __int128 r = static_cast<__int128>(p), newr = static_cast<__int128>(a);
    while (newr != 0) {
        __int128 qq = r / newr;
        __int128 tmp = t - qq * newt;
        t = newt; newt = tmp;
        tmp = r - qq * newr;
        r = newr; newr = tmp;
    }
    if (t < 0) t += static_cast<__int128>(p);
    return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = fp_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

std::optional<std::uint64_t> fp_sqrt(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (fp_pow(a, (p - 1) / 2, p) != 1) return std::nullopt;
    std::uint64_t r;
    if (p % 4 == 3) {
        r = fp_pow(a, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks with the smallest quadratic nonresidue as generator
        std::uint64_t q = p - 1;
        int s = 0;
        while ((q & 1) == 0) { q >>= 1; ++s; }
        std::uint64_t z = 2;
        while (fp_pow(z, (p - 1) / 2, p) != p - 1) ++z;
        std::uint64_t m = s;
        std::uint64_t c = fp_pow(z, q, p);
        std::uint64_t t = fp_pow(a, q, p);
        r = fp_pow(a, (q + 1) / 2, p);
        while (t != 1) {
            std::uint64_t i = 0, tt = t;
            while (tt != 1) { tt = mulmod_u64(tt, tt, p); ++i; }
            std::uint64_t b = c;
            for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod_u64(b, b, p);
            m = i;
            c = mulmod_u64(b, b, p);
            t = mulmod_u64(t, c, p);
            r = mulmod_u64(r, b, p);
        }
    }
    return std::min(r, p - r);
}

// ---------------------------------------------------------------- FieldDesc

FieldDesc FieldDesc::prime(std::uint64_t p) {
    if (p == 2 || p == 3) fail("UnsupportedCharacteristic", "prime field characteristic must differ from 2 and 3");
    if (!is_prime_u64(p)) fail("NotPrime", std::to_string(p) + " is not prime");
    if (p >= (1ULL << 62)) fail("NotPrime", "modulus too large");
    return {Kind::Fp, p};
}

std::string FieldDesc::spec() const {
    switch (kind) {
        case Kind::Q: return "q";
        case Kind::C12: return "q-zeta12";
        case Kind::Fp: return "fp:" + std::to_string(p);
    }
    return "q";
}

FieldDesc FieldDesc::parse(const std::string& s) {
    if (s == "q" || s.empty()) return rationals();
    if (s == "q-zeta12") return cyclotomic12();
    if (s.rfind("fp:", 0) == 0) {
        const std::string num = s.substr(3);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            fail("BadFieldSpec", "cannot parse field spec '" + s + "'");
        return prime(std::stoull(num));
    }
    fail("BadFieldSpec", "cannot parse field spec '" + s + "'");
}

// ---------------------------------------------------------------- FE basics

FE FE::zero(const FieldDesc& fd) {
    switch (fd.kind) {
        case FieldDesc::Kind::Q: return FE(mpq_class(0));
        case FieldDesc::Kind::C12: return FE(C12{mpq_class(0), mpq_class(0), mpq_class(0), mpq_class(0)});
        case FieldDesc::Kind::Fp: return FE(FpVal{0, fd.p});
    }
    return FE();
}

FE FE::one(const FieldDesc& fd) { return from_int(fd, 1); }

FE FE::from_int(const FieldDesc& fd, long n) {
    switch (fd.kind) {
        case FieldDesc::Kind::Q: return FE(mpq_class(n));
        case FieldDesc::Kind::C12: {
            C12 c{mpq_class(n), mpq_class(0), mpq_class(0), mpq_class(0)};
            return FE(std::move(c));
        }
        case FieldDesc::Kind::Fp: {
            long long m = static_cast<long long>(n) % static_cast<long long>(fd.p);
            if (m < 0) m += static_cast<long long>(fd.p);
            return FE(FpVal{static_cast<std::uint64_t>(m), fd.p});
        }
    }
    return FE();
}

FE FE::from_mpq(const FieldDesc& fd, const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    switch (fd.kind) {
        case FieldDesc::Kind::Q: return FE(std::move(c));
        case FieldDesc::Kind::C12: {
            C12 v{c, mpq_class(0), mpq_class(0), mpq_class(0)};
            return FE(std::move(v));
        }
        case FieldDesc::Kind::Fp: {
            mpz_class num = c.get_num(), den = c.get_den();
            mpz_class pz = mpz_class(static_cast<unsigned long>(fd.p));
            mpz_class nm = num % pz; if (nm < 0) nm += pz;
            mpz_class dm = den % pz; if (dm < 0) dm += pz;
            std::uint64_t dn = dm.get_ui();
            if (dn == 0) fail("DivisionByZero", "denominator vanishes mod " + std::to_string(fd.p));
            std::uint64_t v = fp_mul(nm.get_ui(), fp_inv(dn, fd.p), fd.p);
            return FE(FpVal{v, fd.p});
        }
    }
    return FE();
}

FE FE::c12(const C12& coords) {
    C12 c = coords;
    for (auto& x : c) x.canonicalize();
    return FE(std::move(c));
}

FieldDesc FE::field() const {
    if (std::holds_alternative<mpq_class>(st_)) return FieldDesc::rationals();
    if (std::holds_alternative<C12>(st_)) return FieldDesc::cyclotomic12();
    return {FieldDesc::Kind::Fp, std::get<FpVal>(st_).p};
}

bool FE::is_zero() const {
    if (auto* q = std::get_if<mpq_class>(&st_)) return *q == 0;
    if (auto* c = std::get_if<C12>(&st_))
        return (*c)[0] == 0 && (*c)[1] == 0 && (*c)[2] == 0 && (*c)[3] == 0;
    return std::get<FpVal>(st_).v == 0;
}

bool FE::is_one() const {
    if (auto* q = std::get_if<mpq_class>(&st_)) return *q == 1;
    if (auto* c = std::get_if<C12>(&st_))
        return (*c)[0] == 1 && (*c)[1] == 0 && (*c)[2] == 0 && (*c)[3] == 0;
    return std::get<FpVal>(st_).v == 1;
}

bool FE::operator==(const FE& o) const {
    if (st_.index() != o.st_.index()) return false;
    if (auto* q = std::get_if<mpq_class>(&st_)) return *q == std::get<mpq_class>(o.st_);
    if (auto* c = std::get_if<C12>(&st_)) return *c == std::get<C12>(o.st_);
    return std::get<FpVal>(st_) == std::get<FpVal>(o.st_);
}

int FE::cmp(const FE& a, const FE& b) {
    check_same(a, b);
    if (auto* q = std::get_if<mpq_class>(&a.st_)) {
        return ::cmp(*q, std::get<mpq_class>(b.st_));
    }
    if (auto* c = std::get_if<C12>(&a.st_)) {
        const auto& d = std::get<C12>(b.st_);
        for (int k = 0; k < 4; ++k) {
            int r = ::cmp((*c)[k], d[k]);
            if (r) return r;
        }
        return 0;
    }
    const auto& x = std::get<FpVal>(a.st_);
    const auto& y = std::get<FpVal>(b.st_);
    return x.v < y.v ? -1 : (x.v > y.v ? 1 : 0);
}

void FE::check_same(const FE& a, const FE& b) {
    if (a.st_.index() != b.st_.index())
        fail("FieldMismatch", "operands belong to different fields");
    if (auto* x = std::get_if<FpVal>(&a.st_)) {
        if (x->p != std::get<FpVal>(b.st_).p)
            fail("FieldMismatch", "operands belong to different prime fields");
    }
}

// ---------------------------------------------------------------- FE arithmetic

FE operator+(const FE& a, const FE& b) {
    FE::check_same(a, b);
    if (auto* q = std::get_if<mpq_class>(&a.st_)) {
        mpq_class r = *q + std::get<mpq_class>(b.st_);
        return FE(std::move(r));
    }
    if (auto* c = std::get_if<C12>(&a.st_)) {
        const auto& d = std::get<C12>(b.st_);
        FE::C12 r;
        for (int k = 0; k < 4; ++k) r[k] = (*c)[k] + d[k];
        return FE(std::move(r));
    }
    const auto& x = std::get<FE::FpVal>(a.st_);
    const auto& y = std::get<FE::FpVal>(b.st_);
    std::uint64_t s = x.v + y.v;
    if (s >= x.p) s -= x.p;
    return FE(FE::FpVal{s, x.p});
}

FE operator-(const FE& a, const FE& b) { return a + (-b); }

FE FE::operator-() const {
    if (auto* q = std::get_if<mpq_class>(&st_)) {
        mpq_class r = -*q;
        return FE(std::move(r));
    }
    if (auto* c = std::get_if<C12>(&st_)) {
        C12 r;
        for (int k = 0; k < 4; ++k) r[k] = -(*c)[k];
        return FE(std::move(r));
    }
    const auto& x = std::get<FpVal>(st_);
    return FE(FpVal{x.v == 0 ? 0 : x.p - x.v, x.p});
}

// Multiply in Q[z]/(z^4 - z^2 + 1): reduce z^4 -> z^2 - 1, z^5 -> z^3 - z, z^6 -> -1.
static FE::C12 c12_mul(const FE::C12& a, const FE::C12& b) {
    std::array<mpq_class, 7> t{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            t[i + j] += a[i] * b[j];
    // z^6 = -1
    t[0] -= t[6];
    // z^5 = z^3 - z
    t[3] += t[5];
    t[1] -= t[5];
    // z^4 = z^2 - 1
    t[2] += t[4];
    t[0] -= t[4];
    return {t[0], t[1], t[2], t[3]};
}

FE operator*(const FE& a, const FE& b) {
    FE::check_same(a, b);
    if (auto* q = std::get_if<mpq_class>(&a.st_)) {
        mpq_class r = *q * std::get<mpq_class>(b.st_);
        return FE(std::move(r));
    }
    if (auto* c = std::get_if<FE::C12>(&a.st_)) {
        return FE(c12_mul(*c, std::get<FE::C12>(b.st_)));
    }
    const auto& x = std::get<FE::FpVal>(a.st_);
    const auto& y = std::get<FE::FpVal>(b.st_);
    return FE(FE::FpVal{mulmod_u64(x.v, y.v, x.p), x.p});
}

FE FE::inv() const {
    if (is_zero()) fail("DivisionByZero", "inverse of zero");
    if (auto* q = std::get_if<mpq_class>(&st_)) {
        mpq_class r = 1 / *q;
        return FE(std::move(r));
    }
    if (auto* c = std::get_if<C12>(&st_)) {
        // Solve (sum_j x_j z^j) * a = 1 as a 4x4 rational linear system.
        // Column j of M is the coordinate vector of z^j * a.
        std::array<std::array<mpq_class, 4>, 4> M;
        C12 pw = *c;
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) M[k][j] = pw[k];
            if (j < 3) {
                C12 zmul{mpq_class(0), mpq_class(1), mpq_class(0), mpq_class(0)};
                pw = c12_mul(pw, zmul);
            }
        }
        std::array<mpq_class, 4> rhs{mpq_class(1), mpq_class(0), mpq_class(0), mpq_class(0)};
        // Gaussian elimination with exact pivots.
        std::array<int, 4> perm{0, 1, 2, 3};
        for (int col = 0; col < 4; ++col) {
            int piv = -1;
            for (int r = col; r < 4; ++r)
                if (M[perm[r]][col] != 0) { piv = r; break; }
            if (piv < 0) fail("DivisionByZero", "element is not invertible");
            std::swap(perm[col], perm[piv]);
            const mpq_class pv = M[perm[col]][col];
            for (int r = 0; r < 4; ++r) {
                if (r == col || M[perm[r]][col] == 0) continue;
                mpq_class f = M[perm[r]][col] / pv;
                for (int cc = col; cc < 4; ++cc) M[perm[r]][cc] -= f * M[perm[col]][cc];
                rhs[perm[r]] -= f * rhs[perm[col]];
            }
        }
        C12 out;
        for (int col = 0; col < 4; ++col) {
            out[col] = rhs[perm[col]] / M[perm[col]][col];
            out[col].canonicalize();
        }
        return FE(std::move(out));
    }
    const auto& x = std::get<FpVal>(st_);
    return FE(FpVal{fp_inv(x.v, x.p), x.p});
}

FE operator/(const FE& a, const FE& b) { return a * b.inv(); }

// ---------------------------------------------------------------- square roots

// Exact square root of a nonnegative rational that is a perfect square.
static std::optional<mpq_class> rat_sqrt(const mpq_class& a) {
    if (a < 0) return std::nullopt;
    mpz_class n = a.get_num(), d = a.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return mpq_class(rn) / mpq_class(rd);
}

// sqrt inside Q(sqrt3): elements are pairs (u, v) meaning u + v*sqrt(3).
struct QS3 { mpq_class u, v; };

static std::optional<QS3> qs3_sqrt(const QS3& a) {
    if (a.v == 0) {
        if (auto r = rat_sqrt(a.u)) return QS3{*r, 0};
        if (a.u < 0) return std::nullopt;
        if (auto h = rat_sqrt(a.u / 3)) return QS3{0, *h};
        return std::nullopt;
    }
    // (g + h sqrt3)^2 = a: g^2 + 3h^2 = u, 2gh = v.
    // g^2 solves 4X^2 - 4uX + 3v^2 = 0.
    auto disc = rat_sqrt(a.u * a.u - 3 * a.v * a.v);
    if (!disc) return std::nullopt;
    for (int sgn : {1, -1}) {
        mpq_class g2 = (a.u + sgn * *disc) / 2;
        if (auto g = rat_sqrt(g2)) {
            if (*g == 0) continue;
            return QS3{*g, a.v / (2 * *g)};
        }
    }
    return std::nullopt;
}

std::optional<FE> FE::sqrt() const {
    if (auto* q = std::get_if<mpq_class>(&st_)) {
        auto r = rat_sqrt(*q);
        if (!r) return std::nullopt;
        return FE(std::move(*r));
    }
    if (auto* c = std::get_if<C12>(&st_)) {
        // Q(zeta12) = Q(sqrt3, i).  With z = zeta12 = sqrt3/2 + i/2:
        //   z   = (0 + 1/2 sqrt3) + i (1/2 + 0 sqrt3)
        //   z^2 = (1/2)            + i (0   + 1/2 sqrt3)
        //   z^3 = i
        const auto& a = *c;
        QS3 x{a[0] + a[2] / 2, a[1] / 2};        // real part over Q(sqrt3)
        QS3 y{a[1] / 2 + a[3], a[2] / 2};        // imag part over Q(sqrt3)
        auto make = [](const QS3& u, const QS3& v) {
            // (u.u + u.v sqrt3) + i (v.u + v.v sqrt3) back to the zeta basis,
            // using sqrt3 = 2z - z^3, i = z^3, i*sqrt3 = 2z^2 - 1.
            C12 out{u.u - v.v, mpq_class(2) * u.v, mpq_class(2) * v.v, v.u - u.v};
            return FE::c12(out);
        };
        auto solve = [&](const QS3& x_, const QS3& y_) -> std::optional<FE> {
            if (y_.u == 0 && y_.v == 0) {
                if (auto u = qs3_sqrt(x_)) return make(*u, QS3{0, 0});
                QS3 negx{-x_.u, -x_.v};
                if (auto v = qs3_sqrt(negx)) return make(QS3{0, 0}, *v);
                return std::nullopt;
            }
            // w = u + iv, w^2 = x + iy: u^2 - v^2 = x, 2uv = y.
            // u^2 solves 4X^2 - 4xX - y^2 = 0, i.e. X = (x +- sqrt(x^2+y^2))/2.
            QS3 n{x_.u * x_.u + 3 * x_.v * x_.v + y_.u * y_.u + 3 * y_.v * y_.v,
                  2 * x_.u * x_.v + 2 * y_.u * y_.v};
            auto s = qs3_sqrt(n);
            if (!s) return std::nullopt;
            for (int sgn : {1, -1}) {
                QS3 u2{(x_.u + sgn * s->u) / 2, (x_.v + sgn * s->v) / 2};
                if (auto u = qs3_sqrt(u2)) {
                    if (u->u == 0 && u->v == 0) continue;
                    // v = y / (2u) in Q(sqrt3): multiply by the conjugate
                    QS3 v;
                    mpq_class tu = 2 * u->u, tv = 2 * u->v;
                    mpq_class d2 = tu * tu - 3 * tv * tv;
                    if (d2 == 0) continue;
                    v.u = (y_.u * tu - 3 * y_.v * tv) / d2;
                    v.v = (y_.v * tu - y_.u * tv) / d2;
                    return make(*u, v);
                }
            }
            return std::nullopt;
        };
        return solve(x, y);
    }
    const auto& f = std::get<FpVal>(st_);
    auto r = fp_sqrt(f.v, f.p);
    if (!r) return std::nullopt;
    return FE(FpVal{*r, f.p});
}

// ---------------------------------------------------------------- roots of unity

RootsOfUnity roots_of_unity(const FieldDesc& fd) {
    RootsOfUnity out;
    switch (fd.kind) {
        case FieldDesc::Kind::Q:
            break;
        case FieldDesc::Kind::C12: {
            out.theta = FE::c12({mpq_class(-1), mpq_class(0), mpq_class(1), mpq_class(0)});  // z^2 - 1 = z^4
            out.i = FE::c12({mpq_class(0), mpq_class(0), mpq_class(0), mpq_class(1)});       // z^3
            break;
        }
        case FieldDesc::Kind::Fp: {
            const std::uint64_t p = fd.p;
            if (p % 3 == 1) {
                // theta = (-1 +- sqrt(-3))/2, take the smaller residue
                auto s = fp_sqrt(p - 3 % p, p);
                if (s) {
                    std::uint64_t half = fp_inv(2, p);
                    std::uint64_t t1 = fp_mul((p - 1 + *s) % p, half, p);
                    std::uint64_t t2 = fp_mul((2 * p - 1 - *s) % p, half, p);
                    out.theta = FE::fp(p, std::min(t1, t2));
                }
            }
            if (p % 4 == 1) {
                auto s = fp_sqrt(p - 1, p);
                if (s) out.i = FE::fp(p, *s);
            }
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------- printing

std::string FE::str() const {
    if (auto* q = std::get_if<mpq_class>(&st_)) return q->get_str();
    if (auto* c = std::get_if<C12>(&st_)) {
        std::string s = "[";
        for (int k = 0; k < 4; ++k) {
            if (k) s += ",";
            s += (*c)[k].get_str();
        }
        return s + "]";
    }
    return std::to_string(std::get<FpVal>(st_).v);
}

}  // namespace alg
