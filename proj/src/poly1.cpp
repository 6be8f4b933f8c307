#include "poly1.h"

#include <algorithm>
#include <functional>

namespace alg {

void UPoly::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

FE UPoly::eval(const FE& x) const {
    FE r = FE::zero(fd);
    for (size_t k = c.size(); k-- > 0;) r = r * x + c[k];
    return r;
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return upoly_scale(*this, c.back().inv());
}

UPoly UPoly::constant(const FieldDesc& f, const FE& v) {
    UPoly p(f);
    if (!v.is_zero()) p.c.push_back(v);
    return p;
}

UPoly UPoly::x(const FieldDesc& f) {
    UPoly p(f);
    p.c = {FE::zero(f), FE::one(f)};
    return p;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    UPoly r(a.fd);
    r.c.resize(std::max(a.c.size(), b.c.size()), FE::zero(a.fd));
    for (size_t k = 0; k < a.c.size(); ++k) r.c[k] = r.c[k] + a.c[k];
    for (size_t k = 0; k < b.c.size(); ++k) r.c[k] = r.c[k] + b.c[k];
    r.trim();
    return r;
}

UPoly operator-(const UPoly& a, const UPoly& b) {
    UPoly r(a.fd);
    r.c.resize(std::max(a.c.size(), b.c.size()), FE::zero(a.fd));
    for (size_t k = 0; k < a.c.size(); ++k) r.c[k] = r.c[k] + a.c[k];
    for (size_t k = 0; k < b.c.size(); ++k) r.c[k] = r.c[k] - b.c[k];
    r.trim();
    return r;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    UPoly r(a.fd);
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, FE::zero(a.fd));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    r.trim();
    return r;
}

UPoly upoly_scale(const UPoly& a, const FE& s) {
    UPoly r(a.fd);
    if (s.is_zero()) return r;
    r.c.reserve(a.c.size());
    for (const auto& v : a.c) r.c.push_back(v * s);
    return r;
}

UPoly upoly_rem(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) fail("DivisionByZero", "polynomial division by zero");
    UPoly r = a;
    const FE binv = b.lead().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const FE f = r.lead() * binv;
        const int shift = r.degree() - b.degree();
        for (int k = 0; k <= b.degree(); ++k)
            r.c[k + shift] = r.c[k + shift] - f * b.c[k];
        r.trim();
    }
    return r;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = upoly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UPoly upoly_derivative(const UPoly& a) {
    UPoly r(a.fd);
    for (size_t k = 1; k < a.c.size(); ++k)
        r.c.push_back(a.c[k] * FE::from_int(a.fd, static_cast<long>(k)));
    r.trim();
    return r;
}

namespace {

// Deterministic candidate roots beyond the quadratic formula: small integers
// and ratios of divisors of the outer coefficients over Q.
std::vector<FE> scan_candidates(const UPoly& f) {
    std::vector<FE> out;
    const FieldDesc fd = f.fd;
    auto push = [&](const FE& v) {
        for (const auto& o : out)
            if (o == v) return;
        out.push_back(v);
    };
    for (long k = -24; k <= 24; ++k) push(FE::from_int(fd, k));
    for (long num = 1; num <= 12; ++num)
        for (long den = 2; den <= 12; ++den) {
            if (fd.kind == FieldDesc::Kind::Fp && num % fd.p == 0) continue;
            FE v = FE::from_mpq(fd, mpq_class(num, den));
            push(v);
            push(-v);
        }
    if (fd.kind == FieldDesc::Kind::Q) {
        // ratios of divisors of constant and leading coefficients
        auto divisors = [](const mpz_class& n) {
            std::vector<mpz_class> ds;
            mpz_class a = abs(n);
            if (a == 0) return ds;
            for (mpz_class d = 1; d * d <= a && d < 4000; ++d)
                if (a % d == 0) { ds.push_back(d); ds.push_back(a / d); }
            return ds;
        };
        mpq_class c0 = f.c.front().rat(), cl = f.lead().rat();
        for (const auto& p : divisors(c0.get_num() * c0.get_den()))
            for (const auto& q : divisors(cl.get_num() * cl.get_den())) {
                FE v = FE::from_mpq(fd, mpq_class(p) / mpq_class(q));
                push(v);
                push(-v);
            }
    }
    if (fd.kind == FieldDesc::Kind::Fp && fd.p <= (1u << 16)) {
        for (std::uint64_t v = 0; v < fd.p; ++v) push(FE::fp(fd.p, v));
    }
    return out;
}

}  // namespace

RootSearch upoly_roots(const UPoly& f) {
    RootSearch rs;
    rs.complete = true;
    if (f.is_zero()) fail("ZeroPolynomial", "root search on the zero polynomial");
    UPoly g = f.monic();
    // Strip multiplicities.
    UPoly d = upoly_derivative(g);
    if (!d.is_zero()) {
        UPoly sq = upoly_gcd(g, d);
        if (sq.degree() > 0) {
            // g / sq via repeated remainder-free division
            UPoly q(g.fd);
            UPoly r = g;
            q.c.assign(g.degree() - sq.degree() + 1, FE::zero(g.fd));
            while (!r.is_zero() && r.degree() >= sq.degree()) {
                FE fl = r.lead();
                int shift = r.degree() - sq.degree();
                q.c[shift] = q.c[shift] + fl;
                for (int k = 0; k <= sq.degree(); ++k)
                    r.c[k + shift] = r.c[k + shift] - fl * sq.c[k];
                r.trim();
            }
            q.trim();
            g = q.monic();
        }
    }
    auto emit = [&](const FE& v) {
        for (const auto& o : rs.roots)
            if (o == v) return;
        rs.roots.push_back(v);
    };
    // Exact closed forms.
    while (g.degree() >= 1) {
        if (g.degree() == 1) {
            emit(-g.c[0]);
            return rs;
        }
        if (g.degree() == 2) {
            // x^2 + bx + c
            FE b = g.c[1], c0 = g.c[0];
            FE disc = b * b - FE::from_int(g.fd, 4) * c0;
            auto s = disc.sqrt();
            if (!s) return rs;  // no further base-field roots, still complete
            FE two = FE::from_int(g.fd, 2);
            emit((-b + *s) / two);
            emit((-b - *s) / two);
            return rs;
        }
        // Degree >= 3: peel off linear factors found by a bounded scan.
        bool found = false;
        for (const FE& cand : scan_candidates(g)) {
            if (g.eval(cand).is_zero()) {
                emit(cand);
                // deflate by (x - cand)
                std::vector<FE> q(g.degree(), FE::zero(g.fd));
                FE carry = FE::zero(g.fd);
                for (int k = g.degree(); k >= 1; --k) {
                    carry = g.c[k] + carry * cand;
                    q[k - 1] = carry;
                }
                g = UPoly(g.fd, std::move(q)).monic();
                found = true;
                break;
            }
        }
        if (!found) {
            // Cannot certify the residual cubic-or-higher factor is rootless.
            rs.complete = false;
            return rs;
        }
    }
    return rs;
}

UPoly resultant_outer(const std::vector<UPoly>& a, const std::vector<UPoly>& b,
                      const FieldDesc& fd) {
    auto deg = [](const std::vector<UPoly>& p) {
        int d = -1;
        for (size_t k = 0; k < p.size(); ++k)
            if (!p[k].is_zero()) d = static_cast<int>(k);
        return d;
    };
    const int da = deg(a), db = deg(b);
    if (da < 0 || db < 0) return UPoly(fd);
    if (da == 0 && db == 0) return UPoly::constant(fd, FE::one(fd));
    const int n = da + db;
    // Sylvester matrix with UPoly entries.
    std::vector<std::vector<UPoly>> m(n, std::vector<UPoly>(n, UPoly(fd)));
    for (int r = 0; r < db; ++r)
        for (int k = 0; k <= da; ++k) m[r][r + k] = a[da - k];
    for (int r = 0; r < da; ++r)
        for (int k = 0; k <= db; ++k) m[db + r][r + k] = b[db - k];
    // Cofactor determinant (n <= 8 in practice here).
    std::vector<int> cols(n);
    for (int k = 0; k < n; ++k) cols[k] = k;
    std::function<UPoly(int, std::vector<int>&)> det = [&](int row, std::vector<int>& cc) -> UPoly {
        if (cc.empty()) return UPoly::constant(fd, FE::one(fd));
        UPoly acc(fd);
        for (size_t j = 0; j < cc.size(); ++j) {
            const UPoly& e = m[row][cc[j]];
            if (e.is_zero()) continue;
            std::vector<int> rest;
            rest.reserve(cc.size() - 1);
            for (size_t t = 0; t < cc.size(); ++t)
                if (t != j) rest.push_back(cc[t]);
            UPoly sub = det(row + 1, rest);
            UPoly term = e * sub;
            if (j % 2 == 1) term = upoly_scale(term, -FE::one(fd));
            acc = acc + term;
        }
        return acc;
    };
    return det(0, cols);
}

}  // namespace alg
