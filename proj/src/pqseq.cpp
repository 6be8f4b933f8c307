#include "pqseq.h"

namespace alg {

FE fe_pow(const FE& x, long long e) {
    if (e < 0) fail("DimOutOfRange", "negative exponent in fe_pow");
    FE acc = FE::one(x.field());
    FE base = x;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::vector<PQPair> pq_sequence(const FE& a, const FE& b, int nmax) {
    const FieldDesc fd = a.field();
    std::vector<PQPair> out;
    FE p = FE::one(fd), q = FE::one(fd);
    out.push_back({p, q});
    for (int n = 0; n < nmax; ++n) {
        FE pn = p + b * q;
        FE qn = p - a * q;
        p = pn;
        q = qn;
        out.push_back({p, q});
    }
    return out;
}

FE pq_discriminant(const FE& a, const FE& b) {
    const FieldDesc fd = a.field();
    FE ap1 = a + FE::one(fd);
    return ap1 * ap1 + FE::from_int(fd, 4) * b;
}

PQPair pq_closed_form(const FE& a, const FE& b, int n) {
    const FieldDesc fd = a.field();
    const FE one = FE::one(fd);
    const FE oma = one - a;
    const FE D = pq_discriminant(a, b);
    auto binom = [&](long m, long k) {
        mpz_class t;
        mpz_bin_uiui(t.get_mpz_t(), m, k);
        return FE::from_mpq(fd, mpq_class(t));
    };
    // ((1-a+d)^m - (1-a-d)^m) / (2^m d), a polynomial in the discriminant
    auto half_diff = [&](long m) {
        FE acc = FE::zero(fd);
        for (long k = 1; k <= m; k += 2)
            acc = acc + binom(m, k) * fe_pow(oma, m - k) * fe_pow(D, (k - 1) / 2);
        if (m >= 1) acc = acc / fe_pow(FE::from_int(fd, 2), m - 1);
        return acc;
    };
    PQPair out{FE::one(fd), FE::one(fd)};
    out.q = half_diff(n + 1);
    out.p = out.q + (a + b) * half_diff(n);
    return out;
}

bool pseq_nonzero(const FE& a, const FE& b, int bound) {
    const FieldDesc fd = a.field();
    FE p = FE::one(fd), q = FE::one(fd);
    for (int n = 0; n <= bound; ++n) {
        if (p.is_zero()) return false;
        FE pn = p + b * q;
        FE qn = p - a * q;
        p = pn;
        q = qn;
    }
    return true;
}

bool pq_zero_ratio_criterion(const FE& a, const FE& d, int n) {
    const FieldDesc fd = a.field();
    const FE one = FE::one(fd);
    FE lhs_num = one - a - d, lhs_den = one - a + d;
    FE rhs_num = one + a + d, rhs_den = one + a - d;
    // cross-multiplied to dodge zero denominators
    return fe_pow(lhs_num, n + 1) * rhs_den == fe_pow(lhs_den, n + 1) * rhs_num;
}

bool pq_zero_degenerate_criterion(const FE& a, int n) {
    const FieldDesc fd = a.field();
    return FE::from_int(fd, n) * a == -FE::from_int(fd, n + 2);
}

}  // namespace alg
