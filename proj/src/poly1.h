#pragma once

#include <optional>
#include <vector>

#include "field.h"

namespace alg {

// Dense univariate polynomial, coefficients low degree first.
struct UPoly {
    FieldDesc fd;
    std::vector<FE> c;

    explicit UPoly(const FieldDesc& f) : fd(f) {}
    UPoly(const FieldDesc& f, std::vector<FE> coeffs) : fd(f), c(std::move(coeffs)) { trim(); }

    void trim();
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    FE lead() const { return c.back(); }
    FE eval(const FE& x) const;
    UPoly monic() const;

    static UPoly constant(const FieldDesc& f, const FE& v);
    static UPoly x(const FieldDesc& f);
};

UPoly operator+(const UPoly& a, const UPoly& b);
UPoly operator-(const UPoly& a, const UPoly& b);
UPoly operator*(const UPoly& a, const UPoly& b);
UPoly upoly_scale(const UPoly& a, const FE& s);
// Remainder of a by b (b nonzero).
UPoly upoly_rem(const UPoly& a, const UPoly& b);
UPoly upoly_gcd(UPoly a, UPoly b);  // monic gcd
UPoly upoly_derivative(const UPoly& a);

struct RootSearch {
    std::vector<FE> roots;  // distinct roots found in the base field
    bool complete;          // true when these are provably all base-field roots
};

// Exact for degree <= 2.  Higher degrees: strips exact linear factors found
// through a bounded candidate scan; `complete` reports whether the residual
// factor provably has no further base-field roots.
RootSearch upoly_roots(const UPoly& f);

// Resultant of two polynomials in an outer variable whose coefficients are
// themselves UPoly in an inner variable: Sylvester determinant, expanded
// exactly by cofactors (degrees here are tiny).
UPoly resultant_outer(const std::vector<UPoly>& a, const std::vector<UPoly>& b,
                      const FieldDesc& fd);

}  // namespace alg
