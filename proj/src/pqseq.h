#pragma once

#include <vector>

#include "field.h"

namespace alg {

FE fe_pow(const FE& x, long long e);  // e >= 0

struct PQPair {
    FE p, q;
};

// p_0 = q_0 = 1, p_{n+1} = p_n + b q_n, q_{n+1} = p_n - a q_n.
std::vector<PQPair> pq_sequence(const FE& a, const FE& b, int nmax);

// Closed form evaluated through the parity-split binomial expansion in
// (a+1)^2 + 4b, so no square root of the discriminant is ever required and
// the degenerate discriminant needs no separate branch.
PQPair pq_closed_form(const FE& a, const FE& b, int n);

FE pq_discriminant(const FE& a, const FE& b);  // (a+1)^2 + 4b

// p_n != 0 for every 0 <= n <= bound.
bool pseq_nonzero(const FE& a, const FE& b, int bound);

// Split-discriminant zero test: with d a square root of the discriminant,
// p_n = 0 iff ((1-a-d)/(1-a+d))^(n+1) = (1+a+d)/(1+a-d).
bool pq_zero_ratio_criterion(const FE& a, const FE& d, int n);

// Degenerate-discriminant zero test: p_n = 0 iff n*a = -(n+2).
bool pq_zero_degenerate_criterion(const FE& a, int n);

}  // namespace alg
