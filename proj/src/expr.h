#pragma once

#include <map>
#include <optional>
#include <string>

#include "field.h"

namespace alg {

struct ExprEnv {
    FieldDesc fd = FieldDesc::rationals();
    std::map<std::string, FE> params;
    std::optional<long long> k;  // bound variable for family predicates
};

// Arithmetic over the working field: + - * / ^ with parentheses, rational
// literals, named parameters, the constants th (a primitive cube root of
// unity) and i, the bound variable k, and gsum(base, k) =
// 1 + base + ... + base^k. Exponents and gsum counts must be integers and
// may involve k only.
FE eval_expr(const std::string& src, const ExprEnv& env);

}  // namespace alg
