#pragma once

#include <optional>
#include <string>
#include <vector>

#include "groebner.h"
#include "quadform.h"

namespace alg {

// Orthogonal complement of a homogeneous relation space under the
// coefficientwise pairing on words of equal degree. The result is
// triangularized, so equal spaces give identical bases.
std::vector<NcPoly> dual_relations(const std::vector<NcPoly>& rels);

// Coefficients 1..D of H_A(t) * H_dual(-t) - 1 given the two dimension
// prefixes (index = degree, entry 0 = 1).
std::vector<long long> duality_residuals(const std::vector<long long>& a,
                                         const std::vector<long long>& b, int D);

struct DualityData {
    std::vector<long long> hilbert;
    std::vector<long long> dual_hilbert;
    std::vector<long long> residuals;  // index i <-> degree i+1
};
DualityData duality_check(const std::vector<NcPoly>& rels, int D);

// Matrix of the differential K_k -> K_{k-1} in internal degree d, where
// K_k = (dual degree-k component)* tensor A as a right module. Bases are
// normal words, listed in descending monomial order; row index =
// (target dual word, target normal word), column index likewise.
// Requires the dual dimension sequence to reach zero within its truncation.
Mat koszul_complex_slice(const GroebnerBasis& A, const GroebnerBasis& dual, int k, int d);

// When the dual degree-k component is one-dimensional, the differential on
// K_k is u -> (m_1 u, ..., m_r u) for degree-one multipliers m_i, one per
// dual normal word of degree k-1 (descending). Returns those multipliers.
std::vector<NcPoly> slice_left_multipliers(const GroebnerBasis& dual, int k);

struct D3Result {
    int injective_up_to = 0;
    std::optional<int> fail_degree;
    std::optional<Row> kernel_vector;  // coordinates in the failing source basis
};
// Checks every degree-d slice of the third differential for d <= D.
// Requires a one-or-more-dimensional dual degree-3 part and a vanishing
// degree-4 part; anything else raises HypothesisViolated.
D3Result d3_injectivity(const GroebnerBasis& A, const GroebnerBasis& dual, int D);

// Leading-triple certificate: after the substitution, the relation space
// triangularized under ord must have one of the six admissible leading
// triples and the algebra must have 10 independent degree-3 monomials.
bool pbw_certificate_check(const std::vector<NcPoly>& rels, const LinearSubstitution& sub,
                           const MonomialOrder& ord);

struct KoszulReport {
    std::vector<long long> hilbert;
    std::vector<long long> dual_hilbert;
    std::vector<long long> duality_residual;  // index i <-> degree i+1
    int d3_injective_up_to = 0;
    std::string verdict;  // "KoszulCertified" | "NotKoszul" | "Inconclusive"
    int certified_degree = 0;
    std::optional<NcPoly> square_witness;
    std::optional<int> residual_degree;
    std::optional<int> kernel_degree;
    std::optional<Row> kernel_vector;
};

// Decision pipeline, in order: a square witness while the dimension prefix
// matches the binomial series; a nonzero duality residual; a full
// certification (finite dual in the right shape, zero residuals, injective
// third differential); otherwise inconclusive. Fields are filled as far as
// the pipeline ran.
KoszulReport koszulity_verdict(const std::vector<NcPoly>& rels, int D);

}  // namespace alg
