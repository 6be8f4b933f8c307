#pragma once

#include <optional>

#include "freealg.h"
#include "linalg.h"

namespace alg {

// A homogeneous relation subspace: dim-n span of degree-k elements on n
// generators (n = 3, k = 2 or n = 2, k = 3 for the algebras treated here).
struct RelationSpace {
    FieldDesc fd;
    int n = 0;
    int k = 0;
    std::vector<NcPoly> basis;
};

RelationSpace make_relation_space(const std::vector<NcPoly>& rels);

struct Quasipotential {
    NcPoly Q;                 // degree k+1, monic in canonical DegLexLR
    int n1 = 0, n2 = 0;       // left and right flattening ranks
    std::vector<NcPoly> E1;   // minimal first-factor space, subset of V
    std::vector<NcPoly> F1;   // matching complement factors in V^k
    std::vector<NcPoly> E2;   // minimal last-factor space
    std::vector<NcPoly> F2;   // matching complement factors from the right
    std::vector<NcPoly> RQ;   // F1 + F2, row reduced
};

// Spanning element of R (x) V  intersect  V (x) R; NotQuasipotential carries
// the actual intersection dimension when it is not 1.
Quasipotential quasipotential(const RelationSpace& R);

std::pair<int, int> flatten_ranks(const NcPoly& Q);

struct TwistedPotentialData {
    Mat M;
    std::vector<FE> char_poly_coeffs;        // low degree first
    std::optional<std::string> jordan;       // eigenvalue:block sizes, when computable
};

// Requires full flattening ranks (n1 = n2 = n).
TwistedPotentialData twisted_potential_matrix(const NcPoly& Q);

bool is_cyclic_invariant(const NcPoly& Q);

// Rotation moving the last letter to the front (the cyclic action used above).
NcPoly rotate_word_action(const NcPoly& Q);

// Degree-1 element u with u*u inside span(R); certified nullopt when no such
// element exists over the base field.  n = 3, k = 2 only.
std::optional<NcPoly> contains_square(const RelationSpace& R);

struct Dim2Canon {
    std::string label;                 // "I.1".."I.4" or "II.1".."II.8"
    LinearSubstitution sub;            // canonical form maps onto the input under this
    std::optional<FE> param;
    std::optional<FE> param_alt;       // the other representative when the
                                       // parameter is only unique up to an involution
};

// Canonical form of a 1- or 2-dimensional quadratic relation space on two
// generators; DimOutOfRange otherwise.
Dim2Canon dim2_canonical_form(const RelationSpace& R);

// Canonical relation list for a dim2 label at a parameter value.
std::vector<NcPoly> dim2_canonical_relations(const FieldDesc& fd, const std::string& label,
                                             const std::optional<FE>& param);

}  // namespace alg
