#pragma once

#include "freealg.h"

namespace alg {

struct OverlapEvent {
    Word word;          // the ambiguity word that was tested
    bool resolved;      // true when the S-element reduced to zero
    int new_index;      // index of the inserted element, -1 when resolved
};

// Reduced basis of a two-sided homogeneous ideal, complete through degree D:
// every element is monic with a fully reduced tail, and no leading word
// divides another.
struct GroebnerBasis {
    FieldDesc fd;
    int n = 0;
    MonomialOrder ord;
    int D = 0;
    std::vector<NcPoly> elems;
    std::vector<Word> leads;
    std::vector<OverlapEvent> log;
};

GroebnerBasis truncated_groebner(const std::vector<NcPoly>& relations,
                                 const MonomialOrder& ord, int D);

// Full reduction modulo gb; DegreeExceedsTruncation when any term of p has
// degree above gb.D.
NcPoly normal_form(const GroebnerBasis& gb, const NcPoly& p);

// Normal words per degree 0..dmax, each degree sorted descending in gb.ord.
std::vector<std::vector<Word>> normal_words_by_degree(const GroebnerBasis& gb, int dmax);

// dims[d] = number of normal words of degree d, d = 0..dmax.
std::vector<long long> hilbert_function(const GroebnerBasis& gb, int dmax);

}  // namespace alg
