#pragma once

#include <map>
#include <string>
#include <vector>

#include "field.h"
#include "linalg.h"

namespace alg {

// A word in the free monoid on n letters: one byte per letter, values 0..n-1.
using Word = std::string;

constexpr int kMaxWordDegree = 32;

struct MonomialOrder {
    enum class Kind { DegLexLR, DegLexRL, Custom81 };
    Kind kind = Kind::DegLexLR;
    // Letter precedence, largest first.  Custom81 fixes three letters read as
    // x, y, z and ignores perm.
    std::vector<int> perm;

    static MonomialOrder deglex_lr(std::vector<int> perm) { return {Kind::DegLexLR, std::move(perm)}; }
    static MonomialOrder deglex_rl(std::vector<int> perm) { return {Kind::DegLexRL, std::move(perm)}; }
    static MonomialOrder custom81() { return {Kind::Custom81, {0, 1, 2}}; }

    // "deglex-lr:x,y,z" style spec against a generator-name list.
    static MonomialOrder parse(const std::string& spec, const std::vector<std::string>& gens);
    std::string spec(const std::vector<std::string>& gens) const;

    bool operator==(const MonomialOrder&) const = default;
};

// -1, 0, 1 as a is smaller, equal, larger than b.
int compare_words(const MonomialOrder& ord, const Word& a, const Word& b, int nletters);

// Canonical comparison used for term storage: DegLexLR with identity
// precedence, descending, so map iteration starts at the canonical lead.
struct CanonDesc {
    bool operator()(const Word& a, const Word& b) const;
};

struct NcPoly {
    FieldDesc fd;
    int n = 0;
    std::map<Word, FE, CanonDesc> terms;

    NcPoly() = default;
    NcPoly(const FieldDesc& f, int nletters) : fd(f), n(nletters) {}

    bool is_zero() const { return terms.empty(); }
    // -1 for zero polynomial; degree of the highest term otherwise.
    int degree() const;
    bool homogeneous() const;

    void add_term(const Word& w, const FE& c);

    NcPoly operator+(const NcPoly& o) const;
    NcPoly operator-(const NcPoly& o) const;
    NcPoly scaled(const FE& c) const;
    NcPoly operator-() const { return scaled(-FE::one(fd)); }

    // pre * this * post with monomial multipliers.
    NcPoly sandwich(const Word& pre, const Word& post) const;
    NcPoly mul(const NcPoly& o) const;

    bool operator==(const NcPoly& o) const { return n == o.n && terms == o.terms; }

    std::string str(const std::vector<std::string>& gens) const;
};

struct TermRef {
    Word word;
    FE coeff;
};

// Largest term of p with respect to ord; ZeroPolynomial on zero input.
TermRef leading_term(const NcPoly& p, const MonomialOrder& ord);

struct LinearSubstitution {
    // n x n matrix over the coefficient field: letter j maps to the linear
    // form sum_i M[i][j] * letter_i (columns are images).
    Mat M;

    static LinearSubstitution identity(const FieldDesc& fd, int n);
    LinearSubstitution compose(const LinearSubstitution& inner, const FieldDesc& fd) const;
    std::optional<LinearSubstitution> inverse(const FieldDesc& fd) const;
};

NcPoly apply_substitution(const NcPoly& p, const LinearSubstitution& s);

// Shared-degree span comparison via row reduction; MixedDegrees when either
// family is not homogeneous of a single common degree.
bool span_equal(const std::vector<NcPoly>& a, const std::vector<NcPoly>& b);

// Row-reduce a family of same-degree polynomials against ord: result is the
// unique basis whose leading words are distinct and whose tails contain no
// leading word of another element.  Zero polynomials are dropped.
std::vector<NcPoly> triangularize(const std::vector<NcPoly>& polys, const MonomialOrder& ord);

// All words of the given degree in descending ord order.
std::vector<Word> words_of_degree(int n, int degree, const MonomialOrder& ord);

std::string word_str(const Word& w, const std::vector<std::string>& gens);
Word word_parse(const std::string& s, const std::vector<std::string>& gens);

}  // namespace alg
