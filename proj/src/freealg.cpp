#include "freealg.h"

#include <algorithm>
#include <sstream>

namespace alg {

// ---------------------------------------------------------------- orders

MonomialOrder MonomialOrder::parse(const std::string& spec, const std::vector<std::string>& gens) {
    auto rank_list = [&](const std::string& body) {
        std::vector<int> perm;
        std::string cur;
        std::vector<std::string> parts;
        for (char ch : body) {
            if (ch == ',') { parts.push_back(cur); cur.clear(); }
            else cur.push_back(ch);
        }
        parts.push_back(cur);
        for (const auto& name : parts) {
            auto it = std::find(gens.begin(), gens.end(), name);
            if (it == gens.end())
                fail("AlphabetMismatch", "unknown generator '" + name + "' in order spec");
            perm.push_back(static_cast<int>(it - gens.begin()));
        }
        if (perm.size() != gens.size())
            fail("AlphabetMismatch", "order spec must list every generator exactly once");
        std::vector<int> seen(gens.size(), 0);
        for (int x : perm) seen[x]++;
        for (int s : seen)
            if (s != 1) fail("AlphabetMismatch", "order spec must list every generator exactly once");
        return perm;
    };
    if (spec.rfind("deglex-lr:", 0) == 0) return deglex_lr(rank_list(spec.substr(10)));
    if (spec.rfind("deglex-rl:", 0) == 0) return deglex_rl(rank_list(spec.substr(10)));
    if (spec == "custom81") {
        if (gens.size() != 3) fail("AlphabetMismatch", "custom81 requires exactly three generators");
        return custom81();
    }
    fail("BadOrderSpec", "cannot parse order spec '" + spec + "'");
}

std::string MonomialOrder::spec(const std::vector<std::string>& gens) const {
    if (kind == Kind::Custom81) return "custom81";
    std::string s = kind == Kind::DegLexLR ? "deglex-lr:" : "deglex-rl:";
    for (size_t k = 0; k < perm.size(); ++k) {
        if (k) s += ",";
        s += gens[perm[k]];
    }
    return s;
}

// rank[letter] = position in precedence list; smaller rank = bigger letter.
static std::vector<int> ranks_of(const MonomialOrder& ord, int n) {
    if (static_cast<int>(ord.perm.size()) != n)
        fail("AlphabetMismatch", "order arity does not match alphabet size");
    std::vector<int> rank(n, -1);
    for (int pos = 0; pos < n; ++pos) {
        int letter = ord.perm[pos];
        if (letter < 0 || letter >= n || rank[letter] != -1)
            fail("AlphabetMismatch", "order permutation is not a permutation of the alphabet");
        rank[letter] = pos;
    }
    return rank;
}

static void check_word(const Word& w, int n) {
    for (unsigned char c : w)
        if (c >= n) fail("AlphabetMismatch", "word uses a letter outside the alphabet");
}

int compare_words(const MonomialOrder& ord, const Word& a, const Word& b, int nletters) {
    check_word(a, nletters);
    check_word(b, nletters);
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    switch (ord.kind) {
        case MonomialOrder::Kind::DegLexLR: {
            std::vector<int> rank = ranks_of(ord, nletters);
            for (size_t k = 0; k < a.size(); ++k) {
                int ra = rank[static_cast<unsigned char>(a[k])];
                int rb = rank[static_cast<unsigned char>(b[k])];
                if (ra != rb) return ra < rb ? 1 : -1;
            }
            return 0;
        }
        case MonomialOrder::Kind::DegLexRL: {
            std::vector<int> rank = ranks_of(ord, nletters);
            for (size_t k = a.size(); k-- > 0;) {
                int ra = rank[static_cast<unsigned char>(a[k])];
                int rb = rank[static_cast<unsigned char>(b[k])];
                if (ra != rb) return ra < rb ? 1 : -1;
            }
            return 0;
        }
        case MonomialOrder::Kind::Custom81: {
            if (nletters != 3) fail("AlphabetMismatch", "custom81 requires exactly three letters");
            // Stage 2: more occurrences of the last letter means smaller.
            int za = static_cast<int>(std::count(a.begin(), a.end(), char(2)));
            int zb = static_cast<int>(std::count(b.begin(), b.end(), char(2)));
            if (za != zb) return za < zb ? 1 : -1;
            // Stage 3: collapse the middle letter into the first, compare
            // left-to-right with first > middle > last.
            auto collapse = [](const Word& w) {
                Word c = w;
                for (auto& ch : c)
                    if (ch == char(1)) ch = char(0);
                return c;
            };
            Word ca = collapse(a), cb = collapse(b);
            for (size_t k = 0; k < ca.size(); ++k)
                if (ca[k] != cb[k]) return ca[k] < cb[k] ? 1 : -1;
            // Stage 4: plain left-to-right with first > middle > last.
            for (size_t k = 0; k < a.size(); ++k)
                if (a[k] != b[k]) return a[k] < b[k] ? 1 : -1;
            return 0;
        }
    }
    return 0;
}

bool CanonDesc::operator()(const Word& a, const Word& b) const {
    // Descending DegLexLR with identity precedence (letter 0 largest).
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
}

// ---------------------------------------------------------------- NcPoly

int NcPoly::degree() const {
    if (terms.empty()) return -1;
    int d = 0;
    for (const auto& [w, c] : terms) d = std::max<int>(d, static_cast<int>(w.size()));
    return d;
}

bool NcPoly::homogeneous() const {
    if (terms.empty()) return true;
    size_t d = terms.begin()->first.size();
    for (const auto& [w, c] : terms)
        if (w.size() != d) return false;
    return true;
}

void NcPoly::add_term(const Word& w, const FE& c) {
    if (static_cast<int>(w.size()) > kMaxWordDegree)
        fail("DegreeExceedsTruncation", "word degree exceeds the hard cap");
    check_word(w, n);
    if (c.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
        terms.emplace(w, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

NcPoly NcPoly::operator+(const NcPoly& o) const {
    NcPoly r = *this;
    for (const auto& [w, c] : o.terms) r.add_term(w, c);
    return r;
}

NcPoly NcPoly::operator-(const NcPoly& o) const {
    NcPoly r = *this;
    for (const auto& [w, c] : o.terms) r.add_term(w, -c);
    return r;
}

NcPoly NcPoly::scaled(const FE& c) const {
    NcPoly r(fd, n);
    if (c.is_zero()) return r;
    for (const auto& [w, cf] : terms) r.terms.emplace(w, cf * c);
    return r;
}

NcPoly NcPoly::sandwich(const Word& pre, const Word& post) const {
    NcPoly r(fd, n);
    for (const auto& [w, c] : terms) r.add_term(pre + w + post, c);
    return r;
}

NcPoly NcPoly::mul(const NcPoly& o) const {
    NcPoly r(fd, n);
    for (const auto& [w1, c1] : terms)
        for (const auto& [w2, c2] : o.terms) r.add_term(w1 + w2, c1 * c2);
    return r;
}

std::string NcPoly::str(const std::vector<std::string>& gens) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (!w.empty()) os << "*" << word_str(w, gens);
    }
    return os.str();
}

TermRef leading_term(const NcPoly& p, const MonomialOrder& ord) {
    if (p.is_zero()) fail("ZeroPolynomial", "zero polynomial has no leading term");
    auto it = p.terms.begin();
    const Word* best = &it->first;
    const FE* bc = &it->second;
    for (++it; it != p.terms.end(); ++it) {
        if (compare_words(ord, it->first, *best, p.n) > 0) {
            best = &it->first;
            bc = &it->second;
        }
    }
    return {*best, *bc};
}

// ---------------------------------------------------------------- substitution

LinearSubstitution LinearSubstitution::identity(const FieldDesc& fd, int n) {
    return {mat_identity(fd, n)};
}

LinearSubstitution LinearSubstitution::compose(const LinearSubstitution& inner, const FieldDesc& fd) const {
    (void)fd;
    return {mat_mul(M, inner.M)};
}

std::optional<LinearSubstitution> LinearSubstitution::inverse(const FieldDesc& fd) const {
    auto inv = mat_inverse(M, fd);
    if (!inv) return std::nullopt;
    return LinearSubstitution{*inv};
}

NcPoly apply_substitution(const NcPoly& p, const LinearSubstitution& s) {
    const int n = p.n;
    if (static_cast<int>(s.M.size()) != n)
        fail("DimensionMismatch", "substitution size does not match alphabet");
    NcPoly out(p.fd, n);
    for (const auto& [w, c] : p.terms) {
        // Expand the product of the image linear forms letter by letter.
        std::vector<std::pair<Word, FE>> acc{{Word(), c}};
        for (unsigned char letter : w) {
            std::vector<std::pair<Word, FE>> next;
            next.reserve(acc.size() * n);
            for (const auto& [pw, pc] : acc) {
                for (int i = 0; i < n; ++i) {
                    const FE& m = s.M[i][letter];
                    if (m.is_zero()) continue;
                    Word nw = pw;
                    nw.push_back(static_cast<char>(i));
                    next.emplace_back(std::move(nw), pc * m);
                }
            }
            acc = std::move(next);
        }
        for (const auto& [aw, ac] : acc) out.add_term(aw, ac);
    }
    return out;
}

// ---------------------------------------------------------------- span tools

static std::vector<Word> collect_words(const std::vector<NcPoly>& polys) {
    std::map<Word, int, CanonDesc> idx;
    for (const auto& p : polys)
        for (const auto& [w, c] : p.terms) idx.emplace(w, 0);
    std::vector<Word> words;
    words.reserve(idx.size());
    for (const auto& [w, k] : idx) words.push_back(w);
    return words;
}

bool span_equal(const std::vector<NcPoly>& a, const std::vector<NcPoly>& b) {
    int deg = -1;
    auto scan = [&](const std::vector<NcPoly>& v) {
        for (const auto& p : v) {
            if (p.is_zero()) continue;
            if (!p.homogeneous()) fail("MixedDegrees", "span comparison requires homogeneous input");
            if (deg == -1) deg = p.degree();
            else if (p.degree() != deg) fail("MixedDegrees", "span comparison requires a single shared degree");
        }
    };
    scan(a);
    scan(b);
    std::vector<NcPoly> all = a;
    all.insert(all.end(), b.begin(), b.end());
    std::vector<Word> words = collect_words(all);
    std::map<Word, int, CanonDesc> pos;
    for (size_t k = 0; k < words.size(); ++k) pos.emplace(words[k], static_cast<int>(k));
    FieldDesc fd = FieldDesc::rationals();
    bool have_fd = false;
    for (const auto& p : all)
        if (!p.is_zero()) { fd = p.fd; have_fd = true; break; }
    if (!have_fd) return true;
    auto to_rows = [&](const std::vector<NcPoly>& v) {
        Mat m;
        for (const auto& p : v) {
            if (p.is_zero()) continue;
            Row r(words.size(), FE::zero(fd));
            for (const auto& [w, c] : p.terms) r[pos[w]] = c;
            m.push_back(std::move(r));
        }
        return m;
    };
    return same_row_space(to_rows(a), to_rows(b));
}

std::vector<NcPoly> triangularize(const std::vector<NcPoly>& polys, const MonomialOrder& ord) {
    std::vector<NcPoly> out;
    int n = 0;
    FieldDesc fd = FieldDesc::rationals();
    for (const auto& p : polys)
        if (!p.is_zero()) { n = p.n; fd = p.fd; break; }
    if (n == 0) return out;
    std::vector<Word> words = collect_words(polys);
    std::sort(words.begin(), words.end(), [&](const Word& x, const Word& y) {
        return compare_words(ord, x, y, n) > 0;
    });
    std::map<Word, int, CanonDesc> pos;
    for (size_t k = 0; k < words.size(); ++k) pos.emplace(words[k], static_cast<int>(k));
    Mat m;
    for (const auto& p : polys) {
        if (p.is_zero()) continue;
        Row r(words.size(), FE::zero(fd));
        for (const auto& [w, c] : p.terms) r[pos[w]] = c;
        m.push_back(std::move(r));
    }
    std::vector<int> piv = rref(m);
    for (size_t r = 0; r < piv.size(); ++r) {
        NcPoly p(fd, n);
        for (size_t c = 0; c < words.size(); ++c)
            if (!m[r][c].is_zero()) p.terms.emplace(words[c], m[r][c]);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Word> words_of_degree(int n, int degree, const MonomialOrder& ord) {
    std::vector<Word> all;
    if (degree == 0) { all.push_back(Word()); return all; }
    long long total = 1;
    for (int k = 0; k < degree; ++k) total *= n;
    all.reserve(total);
    Word w(degree, char(0));
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int k = degree - 1; k >= 0; --k) {
            w[k] = static_cast<char>(c % n);
            c /= n;
        }
        all.push_back(w);
    }
    std::sort(all.begin(), all.end(), [&](const Word& x, const Word& y) {
        return compare_words(ord, x, y, n) > 0;
    });
    return all;
}

std::string word_str(const Word& w, const std::vector<std::string>& gens) {
    std::string s;
    for (unsigned char c : w) s += gens.at(c);
    return s;
}

Word word_parse(const std::string& s, const std::vector<std::string>& gens) {
    Word w;
    size_t k = 0;
    while (k < s.size()) {
        bool matched = false;
        // Longest-match over generator names.
        size_t best = 0;
        int best_idx = -1;
        for (size_t g = 0; g < gens.size(); ++g) {
            const std::string& name = gens[g];
            if (name.size() > best && s.compare(k, name.size(), name) == 0) {
                best = name.size();
                best_idx = static_cast<int>(g);
            }
        }
        if (best_idx >= 0) {
            w.push_back(static_cast<char>(best_idx));
            k += best;
            matched = true;
        }
        if (!matched) fail("AlphabetMismatch", "cannot parse word '" + s + "'");
    }
    if (static_cast<int>(w.size()) > kMaxWordDegree)
        fail("DegreeExceedsTruncation", "word degree exceeds the hard cap");
    return w;
}

}  // namespace alg
