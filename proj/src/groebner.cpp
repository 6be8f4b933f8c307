#include "groebner.h"

#include <algorithm>
#include <deque>
#include <map>

namespace alg {

namespace {

struct Pair {
    Word word;   // ambiguity word
    int fi, gi;  // element indices: lead(fi) is a prefix of word, lead(gi) a suffix
    long seq;
};

// Reduce p fully against elems/leads; p must stay within degree cap dcap.
NcPoly reduce_full(const NcPoly& p, const std::vector<NcPoly>& elems,
                   const std::vector<Word>& leads, const MonomialOrder& ord) {
    NcPoly cur = p;
    bool changed = true;
    while (changed && !cur.is_zero()) {
        changed = false;
        // Find the largest reducible term.
        const Word* bestw = nullptr;
        FE bestc;
        size_t bestg = 0, bestpos = 0;
        for (const auto& [w, c] : cur.terms) {
            size_t gpos = std::string::npos;
            size_t gidx = 0;
            for (size_t g = 0; g < leads.size(); ++g) {
                if (leads[g].size() > w.size()) continue;
                size_t at = w.find(leads[g]);
                if (at != std::string::npos) { gpos = at; gidx = g; break; }
            }
            if (gpos == std::string::npos) continue;
            if (!bestw || compare_words(ord, w, *bestw, cur.n) > 0) {
                bestw = &w; bestc = c; bestg = gidx; bestpos = gpos;
            }
        }
        if (bestw) {
            Word pre = bestw->substr(0, bestpos);
            Word post = bestw->substr(bestpos + leads[bestg].size());
            NcPoly sub = elems[bestg].sandwich(pre, post).scaled(bestc);
            cur = cur - sub;
            changed = true;
        }
    }
    return cur;
}

}  // namespace

GroebnerBasis truncated_groebner(const std::vector<NcPoly>& relations,
                                 const MonomialOrder& ord, int D) {
    if (relations.empty()) fail("ZeroRelation", "no relations given");
    GroebnerBasis gb;
    gb.ord = ord;
    gb.D = D;
    gb.fd = relations[0].fd;
    gb.n = relations[0].n;
    for (const auto& r : relations) {
        if (r.is_zero()) fail("ZeroRelation", "zero polynomial among the relations");
        if (!(r.fd == gb.fd) || r.n != gb.n)
            fail("InconsistentAlphabet", "relations mix alphabets or fields");
        if (!r.homogeneous()) fail("MixedDegrees", "relations must be homogeneous");
        if (r.degree() > D) fail("DegreeExceedsTruncation", "relation degree above truncation");
    }

    long seq = 0;
    std::map<int, std::deque<Pair>> queue;  // keyed by ambiguity degree

    auto add_pairs = [&](int idx) {
        const Word& u = gb.leads[idx];
        for (int j = 0; j <= idx; ++j) {
            const Word& v = gb.leads[j];
            // overlaps u-suffix == v-prefix -> word u + v-tail
            auto emit = [&](const Word& a, const Word& b, int fi, int gi) {
                int maxo = static_cast<int>(std::min(a.size(), b.size())) - 1;
                for (int o = 1; o <= maxo; ++o) {
                    if (a.compare(a.size() - o, o, b, 0, o) != 0) continue;
                    Word w = a + b.substr(o);
                    if (static_cast<int>(w.size()) > D) continue;
                    queue[static_cast<int>(w.size())].push_back(Pair{w, fi, gi, seq++});
                }
            };
            emit(u, v, idx, j);
            if (j != idx) emit(v, u, j, idx);
        }
    };

    auto insert_elem = [&](NcPoly p) -> int {
        TermRef lt = leading_term(p, ord);
        p = p.scaled(lt.coeff.inv());
        gb.elems.push_back(std::move(p));
        gb.leads.push_back(lt.word);
        int idx = static_cast<int>(gb.elems.size()) - 1;
        add_pairs(idx);
        return idx;
    };

    // Interreduce the defining relations first (reduction assumes monic input).
    std::vector<NcPoly> pending = relations;
    for (auto& p : pending) p = p.scaled(leading_term(p, ord).coeff.inv());
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t k = 0; k < pending.size(); ++k) {
            std::vector<NcPoly> others;
            std::vector<Word> oleads;
            for (size_t j = 0; j < pending.size(); ++j) {
                if (j == k) continue;
                others.push_back(pending[j]);
                oleads.push_back(leading_term(pending[j], ord).word);
            }
            NcPoly red = reduce_full(pending[k], others, oleads, ord);
            if (red.is_zero()) {
                pending.erase(pending.begin() + k);
                changed = true;
                break;
            }
            red = red.scaled(leading_term(red, ord).coeff.inv());
            if (!(red == pending[k])) {
                pending[k] = std::move(red);
                changed = true;
            }
        }
    }
    if (pending.empty()) fail("ZeroRelation", "relations span the zero ideal");
    // deterministic insertion order: ascending by leading word
    std::sort(pending.begin(), pending.end(), [&](const NcPoly& a, const NcPoly& b) {
        return compare_words(ord, leading_term(a, ord).word, leading_term(b, ord).word, gb.n) < 0;
    });
    for (auto& p : pending) insert_elem(std::move(p));

    // Main completion loop, ambiguities in ascending degree, FIFO inside.
    while (!queue.empty()) {
        auto it = queue.begin();
        if (it->second.empty()) { queue.erase(it); continue; }
        Pair pr = it->second.front();
        it->second.pop_front();
        const NcPoly& f = gb.elems[pr.fi];
        const NcPoly& g = gb.elems[pr.gi];
        const Word& fl = gb.leads[pr.fi];
        const Word& gl = gb.leads[pr.gi];
        Word post = pr.word.substr(fl.size());
        Word pre = pr.word.substr(0, pr.word.size() - gl.size());
        NcPoly s = f.sandwich(Word(), post) - g.sandwich(pre, Word());
        NcPoly red = reduce_full(s, gb.elems, gb.leads, ord);
        if (red.is_zero()) {
            gb.log.push_back({pr.word, true, -1});
        } else {
            int idx = insert_elem(std::move(red));
            gb.log.push_back({pr.word, false, idx});
            // keep tails reduced so the no-lead-divides-a-tail invariant holds
            for (int e = 0; e < idx; ++e) {
                NcPoly tail = gb.elems[e];
                tail.terms.erase(gb.leads[e]);
                if (tail.is_zero()) continue;
                NcPoly tr = reduce_full(tail, gb.elems, gb.leads, ord);
                if (!(tr == tail)) {
                    NcPoly ne(gb.fd, gb.n);
                    ne.add_term(gb.leads[e], FE::one(gb.fd));
                    gb.elems[e] = ne + tr;
                }
            }
        }
    }
    return gb;
}

NcPoly normal_form(const GroebnerBasis& gb, const NcPoly& p) {
    if (p.degree() > gb.D)
        fail("DegreeExceedsTruncation", "degree above the basis truncation bound");
    if (!p.is_zero() && (!(p.fd == gb.fd) || p.n != gb.n))
        fail("InconsistentAlphabet", "polynomial does not match the basis alphabet");
    return reduce_full(p, gb.elems, gb.leads, gb.ord);
}

std::vector<std::vector<Word>> normal_words_by_degree(const GroebnerBasis& gb, int dmax) {
    if (dmax > gb.D) fail("DegreeExceedsTruncation", "degree above the basis truncation bound");
    std::vector<std::vector<Word>> out(dmax + 1);
    out[0].push_back(Word());
    // A degree-1 word is only excluded if it is itself a leading word.
    for (int d = 1; d <= dmax; ++d) {
        for (const Word& w : out[d - 1]) {
            for (int l = 0; l < gb.n; ++l) {
                Word c = w;
                c.push_back(static_cast<char>(l));
                bool bad = false;
                for (const Word& lead : gb.leads) {
                    if (lead.size() > c.size()) continue;
                    if (c.compare(c.size() - lead.size(), lead.size(), lead) == 0) { bad = true; break; }
                }
                if (!bad) out[d].push_back(std::move(c));
            }
        }
        std::sort(out[d].begin(), out[d].end(), [&](const Word& a, const Word& b) {
            return compare_words(gb.ord, a, b, gb.n) > 0;
        });
    }
    return out;
}

std::vector<long long> hilbert_function(const GroebnerBasis& gb, int dmax) {
    auto nw = normal_words_by_degree(gb, dmax);
    std::vector<long long> dims;
    dims.reserve(nw.size());
    for (const auto& v : nw) dims.push_back(static_cast<long long>(v.size()));
    return dims;
}

}  // namespace alg
