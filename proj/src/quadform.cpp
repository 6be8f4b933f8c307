#include "quadform.h"

#include <algorithm>

#include "poly1.h"

namespace alg {

RelationSpace make_relation_space(const std::vector<NcPoly>& rels) {
    RelationSpace R;
    if (rels.empty()) fail("DimensionMismatch", "empty relation list");
    R.fd = rels[0].fd;
    R.n = rels[0].n;
    int deg = -1;
    for (const auto& r : rels) {
        if (r.is_zero()) fail("ZeroRelation", "zero relation");
        if (!(r.fd == R.fd) || r.n != R.n) fail("InconsistentAlphabet", "relations mix alphabets");
        if (!r.homogeneous()) fail("MixedDegrees", "relations must be homogeneous");
        if (deg == -1) deg = r.degree();
        else if (deg != r.degree()) fail("MixedDegrees", "relations must share one degree");
    }
    R.k = deg;
    R.basis = triangularize(rels, MonomialOrder::deglex_lr([&] {
        std::vector<int> p(R.n);
        for (int i = 0; i < R.n; ++i) p[i] = i;
        return p;
    }()));
    return R;
}

namespace {

MonomialOrder canon_order(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return MonomialOrder::deglex_lr(std::move(p));
}

// Coefficient vector of p over the list of all degree-d words in canonical order.
Row coeff_row(const NcPoly& p, const std::vector<Word>& words, const FieldDesc& fd) {
    Row r(words.size(), FE::zero(fd));
    for (size_t k = 0; k < words.size(); ++k) {
        auto it = p.terms.find(words[k]);
        if (it != p.terms.end()) r[k] = it->second;
    }
    return r;
}

NcPoly poly_from_row(const Row& r, const std::vector<Word>& words, const FieldDesc& fd, int n) {
    NcPoly p(fd, n);
    for (size_t k = 0; k < words.size(); ++k)
        if (!r[k].is_zero()) p.terms.emplace(words[k], r[k]);
    return p;
}

std::vector<Word> all_words(int n, int d) {
    return words_of_degree(n, d, canon_order(n));
}

// rows(a) subset of rows(b) as subspaces
bool rows_contained(const Mat& a, Mat b) {
    int rb = rank(b);
    Mat both = b;
    both.insert(both.end(), a.begin(), a.end());
    return rank(both) == rb;
}

}  // namespace

Quasipotential quasipotential(const RelationSpace& R) {
    const int n = R.n, k = R.k;
    if (static_cast<int>(R.basis.size()) != n)
        fail("DimensionMismatch", "relation space dimension must equal the generator count");
    const FieldDesc fd = R.fd;
    std::vector<Word> words = all_words(n, k + 1);
    Mat A, B;
    for (const auto& r : R.basis) {
        for (int j = 0; j < n; ++j) {
            Word letter(1, static_cast<char>(j));
            A.push_back(coeff_row(r.sandwich(Word(), letter), words, fd));
            B.push_back(coeff_row(r.sandwich(letter, Word()), words, fd));
        }
    }
    // Intersection of the two row spaces via the kernel of [A^T | -B^T].
    const int m = static_cast<int>(A.size());
    Mat stacked = mat_zero(fd, words.size(), 2 * m);
    for (int c = 0; c < m; ++c)
        for (size_t w = 0; w < words.size(); ++w) {
            stacked[w][c] = A[c][w];
            stacked[w][m + c] = -B[c][w];
        }
    Mat ker = nullspace(stacked, fd);
    Mat inter;
    for (const auto& combo : ker) {
        Row v(words.size(), FE::zero(fd));
        for (int c = 0; c < m; ++c) {
            if (combo[c].is_zero()) continue;
            for (size_t w = 0; w < words.size(); ++w) v[w] = v[w] + combo[c] * A[c][w];
        }
        bool nz = false;
        for (const auto& x : v)
            if (!x.is_zero()) { nz = true; break; }
        if (nz) inter.push_back(std::move(v));
    }
    rref(inter);
    while (!inter.empty()) {
        bool zero = true;
        for (const auto& x : inter.back())
            if (!x.is_zero()) { zero = false; break; }
        if (zero) inter.pop_back(); else break;
    }
    if (inter.size() != 1)
        fail("NotQuasipotential", "intersection dimension is " + std::to_string(inter.size()));

    Quasipotential qp;
    NcPoly Q = poly_from_row(inter[0], words, fd, n);
    TermRef lt = leading_term(Q, canon_order(n));
    qp.Q = Q.scaled(lt.coeff.inv());

    // Left flattening: rows indexed by the first letter.
    std::vector<Word> tails = all_words(n, k);
    Mat M1 = mat_zero(fd, n, tails.size());
    Mat M2 = mat_zero(fd, tails.size(), n);
    for (const auto& [w, c] : qp.Q.terms) {
        int first = static_cast<unsigned char>(w[0]);
        Word tail = w.substr(1);
        int last = static_cast<unsigned char>(w[w.size() - 1]);
        Word head = w.substr(0, w.size() - 1);
        auto tpos = std::find(tails.begin(), tails.end(), tail) - tails.begin();
        auto hpos = std::find(tails.begin(), tails.end(), head) - tails.begin();
        M1[first][tpos] = M1[first][tpos] + c;
        M2[hpos][last] = M2[hpos][last] + c;
    }
    qp.n1 = rank(M1);
    qp.n2 = rank(M2);

    std::vector<Word> letters = all_words(n, 1);
    auto reduce_rows = [&](Mat m) {
        rref(m);
        Mat out;
        for (const auto& r : m) {
            bool nz = false;
            for (const auto& x : r)
                if (!x.is_zero()) { nz = true; break; }
            if (nz) out.push_back(r);
        }
        return out;
    };
    for (const auto& r : reduce_rows(M1)) qp.F1.push_back(poly_from_row(r, tails, fd, n));
    for (const auto& r : reduce_rows(mat_transpose(M1))) qp.E1.push_back(poly_from_row(r, letters, fd, n));
    for (const auto& r : reduce_rows(mat_transpose(M2))) qp.F2.push_back(poly_from_row(r, tails, fd, n));
    for (const auto& r : reduce_rows(M2)) qp.E2.push_back(poly_from_row(r, letters, fd, n));

    std::vector<NcPoly> rq = qp.F1;
    rq.insert(rq.end(), qp.F2.begin(), qp.F2.end());
    qp.RQ = triangularize(rq, canon_order(n));
    return qp;
}

std::pair<int, int> flatten_ranks(const NcPoly& Q) {
    if (Q.is_zero()) fail("ZeroPolynomial", "zero quasipotential");
    const int n = Q.n;
    const int k = Q.degree() - 1;
    const FieldDesc fd = Q.fd;
    std::vector<Word> tails = all_words(n, k);
    Mat M1 = mat_zero(fd, n, tails.size());
    Mat M2 = mat_zero(fd, tails.size(), n);
    for (const auto& [w, c] : Q.terms) {
        int first = static_cast<unsigned char>(w[0]);
        int last = static_cast<unsigned char>(w[w.size() - 1]);
        auto tpos = std::find(tails.begin(), tails.end(), w.substr(1)) - tails.begin();
        auto hpos = std::find(tails.begin(), tails.end(), w.substr(0, w.size() - 1)) - tails.begin();
        M1[first][tpos] = M1[first][tpos] + c;
        M2[hpos][last] = M2[hpos][last] + c;
    }
    return {rank(M1), rank(M2)};
}

NcPoly rotate_word_action(const NcPoly& Q) {
    NcPoly out(Q.fd, Q.n);
    for (const auto& [w, c] : Q.terms) {
        Word r;
        r.push_back(w.back());
        r += w.substr(0, w.size() - 1);
        out.add_term(r, c);
    }
    return out;
}

bool is_cyclic_invariant(const NcPoly& Q) {
    return rotate_word_action(Q) == Q;
}

TwistedPotentialData twisted_potential_matrix(const NcPoly& Q) {
    const int n = Q.n;
    const FieldDesc fd = Q.fd;
    auto [n1, n2] = flatten_ranks(Q);
    if (n1 != n || n2 != n)
        fail("DimensionMismatch", "twist matrix needs full flattening ranks");
    const int k = Q.degree() - 1;
    std::vector<Word> tails = all_words(n, k);
    auto left_flat = [&](const NcPoly& P) {
        Mat L = mat_zero(fd, n, tails.size());
        for (const auto& [w, c] : P.terms) {
            int first = static_cast<unsigned char>(w[0]);
            auto tpos = std::find(tails.begin(), tails.end(), w.substr(1)) - tails.begin();
            L[first][tpos] = L[first][tpos] + c;
        }
        return L;
    };
    Mat LQ = left_flat(Q);
    Mat LR = left_flat(rotate_word_action(Q));
    // Solve sigma * LR = LQ: transpose to LR^T sigma^T = LQ^T and use the
    // pseudo-inverse built from n independent columns of LR.
    Mat LRt = mat_transpose(LR);  // tails x n
    Mat LQt = mat_transpose(LQ);
    // Augment [LRt | LQt] and reduce; consistency gives sigma^T rows.
    const int tcount = static_cast<int>(tails.size());
    Mat aug = mat_zero(fd, tcount, 2 * n);
    for (int r = 0; r < tcount; ++r) {
        for (int c = 0; c < n; ++c) {
            aug[r][c] = LRt[r][c];
            aug[r][n + c] = LQt[r][c];
        }
    }
    std::vector<int> piv = rref(aug);
    Mat sigmaT = mat_zero(fd, n, n);
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] >= n) fail("NotTwisted", "flattening equation is inconsistent");
        for (int c = 0; c < n; ++c) sigmaT[piv[r]][c] = aug[r][n + c];
    }
    Mat sigma = mat_transpose(sigmaT);
    if (!(mat_mul(sigma, LR) == LQ)) fail("NotTwisted", "twist equation has no solution");

    TwistedPotentialData out;
    out.M = sigma;
    out.char_poly_coeffs = char_poly(sigma, fd);
    // Jordan profile when the characteristic polynomial splits over the field.
    UPoly cp(fd, out.char_poly_coeffs);
    RootSearch rs = upoly_roots(cp);
    // Count multiplicities by repeated deflation.
    long total_mult = 0;
    std::string jordan;
    bool split = rs.complete;
    for (const FE& lam : rs.roots) {
        // algebraic multiplicity
        UPoly f = cp;
        int mult = 0;
        while (true) {
            if (!f.eval(lam).is_zero()) break;
            // deflate
            std::vector<FE> q(f.degree(), FE::zero(fd));
            FE carry = FE::zero(fd);
            for (int kk = f.degree(); kk >= 1; --kk) {
                carry = f.c[kk] + carry * lam;
                q[kk - 1] = carry;
            }
            f = UPoly(fd, std::move(q));
            ++mult;
        }
        total_mult += mult;
        // block sizes from kernel dimension growth of (M - lam I)^j
        Mat P = sigma;
        for (int i = 0; i < n; ++i) P[i][i] = P[i][i] - lam;
        std::vector<int> kdims;
        Mat pw = mat_identity(fd, n);
        for (int j = 1; j <= mult + 1 && j <= n; ++j) {
            pw = mat_mul(pw, P);
            kdims.push_back(n - rank(pw));
        }
        if (!jordan.empty()) jordan += ";";
        jordan += lam.str() + ":";
        for (size_t j = 0; j < kdims.size(); ++j) {
            int prev = j == 0 ? 0 : kdims[j - 1];
            int nxt = j + 1 < kdims.size() ? kdims[j + 1] : kdims[j];
            // number of blocks of size exactly j+1 = 2k_j - k_{j-1} - k_{j+1}
            int cnt = 2 * kdims[j] - prev - nxt;
            for (int t = 0; t < cnt; ++t) jordan += std::to_string(j + 1) + ",";
        }
        if (!jordan.empty() && jordan.back() == ',') jordan.pop_back();
    }
    if (split && total_mult == n) out.jordan = jordan;
    return out;
}

// ------------------------------------------------------------ square search

namespace {

// Evaluate a 3x3 quadratic form at (a, b, c).
FE form_eval(const Mat& S, const FE& a, const FE& b, const FE& c) {
    std::array<FE, 3> v{a, b, c};
    FE acc = FE::zero(a.field());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (S[i][j].is_zero()) continue;
            acc = acc + S[i][j] * v[i] * v[j];
        }
    return acc;
}

// The form with gamma = 1 as a polynomial in beta whose coefficients are
// polynomials in alpha: index = beta degree.
std::vector<UPoly> form_bivariate(const Mat& S, const FieldDesc& fd) {
    // variables: 0 = alpha, 1 = beta, 2 -> 1
    // term S[i][j] v_i v_j
    std::vector<UPoly> out(3, UPoly(fd));
    auto add_term = [&](int bdeg, const UPoly& p) { out[bdeg] = out[bdeg] + p; };
    UPoly one = UPoly::constant(fd, FE::one(fd));
    UPoly al = UPoly::x(fd);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (S[i][j].is_zero()) continue;
            UPoly coef = upoly_scale(one, S[i][j]);
            int bdeg = 0;
            UPoly apart = coef;
            auto mul_var = [&](int v) {
                if (v == 0) apart = apart * al;
                else if (v == 1) ++bdeg;
            };
            mul_var(i);
            mul_var(j);
            add_term(bdeg, apart);
        }
    return out;
}

}  // namespace

std::optional<NcPoly> contains_square(const RelationSpace& R) {
    if (R.n != 3 || R.k != 2)
        fail("DimensionMismatch", "square search expects three generators and quadratic relations");
    const FieldDesc fd = R.fd;
    std::vector<Word> words = all_words(3, 2);
    Mat Rm;
    for (const auto& r : R.basis) Rm.push_back(coeff_row(r, words, fd));
    Mat ker = nullspace(Rm, fd);  // of dimension 9 - dim R

    // Quadratic forms whose common projective zero is a square witness:
    // symmetrized kernel matrices.
    std::vector<Mat> forms;
    for (const auto& v : ker) {
        Mat P = mat_zero(fd, 3, 3);
        for (size_t k = 0; k < words.size(); ++k) {
            int i = static_cast<unsigned char>(words[k][0]);
            int j = static_cast<unsigned char>(words[k][1]);
            P[i][j] = v[k];
        }
        Mat S = mat_zero(fd, 3, 3);
        FE half = FE::from_int(fd, 2).inv();
        bool nz = false;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                S[i][j] = (P[i][j] + P[j][i]) * half;
                if (!S[i][j].is_zero()) nz = true;
            }
        if (nz) forms.push_back(std::move(S));
    }

    auto witness = [&](const FE& a, const FE& b, const FE& c) -> std::optional<NcPoly> {
        for (const auto& S : forms)
            if (!form_eval(S, a, b, c).is_zero()) return std::nullopt;
        NcPoly u(fd, 3);
        u.add_term(Word(1, char(0)), a);
        u.add_term(Word(1, char(1)), b);
        u.add_term(Word(1, char(2)), c);
        if (u.is_zero()) return std::nullopt;
        // defensive: check u^2 really lies in span(R)
        Mat aug = Rm;
        aug.push_back(coeff_row(u.mul(u), words, fd));
        if (rank(aug) != rank(Rm)) return std::nullopt;
        return u;
    };

    const FE one = FE::one(fd), zero = FE::zero(fd);

    // u = (1, 0, 0)
    if (auto w = witness(one, zero, zero)) return w;

    // u = (alpha, 1, 0): univariate conditions in alpha
    {
        std::vector<UPoly> uni;
        bool all_zero = true;
        for (const auto& S : forms) {
            // S[0][0] a^2 + (S01+S10) a + S11
            UPoly p(fd, {S[1][1], (S[0][1] + S[1][0]), S[0][0]});
            if (!p.is_zero()) { all_zero = false; uni.push_back(p); }
        }
        if (all_zero) {
            if (auto w = witness(zero, one, zero)) return w;
        } else {
            UPoly g = uni[0];
            for (size_t t = 1; t < uni.size(); ++t) g = upoly_gcd(g, uni[t]);
            if (!g.is_zero() && g.degree() >= 1) {
                RootSearch rs = upoly_roots(g);
                for (const FE& al : rs.roots)
                    if (auto w = witness(al, one, zero)) return w;
                if (!rs.complete)
                    fail("SquareSearchInconclusive", "root extraction incomplete on the beta=1 slice");
            } else if (g.is_zero()) {
                if (auto w = witness(zero, one, zero)) return w;
            }
        }
    }

    // u = (alpha, beta, 1)
    {
        std::vector<std::vector<UPoly>> biv;
        for (const auto& S : forms) {
            std::vector<UPoly> f = form_bivariate(S, fd);
            bool nz = false;
            for (const auto& p : f)
                if (!p.is_zero()) nz = true;
            if (nz) biv.push_back(std::move(f));
        }
        if (biv.empty()) {
            if (auto w = witness(zero, zero, one)) return w;
            fail("SquareSearchInconclusive", "degenerate form system");
        }
        auto try_alpha_seeds = [&]() -> std::optional<NcPoly> {
            for (long s : {0L, 1L, -1L, 2L, -2L}) {
                FE al = FE::from_int(fd, s);
                UPoly g(fd);
                bool started = false;
                for (const auto& f : biv) {
                    std::vector<FE> cs;
                    for (const auto& p : f) cs.push_back(p.eval(al));
                    UPoly q(fd, cs);
                    if (q.is_zero()) continue;
                    g = started ? upoly_gcd(g, q) : q.monic();
                    started = true;
                }
                if (!started) {
                    if (auto w = witness(al, zero, one)) return w;
                    continue;
                }
                if (g.degree() >= 1) {
                    RootSearch rs = upoly_roots(g);
                    for (const FE& be : rs.roots)
                        if (auto w = witness(al, be, one)) return w;
                }
                if (g.degree() == 0) continue;
            }
            return std::nullopt;
        };
        if (biv.size() == 1) {
            if (auto w = try_alpha_seeds()) return w;
            fail("SquareSearchInconclusive", "a single conic remains; no certified emptiness");
        }
        // Eliminate beta against the first system member.
        UPoly G(fd);
        bool started = false;
        bool all_res_zero = true;
        for (size_t t = 1; t < biv.size(); ++t) {
            UPoly r = resultant_outer(biv[0], biv[t], fd);
            if (r.is_zero()) continue;
            all_res_zero = false;
            G = started ? upoly_gcd(G, r) : r.monic();
            started = true;
        }
        if (all_res_zero) {
            if (auto w = try_alpha_seeds()) return w;
            fail("SquareSearchInconclusive", "all resultants vanish; shared component suspected");
        }
        if (G.degree() >= 1) {
            RootSearch rs = upoly_roots(G);
            for (const FE& al : rs.roots) {
                // common beta roots at this alpha
                UPoly g(fd);
                bool st = false;
                for (const auto& f : biv) {
                    std::vector<FE> cs;
                    for (const auto& p : f) cs.push_back(p.eval(al));
                    UPoly q(fd, cs);
                    if (q.is_zero()) continue;
                    g = st ? upoly_gcd(g, q) : q.monic();
                    st = true;
                }
                if (!st) {
                    if (auto w = witness(al, zero, one)) return w;
                    continue;
                }
                if (g.degree() >= 1) {
                    RootSearch rb = upoly_roots(g);
                    for (const FE& be : rb.roots)
                        if (auto w = witness(al, be, one)) return w;
                    if (!rb.complete)
                        fail("SquareSearchInconclusive", "root extraction incomplete in beta");
                }
            }
            if (!rs.complete)
                fail("SquareSearchInconclusive", "root extraction incomplete in alpha");
        }
    }
    return std::nullopt;
}

// ------------------------------------------------------- dim-2 canonical form

namespace {

Mat poly_to_cmat(const NcPoly& p, const FieldDesc& fd) {
    Mat C = mat_zero(fd, 2, 2);
    for (const auto& [w, c] : p.terms) {
        int i = static_cast<unsigned char>(w[0]);
        int j = static_cast<unsigned char>(w[1]);
        C[i][j] = c;
    }
    return C;
}

NcPoly cmat_to_poly(const Mat& C, const FieldDesc& fd) {
    NcPoly p(fd, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (C[i][j].is_zero()) continue;
            Word w;
            w.push_back(static_cast<char>(i));
            w.push_back(static_cast<char>(j));
            p.add_term(w, C[i][j]);
        }
    return p;
}

// Rank-1 factorization C = v w^T for a nonzero 2x2 matrix of rank 1.
std::pair<Row, Row> rank1_factor(const Mat& C, const FieldDesc& fd) {
    // pick a nonzero column as v, scale rows accordingly
    int col = -1;
    for (int j = 0; j < 2 && col < 0; ++j)
        if (!C[0][j].is_zero() || !C[1][j].is_zero()) col = j;
    Row v{C[0][col], C[1][col]};
    // w from the row ratios: C = v w^T means C[i][j] = v[i] w[j]
    int row = C[0][col].is_zero() ? 1 : 0;
    FE inv = v[row].inv();
    Row w{C[row][0] * inv, C[row][1] * inv};
    return {v, w};
}

bool parallel(const Row& a, const Row& b) {
    return (a[0] * b[1] - a[1] * b[0]).is_zero();
}

}  // namespace

std::vector<NcPoly> dim2_canonical_relations(const FieldDesc& fd, const std::string& label,
                                             const std::optional<FE>& param) {
    auto mono = [&](const char* s) {
        NcPoly p(fd, 2);
        Word w;
        for (const char* c = s; *c; ++c) w.push_back(*c == 'x' ? char(0) : char(1));
        p.add_term(w, FE::one(fd));
        return p;
    };
    auto P = [&]() { return param ? *param : FE::zero(fd); };
    std::vector<NcPoly> out;
    if (label == "I.1") out = {mono("yy")};
    else if (label == "I.2") out = {mono("yx")};
    else if (label == "I.3") out = {mono("xy") - mono("yx").scaled(P())};
    else if (label == "I.4") out = {mono("xy") - mono("yx") - mono("yy")};
    else if (label == "II.1") out = {mono("xx"), mono("yy")};
    else if (label == "II.2") out = {mono("xx") - mono("yx"), mono("yy")};
    else if (label == "II.3") out = {mono("xy"), mono("yy")};
    else if (label == "II.4") out = {mono("yx"), mono("yy")};
    else if (label == "II.5") out = {mono("xy") - mono("yx").scaled(P()), mono("yy")};
    else if (label == "II.6") out = {mono("xy"), mono("yx")};
    else if (label == "II.7") out = {mono("xx") - mono("xy"), mono("yx")};
    else if (label == "II.8") out = {mono("xx") - mono("xy").scaled(P()) - mono("yy"), mono("yx")};
    else fail("DimOutOfRange", "unknown canonical label " + label);
    return out;
}

Dim2Canon dim2_canonical_form(const RelationSpace& R) {
    if (R.n != 2 || R.k != 2)
        fail("DimensionMismatch", "canonical forms are for quadratic spaces on two generators");
    const FieldDesc fd = R.fd;
    const int dim = static_cast<int>(R.basis.size());
    if (dim != 1 && dim != 2) fail("DimOutOfRange", "space dimension must be 1 or 2");

    auto finish = [&](std::string label, Mat M, std::optional<FE> param,
                      std::optional<FE> alt) -> Dim2Canon {
        // Prefer the identity when it already lands.
        std::vector<NcPoly> canon = dim2_canonical_relations(fd, label, param);
        LinearSubstitution id = LinearSubstitution::identity(fd, 2);
        auto lands = [&](const LinearSubstitution& s) {
            std::vector<NcPoly> img;
            for (const auto& c : canon) img.push_back(apply_substitution(c, s));
            return span_equal(img, R.basis);
        };
        if (lands(id)) return {label, id, param, alt};
        LinearSubstitution s{M};
        if (!mat_inverse(M, fd)) fail("DimensionMismatch", "constructed substitution is singular");
        if (!lands(s)) fail("DimensionMismatch", "internal error: canonical reduction did not land");
        return {label, s, param, alt};
    };

    const FE one = FE::one(fd), zero = FE::zero(fd);
    const FE half = FE::from_int(fd, 2).inv();

    if (dim == 1) {
        Mat C = poly_to_cmat(R.basis[0], fd);
        Mat S = mat_zero(fd, 2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) S[i][j] = (C[i][j] + C[j][i]) * half;
        FE c = (C[0][1] - C[1][0]) * half;  // antisymmetric coordinate
        bool sym = c.is_zero();
        if (sym) {
            int rk = rank(S);
            if (rk == 1) {
                // S = t v v^T with v a nonzero row
                Row v = !S[0][0].is_zero() || !S[0][1].is_zero() ? Row{S[0][0], S[0][1]}
                                                                 : Row{S[1][0], S[1][1]};
                // columns: y -> v, x -> any independent vector
                Row w = parallel(v, Row{one, zero}) ? Row{zero, one} : Row{one, zero};
                Mat M = {{w[0], v[0]}, {w[1], v[1]}};
                return finish("I.1", M, std::nullopt, std::nullopt);
            }
            // rank 2 symmetric: equivalent to xy + yx exactly when an isotropic
            // vector exists, i.e. -det(S) is a square.
            FE nd = -mat_det(S, fd);
            auto s = nd.sqrt();
            if (!s) fail("QuadraticExtensionNeeded", "symmetric form with no isotropic vector over the base field");
            // isotropic vectors for [[p, q], [q, r]]: beta = 1, alpha from
            // p a^2 + 2q a + r = 0 -> a = (-q +- s)/p; p = 0: alpha = 1, beta from r b^2 + 2 q b = 0
            Row v, w;
            if (!S[0][0].is_zero()) {
                FE a1 = (-S[0][1] + *s) / S[0][0];
                FE a2 = (-S[0][1] - *s) / S[0][0];
                v = {a1, one};
                w = {a2, one};
            } else {
                v = {one, zero};
                // r b^2 + 2 q b = 0 with q != 0 (rank 2): b = 0 or b = -2q/r
                if (S[1][1].is_zero()) w = {zero, one};
                else w = {-FE::from_int(fd, 2) * S[0][1] / S[1][1], one};
            }
            Mat M = {{v[0], w[0]}, {v[1], w[1]}};
            return finish("I.3", M, -one, std::nullopt);
        }
        // c != 0
        if (S[0][0].is_zero() && S[1][1].is_zero() && S[0][1].is_zero()) {
            // pure commutator
            return finish("I.3", mat_identity(fd, 2), one, std::nullopt);
        }
        FE delta = mat_det(S, fd) / (c * c);
        if (delta == -one) {
            // rank-1 total matrix
            auto [v, w] = rank1_factor(C, fd);
            Mat M = {{w[0], v[0]}, {w[1], v[1]}};
            return finish("I.2", M, std::nullopt, std::nullopt);
        }
        if (delta.is_zero()) {
            // S rank 1, c != 0
            Mat Sp = S;
            FE cinv = c.inv();
            for (auto& row : Sp)
                for (auto& e : row) e = e * cinv;
            // factor S' = s_val * z z^T with z primitive
            Row z = !Sp[0][0].is_zero() || !Sp[0][1].is_zero() ? Row{Sp[0][0], Sp[0][1]}
                                                               : Row{Sp[1][0], Sp[1][1]};
            // normalize first nonzero coordinate to 1
            FE lead = z[0].is_zero() ? z[1] : z[0];
            z = {z[0] / lead, z[1] / lead};
            int kZ = z[0].is_zero() ? 1 : 0;
            FE s_val = Sp[kZ][kZ] / (z[kZ] * z[kZ]);
            FE t = -s_val.inv();
            // columns: y -> z; x -> w with det([w|z]) = t
            Row w;
            if (!z[1].is_zero()) w = {t / z[1], zero};
            else w = {zero, -t / z[0]};
            Mat M = {{w[0], z[0]}, {w[1], z[1]}};
            return finish("I.4", M, std::nullopt, std::nullopt);
        }
        // generic: I.3 with -((1-a)/(1+a))^2 = delta
        // If the input already has zero diagonal, read alpha off directly.
        if (S[0][0].is_zero() && S[1][1].is_zero()) {
            FE alpha = -C[1][0] / C[0][1];
            return finish("I.3", mat_identity(fd, 2), alpha,
                          alpha.is_zero() ? std::nullopt : std::optional<FE>(alpha.inv()));
        }
        auto s = (-delta).sqrt();
        if (!s) fail("QuadraticExtensionNeeded", "parameter for the canonical pair needs a square root");
        FE a1 = (one - *s) / (one + *s);
        FE a2 = (one + *s) / (one - *s);
        FE alpha = FE::cmp(a1, a2) >= 0 ? a1 : a2;
        FE altv = FE::cmp(a1, a2) >= 0 ? a2 : a1;
        // K = (C + alpha C^T) / (1 - alpha^2) = v w^T
        FE den = one - alpha * alpha;
        Mat K = mat_zero(fd, 2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) K[i][j] = (C[i][j] + alpha * C[j][i]) / den;
        auto [v, w] = rank1_factor(K, fd);
        Mat M = {{v[0], w[0]}, {v[1], w[1]}};
        return finish("I.3", M, alpha, altv);
    }

    // dim == 2
    Mat Rm;
    std::vector<Word> words = all_words(2, 2);
    for (const auto& r : R.basis) Rm.push_back(coeff_row(r, words, fd));
    Mat ker = nullspace(Rm, fd);  // 2 conditions
    // squares: u u^T in W <=> for every kernel vector P: u^T sym(P) u = 0
    std::vector<Mat> conds;
    for (const auto& vk : ker) {
        Mat P = mat_zero(fd, 2, 2);
        for (size_t k = 0; k < words.size(); ++k) {
            int i = static_cast<unsigned char>(words[k][0]);
            int j = static_cast<unsigned char>(words[k][1]);
            P[i][j] = vk[k];
        }
        Mat S = mat_zero(fd, 2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) S[i][j] = (P[i][j] + P[j][i]) * half;
        conds.push_back(std::move(S));
    }
    // Binary quadratics S00 p^2 + 2 S01 pq + S11 q^2 over (p:q).
    std::vector<Row> squares;  // distinct projective roots
    {
        auto add_sq = [&](const FE& p, const FE& q) {
            for (const auto& s : squares)
                if ((s[0] * q - s[1] * p).is_zero()) return;
            for (const auto& S : conds) {
                FE val = S[0][0] * p * p + (S[0][1] + S[1][0]) * p * q + S[1][1] * q * q;
                if (!val.is_zero()) return;
            }
            squares.push_back(Row{p, q});
        };
        // q = 1 branch: gcd of the dehomogenized quadratics
        UPoly g(fd);
        bool started = false;
        for (const auto& S : conds) {
            UPoly f(fd, {S[1][1], S[0][1] + S[1][0], S[0][0]});
            if (f.is_zero()) continue;
            g = started ? upoly_gcd(g, f) : f.monic();
            started = true;
        }
        if (!started) {
            // every u is a square direction: cannot happen for 2-dim W
            fail("DimOutOfRange", "degenerate two-dimensional space");
        }
        if (g.degree() >= 1) {
            RootSearch rs = upoly_roots(g);
            for (const FE& p : rs.roots) add_sq(p, one);
        } else if (g.is_zero()) {
            add_sq(zero, one);
            add_sq(one, one);
        }
        add_sq(one, zero);
    }

    if (squares.size() >= 2) {
        Mat M = {{squares[0][0], squares[1][0]}, {squares[0][1], squares[1][1]}};
        return finish("II.1", M, std::nullopt, std::nullopt);
    }
    if (squares.size() == 1) {
        Row u = squares[0];
        Row w = parallel(u, Row{one, zero}) ? Row{zero, one} : Row{one, zero};
        Mat M0 = {{w[0], u[0]}, {w[1], u[1]}};
        auto M0inv = mat_inverse(M0, fd);
        // W' = M0^{-1} W M0^{-T}
        Mat Minv = *M0inv;
        Mat MinvT = mat_transpose(Minv);
        std::vector<Mat> Wp;
        for (const auto& r : R.basis)
            Wp.push_back(mat_mul(mat_mul(Minv, poly_to_cmat(r, fd)), MinvT));
        // reduce: find the member proportional to E22 and a complement D
        // row-reduce in coordinates (00, 01, 10, 11)
        Mat coords;
        for (const auto& Cm : Wp) coords.push_back(Row{Cm[0][0], Cm[0][1], Cm[1][0], Cm[1][1]});
        rref(coords);
        // coords now has 2 rows; E22 = (0,0,0,1) must be in the span
        // D = the row with a nonzero entry among the first three
        Row drow;
        bool found = false;
        for (const auto& r : coords) {
            if (!r[0].is_zero() || !r[1].is_zero() || !r[2].is_zero()) {
                if (found) fail("DimOutOfRange", "unexpected: two members outside the square line");
                drow = r;
                found = true;
            }
        }
        if (!found) fail("DimOutOfRange", "unexpected: space collapses onto the square line");
        FE h11 = drow[0], h12 = drow[1], h21 = drow[2];
        if (!h11.is_zero()) {
            // normalize h11 = 1; then lower-triangular cleanup
            h12 = h12 / h11;
            h21 = h21 / h11;
            if (h12 == h21) fail("DimOutOfRange", "unexpected symmetric complement with a single square");
            FE s = -(h21 - h12).inv();
            FE m = -s * h12;
            Mat M1 = {{one, zero}, {m, s}};
            Mat M = mat_mul(M0, M1);
            return finish("II.2", M, std::nullopt, std::nullopt);
        }
        if (h21.is_zero()) {
            return finish("II.3", M0, std::nullopt, std::nullopt);
        }
        if (h12.is_zero()) {
            return finish("II.4", M0, std::nullopt, std::nullopt);
        }
        FE alpha = -h21 / h12;
        return finish("II.5", M0, alpha, std::nullopt);
    }

    // no squares: inspect the rank-1 members of the pencil
    Mat C1 = poly_to_cmat(R.basis[0], fd);
    Mat C2 = poly_to_cmat(R.basis[1], fd);
    // det(l C1 + m C2) as a binary quadratic in (l, m)
    auto det2 = [&](const Mat& A, const Mat& B, int which) -> FE {
        // coefficient of l^2, lm, m^2 in det(lA + mB)
        if (which == 0) return A[0][0] * A[1][1] - A[0][1] * A[1][0];
        if (which == 2) return B[0][0] * B[1][1] - B[0][1] * B[1][0];
        return A[0][0] * B[1][1] + B[0][0] * A[1][1] - A[0][1] * B[1][0] - B[0][1] * A[1][0];
    };
    FE d20 = det2(C1, C2, 0), d11 = det2(C1, C2, 1), d02 = det2(C1, C2, 2);
    std::vector<Row> roots;  // (l, m) pairs
    {
        UPoly f(fd, {d02, d11, d20});  // in l with m = 1
        if (f.is_zero()) fail("DimOutOfRange", "pencil degenerates to rank one everywhere");
        if (f.degree() >= 1) {
            RootSearch rs = upoly_roots(f);
            for (const FE& l : rs.roots) roots.push_back(Row{l, one});
            if (!rs.complete) fail("QuadraticExtensionNeeded", "pencil roots escape the base field");
        }
        if (d20.is_zero()) roots.push_back(Row{one, zero});
        if (roots.empty()) fail("QuadraticExtensionNeeded", "no rank-one member over the base field");
    }
    auto member = [&](const Row& lm) {
        Mat M = mat_zero(fd, 2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) M[i][j] = lm[0] * C1[i][j] + lm[1] * C2[i][j];
        return M;
    };
    bool dbl = roots.size() == 1;
    if (!dbl && roots.size() >= 2) {
        Mat Da = member(roots[0]), Db = member(roots[1]);
        auto [va, wa] = rank1_factor(Da, fd);
        auto [vb, wb] = rank1_factor(Db, fd);
        bool c1 = parallel(va, wb), c2 = parallel(vb, wa);
        if (c1 && c2) {
            Mat M = {{va[0], wa[0]}, {va[1], wa[1]}};
            return finish("II.6", M, std::nullopt, std::nullopt);
        }
        if (c1 || c2) {
            // order so that v_first is parallel to w_second
            Row vf = va, wf = wa, vs = vb, ws = wb;
            if (!c1) { vf = vb; wf = wb; vs = va; ws = wa; }
            // M e1 = c * ws, M e2 = d * vs with c ws - d vs = wf
            // solve [ws, -vs] (c; d) = wf
            Mat A = {{ws[0], -vs[0]}, {ws[1], -vs[1]}};
            auto Ainv = mat_inverse(A, fd);
            if (!Ainv) fail("DimOutOfRange", "unexpected dependent factor lines");
            FE cc = (*Ainv)[0][0] * wf[0] + (*Ainv)[0][1] * wf[1];
            FE dd = (*Ainv)[1][0] * wf[0] + (*Ainv)[1][1] * wf[1];
            Mat M = {{cc * ws[0], dd * vs[0]}, {cc * ws[1], dd * vs[1]}};
            return finish("II.7", M, std::nullopt, std::nullopt);
        }
        // fall through to the II.8 normalization with the first root
    }
    {
        Mat D2 = member(roots[0]);
        auto [v, w] = rank1_factor(D2, fd);
        if (parallel(v, w)) fail("DimOutOfRange", "unexpected square among rank-one members");
        Mat M0 = {{w[0], v[0]}, {w[1], v[1]}};
        auto M0inv = mat_inverse(M0, fd);
        Mat Minv = *M0inv;
        Mat MinvT = mat_transpose(Minv);
        // complement member D' mod E21
        Mat coords;
        for (const auto& r : R.basis) {
            Mat Cm = mat_mul(mat_mul(Minv, poly_to_cmat(r, fd)), MinvT);
            coords.push_back(Row{Cm[0][0], Cm[0][1], Cm[1][1], Cm[1][0]});
        }
        rref(coords);  // (00, 01, 11 | 10): E21 line is (0,0,0,*)
        Row drow;
        bool found = false;
        for (const auto& r : coords) {
            if (!r[0].is_zero() || !r[1].is_zero() || !r[2].is_zero()) {
                if (found) fail("DimOutOfRange", "unexpected second complement direction");
                drow = r;
                found = true;
            }
        }
        if (!found) fail("DimOutOfRange", "space collapsed onto the rank-one line");
        FE h11 = drow[0], h12 = drow[1], h22 = drow[2];
        if (h11.is_zero() || h22.is_zero())
            fail("DimOutOfRange", "unexpected rank-one complement in the no-square case");
        h12 = h12 / h11;
        h22 = h22 / h11;
        auto tau2 = (-h22.inv()).sqrt();
        if (!tau2) fail("QuadraticExtensionNeeded", "the diagonal ratio needs a square root");
        FE tau = *tau2;
        FE a = -tau * h12;
        FE aneg = -a;
        FE chosen = FE::cmp(a, aneg) <= 0 ? a : aneg;
        FE other = FE::cmp(a, aneg) <= 0 ? aneg : a;
        FE t = chosen == a ? tau : -tau;
        // M1 = diag(1, t)
        Mat M1 = {{one, zero}, {zero, t}};
        Mat M = mat_mul(M0, M1);
        if (chosen == other) other = chosen;  // a = 0
        std::optional<FE> alt = chosen == other ? std::nullopt : std::optional<FE>(other);
        return finish("II.8", M, chosen, alt);
    }
}

}  // namespace alg
