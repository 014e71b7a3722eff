#include <algorithm>
#include <map>
#include <set>

#include "uqh/wmod.hpp"

namespace uqh {

namespace {

// ---- free Verma module on the free algebra, used to read off pure-F forms ----

using FreeVector = std::map<FWord, Cyclotomic>;

void free_add(FreeVector& v, const FWord& w, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto it = v.find(w);
    if (it == v.end()) {
        v.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}

// lambda(H_i) of F_{w} v_0
long free_weight(const RootDatum& R, const FWord& w, int i, size_t from = 0) {
    long s = 0;
    for (size_t k = from; k < w.size(); ++k) s -= R.a(i, w[k]);
    return s;
}

// E_i applied to F_{w[from]} ... F_{w[end]} v_0
void free_apply_e(const RootDatum& R, const FieldContext& F, int i, const FWord& w, size_t from, const Cyclotomic& c,
                  FreeVector& out, const FWord& prefix) {
    if (from == w.size()) return;
    // E_i F_j u = F_j E_i u + delta_ij [wt(u)_i]_i u
    FWord pre2 = prefix;
    pre2.push_back(w[from]);
    free_apply_e(R, F, i, w, from + 1, c, out, pre2);
    if (w[from] == i) {
        long mu = free_weight(R, w, i, from + 1);
        Cyclotomic b = F.bracket(Rational(mu), R.d(i));
        if (!b.is_zero()) {
            FWord res = prefix;
            res.insert(res.end(), w.begin() + static_cast<long>(from) + 1, w.end());
            free_add(out, res, c * b);
        }
    }
}

FreeVector free_apply(const RootDatum& R, const FieldContext& F, const Generator& g, const FreeVector& v) {
    FreeVector out;
    for (auto& [w, c] : v) {
        switch (g.kind) {
        case Generator::F: {
            FWord nw;
            nw.push_back(g.index);
            nw.insert(nw.end(), w.begin(), w.end());
            free_add(out, nw, c);
            break;
        }
        case Generator::K: {
            Rational e = 0;
            for (int i = 0; i < R.rank(); ++i) e += Rational(static_cast<long>(R.d(i)) * g.gamma[i] * free_weight(R, w, i));
            free_add(out, w, c * F.q_pow(e));
            break;
        }
        case Generator::H:
            free_add(out, w, c.scaled(Rational(free_weight(R, w, g.index))));
            break;
        case Generator::E:
            free_apply_e(R, F, g.index, w, 0, c, out, {});
            break;
        }
    }
    return out;
}

FPolynomial vacuum_projection(const RootDatum& R, const FieldContext& F, const AlgebraElement& x) {
    FreeVector total;
    for (auto& [word, c] : x.terms()) {
        FreeVector v;
        v.emplace(FWord{}, c);
        for (auto it = word.rbegin(); it != word.rend() && !v.empty(); ++it) v = free_apply(R, F, *it, v);
        for (auto& [w, d] : v) free_add(total, w, d);
    }
    return total;
}

RootVec fword_degree(int n, const FWord& w) {
    RootVec d(n, 0);
    for (int j : w) d[j] += 1;
    return d;
}

struct Relator {
    std::vector<const FPolynomial*> factors;  // product, leftmost first
    RootVec degree;
    std::string name;
};

// apply F_j to a vector of piece p; returns target piece or -1 if the result is zero
int apply_letter(const NegativePart& U, int j, int p, const Vector& v, Vector& out) {
    if (p < 0 || p >= static_cast<int>(U.left[j].size())) return -1;
    const SparseMatrix& L = U.left[j][p];
    if (L.rows() == 0) return -1;
    RootVec d = U.pieces[p].degree;
    d[j] += 1;
    int t = U.find(d);
    if (t < 0) return -1;
    out = L.apply(v);
    return t;
}

// apply the word F_{w[0]} ... F_{w[m-1]} (rightmost first), skipping the first `skip_left` letters
int apply_word(const NegativePart& U, const FWord& w, size_t skip_left, int p, Vector v, Vector& out) {
    for (size_t k = w.size(); k > skip_left; --k) {
        Vector nv;
        p = apply_letter(U, w[k - 1], p, v, nv);
        if (p < 0) return -1;
        v.swap(nv);
    }
    out = std::move(v);
    return p;
}

// P * (vector in piece p), accumulated per target piece
int apply_poly(const NegativePart& U, const FPolynomial& P, int p, const Vector& v, Vector& out, int n) {
    int target = -1;
    Vector acc;
    for (auto& [w, c] : P) {
        Vector r;
        int t = apply_word(U, w, 0, p, v, r);
        if (t < 0) continue;
        if (target < 0) {
            target = t;
            acc.assign(r.size(), Cyclotomic());
        }
        for (size_t k = 0; k < r.size(); ++k)
            if (!r[k].is_zero()) acc[k] += r[k] * c;
    }
    (void)n;
    if (target < 0) return -1;
    bool zero = true;
    for (auto& x : acc)
        if (!x.is_zero()) zero = false;
    if (zero) return -1;
    out = std::move(acc);
    return target;
}

}  // namespace

std::unique_ptr<NegativePart> build_negative_part(const Session& S) {
    const RootDatum& R = S.roots();
    const FieldContext& F = S.field();
    int n = R.rank();
    int Np = R.num_positive();
    // q_i - q_i^{-1} must be invertible for the algebra to be defined
    for (int i = 0; i < n; ++i) q_difference(R, F, R.d(i));

    auto U = std::make_unique<NegativePart>();
    U->left.assign(n, {});

    // pure-F forms of the negative root vectors
    U->root_polys.resize(Np);
    for (int k = 0; k < Np; ++k) {
        FPolynomial p = vacuum_projection(R, F, S.root_vector(k, -1));
        if (p.empty()) fail(ErrorKind::InvariantViolation, "root vector X_-beta_" + std::to_string(k + 1) + " vanishes");
        for (auto& [w, c] : p)
            if (fword_degree(n, w) != R.root(k))
                fail(ErrorKind::InvariantViolation, "root vector X_-beta_" + std::to_string(k + 1) + " is not homogeneous");
        U->root_polys[k] = std::move(p);
    }

    // relators
    std::vector<FPolynomial> owned;
    owned.reserve(n * n + n);
    std::vector<Relator> rels;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            AlgebraElement s = serre_relator(R, F, i, j, -1);
            FPolynomial p;
            for (auto& [w, c] : s.terms()) {
                FWord fw;
                for (auto& g : w) fw.push_back(g.index);
                p[fw] = c;
            }
            if (p.empty()) continue;
            owned.push_back(std::move(p));
            const FPolynomial& q = owned.back();
            rels.push_back({{&q}, fword_degree(n, q.begin()->first), "serre"});
        }
    std::vector<FPolynomial> singles(n);
    for (int i = 0; i < n; ++i) singles[i][FWord{i}] = F.one();
    for (int i = 0; i < n; ++i) {
        int ri = R.r_simple(i);
        Relator rl;
        rl.factors.assign(ri, &singles[i]);
        rl.degree = rootvec_scale(unit_root(n, i), ri);
        rl.name = "nilpotent";
        rels.push_back(rl);
    }
    for (int k = 0; k < Np; ++k) {
        if (rootvec_height(R.root(k)) == 1) continue;
        Relator rl;
        rl.factors.assign(R.r_alpha(k), &U->root_polys[k]);
        rl.degree = rootvec_scale(R.root(k), R.r_alpha(k));
        rl.name = "root-nilpotent";
        rels.push_back(rl);
    }

    // degree 0
    NegativePart::Piece top;
    top.degree = RootVec(n, 0);
    top.provenance.push_back({-1, -1});
    top.words.push_back({});
    top.offset = 0;
    U->pieces.push_back(top);
    U->piece_index[top.degree] = 0;
    U->dim = 1;

    std::vector<int> current = {0};
    long guard = R.pbw_dimension();
    while (!current.empty()) {
        std::set<RootVec> next_degrees;
        for (int p : current)
            for (int j = 0; j < n; ++j) {
                RootVec d = U->pieces[p].degree;
                d[j] += 1;
                next_degrees.insert(d);
            }
        std::vector<int> produced;
        // pending left tables, filled once the target piece exists
        for (const RootVec& eta : next_degrees) {
            // candidates: (j, basis index of piece eta - alpha_j)
            struct Cand {
                int j, src_piece, src_idx;
                FWord word;
            };
            std::vector<Cand> cands;
            for (int j = 0; j < n; ++j) {
                RootVec d = eta;
                d[j] -= 1;
                int p = d[j] < 0 ? -1 : U->find(d);
                if (p < 0) continue;
                const auto& pc = U->pieces[p];
                for (size_t b = 0; b < pc.words.size(); ++b) {
                    FWord w;
                    w.push_back(j);
                    w.insert(w.end(), pc.words[b].begin(), pc.words[b].end());
                    cands.push_back({j, p, static_cast<int>(b), w});
                }
            }
            // lexicographically larger words first, so that pivots eliminate them
            std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.word > b.word; });
            std::map<std::pair<int, int>, int> cand_pos;  // (src_piece, src_idx) per letter -> column
            std::vector<std::map<std::pair<int, int>, int>> by_letter(n);
            for (size_t c = 0; c < cands.size(); ++c) by_letter[cands[c].j][{cands[c].src_piece, cands[c].src_idx}] = static_cast<int>(c);
            int C = static_cast<int>(cands.size());

            std::vector<Vector> rows;
            for (const Relator& rl : rels) {
                RootVec bd = rootvec_sub(eta, rl.degree);
                if (!rootvec_nonneg(bd)) continue;
                int bp = U->find(bd);
                if (bp < 0) continue;
                int bdim = static_cast<int>(U->pieces[bp].words.size());
                for (int b = 0; b < bdim; ++b) {
                    Vector v(bdim);
                    v[b] = F.one();
                    int p = bp;
                    bool zero = false;
                    for (size_t f = rl.factors.size(); f > 1; --f) {
                        Vector nv;
                        p = apply_poly(*U, *rl.factors[f - 1], p, v, nv, n);
                        if (p < 0) {
                            zero = true;
                            break;
                        }
                        v.swap(nv);
                    }
                    if (zero) continue;
                    Vector row(C);
                    bool any = false;
                    for (auto& [w, c] : *rl.factors[0]) {
                        Vector r;
                        int t = apply_word(*U, w, 1, p, v, r);
                        if (t < 0) continue;
                        auto& lm = by_letter[w[0]];
                        for (size_t k = 0; k < r.size(); ++k) {
                            if (r[k].is_zero()) continue;
                            auto it = lm.find({t, static_cast<int>(k)});
                            if (it == lm.end()) fail(ErrorKind::Internal, "relator image outside candidate space");
                            row[it->second] += r[k] * c;
                            any = true;
                        }
                    }
                    if (any) rows.push_back(std::move(row));
                }
            }
            std::vector<int> pivot_row_of(C, -1);
            Matrix red;
            if (!rows.empty()) {
                Matrix M(static_cast<int>(rows.size()), C);
                for (size_t r = 0; r < rows.size(); ++r)
                    for (int c = 0; c < C; ++c) M(static_cast<int>(r), c) = rows[r][c];
                Echelon e = rref(M);
                for (size_t k = 0; k < e.pivots.size(); ++k) pivot_row_of[e.pivots[k]] = static_cast<int>(k);
                red = std::move(e.reduced);
            }
            // survivors in ascending word order
            std::vector<int> survivors;
            for (int c = C - 1; c >= 0; --c)
                if (pivot_row_of[c] < 0) survivors.push_back(c);
            if (survivors.empty()) continue;
            std::vector<int> basis_pos(C, -1);
            for (size_t s = 0; s < survivors.size(); ++s) basis_pos[survivors[s]] = static_cast<int>(s);

            NegativePart::Piece pc;
            pc.degree = eta;
            pc.offset = U->dim;
            for (int c : survivors) {
                pc.provenance.push_back({cands[c].j, cands[c].src_idx});
                pc.words.push_back(cands[c].word);
            }
            int D = static_cast<int>(survivors.size());
            int pid = static_cast<int>(U->pieces.size());
            U->pieces.push_back(pc);
            U->piece_index[eta] = pid;
            U->dim += D;
            produced.push_back(pid);
            if (U->dim > guard)
                fail(ErrorKind::InvariantViolation, "negative part exceeds the PBW dimension at degree " + rootvec_str(eta));

            // left multiplication tables into this piece
            for (int j = 0; j < n; ++j) {
                RootVec d = eta;
                d[j] -= 1;
                int p = d[j] < 0 ? -1 : U->find(d);
                if (p < 0) continue;
                int sd = static_cast<int>(U->pieces[p].words.size());
                SparseMatrix L(D, sd);
                for (int b = 0; b < sd; ++b) {
                    int c = by_letter[j][{p, b}];
                    if (basis_pos[c] >= 0) {
                        L.add(basis_pos[c], b, F.one());
                    } else {
                        int r = pivot_row_of[c];
                        for (int s = 0; s < D; ++s) {
                            const Cyclotomic& x = red(r, survivors[s]);
                            if (!x.is_zero()) L.add(s, b, -x);
                        }
                    }
                }
                if (static_cast<int>(U->left[j].size()) <= p) U->left[j].resize(p + 1);
                U->left[j][p] = std::move(L);
            }
        }
        current = produced;
    }
    for (int j = 0; j < n; ++j) U->left[j].resize(U->pieces.size());

    // certify against the PBW count
    for (auto& pc : U->pieces) {
        long expect = partition_count(R, pc.degree);
        if (expect != static_cast<long>(pc.words.size()))
            fail(ErrorKind::InvariantViolation, "graded piece " + rootvec_str(pc.degree) + " has dimension " +
                                                    std::to_string(pc.words.size()) + ", PBW count is " +
                                                    std::to_string(expect));
    }
    if (U->dim != R.pbw_dimension())
        fail(ErrorKind::InvariantViolation, "negative part has dimension " + std::to_string(U->dim) + ", expected " +
                                                std::to_string(R.pbw_dimension()));
    return U;
}

namespace {

std::shared_ptr<VermaInfo> pbw_data(const Session& S, const NegativePart& U) {
    const RootDatum& R = S.roots();
    const FieldContext& F = S.field();
    int n = R.rank();
    auto info = std::make_shared<VermaInfo>();
    for (size_t p = 0; p < U.pieces.size(); ++p) {
        const auto& pc = U.pieces[p];
        auto pars = partitions(R, pc.degree);
        int D = static_cast<int>(pc.words.size());
        Matrix P(D, static_cast<int>(pars.size()));
        for (size_t c = 0; c < pars.size(); ++c) {
            Vector v(1, F.one());
            int cur = 0;
            bool zero = false;
            for (int k = R.num_positive() - 1; k >= 0 && !zero; --k)
                for (int e = 0; e < pars[c][k]; ++e) {
                    Vector nv;
                    cur = apply_poly(U, U.root_polys[k], cur, v, nv, n);
                    if (cur < 0) {
                        zero = true;
                        break;
                    }
                    v.swap(nv);
                }
            if (zero) continue;
            if (cur != static_cast<int>(p)) fail(ErrorKind::Internal, "PBW monomial landed in the wrong degree");
            for (int r = 0; r < D; ++r) P(r, static_cast<int>(c)) = v[r];
        }
        info->pbw.push_back(std::move(P));
        info->pbw_exponents.push_back(std::move(pars));
    }
    return info;
}

}  // namespace

ModulePtr build_verma(SessionPtr S, const Weight& lambda) {
    const RootDatum& R = S->roots();
    const FieldContext& F = S->field();
    int n = R.rank();
    if (lambda.size() != n) fail(ErrorKind::InvalidArgument, "weight rank mismatch");
    for (int i = 0; i < n; ++i)
        if (!F.has_q_pow(lambda.h[i] * R.d(i)))
            fail(ErrorKind::FieldResolution, "weight " + lambda.str() + " needs a larger cyclotomic field than N=" +
                                                 std::to_string(F.N()));
    const NegativePart& U = S->negative_part();
    static std::mutex pbw_mutex;
    // keyed by address, so an entry is only valid while its session is alive
    static std::map<const Session*, std::pair<std::weak_ptr<const Session>, std::shared_ptr<VermaInfo>>> pbw_cache;
    std::shared_ptr<VermaInfo> base;
    {
        std::lock_guard<std::mutex> lock(pbw_mutex);
        for (auto it = pbw_cache.begin(); it != pbw_cache.end();)
            it = it->second.first.expired() ? pbw_cache.erase(it) : std::next(it);
        auto it = pbw_cache.find(S.get());
        if (it == pbw_cache.end()) it = pbw_cache.emplace(S.get(), std::make_pair(std::weak_ptr<const Session>(S), pbw_data(*S, U))).first;
        base = it->second.second;
    }
    auto info = std::make_shared<VermaInfo>(*base);
    info->lambda = lambda;

    int dim = U.dim;
    std::vector<Weight> weights(dim);
    std::vector<std::string> labels(dim);
    info->degree.assign(dim, RootVec());
    for (auto& pc : U.pieces) {
        Weight w = lambda - R.root_weight(pc.degree);
        for (size_t b = 0; b < pc.words.size(); ++b) {
            weights[pc.offset + b] = w;
            info->degree[pc.offset + b] = pc.degree;
            std::string s;
            for (int j : pc.words[b]) s += "F" + std::to_string(j + 1) + " ";
            s += "v";
            labels[pc.offset + b] = s;
        }
    }
    std::vector<SparseMatrix> Fm(n, SparseMatrix(dim, dim)), Em(n, SparseMatrix(dim, dim));
    for (int j = 0; j < n; ++j)
        for (size_t p = 0; p < U.pieces.size(); ++p) {
            const SparseMatrix& L = U.left[j][p];
            if (L.rows() == 0) continue;
            RootVec d = U.pieces[p].degree;
            d[j] += 1;
            int t = U.find(d);
            if (t < 0) continue;
            int so = U.pieces[p].offset, to = U.pieces[t].offset;
            for (int r = 0; r < L.rows(); ++r)
                for (auto& e : L.row(r)) Fm[j].add(to + r, so + e.col, e.val);
        }
    // E_i (F_j b') = F_j (E_i b') + delta_ij [wt(b')_i]_i b'
    // column vectors of E_i per basis vector, keyed by piece of the image
    std::vector<std::vector<Vector>> ecol(n, std::vector<Vector>(dim));
    std::vector<std::vector<int>> epiece(n, std::vector<int>(dim, -1));
    for (size_t p = 1; p < U.pieces.size(); ++p) {
        const auto& pc = U.pieces[p];
        for (size_t b = 0; b < pc.words.size(); ++b) {
            int j = pc.provenance[b].first, parent = pc.provenance[b].second;
            RootVec pd = pc.degree;
            pd[j] -= 1;
            int pp = U.find(pd);
            int pidx = U.pieces[pp].offset + parent;
            int gidx = pc.offset + static_cast<int>(b);
            for (int i = 0; i < n; ++i) {
                RootVec td = pc.degree;
                td[i] -= 1;
                if (td[i] < 0) continue;
                int tp = U.find(td);
                if (tp < 0) continue;
                int tdim = static_cast<int>(U.pieces[tp].words.size());
                Vector acc(tdim);
                if (epiece[i][pidx] >= 0) {
                    Vector r;
                    int t = apply_letter(U, j, epiece[i][pidx], ecol[i][pidx], r);
                    if (t >= 0) {
                        if (t != tp) fail(ErrorKind::Internal, "E-action degree mismatch");
                        for (int k = 0; k < tdim; ++k) acc[k] += r[k];
                    }
                }
                if (i == j) {
                    Cyclotomic c = F.bracket(weights[pidx].h[i], R.d(i));
                    acc[parent] += c;
                }
                bool any = false;
                for (auto& x : acc)
                    if (!x.is_zero()) any = true;
                if (!any) continue;
                ecol[i][gidx] = acc;
                epiece[i][gidx] = tp;
                int to = U.pieces[tp].offset;
                for (int k = 0; k < tdim; ++k)
                    if (!acc[k].is_zero()) Em[i].add(to + k, gidx, acc[k]);
            }
        }
    }
    auto M = std::make_shared<WeightModule>();
    M->session = S;
    M->basis_weights = std::move(weights);
    M->E = std::move(Em);
    M->F = std::move(Fm);
    M->labels = std::move(labels);
    M->verma = info;
    M->finalize();
    return M;
}

}  // namespace uqh
