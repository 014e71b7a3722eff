#include "uqh/homalg.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "uqh/ribbon.hpp"
#include "uqh/shapovalov.hpp"

namespace uqh {

namespace {

Rational height(const RootDatum& R, const Weight& w) {
    Rational h = 0;
    for (auto& x : R.root_coordinates(w)) h += x;
    return h;
}

// blocks of M from the highest weight down, ties broken by the weight order
std::vector<int> blocks_descending(const WeightModule& M) {
    std::vector<std::pair<Rational, int>> o;
    for (int b = 0; b < static_cast<int>(M.weights.size()); ++b) o.emplace_back(-height(M.roots(), M.weights[b]), b);
    std::sort(o.begin(), o.end());
    std::vector<int> out;
    for (auto& p : o) out.push_back(p.second);
    return out;
}

struct Echelon1 {
    std::vector<Vector> rows;
    std::vector<int> piv;

    bool add(Vector v) {
        for (size_t k = 0; k < rows.size(); ++k) {
            Cyclotomic c = v[piv[k]];
            if (c.is_zero()) continue;
            for (size_t j = 0; j < v.size(); ++j)
                if (!rows[k][j].is_zero()) v[j] -= c * rows[k][j];
        }
        int p = -1;
        for (size_t j = 0; j < v.size() && p < 0; ++j)
            if (!v[j].is_zero()) p = static_cast<int>(j);
        if (p < 0) return false;
        Cyclotomic s = v[p].inv();
        for (auto& x : v)
            if (!x.is_zero()) x *= s;
        rows.push_back(std::move(v));
        piv.push_back(p);
        return true;
    }
};

struct BlockOps {
    const WeightModule& M;
    std::map<std::tuple<int, int, int>, Matrix> cache;
    explicit BlockOps(const WeightModule& m) : M(m) {}
    int target(int i, int s, int b) const {
        Weight a = M.roots().root_weight(unit_root(M.rank(), i));
        return M.block_of(s > 0 ? M.weights[b] + a : M.weights[b] - a);
    }
    const Matrix& op(int i, int s, int b) {
        auto key = std::make_tuple(i, s, b);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, M.block_matrix(i, s, b)).first;
        return it->second;
    }
};

// spanning set of M obtained by spinning weight-vector generators
struct Spin {
    struct Elem {
        int block;
        Vector v;  // block coordinates
        int gen = -1;  // generator index, or -1
        int op_i = 0, op_s = 0, parent = -1;
    };
    std::vector<Elem> elems;
    std::vector<std::vector<int>> per_block;     // element ids per block
    std::vector<int> gen_block;                  // block of each generator
    std::vector<Matrix> binv;                    // inverse of the spin basis per block
    std::set<std::tuple<int, int, int>> produced;  // (parent, i, s) that created an element
};

Spin spin_module(const WeightModule& M, const std::vector<Vector>& hints) {
    int nb = static_cast<int>(M.weights.size());
    Spin sp;
    sp.per_block.assign(nb, {});
    std::vector<Echelon1> span(nb);
    BlockOps ops(M);
    auto spin_from = [&](int b, const Vector& v) {
        if (!span[b].add(v)) return;
        int g = static_cast<int>(sp.gen_block.size());
        sp.gen_block.push_back(b);
        std::vector<int> queue;
        sp.elems.push_back({b, v, g, 0, 0, -1});
        sp.per_block[b].push_back(static_cast<int>(sp.elems.size()) - 1);
        queue.push_back(static_cast<int>(sp.elems.size()) - 1);
        for (size_t q = 0; q < queue.size(); ++q) {
            int id = queue[q];
            for (int i = 0; i < M.rank(); ++i)
                for (int s : {1, -1}) {
                    int eb = sp.elems[id].block;
                    const Matrix& X = ops.op(i, s, eb);
                    if (X.rows() == 0) continue;
                    int t = ops.target(i, s, eb);
                    Vector w = X.apply(sp.elems[id].v);
                    if (!span[t].add(w)) continue;
                    sp.elems.push_back({t, std::move(w), -1, i, s, id});
                    int nid = static_cast<int>(sp.elems.size()) - 1;
                    sp.per_block[t].push_back(nid);
                    sp.produced.insert({id, i, s});
                    queue.push_back(nid);
                }
        }
    };
    for (const Vector& h : hints) {
        if (static_cast<int>(h.size()) != M.dim()) fail(ErrorKind::InvalidArgument, "generator hint has wrong length");
        for (int b = 0; b < nb; ++b) {
            Vector part(M.block_dim(b));
            bool any = false;
            for (int k = 0; k < M.block_dim(b); ++k) {
                part[k] = h[M.blocks[b][k]];
                if (!part[k].is_zero()) any = true;
            }
            if (any) spin_from(b, part);
        }
    }
    for (int b : blocks_descending(M))
        for (int k = 0; k < M.block_dim(b) && static_cast<int>(span[b].rows.size()) < M.block_dim(b); ++k) {
            Vector e(M.block_dim(b), M.field().zero());
            e[k] = M.field().one();
            spin_from(b, e);
        }
    sp.binv.resize(nb);
    for (int b = 0; b < nb; ++b) {
        int d = M.block_dim(b);
        if (static_cast<int>(sp.per_block[b].size()) != d) fail(ErrorKind::Internal, "spinning did not span a weight space");
        Matrix B(d, d);
        for (int c = 0; c < d; ++c)
            for (int r = 0; r < d; ++r) B(r, c) = sp.elems[sp.per_block[b][c]].v[r];
        sp.binv[b] = inverse(B);
    }
    return sp;
}

HomSpace solve_hom(const Spin& sp, const ModulePtr& Mp, const ModulePtr& Np) {
    const WeightModule& M = *Mp;
    const WeightModule& N = *Np;
    const FieldContext& F = M.field();
    HomSpace H;
    H.source = Mp;
    H.target = Np;
    int ng = static_cast<int>(sp.gen_block.size());
    std::vector<int> goff(ng + 1, 0);
    for (int g = 0; g < ng; ++g) {
        int nbk = N.block_of(M.weights[sp.gen_block[g]]);
        goff[g + 1] = goff[g] + (nbk < 0 ? 0 : N.block_dim(nbk));
    }
    int u = goff[ng];
    if (u == 0) return H;
    BlockOps nops(N);
    // image of each spin element as a function of the unknowns
    std::vector<Matrix> phi(sp.elems.size());
    for (size_t id = 0; id < sp.elems.size(); ++id) {
        const auto& e = sp.elems[id];
        int nbk = N.block_of(M.weights[e.block]);
        int rows = nbk < 0 ? 0 : N.block_dim(nbk);
        if (e.gen >= 0) {
            Matrix m(rows, u);
            for (int r = 0; r < rows; ++r) m(r, goff[e.gen] + r) = F.one();
            phi[id] = m;
        } else {
            int pb = N.block_of(M.weights[sp.elems[e.parent].block]);
            if (pb < 0 || rows == 0) {
                phi[id] = Matrix(rows, u);
            } else {
                const Matrix& X = nops.op(e.op_i, e.op_s, pb);
                phi[id] = X.rows() == 0 ? Matrix(rows, u) : X * phi[e.parent];
            }
        }
    }
    BlockOps mops(M);
    Echelon1 eq;
    for (size_t id = 0; id < sp.elems.size() && static_cast<int>(eq.rows.size()) < u; ++id) {
        const auto& e = sp.elems[id];
        for (int i = 0; i < M.rank(); ++i)
            for (int s : {1, -1}) {
                if (sp.produced.count({static_cast<int>(id), i, s})) continue;
                Weight a = M.roots().root_weight(unit_root(M.rank(), i));
                Weight tw = s > 0 ? M.weights[e.block] + a : M.weights[e.block] - a;
                int ntb = N.block_of(tw);
                if (ntb < 0) continue;
                int nsb = N.block_of(M.weights[e.block]);
                Matrix lhs(N.block_dim(ntb), u);
                if (nsb >= 0) {
                    const Matrix& XN = nops.op(i, s, nsb);
                    if (XN.rows() > 0) lhs = XN * phi[id];
                }
                int mtb = M.block_of(tw);
                if (mtb >= 0) {
                    const Matrix& XM = mops.op(i, s, e.block);
                    Vector xv = XM.apply(e.v);
                    Vector c = sp.binv[mtb].apply(xv);
                    for (size_t k = 0; k < c.size(); ++k)
                        if (!c[k].is_zero()) lhs = lhs - phi[sp.per_block[mtb][k]].scaled(c[k]);
                }
                for (int r = 0; r < lhs.rows(); ++r) {
                    Vector row = lhs.row(r);
                    bool any = false;
                    for (auto& x : row)
                        if (!x.is_zero()) any = true;
                    if (any) eq.add(std::move(row));
                }
            }
    }
    Matrix C(static_cast<int>(eq.rows.size()), u);
    for (size_t r = 0; r < eq.rows.size(); ++r)
        for (int c = 0; c < u; ++c) C(static_cast<int>(r), c) = eq.rows[r][c];
    Matrix K = nullspace(C, F);
    for (int k = 0; k < K.cols(); ++k) {
        Vector x = K.column(k);
        ModuleMap f;
        for (int b = 0; b < static_cast<int>(M.weights.size()); ++b) {
            int nbk = N.block_of(M.weights[b]);
            int rows = nbk < 0 ? 0 : N.block_dim(nbk);
            Matrix img(rows, M.block_dim(b));
            for (size_t c = 0; c < sp.per_block[b].size(); ++c) {
                Vector y = phi[sp.per_block[b][c]].apply(x);
                for (int r = 0; r < rows; ++r) img(r, static_cast<int>(c)) = y[r];
            }
            f.blocks.push_back(rows == 0 ? Matrix(0, M.block_dim(b)) : img * sp.binv[b]);
        }
        if (!is_intertwiner(f, M, N)) fail(ErrorKind::InvariantViolation, "solved map does not intertwine");
        H.basis.push_back(std::move(f));
    }
    return H;
}

// basis of the column space of each block
Subspace image_subspace(const ModuleMap& e, const WeightModule& M) {
    Subspace S;
    for (int b = 0; b < static_cast<int>(M.weights.size()); ++b) {
        const Matrix& B = e.blocks[b];
        Echelon ech = rref(B);
        std::vector<Vector> cols;
        for (int p : ech.pivots) cols.push_back(B.column(p));
        S.basis.push_back(from_columns(M.block_dim(b), cols));
    }
    return S;
}

// projection M -> sub along the complement picked out by the idempotent e with image sub
ModuleMap projection_through(const ModuleMap& incl, const ModuleMap& e, const WeightModule& sub, const WeightModule& M) {
    ModuleMap p;
    for (int b = 0; b < static_cast<int>(M.weights.size()); ++b) {
        int s = sub.block_of(M.weights[b]);
        if (s < 0) {
            p.blocks.emplace_back(0, M.block_dim(b));
            continue;
        }
        const Matrix& I = incl.blocks[s];  // M-block x sub-block
        Echelon ech = rref(I.transpose());
        Matrix sq(static_cast<int>(ech.pivots.size()), I.cols()), sel(static_cast<int>(ech.pivots.size()), M.block_dim(b));
        for (size_t r = 0; r < ech.pivots.size(); ++r) {
            for (int c = 0; c < I.cols(); ++c) sq(static_cast<int>(r), c) = I(ech.pivots[r], c);
            for (int c = 0; c < M.block_dim(b); ++c) sel(static_cast<int>(r), c) = e.blocks[b](ech.pivots[r], c);
        }
        p.blocks.push_back(inverse(sq) * sel);
    }
    return p;
}

Cyclotomic trace_product(const ModuleMap& a, const ModuleMap& b) {
    Cyclotomic t;
    for (size_t k = 0; k < a.blocks.size(); ++k) {
        const Matrix& A = a.blocks[k];
        const Matrix& B = b.blocks[k];
        for (int i = 0; i < A.rows(); ++i)
            for (int j = 0; j < A.cols(); ++j)
                if (!A(i, j).is_zero() && !B(j, i).is_zero()) t += A(i, j) * B(j, i);
    }
    return t;
}

struct EndData {
    HomSpace end;
    LocalityCertificate cert;
};

EndData end_data(const ModulePtr& M, const std::vector<Vector>& hints, bool with_minpoly) {
    EndData D;
    D.end = hom_space(M, M, hints);
    int n = D.end.dim();
    const FieldContext& F = M->field();
    D.cert.end_dim = n;
    Matrix T(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            T(i, j) = trace_product(D.end.basis[i], D.end.basis[j]);
            T(j, i) = T(i, j);
        }
    D.cert.radical_dim = n - rank(T.rows() ? T : Matrix(0, 0));
    if (n == 0) D.cert.radical_dim = 0;
    D.cert.local = n - D.cert.radical_dim == 1;
    if (D.cert.local && with_minpoly) {
        D.cert.minimal_polynomials_ok = true;
        for (auto& f : D.end.basis) {
            Polynomial p = minimal_polynomial(to_sparse(f, *M, *M), F);
            auto c = single_root(p, F);
            if (!c) {
                D.cert.minimal_polynomials_ok = false;
                D.cert.scalars.push_back(F.zero());
            } else {
                D.cert.scalars.push_back(*c);
            }
            D.cert.degrees.push_back(static_cast<int>(p.size()) - 1);
        }
    }
    return D;
}

// coordinates of m in the span of the given maps (all with the same shape)
struct MapCoords {
    std::vector<std::pair<int, int>> pos;  // (row, col) of pivot entries
    Matrix inv;
    MapCoords(const std::vector<SparseMatrix>& basis) {
        if (basis.empty()) return;
        std::map<std::pair<int, int>, int> idx;
        std::vector<std::pair<int, int>> all;
        for (auto& m : basis)
            for (int r = 0; r < m.rows(); ++r)
                for (auto& e : m.row(r))
                    if (idx.emplace(std::make_pair(r, e.col), static_cast<int>(all.size())).second) all.emplace_back(r, e.col);
        Matrix A(static_cast<int>(all.size()), static_cast<int>(basis.size()));
        for (size_t k = 0; k < basis.size(); ++k)
            for (int r = 0; r < basis[k].rows(); ++r)
                for (auto& e : basis[k].row(r)) A(idx[{r, e.col}], static_cast<int>(k)) = e.val;
        Echelon ech = rref(A.transpose());
        Matrix sq(static_cast<int>(ech.pivots.size()), A.cols());
        for (size_t r = 0; r < ech.pivots.size(); ++r) {
            pos.push_back(all[ech.pivots[r]]);
            for (int c = 0; c < A.cols(); ++c) sq(static_cast<int>(r), c) = A(ech.pivots[r], c);
        }
        inv = inverse(sq);
    }
    Vector coords(const SparseMatrix& m) const {
        Vector v;
        for (auto& [r, c] : pos) v.push_back(m.get(r, c));
        return inv.apply(v);
    }
};

Character add_characters(Character a, const Character& b, long sign) {
    for (auto& [w, m] : b) {
        a[w] += sign * m;
        if (a[w] == 0) a.erase(w);
    }
    return a;
}

}  // namespace

HomSpace hom_space(const ModulePtr& M, const ModulePtr& N, const std::vector<Vector>& hints) {
    if (M->session != N->session) fail(ErrorKind::ContextMismatch, "Hom between modules of different sessions");
    if (M->dim() == 0 || N->dim() == 0) return HomSpace{M, N, {}};
    Spin sp = spin_module(*M, hints);
    return solve_hom(sp, M, N);
}

HomSpace hom_from_tensor_verma(const ModulePtr& Q, const ModulePtr& A, const ModulePtr& V, const ModulePtr& N) {
    if (!V->verma) fail(ErrorKind::InvalidArgument, "second tensor factor must be a Verma module");
    if (Q->dim() != A->dim() * V->dim()) fail(ErrorKind::InvalidArgument, "source is not A (x) V");
    const Session& S = *Q->session;
    const FieldContext& F = S.field();
    int n = S.rank();
    ModulePtr As = dual_module(A, DualKind::Star);
    int dA = As->dim(), dN = N->dim();
    const Weight& mu = V->verma->lambda;
    HomSpace H{Q, N, {}};
    // basis of (A* (x) N)_mu as pairs
    std::vector<std::pair<int, int>> pairs;
    for (int ba = 0; ba < static_cast<int>(As->weights.size()); ++ba) {
        int bn = N->block_of(mu - As->weights[ba]);
        if (bn < 0) continue;
        for (int x : As->blocks[ba])
            for (int y : N->blocks[bn]) pairs.emplace_back(x, y);
    }
    if (pairs.empty()) return H;
    std::vector<SparseMatrix> EAt(n), ENt(n), FAt(n), FNt(n);
    for (int i = 0; i < n; ++i) {
        EAt[i] = As->E[i].transpose();
        ENt[i] = N->E[i].transpose();
        FAt[i] = As->F[i].transpose();
        FNt[i] = N->F[i].transpose();
    }
    auto kval = [&](int i, const Weight& w, int sign) { return S.k_eigenvalue(rootvec_scale(unit_root(n, i), sign), w); };
    std::map<long, int> rowidx;
    std::vector<std::vector<std::pair<int, Cyclotomic>>> cols(pairs.size());
    for (size_t c = 0; c < pairs.size(); ++c) {
        auto [x, y] = pairs[c];
        for (int i = 0; i < n; ++i) {
            // E (x (x) y) = x (x) E y + E x (x) K y
            auto put = [&](long key, const Cyclotomic& v) {
                long k2 = key * n + i;
                auto it = rowidx.emplace(k2, static_cast<int>(rowidx.size())).first;
                cols[c].emplace_back(it->second, v);
            };
            for (auto& e : ENt[i].row(y)) put(static_cast<long>(x) * dN + e.col, e.val);
            Cyclotomic k = kval(i, N->basis_weights[y], 1);
            for (auto& e : EAt[i].row(x)) put(static_cast<long>(e.col) * dN + y, e.val * k);
        }
    }
    Matrix C(static_cast<int>(rowidx.size()), static_cast<int>(pairs.size()));
    for (size_t c = 0; c < pairs.size(); ++c)
        for (auto& [r, v] : cols[c]) C(r, static_cast<int>(c)) += v;
    Matrix K = C.rows() == 0 ? Matrix::identity(F, static_cast<int>(pairs.size())) : nullspace(C, F);
    std::vector<Cyclotomic> kappa = pivot_eigenvalues(*A);
    const NegativePart& U = S.negative_part();
    using Sparse = std::map<long, Cyclotomic>;
    for (int k = 0; k < K.cols(); ++k) {
        std::vector<Sparse> phi(V->dim());
        for (size_t c = 0; c < pairs.size(); ++c)
            if (!K(static_cast<int>(c), k).is_zero())
                phi[0][static_cast<long>(pairs[c].first) * dN + pairs[c].second] = K(static_cast<int>(c), k);
        for (size_t p = 1; p < U.pieces.size(); ++p) {
            const auto& pc = U.pieces[p];
            for (size_t a = 0; a < pc.words.size(); ++a) {
                int j = pc.provenance[a].first;
                RootVec d = pc.degree;
                d[j] -= 1;
                int parent = U.pieces[U.find(d)].offset + pc.provenance[a].second;
                Sparse out;
                // F (x (x) y) = K^{-1} x (x) F y + F x (x) y
                for (auto& [key, val] : phi[parent]) {
                    int x = static_cast<int>(key / dN), y = static_cast<int>(key % dN);
                    Cyclotomic ki = kval(j, As->basis_weights[x], -1);
                    for (auto& e : FNt[j].row(y)) out[static_cast<long>(x) * dN + e.col] += val * e.val * ki;
                    for (auto& e : FAt[j].row(x)) out[static_cast<long>(e.col) * dN + y] += val * e.val;
                }
                for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
                phi[pc.offset + static_cast<int>(a)] = std::move(out);
            }
        }
        // f(a_i (x) b) = kappa_i sum_y phi_b[i, y] n_y
        SparseMatrix f(dN, Q->dim());
        for (int b = 0; b < V->dim(); ++b)
            for (auto& [key, val] : phi[b]) {
                int x = static_cast<int>(key / dN), y = static_cast<int>(key % dN);
                f.add(y, x * V->dim() + b, val * kappa[x]);
            }
        ModuleMap m = from_sparse(f, *Q, *N);
        if (to_sparse(m, *Q, *N) != f || !is_intertwiner(m, *Q, *N))
            fail(ErrorKind::InvariantViolation, "adjoint map from a maximal vector does not intertwine");
        H.basis.push_back(std::move(m));
    }
    (void)dA;
    return H;
}

ModuleMap inverse_map(const ModuleMap& f, const WeightModule& src, const WeightModule& tgt) {
    ModuleMap g;
    for (int t = 0; t < static_cast<int>(tgt.weights.size()); ++t) {
        int s = src.block_of(tgt.weights[t]);
        if (s < 0) fail(ErrorKind::InvalidArgument, "map is not invertible");
        g.blocks.push_back(inverse(f.blocks[s]));
    }
    return g;
}

std::optional<ModuleMap> find_isomorphism(const ModulePtr& M, const ModulePtr& N) {
    if (character(*M) != character(*N)) return std::nullopt;
    HomSpace H = hom_space(M, N);
    for (auto& f : H.basis)
        if (is_isomorphism(f, *M, *N)) return f;
    // deterministic combinations
    for (unsigned seed = 1; seed <= 4 && H.dim() > 1; ++seed) {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> dist(1, 9);
        ModuleMap g = H.basis[0];
        for (auto& B : g.blocks) B = B.scaled(M->field().from_int(dist(rng)));
        for (int k = 1; k < H.dim(); ++k) {
            Cyclotomic c = M->field().from_int(dist(rng));
            for (size_t b = 0; b < g.blocks.size(); ++b) g.blocks[b] = g.blocks[b] + H.basis[k].blocks[b].scaled(c);
        }
        if (is_isomorphism(g, *M, *N)) return g;
    }
    return std::nullopt;
}

LocalityCertificate locality(const ModulePtr& M) { return end_data(M, {}, true).cert; }

std::vector<Weight> top_weights(const ModulePtr& M) {
    std::vector<Weight> out;
    if (M->dim() == 0) return out;
    Spin sp = spin_module(*M, {});
    for (const Weight& w : M->weights) {
        ModulePtr L = simple_module(M->session, w);
        if (solve_hom(sp, M, L).dim() > 0) out.push_back(w);
    }
    return out;
}

std::vector<Weight> socle_weights(const ModulePtr& M) {
    std::vector<Weight> out;
    for (const Weight& w : M->weights) {
        ModulePtr L = simple_module(M->session, w);
        Vector top(L->dim(), L->field().zero());
        top[L->blocks[L->block_of(w)][0]] = L->field().one();
        if (hom_space(L, M, {top}).dim() > 0) out.push_back(w);
    }
    return out;
}

Decomposition decompose(const ModulePtr& M, bool reverse_order) {
    Decomposition D;
    const FieldContext& F = M->field();
    struct Item {
        ModulePtr X;
        ModuleMap incl, proj;  // X -> M, M -> X
    };
    std::vector<Item> todo = {{M, identity_map(*M), identity_map(*M)}};
    std::vector<Item> leaves;
    std::vector<LocalityCertificate> certs;
    while (!todo.empty()) {
        Item it = std::move(todo.back());
        todo.pop_back();
        const ModulePtr& X = it.X;
        EndData ed = end_data(X, {}, false);
        if (ed.cert.end_dim == 1 || ed.cert.local) {
            certs.push_back(end_data(X, {}, true).cert);
            leaves.push_back(std::move(it));
            continue;
        }
        // right action of End(X) on Hom(X, L^nu) for every top weight nu
        Spin sp = spin_module(*X, {});
        std::vector<std::vector<SparseMatrix>> tops;
        std::vector<ModulePtr> simples;
        std::vector<Weight> ws = X->weights;
        if (reverse_order) std::reverse(ws.begin(), ws.end());
        for (const Weight& w : ws) {
            ModulePtr L = simple_module(X->session, w);
            HomSpace T = solve_hom(sp, X, L);
            if (T.dim() == 0) continue;
            std::vector<SparseMatrix> t;
            for (auto& f : T.basis) t.push_back(to_sparse(f, *X, *L));
            tops.push_back(std::move(t));
            simples.push_back(L);
        }
        std::vector<SparseMatrix> A;
        for (auto& f : ed.end.basis) A.push_back(to_sparse(f, *X, *X));
        if (reverse_order) std::reverse(A.begin(), A.end());
        // a with rho_0(a) = E_11 and rho_nu(a) = 0 otherwise
        std::vector<Vector> rows;
        Vector rhs;
        for (size_t t = 0; t < tops.size(); ++t) {
            MapCoords mc(tops[t]);
            int m = static_cast<int>(tops[t].size());
            std::vector<std::vector<Vector>> rho(A.size());
            for (size_t s = 0; s < A.size(); ++s)
                for (int l = 0; l < m; ++l) rho[s].push_back(mc.coords(tops[t][l] * A[s]));
            for (int l = 0; l < m; ++l)
                for (int k = 0; k < m; ++k) {
                    Vector row(A.size());
                    for (size_t s = 0; s < A.size(); ++s) row[s] = rho[s][l][k];
                    rows.push_back(row);
                    rhs.push_back(t == 0 && l == 0 && k == 0 ? F.one() : F.zero());
                }
        }
        Matrix sys(static_cast<int>(rows.size()), static_cast<int>(A.size()));
        for (size_t r = 0; r < rows.size(); ++r)
            for (size_t c = 0; c < A.size(); ++c) sys(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
        Vector x;
        if (!solve(sys, rhs, x)) fail(ErrorKind::InvariantViolation, "no endomorphism lifts a primitive idempotent of the top");
        SparseMatrix e(X->dim(), X->dim());
        for (size_t s = 0; s < A.size(); ++s)
            if (!x[s].is_zero()) e = e + A[s].scaled(x[s]);
        for (int iter = 0;; ++iter) {
            SparseMatrix e2 = e * e;
            if (e2 == e) break;
            if (iter > 64) fail(ErrorKind::Internal, "idempotent lifting did not converge");
            e = e2.scaled(F.from_int(3)) - (e2 * e).scaled(F.from_int(2));
        }
        SparseMatrix f = SparseMatrix::identity(F, X->dim()) - e;
        if (e.is_zero() || f.is_zero()) fail(ErrorKind::InvariantViolation, "lifted idempotent is trivial on a non-local module");
        for (const SparseMatrix* pe : {&e, &f}) {
            ModuleMap em = from_sparse(*pe, *X, *X);
            Subspace S = image_subspace(em, *X);
            SubquotientResult sub = submodule(X, S);
            ModuleMap p = projection_through(sub.map, em, *sub.module, *X);
            Item child{sub.module, compose(it.incl, sub.map, *sub.module, *X), compose(p, it.proj, *M, *X)};
            todo.push_back(std::move(child));
        }
    }
    // deterministic order: by character, then by dimension
    std::vector<size_t> order(leaves.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::vector<Character> chs;
    for (auto& l : leaves) chs.push_back(character(*l.X));
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return chs[a] < chs[b]; });
    Character total;
    SparseMatrix sum(M->dim(), M->dim());
    for (size_t k : order) {
        Summand s;
        s.module = leaves[k].X;
        s.inclusion = leaves[k].incl;
        s.projection = leaves[k].proj;
        s.ch = chs[k];
        s.tops = top_weights(s.module);
        s.socles = socle_weights(s.module);
        s.cert = certs[k];
        total = add_characters(total, s.ch, 1);
        D.idempotents.push_back(to_sparse(s.inclusion, *s.module, *M) * to_sparse(s.projection, *M, *s.module));
        sum = sum + D.idempotents.back();
        D.summands.push_back(std::move(s));
    }
    D.character_conserved = total == character(*M);
    D.idempotents_ok = sum == SparseMatrix::identity(F, M->dim());
    for (size_t a = 0; a < D.idempotents.size() && D.idempotents_ok; ++a)
        for (size_t b = 0; b < D.idempotents.size(); ++b) {
            SparseMatrix pr = D.idempotents[a] * D.idempotents[b];
            if (a == b ? pr != D.idempotents[a] : !pr.is_zero()) D.idempotents_ok = false;
        }
    int cls = 0;
    for (size_t a = 0; a < D.summands.size(); ++a) {
        D.summands[a].multiplicity_class = -1;
        for (size_t b = 0; b < a; ++b)
            if (D.summands[b].ch == D.summands[a].ch && find_isomorphism(D.summands[a].module, D.summands[b].module)) {
                D.summands[a].multiplicity_class = D.summands[b].multiplicity_class;
                break;
            }
        if (D.summands[a].multiplicity_class < 0) D.summands[a].multiplicity_class = cls++;
    }
    return D;
}

SemisimpleSplitting decompose_semisimple(const ModulePtr& M) {
    SemisimpleSplitting out;
    const RootDatum& R = M->roots();
    int n = M->rank();
    Subspace mv = maximal_vectors(*M);
    int nb = static_cast<int>(M->weights.size());
    BlockOps ops(*M);
    std::vector<std::vector<Vector>> produced(nb);
    out.all_typical = true;
    out.dims_match = true;
    int total = 0;
    Character ch;
    for (int b = 0; b < nb; ++b)
        for (int c = 0; c < mv.basis[b].cols(); ++c) {
            // E kills a maximal vector and K acts by a scalar, so U.w is spanned by F-words applied to w
            std::map<int, Echelon1> local;
            std::vector<std::pair<int, Vector>> queue;
            queue.push_back({b, mv.basis[b].column(c)});
            local[b].add(queue.back().second);
            int dim = 0;
            for (size_t q = 0; q < queue.size(); ++q) {
                auto [eb, v] = queue[q];
                ++dim;
                produced[eb].push_back(v);
                for (int i = 0; i < n; ++i) {
                    const Matrix& X = ops.op(i, -1, eb);
                    if (X.rows() == 0) continue;
                    int t = ops.target(i, -1, eb);
                    Vector w = X.apply(v);
                    if (local[t].add(w)) queue.push_back({t, std::move(w)});
                }
            }
            const Weight& nu = M->weights[b];
            out.highest_weights.push_back(nu);
            out.dims.push_back(dim);
            total += dim;
            if (!is_typical(R, nu)) out.all_typical = false;
            if (dim != R.pbw_dimension()) out.dims_match = false;
            ch = add_characters(ch, verma_character(R, nu), 1);
        }
    out.direct = total == M->dim();
    out.spans = true;
    for (int b = 0; b < nb && out.spans; ++b) {
        int d = M->block_dim(b);
        if (static_cast<int>(produced[b].size()) < d) {
            out.spans = false;
            break;
        }
        // full rank modulo p already proves full rank; otherwise decide exactly
        if (modular_rank(produced[b], d) == d) continue;
        Echelon1 e;
        for (auto& v : produced[b]) e.add(v);
        out.spans = static_cast<int>(e.rows.size()) == d;
    }
    out.character_conserved = ch == character(*M);
    return out;
}

SemisimpleSplitting decompose_semisimple_tensor(const ModulePtr& T, const ModulePtr& A, const ModulePtr& N) {
    if (T->dim() != A->dim() * N->dim() || T->session != A->session || A->session != N->session)
        fail(ErrorKind::InvalidArgument, "T must be the tensor product of A and N");
    const Session& S = *T->session;
    const RootDatum& R = S.roots();
    const FieldContext& F = S.field();
    int n = R.rank(), dN = N->dim();
    int nbN = static_cast<int>(N->weights.size());
    std::vector<Weight> ar;
    for (int i = 0; i < n; ++i) ar.push_back(R.root_weight(unit_root(n, i)));

    // the top of N, and for every other block a right inverse of [E_1^T | E_2^T | ...]
    int top = -1;
    std::vector<std::vector<std::pair<int, int>>> up(nbN);  // (i, target block)
    for (int b = 0; b < nbN; ++b) {
        for (int i = 0; i < n; ++i) {
            int t = N->block_of(N->weights[b] + ar[i]);
            if (t >= 0) up[b].push_back({i, t});
        }
        if (up[b].empty()) {
            if (top >= 0) return decompose_semisimple(T);
            top = b;
        }
    }
    if (top < 0 || N->block_dim(top) != 1) return decompose_semisimple(T);
    struct Solver {
        Matrix G;
        std::vector<int> offset, sel;
        Matrix inv;
    };
    std::vector<Solver> solve(nbN);
    for (int b = 0; b < nbN; ++b) {
        if (b == top) continue;
        Solver& sv = solve[b];
        int d = N->block_dim(b), cols = 0;
        for (auto& [i, t] : up[b]) {
            sv.offset.push_back(cols);
            cols += N->block_dim(t);
        }
        sv.G = Matrix(d, cols);
        for (size_t k = 0; k < up[b].size(); ++k) {
            Matrix X = N->block_matrix(up[b][k].first, 1, b);
            for (int r = 0; r < X.rows(); ++r)
                for (int c = 0; c < d; ++c) sv.G(c, sv.offset[k] + r) = X(r, c);
        }
        Echelon e = rref(sv.G);
        if (static_cast<int>(e.pivots.size()) != d) return decompose_semisimple(T);
        sv.sel = e.pivots;
        Matrix Gs(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) Gs(r, c) = sv.G(r, sv.sel[c]);
        sv.inv = inverse(Gs);
    }
    // blocks of N by increasing depth below the top
    std::vector<int> order;
    for (int b = 0; b < nbN; ++b) order.push_back(b);
    auto depth = [&](int b) {
        Rational h = 0;
        for (auto& x : R.root_coordinates(N->weights[top] - N->weights[b])) h += x;
        return h;
    };
    std::vector<Rational> dep(nbN);
    for (int b = 0; b < nbN; ++b) dep[b] = depth(b);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return dep[x] < dep[y]; });

    BlockOps aops(*A);
    std::vector<SparseMatrix> Et;
    for (int i = 0; i < n; ++i) Et.push_back(T->E[i].transpose());
    const Weight& mu = N->weights[top];

    using SparseVec = std::map<long, Cyclotomic>;
    std::vector<std::pair<Weight, SparseVec>> maxvecs;
    for (int bA = 0; bA < static_cast<int>(A->weights.size()); ++bA) {
        Weight nu = A->weights[bA] + mu;
        int m = A->block_dim(bA);
        for (int u = 0; u < m; ++u) {
            // W[b]: rows index the A-block of weight nu - wt(b), columns index N-block b
            std::vector<Matrix> W(nbN);
            std::vector<int> Wblock(nbN, -1);
            W[top] = Matrix(m, 1);
            for (int r = 0; r < m; ++r) W[top](r, 0) = r == u ? F.one() : F.zero();
            Wblock[top] = bA;
            bool extends = true;
            for (int b : order) {
                if (b == top) continue;
                const Solver& sv = solve[b];
                int ab = A->block_of(nu - N->weights[b]);
                int rows = ab < 0 ? 0 : A->block_dim(ab);
                Matrix rhs(rows, sv.G.cols());
                bool nonzero = false;
                for (size_t k = 0; k < up[b].size(); ++k) {
                    auto [i, t] = up[b][k];
                    if (Wblock[t] < 0) continue;
                    const Matrix& X = aops.op(i, 1, Wblock[t]);
                    if (X.rows() == 0) continue;
                    Cyclotomic kv = -S.k_eigenvalue(unit_root(n, i), N->weights[t]);
                    Matrix part = (X * W[t]).scaled(kv);
                    if (ab < 0) {
                        if (!part.is_zero()) nonzero = true;
                        continue;
                    }
                    for (int r = 0; r < rows; ++r)
                        for (int c = 0; c < part.cols(); ++c) rhs(r, sv.offset[k] + c) = part(r, c);
                }
                if (ab < 0) {
                    if (nonzero) extends = false;
                    if (!extends) break;
                    continue;
                }
                int d = N->block_dim(b);
                Matrix rs(rows, d);
                for (int r = 0; r < rows; ++r)
                    for (int c = 0; c < d; ++c) rs(r, c) = rhs(r, sv.sel[c]);
                Matrix Wb = rs * sv.inv;
                if (Wb * sv.G != rhs) {
                    extends = false;
                    break;
                }
                W[b] = std::move(Wb);
                Wblock[b] = ab;
            }
            if (!extends) continue;
            SparseVec w;
            for (int b = 0; b < nbN; ++b) {
                if (Wblock[b] < 0) continue;
                for (int r = 0; r < W[b].rows(); ++r)
                    for (int c = 0; c < W[b].cols(); ++c)
                        if (!W[b](r, c).is_zero())
                            w[static_cast<long>(A->blocks[Wblock[b]][r]) * dN + N->blocks[b][c]] = W[b](r, c);
            }
            // exact check that w is killed by every E_i
            bool maximal = true;
            for (int i = 0; i < n && maximal; ++i) {
                SparseVec out;
                for (auto& [key, val] : w)
                    for (auto& e : Et[i].row(static_cast<int>(key))) out[e.col] += e.val * val;
                for (auto& [key, val] : out)
                    if (!val.is_zero()) maximal = false;
            }
            if (maximal) maxvecs.push_back({nu, std::move(w)});
        }
    }

    // spin every maximal vector along the negative-part basis, modulo p
    SemisimpleSplitting out;
    const ModularImage& im = modular_image(F.N());
    const std::uint64_t p = im.p;
    std::vector<std::vector<std::vector<std::pair<int, std::uint64_t>>>> FT(n);
    for (int j = 0; j < n; ++j) {
        SparseMatrix Ft = T->F[j].transpose();
        FT[j].resize(T->dim());
        for (int x = 0; x < T->dim(); ++x)
            for (auto& e : Ft.row(x)) {
                std::uint64_t v;
                if (!e.val.reduce_mod(p, im.zpow, v)) return decompose_semisimple(T);
                FT[j][x].push_back({e.col, v});
            }
    }
    const NegativePart& U = S.negative_part();
    int nbT = static_cast<int>(T->weights.size());
    std::vector<std::vector<std::vector<std::uint64_t>>> rows(nbT);
    long pbw = R.pbw_dimension();
    long total = 0;
    Character ch;
    out.all_typical = true;
    using ModVec = std::map<int, std::uint64_t>;
    for (auto& [nu, w] : maxvecs) {
        std::vector<ModVec> phi(U.dim);
        for (auto& [key, val] : w) {
            std::uint64_t v;
            if (!val.reduce_mod(p, im.zpow, v)) return decompose_semisimple(T);
            if (v) phi[0][static_cast<int>(key)] = v;
        }
        for (size_t pi = 0; pi < U.pieces.size(); ++pi) {
            const auto& pc = U.pieces[pi];
            for (size_t a = 0; a < pc.words.size(); ++a) {
                int k = pc.offset + static_cast<int>(a);
                if (pi > 0) {
                    int j = pc.provenance[a].first;
                    RootVec d = pc.degree;
                    d[j] -= 1;
                    int parent = U.pieces[U.find(d)].offset + pc.provenance[a].second;
                    ModVec o;
                    for (auto& [x, v] : phi[parent])
                        for (auto& [y, c] : FT[j][x]) o[y] = (o[y] + v * c) % p;
                    for (auto it = o.begin(); it != o.end();) it = it->second ? std::next(it) : o.erase(it);
                    phi[k] = std::move(o);
                }
                int tb = T->block_of(nu - R.root_weight(pc.degree));
                if (tb < 0) {
                    if (!phi[k].empty()) return decompose_semisimple(T);
                    continue;
                }
                std::vector<std::uint64_t> row(T->block_dim(tb), 0);
                for (auto& [x, v] : phi[k]) row[T->position[x]] = v;
                rows[tb].push_back(std::move(row));
            }
        }
        out.highest_weights.push_back(nu);
        total += pbw;
        if (!is_typical(R, nu)) out.all_typical = false;
        ch = add_characters(ch, verma_character(R, nu), 1);
    }
    out.direct = total == T->dim();
    out.spans = true;
    for (int b = 0; b < nbT && out.spans; ++b) {
        int d = T->block_dim(b);
        if (static_cast<int>(rows[b].size()) != d || rank_mod_p(std::move(rows[b]), p) != d) out.spans = false;
    }
    // with exactly dim T vectors spanning, each U.w has the full PBW dimension
    out.dims_match = out.spans && out.direct;
    out.dims.assign(out.highest_weights.size(), out.dims_match ? static_cast<int>(pbw) : 0);
    out.character_conserved = ch == character(*T);
    return out;
}

Weight choose_tau(const Session& S) {
    const RootDatum& R = S.roots();
    const FieldContext& F = S.field();
    int n = R.rank();
    for (int den = 1; den <= 12; ++den)
        for (int m = 1; m <= 4 * R.ell() * den; ++m) {
            if (den > 1 && m % den == 0) continue;
            Weight t(std::vector<Rational>(n, Rational(m, den)));
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) ok = F.has_q_pow(t.h[i] * R.d(i));
            if (ok && is_typical(R, t)) return t;
        }
    fail(ErrorKind::FieldResolution, "no typical weight with small denominator is representable in this field");
}

namespace {

struct Source {
    ModulePtr A, V, Q;
    std::string desc;
};

Source projective_source(const SessionPtr& S, const Weight& lambda, const Weight& tau, Weight& mu) {
    const RootDatum& R = S->roots();
    Source src;
    ModulePtr Lt = build_verma(S, tau);
    if (static_cast<long>(Lt->dim()) * Lt->dim() * R.pbw_dimension() <= 64) {
        src.A = tensor_module(Lt, dual_module(Lt, DualKind::Star));
        mu = lambda;
        src.desc = "L^tau (x) (L^tau)* (x) M^lambda";
    } else {
        src.A = Lt;
        RootVec top(R.rank(), 0);
        for (int k = 0; k < R.num_positive(); ++k) top = rootvec_add(top, rootvec_scale(R.root(k), R.r_alpha(k) - 1));
        mu = lambda - tau + R.root_weight(top);
        src.desc = "M^tau (x) M^mu";
    }
    src.V = build_verma(S, mu);
    src.Q = tensor_module(src.A, src.V);
    return src;
}

}  // namespace

ProjectiveCover projective_cover(const SessionPtr& S, const Weight& lambda) {
    const RootDatum& R = S->roots();
    ProjectiveCover pc;
    pc.lambda = lambda;
    pc.typical = is_typical(R, lambda);
    ModulePtr L = simple_module(S, lambda);
    if (pc.typical) {
        pc.P = build_verma(S, lambda);
        pc.tau = lambda;
        pc.mu = lambda;
        pc.source = "typical Verma module";
        pc.source_module = pc.P;
        pc.inclusion = identity_map(*pc.P);
        pc.retraction = identity_map(*pc.P);
        pc.retraction_ok = true;
        pc.candidates = 1;
        Vector top(pc.P->dim(), S->field().zero());
        top[0] = S->field().one();
        pc.hom_to_simple = hom_space(pc.P, L, {top}).dim();
        pc.cert = end_data(pc.P, {top}, true).cert;
        pc.characters_determine = true;
        return pc;
    }
    pc.tau = choose_tau(*S);
    Source src = projective_source(S, lambda, pc.tau, pc.mu);
    pc.source = src.desc;
    pc.source_module = src.Q;
    Decomposition D = decompose(src.Q);
    pc.source_summands = static_cast<int>(D.summands.size());
    const Summand* chosen = nullptr;
    for (const Summand& s : D.summands) {
        if (std::find(s.tops.begin(), s.tops.end(), lambda) == s.tops.end()) continue;
        ++pc.candidates;
        if (!chosen) {
            chosen = &s;
        } else if (s.multiplicity_class != chosen->multiplicity_class) {
            fail(ErrorKind::InvariantViolation, "two non-isomorphic summands of the projective source have top " + lambda.str());
        }
    }
    if (!chosen) fail(ErrorKind::InvariantViolation, "no summand of the projective source has top " + lambda.str());
    pc.P = chosen->module;
    pc.inclusion = chosen->inclusion;
    pc.retraction = chosen->projection;
    pc.retraction_ok = D.idempotents_ok && D.character_conserved &&
                       to_sparse(compose(pc.retraction, pc.inclusion, *pc.P, *src.Q), *pc.P, *pc.P) ==
                           SparseMatrix::identity(S->field(), pc.P->dim()) &&
                       is_intertwiner(pc.retraction, *src.Q, *pc.P) && is_intertwiner(pc.inclusion, *pc.P, *src.Q);
    pc.hom_to_simple = hom_space(pc.P, L).dim();
    pc.cert = chosen->cert;
    // summands with equal characters must be isomorphic
    pc.characters_determine = true;
    for (size_t a = 0; a < D.summands.size(); ++a)
        for (size_t b = 0; b < a; ++b)
            if (D.summands[a].ch == D.summands[b].ch && D.summands[a].multiplicity_class != D.summands[b].multiplicity_class)
                pc.characters_determine = false;
    return pc;
}

BggReport bgg_report(const ProjectiveCover& pc) {
    BggReport rep;
    rep.lambda = pc.lambda;
    const ModulePtr& P = pc.P;
    const SessionPtr& S = P->session;
    const RootDatum& R = S->roots();
    rep.dim = P->dim();
    // unitriangular solve, maximal weight first
    Character rest = character(*P);
    std::map<Weight, long> standard;
    while (!rest.empty()) {
        const Weight* top = nullptr;
        for (auto& [w, m] : rest) {
            bool maximal = true;
            for (auto& [v, k] : rest)
                if (v != w && weight_geq(R, v, w)) maximal = false;
            if (maximal) {
                top = &w;
                break;
            }
        }
        if (!top) fail(ErrorKind::InvariantViolation, "character has no maximal weight");
        long c = rest[*top];
        Weight nu = *top;
        if (c <= 0) fail(ErrorKind::InvariantViolation, "character of P is not a nonnegative sum of Verma characters");
        standard[nu] = c;
        rest = add_characters(rest, verma_character(R, nu), -c);
        for (auto& [w, m] : rest)
            if (m < 0) fail(ErrorKind::InvariantViolation, "character of P is not a nonnegative sum of Verma characters");
    }
    std::set<Weight> cands;
    for (auto& [w, c] : standard) cands.insert(w);
    for (auto& pcs : S->negative_part().pieces) cands.insert(pc.lambda + R.root_weight(pcs.degree));
    rep.all_equal = true;
    for (const Weight& mu : cands) {
        BggLine line;
        line.mu = mu;
        auto it = standard.find(mu);
        line.standard = it == standard.end() ? 0 : it->second;
        auto cf = composition_factors(build_verma(S, mu));
        line.composition = std::count(cf.begin(), cf.end(), pc.lambda);
        if (line.standard == 0 && line.composition == 0) continue;
        if (!line.equal()) rep.all_equal = false;
        rep.lines.push_back(line);
    }
    rep.character_determines = pc.characters_determine;
    return rep;
}

SelfDuality self_duality_check(const ModulePtr& M) {
    SelfDuality sd;
    sd.dual = dual_module(M, DualKind::Check);
    sd.characters_equal = character(*sd.dual) == character(*M);
    auto f = find_isomorphism(sd.dual, M);
    if (f) {
        sd.iso = true;
        sd.certificate = *f;
    }
    return sd;
}

}  // namespace uqh
