#include "uqh/wmod.hpp"

#include <algorithm>
#include <set>

namespace uqh {

void WeightModule::finalize() {
    std::set<Weight> ws(basis_weights.begin(), basis_weights.end());
    weights.assign(ws.begin(), ws.end());
    block_index.clear();
    for (size_t b = 0; b < weights.size(); ++b) block_index[weights[b]] = static_cast<int>(b);
    blocks.assign(weights.size(), {});
    position.assign(basis_weights.size(), 0);
    for (size_t v = 0; v < basis_weights.size(); ++v) {
        int b = block_index[basis_weights[v]];
        position[v] = static_cast<int>(blocks[b].size());
        blocks[b].push_back(static_cast<int>(v));
    }
    if (labels.size() != basis_weights.size()) {
        labels.resize(basis_weights.size());
        for (size_t v = 0; v < labels.size(); ++v)
            if (labels[v].empty()) labels[v] = "b" + std::to_string(v + 1);
    }
}

SparseMatrix WeightModule::k_matrix(const RootVec& gamma) const {
    std::vector<Cyclotomic> d(dim());
    for (int v = 0; v < dim(); ++v) d[v] = session->k_eigenvalue(gamma, basis_weights[v]);
    return diagonal(d);
}

SparseMatrix WeightModule::h_matrix(int i) const {
    std::vector<Cyclotomic> d(dim());
    for (int v = 0; v < dim(); ++v) d[v] = field().from_rational(basis_weights[v].h[i]);
    return diagonal(d);
}

SparseMatrix WeightModule::generator_matrix(const Generator& g) const {
    switch (g.kind) {
    case Generator::E:
        return E[g.index];
    case Generator::F:
        return F[g.index];
    case Generator::K:
        return k_matrix(g.gamma);
    case Generator::H:
        return h_matrix(g.index);
    }
    return {};
}

Matrix WeightModule::block_matrix(int i, int sign, int src_block) const {
    const Weight& w = weights[src_block];
    Weight a = roots().root_weight(unit_root(rank(), i));
    int t = block_of(sign > 0 ? w + a : w - a);
    const auto& cols = blocks[src_block];
    if (t < 0) return Matrix(0, static_cast<int>(cols.size()));
    return (sign > 0 ? E[i] : F[i]).submatrix(blocks[t], cols);
}

ModulePtr make_module(SessionPtr S, std::vector<Weight> weights, std::vector<SparseMatrix> E, std::vector<SparseMatrix> F,
                      std::vector<std::string> labels) {
    int n = S->rank();
    int d = static_cast<int>(weights.size());
    if (static_cast<int>(E.size()) != n || static_cast<int>(F.size()) != n)
        fail(ErrorKind::InvalidArgument, "module needs one E and one F matrix per simple root");
    for (auto& w : weights)
        if (w.size() != n) fail(ErrorKind::InvalidArgument, "basis weight has wrong rank");
    for (int i = 0; i < n; ++i) {
        if (E[i].rows() != d || E[i].cols() != d || F[i].rows() != d || F[i].cols() != d)
            fail(ErrorKind::InvalidArgument, "generator matrix has wrong size");
        Weight a = S->roots().root_weight(unit_root(n, i));
        for (int r = 0; r < d; ++r) {
            for (auto& e : E[i].row(r))
                if (weights[r] != weights[e.col] + a) fail(ErrorKind::GradingViolation, "E does not raise weight by a simple root");
            for (auto& e : F[i].row(r))
                if (weights[r] != weights[e.col] - a) fail(ErrorKind::GradingViolation, "F does not lower weight by a simple root");
        }
    }
    auto M = std::make_shared<WeightModule>();
    M->session = std::move(S);
    M->basis_weights = std::move(weights);
    M->E = std::move(E);
    M->F = std::move(F);
    M->labels = std::move(labels);
    M->finalize();
    return M;
}

ModulePtr trivial_module(SessionPtr S) { return one_dimensional_module(S, Weight::zero(S->rank())); }

ModulePtr one_dimensional_module(SessionPtr S, const Weight& w) {
    int n = S->rank();
    if (w.size() != n) fail(ErrorKind::InvalidArgument, "weight has wrong rank");
    for (int i = 0; i < n; ++i)
        if (!S->field().bracket(w.h[i], S->roots().d(i)).is_zero())
            fail(ErrorKind::InvalidArgument, "weight " + w.str() + " does not carry a one-dimensional module");
    std::vector<SparseMatrix> Z(n, SparseMatrix(1, 1));
    return make_module(S, {w}, Z, Z, {"v"});
}

SparseMatrix evaluate(const AlgebraElement& e, const WeightModule& M) {
    int d = M.dim();
    SparseMatrix out(d, d);
    std::map<Word, SparseMatrix> cache;  // suffix products
    std::map<Generator, SparseMatrix> gens;
    auto gen = [&](const Generator& g) -> const SparseMatrix& {
        auto it = gens.find(g);
        if (it == gens.end()) it = gens.emplace(g, M.generator_matrix(g)).first;
        return it->second;
    };
    for (auto& [w, c] : e.terms()) {
        SparseMatrix acc = SparseMatrix::identity(M.field(), d);
        size_t k = w.size();
        // longest cached suffix
        for (size_t s = 0; s < w.size(); ++s) {
            Word suf(w.begin() + static_cast<long>(s), w.end());
            auto it = cache.find(suf);
            if (it != cache.end()) {
                acc = it->second;
                k = s;
                break;
            }
        }
        while (k > 0) {
            --k;
            acc = gen(w[k]) * acc;
            if (w.size() - k > 1 && cache.size() < 4096) cache.emplace(Word(w.begin() + static_cast<long>(k), w.end()), acc);
        }
        out = out + acc.scaled(c);
    }
    return out;
}

ModulePtr tensor_module(const ModulePtr& M, const ModulePtr& N) {
    if (M->session != N->session) fail(ErrorKind::ContextMismatch, "tensor factors come from different sessions");
    const FieldContext& F = M->field();
    int n = M->rank();
    std::vector<Weight> ws;
    std::vector<std::string> labels;
    ws.reserve(static_cast<size_t>(M->dim()) * N->dim());
    for (int x = 0; x < M->dim(); ++x)
        for (int y = 0; y < N->dim(); ++y) {
            ws.push_back(M->basis_weights[x] + N->basis_weights[y]);
            labels.push_back(M->labels[x] + " (x) " + N->labels[y]);
        }
    SparseMatrix IM = SparseMatrix::identity(F, M->dim()), IN = SparseMatrix::identity(F, N->dim());
    std::vector<SparseMatrix> E(n), Fm(n);
    for (int i = 0; i < n; ++i) {
        RootVec a = unit_root(n, i);
        E[i] = kron(IM, N->E[i]) + kron(M->E[i], N->k_matrix(a));
        Fm[i] = kron(M->k_matrix(rootvec_scale(a, -1)), N->F[i]) + kron(M->F[i], IN);
    }
    auto T = std::make_shared<WeightModule>();
    T->session = M->session;
    T->basis_weights = std::move(ws);
    T->E = std::move(E);
    T->F = std::move(Fm);
    T->labels = std::move(labels);
    T->finalize();
    return T;
}

ModulePtr dual_module(const ModulePtr& M, DualKind kind) {
    int n = M->rank();
    std::vector<Weight> ws;
    std::vector<std::string> labels;
    for (int v = 0; v < M->dim(); ++v) {
        ws.push_back(kind == DualKind::Star ? -M->basis_weights[v] : M->basis_weights[v]);
        labels.push_back(M->labels[v] + (kind == DualKind::Star ? "*" : "^"));
    }
    std::vector<SparseMatrix> E(n), F(n);
    for (int i = 0; i < n; ++i) {
        RootVec a = unit_root(n, i);
        SparseMatrix EK = (M->E[i] * M->k_matrix(rootvec_scale(a, -1))).scaled(-M->field().one());
        SparseMatrix KF = (M->k_matrix(a) * M->F[i]).scaled(-M->field().one());
        if (kind == DualKind::Star) {
            E[i] = EK.transpose();
            F[i] = KF.transpose();
        } else {
            E[i] = KF.transpose();
            F[i] = EK.transpose();
        }
    }
    auto D = std::make_shared<WeightModule>();
    D->session = M->session;
    D->basis_weights = std::move(ws);
    D->E = std::move(E);
    D->F = std::move(F);
    D->labels = std::move(labels);
    D->finalize();
    return D;
}

Character character(const WeightModule& M) {
    Character c;
    for (size_t b = 0; b < M.weights.size(); ++b) c[M.weights[b]] = static_cast<long>(M.blocks[b].size());
    return c;
}

Character character_product(const Character& a, const Character& b) {
    Character c;
    for (auto& [x, m] : a)
        for (auto& [y, k] : b) c[x + y] += m * k;
    return c;
}

Character verma_character(const RootDatum& R, const Weight& lambda) {
    int n = R.rank();
    std::map<RootVec, long> acc;
    acc[RootVec(n, 0)] = 1;
    for (int k = 0; k < R.num_positive(); ++k) {
        std::map<RootVec, long> next;
        for (auto& [d, m] : acc)
            for (int e = 0; e < R.r_alpha(k); ++e) next[rootvec_add(d, rootvec_scale(R.root(k), e))] += m;
        acc.swap(next);
    }
    Character c;
    for (auto& [d, m] : acc) c[lambda - R.root_weight(d)] += m;
    return c;
}

long character_mass(const Character& c) {
    long s = 0;
    for (auto& [w, m] : c) s += m;
    return s;
}

Weight coset_representative(const RootDatum& R, const Weight& w) {
    std::vector<Rational> c = R.root_coordinates(w);
    RootVec shift(R.rank(), 0);
    for (int j = 0; j < R.rank(); ++j) {
        Integer fl = boost::multiprecision::numerator(c[j]) / boost::multiprecision::denominator(c[j]);
        if (fl * boost::multiprecision::denominator(c[j]) > boost::multiprecision::numerator(c[j])) fl -= 1;
        shift[j] = static_cast<int>(fl);
    }
    return w - R.root_weight(shift);
}

Weight grading_class(const WeightModule& M) {
    if (M.weights.empty()) fail(ErrorKind::InvalidArgument, "zero module has no grading class");
    Weight rep = coset_representative(M.roots(), M.weights[0]);
    for (auto& w : M.weights)
        if (coset_representative(M.roots(), w) != rep)
            fail(ErrorKind::GradingViolation, "weights " + M.weights[0].str() + " and " + w.str() +
                                                  " lie in different root-lattice cosets");
    return rep;
}

bool weight_geq(const RootDatum& R, const Weight& a, const Weight& b) {
    std::vector<Rational> c = R.root_coordinates(a - b);
    for (auto& x : c)
        if (!is_integer(x) || x < 0) return false;
    return true;
}

int Subspace::dim() const {
    int s = 0;
    for (auto& m : basis) s += m.cols();
    return s;
}

Subspace zero_subspace(const WeightModule& M) {
    Subspace S;
    for (int b = 0; b < static_cast<int>(M.weights.size()); ++b) S.basis.emplace_back(M.block_dim(b), 0);
    return S;
}

Subspace maximal_vectors(const WeightModule& M) {
    Subspace S;
    for (int b = 0; b < static_cast<int>(M.weights.size()); ++b) {
        Matrix C(0, M.block_dim(b));
        for (int i = 0; i < M.rank(); ++i) {
            Matrix X = M.block_matrix(i, 1, b);
            if (X.rows() > 0) C = vstack(C, X);
        }
        S.basis.push_back(C.rows() == 0 ? Matrix::identity(M.field(), M.block_dim(b)) : nullspace(C, M.field()));
    }
    return S;
}

namespace {

// incrementally maintained semi-echelon basis
struct Span {
    std::vector<Vector> rows;
    std::vector<int> piv;

    bool reduce(Vector& v) const {
        for (size_t k = 0; k < rows.size(); ++k) {
            const Cyclotomic c = v[piv[k]];
            if (c.is_zero()) continue;
            for (size_t j = 0; j < v.size(); ++j)
                if (!rows[k][j].is_zero()) v[j] -= c * rows[k][j];
        }
        for (auto& x : v)
            if (!x.is_zero()) return true;
        return false;
    }
    bool add(Vector v) {
        if (!reduce(v)) return false;
        int p = 0;
        while (v[p].is_zero()) ++p;
        Cyclotomic s = v[p].inv();
        for (auto& x : v)
            if (!x.is_zero()) x *= s;
        rows.push_back(std::move(v));
        piv.push_back(p);
        return true;
    }
};

Matrix span_matrix(const Span& s, int d) {
    Matrix m(d, static_cast<int>(s.rows.size()));
    for (size_t k = 0; k < s.rows.size(); ++k)
        for (int j = 0; j < d; ++j) m(j, static_cast<int>(k)) = s.rows[k][j];
    return m;
}

// rows selecting an invertible square submatrix of a full-column-rank matrix, with its inverse
struct LeftInverse {
    std::vector<int> rows;
    Matrix inv;

    explicit LeftInverse(const Matrix& B) {
        Echelon e = rref(B.transpose());
        rows = e.pivots;
        Matrix sq(static_cast<int>(rows.size()), B.cols());
        for (size_t r = 0; r < rows.size(); ++r)
            for (int c = 0; c < B.cols(); ++c) sq(static_cast<int>(r), c) = B(rows[r], c);
        inv = inverse(sq);
    }
    Matrix coords(const Matrix& V) const {
        Matrix sel(static_cast<int>(rows.size()), V.cols());
        for (size_t r = 0; r < rows.size(); ++r)
            for (int c = 0; c < V.cols(); ++c) sel(static_cast<int>(r), c) = V(rows[r], c);
        return inv * sel;
    }
};

}  // namespace

Subspace generate_submodule(const WeightModule& M, const std::vector<Vector>& vectors) {
    int nb = static_cast<int>(M.weights.size());
    std::vector<Span> spans(nb);
    std::vector<std::pair<int, Vector>> queue;
    for (const Vector& v : vectors) {
        if (static_cast<int>(v.size()) != M.dim()) fail(ErrorKind::InvalidArgument, "vector has wrong length");
        for (int b = 0; b < nb; ++b) {
            Vector part(M.block_dim(b));
            bool any = false;
            for (int k = 0; k < M.block_dim(b); ++k) {
                part[k] = v[M.blocks[b][k]];
                if (!part[k].is_zero()) any = true;
            }
            if (any && spans[b].add(part)) queue.emplace_back(b, spans[b].rows.back());
        }
    }
    std::map<std::pair<int, int>, Matrix> mats;
    auto mat = [&](int i, int s, int b) -> const Matrix& {
        auto key = std::make_pair(i * 2 + (s > 0), b);
        auto it = mats.find(key);
        if (it == mats.end()) it = mats.emplace(key, M.block_matrix(i, s, b)).first;
        return it->second;
    };
    Weight zero = Weight::zero(M.rank());
    while (!queue.empty()) {
        auto [b, v] = queue.back();
        queue.pop_back();
        for (int i = 0; i < M.rank(); ++i) {
            Weight a = M.roots().root_weight(unit_root(M.rank(), i));
            for (int s : {1, -1}) {
                const Matrix& X = mat(i, s, b);
                if (X.rows() == 0) continue;
                int t = M.block_of(s > 0 ? M.weights[b] + a : M.weights[b] - a);
                Vector w = X.apply(v);
                if (spans[t].add(w)) queue.emplace_back(t, spans[t].rows.back());
            }
        }
    }
    Subspace S;
    for (int b = 0; b < nb; ++b) S.basis.push_back(span_matrix(spans[b], M.block_dim(b)));
    return S;
}

bool is_submodule(const WeightModule& M, const Subspace& S) {
    int nb = static_cast<int>(M.weights.size());
    for (int b = 0; b < nb; ++b) {
        if (S.basis[b].cols() == 0) continue;
        for (int i = 0; i < M.rank(); ++i) {
            Weight a = M.roots().root_weight(unit_root(M.rank(), i));
            for (int s : {1, -1}) {
                Matrix X = M.block_matrix(i, s, b);
                if (X.rows() == 0) continue;
                int t = M.block_of(s > 0 ? M.weights[b] + a : M.weights[b] - a);
                Matrix img = X * S.basis[b];
                if (rank(hstack(S.basis[t], img)) != rank(S.basis[t])) return false;
            }
        }
    }
    return true;
}

Subspace highest_weight_radical(const WeightModule& M, const Weight& top) {
    const RootDatum& R = M.roots();
    int nb = static_cast<int>(M.weights.size());
    std::vector<std::pair<Rational, int>> order;
    for (int b = 0; b < nb; ++b) {
        if (!weight_geq(R, top, M.weights[b]))
            fail(ErrorKind::InvalidArgument, "weight " + M.weights[b].str() + " is not below " + top.str());
        Rational h = 0;
        for (auto& x : R.root_coordinates(top - M.weights[b])) h += x;
        order.emplace_back(h, b);
    }
    std::sort(order.begin(), order.end());
    std::vector<Matrix> rad(nb);
    std::vector<Matrix> annih(nb);  // rows cut out the radical
    for (auto& [h, b] : order) {
        int d = M.block_dim(b);
        if (h == 0) {
            rad[b] = Matrix(d, 0);
        } else {
            Matrix C(0, d);
            for (int i = 0; i < M.rank(); ++i) {
                Matrix X = M.block_matrix(i, 1, b);
                if (X.rows() == 0) continue;
                int t = M.block_of(M.weights[b] + R.root_weight(unit_root(M.rank(), i)));
                if (annih[t].rows() > 0) C = vstack(C, annih[t] * X);
            }
            rad[b] = C.rows() == 0 ? Matrix::identity(M.field(), d) : nullspace(C, M.field());
        }
        annih[b] = rad[b].cols() == 0 ? Matrix::identity(M.field(), d) : nullspace(rad[b].transpose(), M.field()).transpose();
    }
    Subspace S;
    S.basis = std::move(rad);
    return S;
}

SparseMatrix to_sparse(const ModuleMap& f, const WeightModule& src, const WeightModule& tgt) {
    SparseMatrix m(tgt.dim(), src.dim());
    for (size_t b = 0; b < src.weights.size(); ++b) {
        int t = tgt.block_of(src.weights[b]);
        if (t < 0) continue;
        const Matrix& B = f.blocks[b];
        for (int r = 0; r < B.rows(); ++r)
            for (int c = 0; c < B.cols(); ++c)
                if (!B(r, c).is_zero()) m.add(tgt.blocks[t][r], src.blocks[b][c], B(r, c));
    }
    return m;
}

ModuleMap from_sparse(const SparseMatrix& f, const WeightModule& src, const WeightModule& tgt) {
    ModuleMap m;
    for (size_t b = 0; b < src.weights.size(); ++b) {
        int t = tgt.block_of(src.weights[b]);
        if (t < 0) {
            m.blocks.emplace_back(0, src.block_dim(static_cast<int>(b)));
            continue;
        }
        m.blocks.push_back(f.submatrix(tgt.blocks[t], src.blocks[b]));
    }
    return m;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f, const WeightModule& src, const WeightModule& mid) {
    ModuleMap h;
    for (size_t b = 0; b < src.weights.size(); ++b) {
        int m = mid.block_of(src.weights[b]);
        if (m < 0) {
            // no intermediate weight space: the composite vanishes, with the target size taken from g if possible
            h.blocks.emplace_back(0, f.blocks[b].cols());
            continue;
        }
        h.blocks.push_back(g.blocks[m] * f.blocks[b]);
    }
    return h;
}

ModuleMap identity_map(const WeightModule& M) {
    ModuleMap m;
    for (int b = 0; b < static_cast<int>(M.weights.size()); ++b) m.blocks.push_back(Matrix::identity(M.field(), M.block_dim(b)));
    return m;
}

bool is_intertwiner(const ModuleMap& f, const WeightModule& src, const WeightModule& tgt) {
    SparseMatrix m = to_sparse(f, src, tgt);
    for (int i = 0; i < src.rank(); ++i) {
        if (tgt.E[i] * m != m * src.E[i]) return false;
        if (tgt.F[i] * m != m * src.F[i]) return false;
    }
    return true;
}

bool is_isomorphism(const ModuleMap& f, const WeightModule& src, const WeightModule& tgt) {
    if (src.weights != tgt.weights) return false;
    for (size_t b = 0; b < src.weights.size(); ++b) {
        const Matrix& B = f.blocks[b];
        if (B.rows() != B.cols() || rank(B) != B.rows()) return false;
    }
    return is_intertwiner(f, src, tgt);
}

SubquotientResult submodule(const ModulePtr& M, const Subspace& S) {
    int n = M->rank();
    int nb = static_cast<int>(M->weights.size());
    std::vector<Weight> ws;
    std::vector<int> offset(nb, 0);
    std::vector<LeftInverse> li;
    li.reserve(nb);
    for (int b = 0; b < nb; ++b) {
        offset[b] = static_cast<int>(ws.size());
        for (int c = 0; c < S.basis[b].cols(); ++c) ws.push_back(M->weights[b]);
        li.emplace_back(S.basis[b].cols() > 0 ? S.basis[b] : Matrix(M->block_dim(b), 0));
    }
    int d = static_cast<int>(ws.size());
    std::vector<SparseMatrix> E(n, SparseMatrix(d, d)), F(n, SparseMatrix(d, d));
    for (int b = 0; b < nb; ++b) {
        if (S.basis[b].cols() == 0) continue;
        for (int i = 0; i < n; ++i)
            for (int s : {1, -1}) {
                Matrix X = M->block_matrix(i, s, b);
                if (X.rows() == 0) continue;
                Weight a = M->roots().root_weight(unit_root(n, i));
                int t = M->block_of(s > 0 ? M->weights[b] + a : M->weights[b] - a);
                Matrix img = X * S.basis[b];
                if (img.is_zero()) continue;
                if (S.basis[t].cols() == 0) fail(ErrorKind::InvalidArgument, "subspace is not a submodule");
                Matrix co = li[t].coords(img);
                if (S.basis[t] * co != img) fail(ErrorKind::InvalidArgument, "subspace is not a submodule");
                SparseMatrix& T = s > 0 ? E[i] : F[i];
                for (int r = 0; r < co.rows(); ++r)
                    for (int c = 0; c < co.cols(); ++c)
                        if (!co(r, c).is_zero()) T.add(offset[t] + r, offset[b] + c, co(r, c));
            }
    }
    SubquotientResult res;
    res.module = make_module(M->session, ws, E, F);
    const WeightModule& Q = *res.module;
    for (int b = 0; b < static_cast<int>(Q.weights.size()); ++b) res.map.blocks.push_back(S.basis[M->block_of(Q.weights[b])]);
    return res;
}

SubquotientResult quotient_module(const ModulePtr& M, const Subspace& S) {
    int n = M->rank();
    int nb = static_cast<int>(M->weights.size());
    std::vector<Matrix> comp(nb), proj(nb);
    std::vector<Weight> ws;
    std::vector<std::string> labels;
    std::vector<int> offset(nb, 0);
    for (int b = 0; b < nb; ++b) {
        int d = M->block_dim(b);
        std::vector<bool> used(d, false);
        if (S.basis[b].cols() > 0) {
            Echelon e = rref(S.basis[b].transpose());
            for (int p : e.pivots) used[p] = true;
        }
        std::vector<int> free;
        for (int k = 0; k < d; ++k)
            if (!used[k]) free.push_back(k);
        Matrix C(d, static_cast<int>(free.size()));
        for (size_t k = 0; k < free.size(); ++k) C(free[k], static_cast<int>(k)) = M->field().one();
        comp[b] = C;
        offset[b] = static_cast<int>(ws.size());
        for (int k : free) {
            ws.push_back(M->weights[b]);
            labels.push_back(M->labels[M->blocks[b][k]]);
        }
        // projection: last columns of the inverse of [S | C]
        if (free.empty()) {
            proj[b] = Matrix(0, d);
        } else {
            Matrix inv = inverse(hstack(S.basis[b], C));
            Matrix P(static_cast<int>(free.size()), d);
            int s0 = S.basis[b].cols();
            for (size_t r = 0; r < free.size(); ++r)
                for (int c = 0; c < d; ++c) P(static_cast<int>(r), c) = inv(s0 + static_cast<int>(r), c);
            proj[b] = P;
        }
    }
    int dq = static_cast<int>(ws.size());
    std::vector<SparseMatrix> E(n, SparseMatrix(dq, dq)), F(n, SparseMatrix(dq, dq));
    for (int b = 0; b < nb; ++b) {
        if (comp[b].cols() == 0) continue;
        for (int i = 0; i < n; ++i)
            for (int s : {1, -1}) {
                Matrix X = M->block_matrix(i, s, b);
                if (X.rows() == 0) continue;
                Weight a = M->roots().root_weight(unit_root(n, i));
                int t = M->block_of(s > 0 ? M->weights[b] + a : M->weights[b] - a);
                if (comp[t].cols() == 0) continue;
                Matrix co = proj[t] * (X * comp[b]);
                SparseMatrix& T = s > 0 ? E[i] : F[i];
                for (int r = 0; r < co.rows(); ++r)
                    for (int c = 0; c < co.cols(); ++c)
                        if (!co(r, c).is_zero()) T.add(offset[t] + r, offset[b] + c, co(r, c));
            }
    }
    SubquotientResult res;
    res.module = make_module(M->session, ws, E, F, labels);
    // projection blocks are indexed by the source (M) blocks
    for (int b = 0; b < nb; ++b) res.map.blocks.push_back(proj[b]);
    return res;
}

ModulePtr simple_module(SessionPtr S, const Weight& lambda) {
    ModulePtr V = build_verma(S, lambda);
    Subspace rad = highest_weight_radical(*V, lambda);
    return quotient_module(V, rad).module;
}

std::vector<Weight> composition_factors(const ModulePtr& M) {
    std::vector<Weight> out;
    std::vector<ModulePtr> todo = {M};
    while (!todo.empty()) {
        ModulePtr X = todo.back();
        todo.pop_back();
        if (X->dim() == 0) continue;
        // a maximal weight: nothing above it
        int top = -1;
        for (int b = 0; b < static_cast<int>(X->weights.size()) && top < 0; ++b) {
            bool maximal = true;
            for (int c = 0; c < static_cast<int>(X->weights.size()); ++c)
                if (c != b && weight_geq(X->roots(), X->weights[c], X->weights[b])) maximal = false;
            if (maximal) top = b;
        }
        if (top < 0) fail(ErrorKind::Internal, "no maximal weight");
        Vector v(X->dim(), X->field().zero());
        v[X->blocks[top][0]] = X->field().one();
        Subspace W = generate_submodule(*X, {v});
        SubquotientResult sub = submodule(X, W);
        SubquotientResult quo = quotient_module(X, W);
        out.push_back(X->weights[top]);
        Subspace rad = highest_weight_radical(*sub.module, X->weights[top]);
        if (rad.dim() > 0) todo.push_back(submodule(sub.module, rad).module);
        if (quo.module->dim() > 0) todo.push_back(quo.module);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Weight> composition_factors_by_character(const ModulePtr& M) {
    Character ch = character(*M);
    std::vector<Weight> out;
    while (true) {
        for (auto it = ch.begin(); it != ch.end();)
            it = it->second == 0 ? ch.erase(it) : std::next(it);
        if (ch.empty()) break;
        const Weight* top = nullptr;
        for (auto& [w, m] : ch) {
            bool maximal = true;
            for (auto& [u, k] : ch)
                if (u != w && weight_geq(M->roots(), u, w)) maximal = false;
            if (maximal) {
                top = &w;
                break;
            }
        }
        Weight w = *top;
        long m = ch[w];
        if (m < 0) fail(ErrorKind::InvariantViolation, "character peeling produced a negative multiplicity");
        Character cl = character(*simple_module(M->session, w));
        for (auto& [u, k] : cl) ch[u] -= m * k;
        for (long t = 0; t < m; ++t) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> module_invariant_violations(const WeightModule& M) {
    std::vector<std::string> v;
    const RootDatum& R = M.roots();
    const FieldContext& F = M.field();
    int n = M.rank();
    int d = M.dim();
    for (int i = 0; i < n; ++i) {
        Weight a = R.root_weight(unit_root(n, i));
        for (int r = 0; r < d; ++r) {
            for (auto& e : M.E[i].row(r))
                if (M.basis_weights[r] != M.basis_weights[e.col] + a) v.push_back("E" + std::to_string(i + 1) + " breaks the grading");
            for (auto& e : M.F[i].row(r))
                if (M.basis_weights[r] != M.basis_weights[e.col] - a) v.push_back("F" + std::to_string(i + 1) + " breaks the grading");
        }
        int ri = R.r_simple(i);
        SparseMatrix pe = SparseMatrix::identity(F, d), pf = pe;
        for (int k = 0; k < ri; ++k) {
            pe = M.E[i] * pe;
            pf = M.F[i] * pf;
        }
        if (!pe.is_zero()) v.push_back("E" + std::to_string(i + 1) + "^" + std::to_string(ri) + " is nonzero");
        if (!pf.is_zero()) v.push_back("F" + std::to_string(i + 1) + "^" + std::to_string(ri) + " is nonzero");
        for (int j = 0; j < n; ++j) {
            SparseMatrix c = M.E[i] * M.F[j] - M.F[j] * M.E[i];
            SparseMatrix want(d, d);
            if (i == j) {
                std::vector<Cyclotomic> diag(d);
                for (int r = 0; r < d; ++r) diag[r] = F.bracket(M.basis_weights[r].h[i], R.d(i));
                want = diagonal(diag);
            }
            if (c != want)
                v.push_back("[E" + std::to_string(i + 1) + ",F" + std::to_string(j + 1) + "] has the wrong value");
            if (i != j) {
                for (int s : {1, -1})
                    if (!evaluate(serre_relator(R, F, i, j, s), M).is_zero())
                        v.push_back(std::string(s > 0 ? "E" : "F") + "-Serre relation fails for (" + std::to_string(i + 1) +
                                    "," + std::to_string(j + 1) + ")");
            }
        }
    }
    return v;
}

}  // namespace uqh
