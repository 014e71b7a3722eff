#include "uqh/ribbon.hpp"

#include <functional>

namespace uqh {

namespace {

struct CacheEntry {
    std::weak_ptr<const WeightModule> owner;
    std::shared_ptr<RootVectorMatrices> data;
};
std::mutex g_rv_mutex;
std::map<const WeightModule*, CacheEntry> g_rv_cache;

Cyclotomic rtilde_coefficient(const Session& S, int k, int j) {
    const RootDatum& R = S.roots();
    const FieldContext& F = S.field();
    int d = R.d_alpha(k);
    Cyclotomic fact = F.jq_factorial(j, -2L * d);
    if (fact.is_zero())
        fail(ErrorKind::DegenerateParameter, "truncated factorial [" + std::to_string(j) + ";q_beta^-2]! vanishes for root " +
                                                 rootvec_str(R.root(k)));
    return (F.q_pow(static_cast<long>(d)) - F.q_pow(static_cast<long>(-d))).pow(j) / fact;
}

bool intertwines(const SparseMatrix& m, const WeightModule& src, const WeightModule& tgt) {
    for (int i = 0; i < src.rank(); ++i) {
        if (tgt.E[i] * m != m * src.E[i]) return false;
        if (tgt.F[i] * m != m * src.F[i]) return false;
        if (tgt.h_matrix(i) * m != m * src.h_matrix(i)) return false;
    }
    return true;
}

}  // namespace

const RootVectorMatrices& root_vector_matrices(const ModulePtr& M) {
    {
        std::lock_guard<std::mutex> lock(g_rv_mutex);
        auto it = g_rv_cache.find(M.get());
        if (it != g_rv_cache.end()) {
            auto owner = it->second.owner.lock();
            if (owner == M) return *it->second.data;
            g_rv_cache.erase(it);
        }
    }
    auto data = std::make_shared<RootVectorMatrices>();
    for (int k = 0; k < M->roots().num_positive(); ++k) {
        data->pos.push_back(evaluate(M->session->root_vector(k, 1), *M));
        data->neg.push_back(evaluate(M->session->root_vector(k, -1), *M));
    }
    std::lock_guard<std::mutex> lock(g_rv_mutex);
    for (auto it = g_rv_cache.begin(); it != g_rv_cache.end();)
        it = it->second.owner.expired() ? g_rv_cache.erase(it) : std::next(it);
    auto& e = g_rv_cache[M.get()];
    e.owner = M;
    e.data = data;
    return *data;
}

RootVec two_rho(const RootDatum& R) {
    RootVec s(R.rank(), 0);
    for (auto& b : R.positive_roots()) s = rootvec_add(s, b);
    return s;
}

std::vector<Cyclotomic> pivot_eigenvalues(const WeightModule& M) {
    const RootDatum& R = M.roots();
    RootVec g = rootvec_scale(two_rho(R), 1 - R.r());
    std::vector<Cyclotomic> k(M.dim());
    for (int v = 0; v < M.dim(); ++v) k[v] = M.session->k_eigenvalue(g, M.basis_weights[v]);
    return k;
}

SparseMatrix cartan_factor(const WeightModule& M, const WeightModule& N) {
    const RootDatum& R = M.roots();
    std::map<std::pair<Weight, Weight>, Cyclotomic> memo;
    std::vector<Cyclotomic> d;
    d.reserve(static_cast<size_t>(M.dim()) * N.dim());
    for (int x = 0; x < M.dim(); ++x)
        for (int y = 0; y < N.dim(); ++y) {
            auto key = std::make_pair(M.basis_weights[x], N.basis_weights[y]);
            auto it = memo.find(key);
            if (it == memo.end()) it = memo.emplace(key, M.field().q_pow(R.pairing(key.first, key.second))).first;
            d.push_back(it->second);
        }
    return diagonal(d);
}

SparseMatrix r_tilde(const ModulePtr& M, const ModulePtr& N) {
    if (M->session != N->session) fail(ErrorKind::ContextMismatch, "R-matrix factors come from different sessions");
    const Session& S = *M->session;
    const FieldContext& F = S.field();
    const auto& A = root_vector_matrices(M);
    const auto& B = root_vector_matrices(N);
    SparseMatrix out = SparseMatrix::identity(F, M->dim() * N->dim());
    for (int k = 0; k < S.roots().num_positive(); ++k) {
        SparseMatrix Tk(M->dim() * N->dim(), M->dim() * N->dim());
        SparseMatrix pa = SparseMatrix::identity(F, M->dim()), pb = SparseMatrix::identity(F, N->dim());
        for (int j = 0; j < S.roots().r_alpha(k); ++j) {
            if (j > 0) {
                pa = A.pos[k] * pa;
                pb = B.neg[k] * pb;
            }
            if (pa.is_zero() || pb.is_zero()) break;
            Tk = Tk + kron(pa, pb).scaled(rtilde_coefficient(S, k, j));
        }
        out = out * Tk;
    }
    return out;
}

SparseMatrix r_matrix(const ModulePtr& M, const ModulePtr& N) { return cartan_factor(*M, *N) * r_tilde(M, N); }

SparseMatrix flip(int dm, int dn, const FieldContext& F) {
    SparseMatrix f(dm * dn, dm * dn);
    for (int x = 0; x < dm; ++x)
        for (int y = 0; y < dn; ++y) f.add(y * dm + x, x * dn + y, F.one());
    return f;
}

SparseMatrix braiding(const ModulePtr& M, const ModulePtr& N) {
    return flip(M->dim(), N->dim(), M->field()) * r_matrix(M, N);
}

Cyclotomic double_braiding_scalar(const Session& S, const Weight& lambda, const Weight& mu) {
    return S.field().q_pow(2 * S.roots().pairing(lambda, mu));
}

SparseVec apply_braiding(const ModulePtr& M, const ModulePtr& N, const SparseVec& v) {
    if (M->session != N->session) fail(ErrorKind::ContextMismatch, "R-matrix factors come from different sessions");
    const Session& S = *M->session;
    const RootDatum& R = S.roots();
    const FieldContext& F = S.field();
    const auto& A = root_vector_matrices(M);
    const auto& B = root_vector_matrices(N);
    long dn = N->dim(), dm = M->dim();
    SparseVec cur = v;
    for (int k = R.num_positive() - 1; k >= 0; --k) {
        SparseVec out = cur;  // j = 0
        SparseMatrix pa = SparseMatrix::identity(F, M->dim()), pb = SparseMatrix::identity(F, N->dim());
        for (int j = 1; j < R.r_alpha(k); ++j) {
            pa = A.pos[k] * pa;
            pb = B.neg[k] * pb;
            if (pa.is_zero() || pb.is_zero()) break;
            SparseMatrix at = pa.transpose(), bt = pb.transpose();
            Cyclotomic c = rtilde_coefficient(S, k, j);
            for (auto& [key, val] : cur) {
                int x = static_cast<int>(key / dn), y = static_cast<int>(key % dn);
                for (auto& ea : at.row(x))
                    for (auto& eb : bt.row(y)) out[ea.col * dn + eb.col] += c * val * ea.val * eb.val;
            }
        }
        for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
        cur = std::move(out);
    }
    SparseVec res;
    for (auto& [key, val] : cur) {
        int x = static_cast<int>(key / dn), y = static_cast<int>(key % dn);
        Cyclotomic h = F.q_pow(R.pairing(M->basis_weights[x], N->basis_weights[y]));
        res[y * dm + x] = val * h;
    }
    return res;
}

Cyclotomic double_braiding_on_top(const ModulePtr& M, const Weight& lambda, const ModulePtr& N, const Weight& mu) {
    int bm = M->block_of(lambda), bn = N->block_of(mu);
    if (bm < 0 || bn < 0 || M->block_dim(bm) != 1 || N->block_dim(bn) != 1)
        fail(ErrorKind::InvalidArgument, "top weight spaces must be one-dimensional");
    long x = M->blocks[bm][0], y = N->blocks[bn][0];
    long idx = x * N->dim() + y;
    SparseVec v;
    v[idx] = M->field().one();
    SparseVec w = apply_braiding(N, M, apply_braiding(M, N, v));
    if (w.size() != 1 || w.begin()->first != idx)
        fail(ErrorKind::InvariantViolation, "double braiding does not preserve the top vector");
    return w.begin()->second;
}

SparseMatrix twist(const ModulePtr& M) {
    int d = M->dim();
    if (d > 40) return twist_expanded(M);
    SparseMatrix C = braiding(M, M);
    std::vector<Cyclotomic> kappa = pivot_eigenvalues(*M);
    SparseMatrix th(d, d);
    for (int x = 0; x < d; ++x)
        for (int i = 0; i < d; ++i)
            for (auto& e : C.row(x * d + i)) {
                int a = e.col / d, ip = e.col % d;
                if (ip == i) th.add(x, a, e.val * kappa[i]);
            }
    return th;
}

SparseMatrix twist_expanded(const ModulePtr& M) {
    const Session& S = *M->session;
    const RootDatum& R = S.roots();
    const FieldContext& F = S.field();
    int d = M->dim();
    int Np = R.num_positive();
    const auto& X = root_vector_matrices(M);
    std::vector<Cyclotomic> kappa = pivot_eigenvalues(*M);
    std::vector<Cyclotomic> base(d);
    for (int i = 0; i < d; ++i) base[i] = F.q_pow(R.pairing(M->basis_weights[i], M->basis_weights[i])) * kappa[i];
    // lam[k][i] = q^{-<beta_k, wt_i>}
    std::vector<std::vector<Cyclotomic>> lam(Np, std::vector<Cyclotomic>(d));
    for (int k = 0; k < Np; ++k)
        for (int i = 0; i < d; ++i) lam[k][i] = F.q_pow(-R.pairing(R.root(k), M->basis_weights[i]));
    std::vector<std::vector<SparseMatrix>> pp(Np), pn(Np);
    for (int k = 0; k < Np; ++k) {
        pp[k].push_back(SparseMatrix::identity(F, d));
        pn[k].push_back(SparseMatrix::identity(F, d));
        for (int j = 1; j < R.r_alpha(k); ++j) {
            pp[k].push_back(X.pos[k] * pp[k].back());
            pn[k].push_back(X.neg[k] * pn[k].back());
        }
    }
    // theta = sum_J c_J X_-^{j_1} ... X_-^{j_N} diag(base * prod lam_k^{j_k}) X_+^{j_1} ... X_+^{j_N}
    SparseMatrix theta(d, d);
    std::function<void(int, const SparseMatrix&, const SparseMatrix&, const std::vector<Cyclotomic>&, const Cyclotomic&)>
        rec = [&](int k, const SparseMatrix& neg, const SparseMatrix& pos, const std::vector<Cyclotomic>& z,
                  const Cyclotomic& c) {
            if (k == Np) {
                theta = theta + (neg * diagonal(z) * pos).scaled(c);
                return;
            }
            std::vector<Cyclotomic> zj = z;
            for (int j = 0; j < R.r_alpha(k); ++j) {
                if (j > 0)
                    for (int i = 0; i < d; ++i) zj[i] *= lam[k][i];
                SparseMatrix nj = neg * pn[k][j], pj = pos * pp[k][j];
                if (nj.is_zero() || pj.is_zero()) break;
                rec(k + 1, nj, pj, zj, c * rtilde_coefficient(S, k, j));
            }
        };
    SparseMatrix I = SparseMatrix::identity(F, d);
    rec(0, I, I, base, F.one());
    return theta;
}

Cyclotomic twist_scalar_closed(const Session& S, const Weight& lambda) {
    const RootDatum& R = S.roots();
    return S.field().q_pow(R.pairing(lambda, lambda + R.rho().scaled(Rational(2 * (1 - R.r())))));
}

DualityMorphisms duality_morphisms(const ModulePtr& M) {
    DualityMorphisms D;
    const FieldContext& F = M->field();
    int d = M->dim();
    D.dual = dual_module(M, DualKind::Star);
    D.dual_dual = dual_module(D.dual, DualKind::Star);
    std::vector<Cyclotomic> kappa = pivot_eigenvalues(*M);
    D.coev_right = SparseMatrix(d * d, 1);
    D.ev_right = SparseMatrix(1, d * d);
    D.coev_left = SparseMatrix(d * d, 1);
    D.ev_left = SparseMatrix(1, d * d);
    for (int i = 0; i < d; ++i) {
        D.coev_right.add(i * d + i, 0, F.one());
        D.ev_right.add(0, i * d + i, F.one());
        D.coev_left.add(i * d + i, 0, kappa[i].inv());
        D.ev_left.add(0, i * d + i, kappa[i]);
    }
    D.pivot = diagonal(kappa);
    return D;
}

std::vector<std::string> duality_violations(const ModulePtr& M) {
    std::vector<std::string> v;
    const FieldContext& F = M->field();
    int d = M->dim();
    DualityMorphisms D = duality_morphisms(M);
    SparseMatrix I = SparseMatrix::identity(F, d);
    if (kron(I, D.ev_right) * kron(D.coev_right, I) != I) v.push_back("snake (1 ev)(coev 1) != 1 on V");
    if (kron(D.ev_right, I) * kron(I, D.coev_right) != I) v.push_back("snake (ev 1)(1 coev) != 1 on V*");
    if (kron(D.ev_left, I) * kron(I, D.coev_left) != I) v.push_back("snake with the left duality maps fails on V");
    if (kron(I, D.ev_left) * kron(D.coev_left, I) != I) v.push_back("snake with the left duality maps fails on V*");
    ModulePtr one = trivial_module(M->session);
    ModulePtr VVs = tensor_module(M, D.dual), VsV = tensor_module(D.dual, M);
    if (!intertwines(D.coev_right, *one, *VVs)) v.push_back("coev (right) is not a module map");
    if (!intertwines(D.ev_right, *VsV, *one)) v.push_back("ev (right) is not a module map");
    if (!intertwines(D.coev_left, *one, *VsV)) v.push_back("coev (left) is not a module map");
    if (!intertwines(D.ev_left, *VVs, *one)) v.push_back("ev (left) is not a module map");
    if (!intertwines(D.pivot, *M, *D.dual_dual)) v.push_back("pivot is not a module map");
    return v;
}

std::vector<std::string> pivot_monoidal_violations(const ModulePtr& M, const ModulePtr& N) {
    std::vector<std::string> v;
    ModulePtr T = tensor_module(M, N);
    ModulePtr Tdd = dual_module(dual_module(T, DualKind::Star), DualKind::Star);
    ModulePtr Mdd = dual_module(dual_module(M, DualKind::Star), DualKind::Star);
    ModulePtr Ndd = dual_module(dual_module(N, DualKind::Star), DualKind::Star);
    ModulePtr TT = tensor_module(Mdd, Ndd);
    SparseMatrix I = SparseMatrix::identity(M->field(), T->dim());
    if (!intertwines(I, *Tdd, *TT)) v.push_back("(V W)** and V** W** are not identified by the basis map");
    if (diagonal(pivot_eigenvalues(*T)) != kron(diagonal(pivot_eigenvalues(*M)), diagonal(pivot_eigenvalues(*N))))
        v.push_back("pivot is not monoidal");
    return v;
}

std::vector<std::string> antipode_square_violations(const ModulePtr& M) {
    std::vector<std::string> v;
    const RootDatum& R = M->roots();
    const FieldContext& F = M->field();
    std::vector<Cyclotomic> kappa = pivot_eigenvalues(*M), kinv;
    for (auto& k : kappa) kinv.push_back(k.inv());
    SparseMatrix K = diagonal(kappa), Ki = diagonal(kinv);
    int n = M->rank();
    std::vector<Generator> gens;
    for (int i = 0; i < n; ++i) {
        gens.push_back(Generator::e(i));
        gens.push_back(Generator::f(i));
        gens.push_back(Generator::k(unit_root(n, i)));
        gens.push_back(Generator::h(i));
    }
    for (const Generator& g : gens) {
        AlgebraElement x = AlgebraElement::gen(F, g);
        SparseMatrix lhs = evaluate(symmetry_map(R, Symmetry::AntipodeSquared, x), *M);
        SparseMatrix rhs = K * M->generator_matrix(g) * Ki;
        if (lhs != rhs) v.push_back("S^2(" + g.str() + ") differs from conjugation by the pivot element");
    }
    return v;
}

bool yang_baxter_holds(const ModulePtr& A, const ModulePtr& B, const ModulePtr& C) {
    const FieldContext& F = A->field();
    SparseMatrix IA = SparseMatrix::identity(F, A->dim()), IB = SparseMatrix::identity(F, B->dim()),
                 IC = SparseMatrix::identity(F, C->dim());
    SparseMatrix cAB = braiding(A, B), cAC = braiding(A, C), cBC = braiding(B, C);
    SparseMatrix lhs = kron(cBC, IA) * kron(IB, cAC) * kron(cAB, IC);
    SparseMatrix rhs = kron(IC, cAB) * kron(cAC, IB) * kron(IA, cBC);
    return lhs == rhs;
}

bool twist_balance_holds(const ModulePtr& M, const ModulePtr& N) {
    ModulePtr T = tensor_module(M, N);
    SparseMatrix lhs = twist(T);
    SparseMatrix rhs = braiding(N, M) * braiding(M, N) * kron(twist(M), twist(N));
    return lhs == rhs;
}

bool braiding_natural(const ModulePtr& M, const ModulePtr& Mp, const SparseMatrix& f, const ModulePtr& N) {
    const FieldContext& F = M->field();
    SparseMatrix IN = SparseMatrix::identity(F, N->dim());
    return braiding(Mp, N) * kron(f, IN) == kron(IN, f) * braiding(M, N);
}

std::optional<Weight> transparency_witness(const RootDatum& R, const Weight& lambda) {
    if (lambda.is_zero()) return std::nullopt;
    int n = R.rank();
    for (long m = 1; m <= 100000; ++m)
        for (int i = 0; i < n; ++i) {
            Weight mu = Weight::zero(n);
            mu.h[i] = Rational(1, m);
            Rational x = 2 * R.pairing(lambda, mu) / R.ell();
            if (!is_integer(x)) return mu;
        }
    return std::nullopt;
}

}  // namespace uqh
