#include "uqh/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <iostream>
#include <set>

#include "uqh/homalg.hpp"
#include "uqh/report.hpp"
#include "uqh/ribbon.hpp"
#include "uqh/shapovalov.hpp"

namespace uqh {

using nlohmann::json;

namespace {

std::string ix(int i) { return std::to_string(i + 1); }

SparseMatrix op_power(const SparseMatrix& X, int k, const FieldContext& F) {
    SparseMatrix p = SparseMatrix::identity(F, X.rows());
    for (int j = 0; j < k; ++j) p = X * p;
    return p;
}

struct NamedRelation {
    std::string name;
    AlgebraElement rel;
};

std::vector<NamedRelation> defining_relations(const RootDatum& R, const FieldContext& F) {
    int n = R.rank();
    std::vector<NamedRelation> out;
    auto E = [&](int i) { return AlgebraElement::E(F, i); };
    auto Fm = [&](int i) { return AlgebraElement::Fm(F, i); };
    auto H = [&](int i) { return AlgebraElement::H(F, i); };
    auto K = [&](int i, int s) { return AlgebraElement::K(F, rootvec_scale(unit_root(n, i), s)); };
    for (int i = 0; i < n; ++i) {
        out.push_back({"K" + ix(i) + " K" + ix(i) + "^-1 = 1", K(i, 1) * K(i, -1) - AlgebraElement::one(F)});
        out.push_back({"E" + ix(i) + "^r = 0", E(i).pow(R.r_simple(i))});
        out.push_back({"F" + ix(i) + "^r = 0", Fm(i).pow(R.r_simple(i))});
        for (int j = 0; j < n; ++j) {
            Cyclotomic q = F.q_pow(static_cast<long>(R.d(i)) * R.a(i, j));
            Cyclotomic a = F.from_int(R.a(i, j));
            out.push_back({"K" + ix(i) + " E" + ix(j) + " K" + ix(i) + "^-1", K(i, 1) * E(j) * K(i, -1) - E(j).scaled(q)});
            out.push_back({"K" + ix(i) + " F" + ix(j) + " K" + ix(i) + "^-1", K(i, 1) * Fm(j) * K(i, -1) - Fm(j).scaled(q.inv())});
            out.push_back({"[H" + ix(i) + ",E" + ix(j) + "]", commutator(H(i), E(j)) - E(j).scaled(a)});
            out.push_back({"[H" + ix(i) + ",F" + ix(j) + "]", commutator(H(i), Fm(j)) + Fm(j).scaled(a)});
            out.push_back({"[H" + ix(i) + ",H" + ix(j) + "]", commutator(H(i), H(j))});
            out.push_back({"[H" + ix(i) + ",K" + ix(j) + "]", commutator(H(i), K(j, 1))});
            AlgebraElement c = commutator(E(i), Fm(j));
            if (i == j) c -= cartan_commutator(R, F, i);
            out.push_back({"[E" + ix(i) + ",F" + ix(j) + "]", c});
            if (i != j) {
                out.push_back({"E-Serre (" + ix(i) + "," + ix(j) + ")", serre_relator(R, F, i, j, 1)});
                out.push_back({"F-Serre (" + ix(i) + "," + ix(j) + ")", serre_relator(R, F, i, j, -1)});
            }
        }
    }
    return out;
}

}  // namespace

std::vector<std::string> relation_violations(const ModulePtr& Mp) {
    const WeightModule& M = *Mp;
    std::vector<std::string> v = module_invariant_violations(M);
    const RootDatum& R = M.roots();
    const FieldContext& F = M.field();
    int n = M.rank(), d = M.dim();
    SparseMatrix I = SparseMatrix::identity(F, d);
    std::vector<SparseMatrix> K(n), Kinv(n), H(n);
    for (int i = 0; i < n; ++i) {
        K[i] = M.k_matrix(unit_root(n, i));
        Kinv[i] = M.k_matrix(rootvec_scale(unit_root(n, i), -1));
        H[i] = M.h_matrix(i);
        if (K[i] * Kinv[i] != I) v.push_back("K" + ix(i) + " is not inverted by K_-" + ix(i));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (K[i] * K[j] != M.k_matrix(rootvec_add(unit_root(n, i), unit_root(n, j))))
                v.push_back("K" + ix(i) + " K" + ix(j) + " != K_(a" + ix(i) + "+a" + ix(j) + ")");
            if (H[i] * H[j] != H[j] * H[i]) v.push_back("H" + ix(i) + " and H" + ix(j) + " do not commute");
            if (H[i] * K[j] != K[j] * H[i]) v.push_back("H" + ix(i) + " and K" + ix(j) + " do not commute");
            Cyclotomic q = F.q_pow(static_cast<long>(R.d(i)) * R.a(i, j));
            if (K[i] * M.E[j] * Kinv[i] != M.E[j].scaled(q)) v.push_back("K" + ix(i) + " E" + ix(j) + " K" + ix(i) + "^-1 is wrong");
            if (K[i] * M.F[j] * Kinv[i] != M.F[j].scaled(q.inv()))
                v.push_back("K" + ix(i) + " F" + ix(j) + " K" + ix(i) + "^-1 is wrong");
            Cyclotomic a = F.from_int(R.a(i, j));
            if (H[i] * M.E[j] - M.E[j] * H[i] != M.E[j].scaled(a)) v.push_back("[H" + ix(i) + ",E" + ix(j) + "] is wrong");
            if (H[i] * M.F[j] - M.F[j] * H[i] != M.F[j].scaled(-a)) v.push_back("[H" + ix(i) + ",F" + ix(j) + "] is wrong");
            AlgebraElement c = commutator(AlgebraElement::E(F, i), AlgebraElement::Fm(F, j));
            if (i == j) c -= cartan_commutator(R, F, i);
            if (!evaluate(c, M).is_zero()) v.push_back("[E" + ix(i) + ",F" + ix(j) + "] differs from its symbolic value");
        }

    // K_gamma against prod_i q_i^{gamma_i H_i}, read off the H operators
    std::vector<RootVec> gammas;
    for (int i = 0; i < n; ++i) gammas.push_back(unit_root(n, i));
    gammas.push_back(R.positive_roots().back());
    RootVec mixed(n, 1);
    mixed[0] = -2;
    gammas.push_back(mixed);
    for (auto& g : gammas) {
        SparseMatrix Kg = M.k_matrix(g);
        for (int r = 0; r < d; ++r) {
            Cyclotomic want = F.one();
            bool diag = Kg.row(r).size() == 1 && Kg.row(r)[0].col == r;
            for (int i = 0; i < n && diag; ++i) {
                const auto& row = H[i].row(r);
                Rational h = 0;
                if (row.size() > 1 || (row.size() == 1 && row[0].col != r)) diag = false;
                else if (row.size() == 1) {
                    if (!row[0].val.is_rational()) diag = false;
                    else h = row[0].val.rational_value();
                }
                if (diag) want *= F.q_pow(Rational(R.d(i) * g[i]) * h);
            }
            if (!diag || Kg.get(r, r) != want) {
                v.push_back("K_" + rootvec_str(g) + " is not prod q_i^{k_i H_i} on basis vector " + std::to_string(r));
                break;
            }
        }
    }

    // [E_i, F_i^s] = [s]_i F_i^{s-1} [K_i; d_i(1-s)] and [E_i^s, F_i] = [s]_i E_i^{s-1} [K_i; d_i(s-1)]
    for (int i = 0; i < n; ++i) {
        int di = R.d(i);
        SparseMatrix Fs = I, Es = I;
        for (int s = 1; s < R.r_simple(i); ++s) {
            SparseMatrix Fp = Fs, Ep = Es;
            Fs = M.F[i] * Fs;
            Es = M.E[i] * Es;
            Cyclotomic br = F.bracket(Rational(s), di);
            SparseMatrix kf = evaluate(bracket_K(R, F, i, static_cast<long>(di) * (1 - s)), M);
            SparseMatrix ke = evaluate(bracket_K(R, F, i, static_cast<long>(di) * (s - 1)), M);
            if (M.E[i] * Fs - Fs * M.E[i] != (Fp * kf).scaled(br))
                v.push_back("[E" + ix(i) + ",F" + ix(i) + "^" + std::to_string(s) + "] formula fails");
            if (Es * M.F[i] - M.F[i] * Es != (Ep * ke).scaled(br))
                v.push_back("[E" + ix(i) + "^" + std::to_string(s) + ",F" + ix(i) + "] formula fails");
        }
    }

    const auto& rv = root_vector_matrices(Mp);
    for (int k = 0; k < R.num_positive(); ++k) {
        int r = R.r_alpha(k);
        if (!op_power(rv.pos[k], r, F).is_zero()) v.push_back("X_" + rootvec_str(R.root(k)) + "^" + std::to_string(r) + " != 0");
        if (!op_power(rv.neg[k], r, F).is_zero()) v.push_back("X_-" + rootvec_str(R.root(k)) + "^" + std::to_string(r) + " != 0");
    }
    return v;
}

namespace {

// generator matrices of a representation, possibly twisted by braid automorphisms
struct GenMatrices {
    std::vector<SparseMatrix> E, F, H, K, Kinv;
};

GenMatrices base_generators(const WeightModule& M) {
    GenMatrices G;
    int n = M.rank();
    for (int i = 0; i < n; ++i) {
        G.E.push_back(M.E[i]);
        G.F.push_back(M.F[i]);
        G.H.push_back(M.h_matrix(i));
        G.K.push_back(M.k_matrix(unit_root(n, i)));
        G.Kinv.push_back(M.k_matrix(rootvec_scale(unit_root(n, i), -1)));
    }
    return G;
}

SparseMatrix k_from(const GenMatrices& G, const RootVec& g, const FieldContext& F, int d) {
    SparseMatrix out = SparseMatrix::identity(F, d);
    for (size_t j = 0; j < g.size(); ++j)
        for (int t = 0; t < std::abs(g[j]); ++t) out = (g[j] > 0 ? G.K[j] : G.Kinv[j]) * out;
    return out;
}

SparseMatrix eval_with(const AlgebraElement& e, const GenMatrices& G, const FieldContext& F, int d) {
    SparseMatrix out(d, d);
    for (auto& [w, c] : e.terms()) {
        SparseMatrix acc = SparseMatrix::identity(F, d);
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            switch (it->kind) {
            case Generator::E: acc = G.E[it->index] * acc; break;
            case Generator::F: acc = G.F[it->index] * acc; break;
            case Generator::H: acc = G.H[it->index] * acc; break;
            case Generator::K: acc = k_from(G, it->gamma, F, d) * acc; break;
            }
        }
        out = out + acc.scaled(c);
    }
    return out;
}

// generator matrices of rho o T_i
GenMatrices twist_by(const RootDatum& R, const FieldContext& F, int i, const GenMatrices& G, int d) {
    GenMatrices T;
    int n = R.rank();
    for (int j = 0; j < n; ++j) {
        T.E.push_back(eval_with(braid_generator(R, F, i, Generator::e(j)), G, F, d));
        T.F.push_back(eval_with(braid_generator(R, F, i, Generator::f(j)), G, F, d));
        T.H.push_back(eval_with(braid_generator(R, F, i, Generator::h(j)), G, F, d));
        T.K.push_back(k_from(G, R.reflect(i, unit_root(n, j)), F, d));
        T.Kinv.push_back(k_from(G, rootvec_scale(R.reflect(i, unit_root(n, j)), -1), F, d));
    }
    return T;
}

}  // namespace

std::vector<std::string> braid_violations(const ModulePtr& M) {
    std::vector<std::string> v;
    const RootDatum& R = M->roots();
    const FieldContext& F = M->field();
    int n = R.rank(), d = M->dim();
    GenMatrices base = base_generators(*M);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int m = R.m(i, j);
            // rho o T_i o T_j o ... against rho o T_j o T_i o ...
            GenMatrices A = base, B = base;
            for (int t = 0; t < m; ++t) {
                A = twist_by(R, F, t % 2 ? j : i, A, d);
                B = twist_by(R, F, t % 2 ? i : j, B, d);
            }
            std::string pair = "braid relation (" + ix(i) + "," + ix(j) + ") fails on ";
            for (int k = 0; k < n; ++k) {
                if (A.E[k] != B.E[k]) v.push_back(pair + "E" + ix(k));
                if (A.F[k] != B.F[k]) v.push_back(pair + "F" + ix(k));
                if (A.H[k] != B.H[k]) v.push_back(pair + "H" + ix(k));
                if (A.K[k] != B.K[k] || A.Kinv[k] != B.Kinv[k]) v.push_back(pair + "K" + ix(k));
            }
        }
    return v;
}

std::vector<std::string> braid_image_violations(const ModulePtr& M) {
    std::vector<std::string> v;
    const RootDatum& R = M->roots();
    const FieldContext& F = M->field();
    int d = M->dim();
    auto rels = defining_relations(R, F);
    GenMatrices base = base_generators(*M);
    for (int i = 0; i < R.rank(); ++i) {
        // rho(T_i x) = (rho o T_i)(x); the symbolic images are expanded as well on small modules
        GenMatrices T = twist_by(R, F, i, base, d);
        for (auto& nr : rels) {
            bool bad = !eval_with(nr.rel, T, F, d).is_zero();
            if (!bad && d <= 32) bad = !evaluate(braid_apply(R, i, nr.rel), *M).is_zero();
            if (bad) v.push_back("T" + ix(i) + " breaks " + nr.name);
        }
    }
    return v;
}

const char* status_name(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Degenerate: return "degenerate";
    case Status::Infeasible: return "infeasible";
    }
    return "?";
}

bool CellResult::ok() const {
    for (auto& c : criteria)
        if (c.status == Status::Fail) return false;
    return true;
}

namespace {

Weight unit_weight(int n, int i, Rational c = 1) {
    Weight w = Weight::zero(n);
    w.h[i] = c;
    return w;
}

std::vector<Weight> dedupe(const std::vector<Weight>& ws) {
    std::vector<Weight> out;
    std::set<Weight> seen;
    for (auto& w : ws)
        if (seen.insert(w).second) out.push_back(w);
    return out;
}

// stage timings on stderr when UQH_TRACE is set
class Tracer {
public:
    explicit Tracer(std::string cell) : cell_(std::move(cell)), on_(std::getenv("UQH_TRACE") != nullptr) {}
    void operator()(const std::string& what) {
        if (!on_) return;
        auto now = std::chrono::steady_clock::now();
        std::cerr << "[" << cell_ << "] " << what << " " << std::chrono::duration<double>(now - last_).count() << "s\n";
        last_ = now;
    }

private:
    std::string cell_;
    bool on_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

bool degenerate_cell(const RootDatum& R) {
    for (int i = 0; i < R.rank(); ++i)
        if ((2 * R.d(i)) % R.ell() == 0) return true;
    return false;
}

void add_failures(CriterionResult& c, const std::string& where, const std::vector<std::string>& v) {
    for (auto& s : v) c.failures.push_back(where + ": " + s);
}

void finish(CriterionResult& c) {
    if (!c.failures.empty()) c.status = Status::Fail;
}

// brute-force truncated partition count, by enumerating exponent vectors
long brute_partitions(const RootDatum& R, const RootVec& eta) {
    long count = 0;
    int N = R.num_positive();
    std::vector<int> e(N, 0);
    std::function<void(int, RootVec)> rec = [&](int k, RootVec rest) {
        if (k == N) {
            if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) ++count;
            return;
        }
        for (int j = 0; j < R.r_alpha(k); ++j) {
            RootVec r2 = rootvec_sub(rest, rootvec_scale(R.root(k), j));
            if (!rootvec_nonneg(r2)) break;
            rec(k + 1, r2);
        }
    };
    rec(0, eta);
    return count;
}

CriterionResult criterion_pbw(const SessionPtr& S, const std::vector<Weight>& ws, bool degenerate) {
    CriterionResult c;
    c.id = 3;
    c.name = "PBW dimension";
    const RootDatum& R = S->roots();
    long pbw = R.pbw_dimension();
    c.detail["pbw_dim"] = pbw;
    if (degenerate) {
        // no Verma modules; count truncated monomials degree by degree instead
        std::map<RootVec, long> by_degree;
        int Np = R.num_positive();
        std::vector<int> e(Np, 0);
        for (;;) {
            RootVec deg(R.rank(), 0);
            for (int k = 0; k < Np; ++k) deg = rootvec_add(deg, rootvec_scale(R.root(k), e[k]));
            ++by_degree[deg];
            int k = Np - 1;
            while (k >= 0 && ++e[k] == R.r_alpha(k)) e[k--] = 0;
            if (k < 0) break;
        }
        long total = 0;
        for (auto& [eta, cnt] : by_degree) {
            long want = brute_partitions(R, eta);
            if (cnt != want || partition_count(R, eta) != want ||
                static_cast<long>(partitions(R, eta).size()) != want)
                c.failures.push_back("degree " + rootvec_str(eta) + " has " + std::to_string(cnt) +
                                     " truncated monomials, expected " + std::to_string(want));
            total += cnt;
        }
        if (total != pbw) c.failures.push_back("truncated monomials number " + std::to_string(total));
        c.detail["negative_part_dim"] = total;
        c.detail["pieces"] = by_degree.size();
        c.note = "no Verma modules: some q_i^2 = 1, graded dimensions checked on truncated PBW monomials";
        finish(c);
        return c;
    }
    json rows = json::array();
    for (auto& w : ws) {
        ModulePtr V = build_verma(S, w);
        if (V->dim() != pbw) c.failures.push_back("dim M^" + w.str() + " = " + std::to_string(V->dim()));
        int bad = 0;
        for (size_t b = 0; b < V->weights.size(); ++b) {
            auto coords = R.root_coordinates(w - V->weights[b]);
            RootVec eta;
            for (auto& x : coords) eta.push_back(static_cast<int>(boost::multiprecision::numerator(x)));
            long want = brute_partitions(R, eta);
            if (V->block_dim(static_cast<int>(b)) != want || partition_count(R, eta) != want) ++bad;
        }
        if (bad) c.failures.push_back("M^" + w.str() + ": " + std::to_string(bad) + " weight spaces differ from |Par|");
        if (character(*V) != verma_character(R, w)) c.failures.push_back("M^" + w.str() + ": character mismatch");
        rows.push_back({{"weight", weight_json(w)}, {"dim", V->dim()}, {"weight_spaces", V->weights.size()}});
    }
    c.detail["vermas"] = rows;
    finish(c);
    return c;
}

}  // namespace

CellResult run_cell(char type, int rank, int ell) {
    CellResult cell;
    cell.type = type;
    cell.rank = rank;
    cell.ell = ell;
    RootDatum R = RootDatum::build(type, rank, ell);
    int n = rank;
    bool degenerate = degenerate_cell(R);
    Tracer trace(R.name() + " ell=" + std::to_string(ell));
    Weight zero = Weight::zero(n), rho = R.rho();
    Weight e1 = unit_weight(n, 0), en = unit_weight(n, n - 1);

    // criteria 1-3 share a session with thirds
    SessionPtr S3 = Session::create(type, rank, ell, 3);
    std::vector<Weight> w3 = {zero, e1, rho.scaled(Rational(1, 3))};
    CriterionResult c3 = criterion_pbw(S3, w3, degenerate);
    trace("criterion 3");

    auto skipped = [&](int id, const std::string& name) {
        CriterionResult c;
        c.id = id;
        c.name = name;
        c.status = Status::Degenerate;
        c.note = "some q_i^2 = 1, so E_i F_i - F_i E_i has no value in the restricted algebra";
        return c;
    };
    if (degenerate) {
        cell.criteria.push_back(skipped(1, "relation suite"));
        cell.criteria.push_back(skipped(2, "braid suite"));
        cell.criteria.push_back(c3);
        cell.criteria.push_back(skipped(4, "determinant and typicality"));
        cell.criteria.push_back(skipped(5, "ribbon suite"));
        cell.criteria.push_back(skipped(6, "Mueger suite"));
        cell.criteria.push_back(skipped(7, "duality and homological suite"));
        cell.criteria.push_back(skipped(8, "generic semisimplicity"));
        return cell;
    }

    // modules for the relation and braid suites
    std::vector<std::pair<std::string, ModulePtr>> mods;
    for (auto& w : w3) mods.push_back({"M^" + w.str(), build_verma(S3, w)});
    std::vector<ModulePtr> small;
    for (auto& w : w3) {
        ModulePtr L = simple_module(S3, w);
        mods.push_back({"L^" + w.str(), L});
        if (L->dim() > 1 && L->dim() <= 16) small.push_back(L);
    }
    if (!small.empty()) {
        ModulePtr A = small.front(), B = small.size() > 1 ? small[1] : small.front();
        if (A->dim() * B->dim() <= 256) mods.push_back({"tensor of simples", tensor_module(A, B)});
    }

    CriterionResult c1;
    c1.id = 1;
    c1.name = "relation suite";
    CriterionResult c2;
    c2.id = 2;
    c2.name = "braid suite";
    json m1 = json::array();
    for (auto& [name, M] : mods) {
        add_failures(c1, name, relation_violations(M));
        trace("relations on " + name + " dim " + std::to_string(M->dim()));
        add_failures(c2, name, braid_violations(M));
        trace("braid relations on " + name);
        add_failures(c2, name, braid_image_violations(M));
        trace("braid images on " + name);
        m1.push_back({{"module", name}, {"dim", M->dim()}});
    }
    c1.detail["modules"] = m1;
    c2.detail["modules"] = m1;
    finish(c1);
    finish(c2);
    cell.criteria.push_back(c1);
    cell.criteria.push_back(c2);
    cell.criteria.push_back(c3);

    // criterion 4: Gram determinants over a mix of integral and fractional weights
    {
        CriterionResult c;
        c.id = 4;
        c.name = "determinant and typicality";
        SessionPtr S = Session::create(type, rank, ell, 6);
        std::vector<Weight> ws = dedupe({zero, rho, e1, -e1, e1.scaled(2), -rho, rho.scaled(3), en.scaled(Rational(1, 2)),
                                         rho.scaled(Rational(1, 3)), rho.scaled(Rational(2, 3)), rho.scaled(Rational(-1, 3)),
                                         e1.scaled(Rational(3, 2)), rho.scaled(Rational(1, 3)) + e1.scaled(Rational(1, 2)),
                                         rho.scaled(Rational(5, 6))});
        std::map<RootVec, Cyclotomic> ratio;
        std::map<RootVec, int> ratio_samples;
        int typical_count = 0, atypical_count = 0;
        json rows = json::array();
        for (auto& w : ws) {
            ModulePtr V = build_verma(S, w);
            GramTables G = contravariant_form(V);
            bool typ = is_typical(S->roots(), w);
            (typ ? typical_count : atypical_count)++;
            if ((G.radical_total() == 0) != typ)
                c.failures.push_back(w.str() + ": corank " + std::to_string(G.radical_total()) + " but typical = " +
                                     (typ ? "true" : "false"));
            for (auto& p : G.pieces) {
                Cyclotomic closed = gram_det_closed(*S, w, p.eta);
                if (p.det.is_zero() != closed.is_zero()) {
                    c.failures.push_back(w.str() + ", eta " + rootvec_str(p.eta) + ": zero sets differ");
                    continue;
                }
                if (p.det.is_zero()) continue;
                Cyclotomic q = p.det / closed;
                auto it = ratio.find(p.eta);
                if (it == ratio.end()) ratio.emplace(p.eta, q);
                else if (it->second != q)
                    c.failures.push_back(w.str() + ", eta " + rootvec_str(p.eta) + ": determinant ratio depends on the weight");
                ratio_samples[p.eta]++;
            }
            rows.push_back({{"weight", weight_json(w)}, {"typical", typ}, {"corank", G.radical_total()}});
        }
        if (typical_count == 0 || atypical_count == 0) c.failures.push_back("sample lacks typical or atypical weights");
        c.detail["weights"] = rows;
        c.detail["typical"] = typical_count;
        c.detail["atypical"] = atypical_count;
        json rj = json::object();
        for (auto& [eta, q] : ratio) rj[rootvec_str(eta)] = {{"ratio", q.str()}, {"samples", ratio_samples[eta]}};
        c.detail["ratios"] = rj;
        finish(c);
        cell.criteria.push_back(c);
        trace("criterion " + std::to_string(c.id));
    }

    // criteria 5-7 on simples of integral weight
    std::vector<Weight> w5 = dedupe({zero, e1, en, rho, e1.scaled(2), -e1, en.scaled(2)});
    SessionPtr S5 = Session::for_weights(type, rank, ell, w5);
    const FieldContext& F5 = S5->field();
    std::vector<ModulePtr> simples;
    for (auto& w : w5) simples.push_back(simple_module(S5, w));
    std::vector<int> order;
    for (size_t k = 0; k < simples.size(); ++k)
        if (simples[k]->dim() > 1) order.push_back(static_cast<int>(k));
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return simples[a]->dim() < simples[b]->dim(); });
    auto pick = [&](size_t k) { return simples[order[std::min(k, order.size() - 1)]]; };
    {
        CriterionResult c;
        c.id = 5;
        c.name = "ribbon suite";
        json rows = json::array();
        for (size_t k = 0; k < w5.size(); ++k) {
            const ModulePtr& L = simples[k];
            std::string where = "L^" + w5[k].str();
            Cyclotomic closed = twist_scalar_closed(*S5, w5[k]);
            SparseMatrix th = L->dim() <= 40 ? twist(L) : twist_expanded(L);
            if (th != SparseMatrix::identity(F5, L->dim()).scaled(closed)) c.failures.push_back(where + ": twist differs from the closed form");
            if (L->dim() <= 40 && twist_expanded(L) != th) c.failures.push_back(where + ": expanded twist differs");
            add_failures(c, where, duality_violations(L));
            add_failures(c, where, antipode_square_violations(L));
            rows.push_back({{"weight", weight_json(w5[k])}, {"dim", L->dim()}, {"twist", closed.str()}});
        }
        c.detail["simples"] = rows;
        if (type == 'A' && rank == 1 && ell == 4) {
            Cyclotomic t = twist_scalar_closed(*S5, e1);
            bool ok = t == F5.zeta(-F5.N() / 8);
            c.detail["sl2_ell4_twist_at_1"] = t.str();
            if (!ok) c.failures.push_back("twist on L^1 is not zeta_8^-1");
        }
        if (!order.empty()) {
            ModulePtr A = pick(0), B = pick(1), C = pick(2);
            if (static_cast<long>(A->dim()) * B->dim() * C->dim() > 512) B = C = A;
            if (!yang_baxter_holds(A, B, C)) c.failures.push_back("Yang-Baxter equation fails");
            c.detail["yang_baxter_dims"] = {A->dim(), B->dim(), C->dim()};
            ModulePtr P = pick(0), Q = pick(1);
            if (P->dim() * Q->dim() > 100) Q = P;
            if (!twist_balance_holds(P, Q)) c.failures.push_back("twist balance fails");
            add_failures(c, "pivot", pivot_monoidal_violations(P, Q));
            c.detail["balance_dims"] = {P->dim(), Q->dim()};
        } else {
            c.failures.push_back("no nontrivial simple in the sample");
        }
        finish(c);
        cell.criteria.push_back(c);
        trace("criterion " + std::to_string(c.id));
    }
    {
        CriterionResult c;
        c.id = 6;
        c.name = "Mueger suite";
        int pairs = 0;
        for (size_t a = 0; a < w5.size(); ++a)
            for (size_t b = 0; b < w5.size(); ++b) {
                if (simples[a]->dim() > 200 || simples[b]->dim() > 200) continue;
                Cyclotomic got = double_braiding_on_top(simples[a], w5[a], simples[b], w5[b]);
                if (got != double_braiding_scalar(*S5, w5[a], w5[b]))
                    c.failures.push_back("double braiding on L^" + w5[a].str() + " (x) L^" + w5[b].str());
                ++pairs;
            }
        if (R.pbw_dimension() <= 125) {
            Weight la = e1.scaled(Rational(1, 2)), mu = rho.scaled(Rational(1, 3));
            SessionPtr S = Session::for_weights(type, rank, ell, {la, mu});
            ModulePtr A = build_verma(S, la), B = build_verma(S, mu);
            if (double_braiding_on_top(A, la, B, mu) != double_braiding_scalar(*S, la, mu))
                c.failures.push_back("double braiding on M^" + la.str() + " (x) M^" + mu.str());
            ++pairs;
        }
        std::set<Weight> sampled(w3.begin(), w3.end());
        sampled.insert(w5.begin(), w5.end());
        for (auto& w : cell.criteria[3].detail["weights"]) {
            std::vector<Rational> h;
            for (auto& x : w["weight"]) h.push_back(parse_rational(x.get<std::string>()));
            sampled.insert(Weight(h));
        }
        int witnesses = 0;
        for (auto& w : sampled) {
            if (w.is_zero()) continue;
            auto mu = transparency_witness(R, w);
            if (!mu || is_integer(2 * R.pairing(w, *mu) / ell)) c.failures.push_back("no transparency witness for " + w.str());
            else ++witnesses;
        }
        c.detail["pairs"] = pairs;
        c.detail["witnesses"] = witnesses;
        finish(c);
        cell.criteria.push_back(c);
        trace("criterion " + std::to_string(c.id));
    }
    {
        CriterionResult c;
        c.id = 7;
        c.name = "duality and homological suite";
        json rows = json::array();
        auto check_duals = [&](const std::string& where, const ModulePtr& M, bool simple) {
            ModulePtr Mc = dual_module(M, DualKind::Check);
            if (character(*Mc) != character(*M)) c.failures.push_back(where + ": character of the dual differs");
            ModulePtr Mcc = dual_module(Mc, DualKind::Check);
            auto f = find_isomorphism(Mcc, M);
            if (!f || !is_isomorphism(*f, *Mcc, *M)) c.failures.push_back(where + ": no isomorphism with the double dual");
            if (simple) {
                auto g = find_isomorphism(Mc, M);
                if (!g || !is_isomorphism(*g, *Mc, *M)) c.failures.push_back(where + ": simple module not isomorphic to its dual");
            }
            rows.push_back({{"module", where}, {"dim", M->dim()}});
        };
        for (size_t k = 0; k < w5.size(); ++k)
            if (simples[k]->dim() <= 64) check_duals("L^" + w5[k].str(), simples[k], true);
        if (R.pbw_dimension() <= 125) check_duals("M^" + e1.str(), build_verma(S5, e1), false);
        c.detail["duals"] = rows;

        auto homological = [&](const SessionPtr& S, const Weight& w, json& out) {
            ProjectiveCover pc = projective_cover(S, w);
            BggReport bg = bgg_report(pc);
            SelfDuality sd = self_duality_check(pc.P);
            auto tops = top_weights(pc.P), socs = socle_weights(pc.P);
            std::string where = "P^" + w.str();
            if (!pc.retraction_ok || !pc.cert.local) c.failures.push_back(where + ": projective cover not certified");
            if (!bg.all_equal) c.failures.push_back(where + ": BGG reciprocity fails");
            if (!sd.iso) c.failures.push_back(where + ": no self-duality certificate");
            if (tops != std::vector<Weight>{w}) c.failures.push_back(where + ": top is not L^" + w.str());
            if (socs != std::vector<Weight>{w}) c.failures.push_back(where + ": socle is not L^" + w.str());
            json lines = json::array();
            for (auto& l : bg.lines)
                lines.push_back({{"mu", weight_json(l.mu)}, {"standard", l.standard}, {"composition", l.composition}});
            out.push_back({{"lambda", weight_json(w)}, {"dim", pc.P->dim()}, {"bgg", lines}});
            return pc.P->dim();
        };
        json covers = json::array();
        if (type == 'A' && rank == 1 && ell == 4) {
            std::vector<Weight> ls = {zero, unit_weight(1, 0, -2), unit_weight(1, 0, 2)};
            SessionPtr S = Session::for_weights('A', 1, 4, ls);
            for (auto& w : ls) {
                int d = homological(S, w, covers);
                if (w.is_zero() && d != 4) c.failures.push_back("dim P^0 = " + std::to_string(d));
            }
        }
        if (type == 'A' && rank == 2 && ell == 4) {
            SessionPtr S = Session::for_weights('A', 2, 4, {zero});
            homological(S, zero, covers);
        }
        if (!covers.empty()) c.detail["projective_covers"] = covers;
        finish(c);
        cell.criteria.push_back(c);
        trace("criterion " + std::to_string(c.id));
    }
    {
        CriterionResult c;
        c.id = 8;
        c.name = "generic semisimplicity";
        long pbw = R.pbw_dimension();
        if (pbw * pbw > 20000) {
            c.status = Status::Infeasible;
            c.note = "typical simples have dimension " + std::to_string(pbw) + ", their tensor square has dimension " +
                     std::to_string(pbw * pbw);
            cell.criteria.push_back(c);
            return cell;
        }
        // sixths leave N unchanged against thirds for every ell; twelfths are the fallback (B2 at ell=3)
        SessionPtr S;
        std::vector<std::pair<Weight, Weight>> pairs;
        for (int D : {6, 12}) {
            S = Session::create(type, rank, ell, D);
            const RootDatum& R8 = S->roots();
            std::vector<int> nums;
            if (D == 6) nums = {1, 2, 4, 5, 7};
            else
                for (int a = 1; a < D; ++a) nums.push_back(a);
            std::vector<Weight> cands;
            std::vector<int> idx(n, 0);
            for (;;) {
                Weight w = Weight::zero(n);
                for (int i = 0; i < n; ++i) w.h[i] = Rational(nums[idx[i]], D);
                if (is_typical(R8, w)) cands.push_back(w);
                int i = n - 1;
                while (i >= 0 && ++idx[i] == static_cast<int>(nums.size())) idx[i--] = 0;
                if (i < 0) break;
            }
            pairs.clear();
            for (size_t a = 0; a < cands.size() && pairs.size() < 3; ++a)
                for (size_t b = a; b < cands.size() && pairs.size() < 3; ++b) {
                    Character ch = character_product(verma_character(R8, cands[a]), verma_character(R8, cands[b]));
                    bool all = true;
                    for (auto& [nu, m] : ch)
                        if (!is_typical(R8, nu)) {
                            all = false;
                            break;
                        }
                    if (all) pairs.push_back({cands[a], cands[b]});
                }
            c.detail["denominator"] = D;
            if (pairs.size() >= 3) break;
        }
        if (pairs.size() < 3) c.failures.push_back("fewer than three generic typical pairs found");
        json rows = json::array();
        for (auto& [la, mu] : pairs) {
            ModulePtr La = simple_module(S, la), Lm = simple_module(S, mu);
            ModulePtr T = tensor_module(La, Lm);
            SemisimpleSplitting sp = decompose_semisimple_tensor(T, La, Lm);
            std::string what = "L^" + la.str() + " (x) L^" + mu.str();
            if (!sp.ok()) c.failures.push_back(what + " does not split into typical simples");
            if (T->dim() <= 1000) {
                // small enough for the general splitting from all maximal vectors
                SemisimpleSplitting gen = decompose_semisimple(T);
                auto a = sp.highest_weights, b = gen.highest_weights;
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                if (!gen.ok() || a != b) c.failures.push_back(what + ": general splitting disagrees");
            }
            rows.push_back({{"lambda", weight_json(la)}, {"mu", weight_json(mu)}, {"dim", T->dim()},
                            {"summands", sp.highest_weights.size()}});
        }
        c.detail["pairs"] = rows;
        finish(c);
        cell.criteria.push_back(c);
        trace("criterion " + std::to_string(c.id));
    }
    return cell;
}

}  // namespace uqh
