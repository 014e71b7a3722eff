#include "uqh/shapovalov.hpp"

namespace uqh {

int GramTables::radical_total() const {
    int s = 0;
    for (auto& p : pieces) s += p.radical_dim;
    return s;
}

GramTables contravariant_form(const ModulePtr& V) {
    if (!V->verma) fail(ErrorKind::InvalidArgument, "contravariant form needs a Verma module");
    const Session& S = *V->session;
    const NegativePart& U = S.negative_part();
    const FieldContext& F = S.field();
    GramTables T;
    T.lambda = V->verma->lambda;
    T.pieces.resize(U.pieces.size());
    for (size_t p = 0; p < U.pieces.size(); ++p) {
        const auto& pc = U.pieces[p];
        int D = static_cast<int>(pc.words.size());
        GramPiece& g = T.pieces[p];
        g.eta = pc.degree;
        g.exponents = V->verma->pbw_exponents[p];
        Matrix G(D, D);
        if (p == 0) {
            G(0, 0) = F.one();
        } else {
            // B(F_j b', v) = B(b', E_j v)
            std::map<int, Matrix> eblock;
            for (int a = 0; a < D; ++a) {
                int j = pc.provenance[a].first, parent = pc.provenance[a].second;
                RootVec d = pc.degree;
                d[j] -= 1;
                int pp = U.find(d);
                auto it = eblock.find(j);
                if (it == eblock.end()) {
                    std::vector<int> rows, cols;
                    for (size_t k = 0; k < U.pieces[pp].words.size(); ++k) rows.push_back(U.pieces[pp].offset + static_cast<int>(k));
                    for (int k = 0; k < D; ++k) cols.push_back(pc.offset + k);
                    it = eblock.emplace(j, V->E[j].submatrix(rows, cols)).first;
                }
                const Matrix& Gp = T.pieces[pp].word_gram;
                const Matrix& Ej = it->second;
                for (int c = 0; c < D; ++c) {
                    Cyclotomic s;
                    for (int k = 0; k < Ej.rows(); ++k)
                        if (!Gp(parent, k).is_zero() && !Ej(k, c).is_zero()) s += Gp(parent, k) * Ej(k, c);
                    G(a, c) = s;
                }
            }
        }
        g.word_gram = G;
        const Matrix& P = V->verma->pbw[p];
        g.gram = P.transpose() * G * P;
        g.det = determinant(g.gram);
        g.rank = rank(G);
        g.radical_dim = D - g.rank;
    }
    return T;
}

Cyclotomic gram_det_closed(const Session& S, const Weight& lambda, const RootVec& eta) {
    const RootDatum& R = S.roots();
    const FieldContext& F = S.field();
    Cyclotomic det = F.one();
    for (int k = 0; k < R.num_positive(); ++k) {
        const RootVec& beta = R.root(k);
        int d = R.d_alpha(k);
        Rational la = R.lambda_alpha(lambda, k);
        Cyclotomic bd = F.brace(Rational(d));
        for (int m = 1; m < R.r_alpha(k); ++m) {
            if (!rootvec_nonneg(rootvec_sub(eta, rootvec_scale(beta, m)))) continue;
            // truncated monomials of degree eta with at least m factors F_beta
            long p = 0;
            for (auto& kv : partitions(R, eta))
                if (kv[k] >= m) ++p;
            if (p == 0) continue;
            Cyclotomic f = F.brace(Rational(m * d)) / (bd * bd) * F.brace(la - m * d);
            det *= f.pow(p);
        }
    }
    return det;
}

Typicality typicality(const RootDatum& R, const Weight& lambda) {
    Typicality T;
    int ell = R.ell(), r = R.r();
    for (int k = 0; k < R.num_positive(); ++k) {
        RootTypicality t;
        t.root = R.root(k);
        t.lambda_alpha = R.lambda_alpha(lambda, k);
        int d = R.d_alpha(k);
        for (int kk = 1; kk < R.r_alpha(k); ++kk) {
            Rational x = 2 * (t.lambda_alpha - kk * d) / ell;
            if (is_integer(x)) {
                t.typical_by_congruence = false;
                t.witness_k = kk;
                t.witness_n = static_cast<int>(boost::multiprecision::numerator(x));
                break;
            }
        }
        // (C \ gZ) u rZ for even ell, (C \ (g/2)Z) u (r/2)Z for odd ell
        Rational g = R.g_alpha(k), rr = r;
        if (ell % 2 == 1) {
            g /= 2;
            rr /= 2;
        }
        bool in_g = is_integer(t.lambda_alpha / g), in_r = is_integer(t.lambda_alpha / rr);
        t.typical_by_sets = !in_g || in_r;
        if (t.typical_by_sets != t.typical_by_congruence)
            fail(ErrorKind::InvariantViolation, "typicality tests disagree at root " + rootvec_str(t.root) + " for weight " +
                                                    lambda.str());
        if (!t.typical_by_sets) T.typical = false;
        T.roots.push_back(t);
    }
    return T;
}

bool is_typical(const RootDatum& R, const Weight& lambda) { return typicality(R, lambda).typical; }

Subspace radical_submodule(const ModulePtr& V, const GramTables& T) {
    const NegativePart& U = V->session->negative_part();
    Subspace S;
    S.basis.resize(V->weights.size());
    for (size_t p = 0; p < U.pieces.size(); ++p) {
        Weight w = V->verma->lambda - V->roots().root_weight(U.pieces[p].degree);
        int b = V->block_of(w);
        if (b < 0 || V->blocks[b].front() != U.pieces[p].offset)
            fail(ErrorKind::Internal, "Verma blocks do not match the graded pieces");
        S.basis[b] = nullspace(T.pieces[p].word_gram.transpose(), V->field());
    }
    if (!is_submodule(*V, S)) fail(ErrorKind::InvariantViolation, "Gram radical is not a submodule");
    return S;
}

}  // namespace uqh
