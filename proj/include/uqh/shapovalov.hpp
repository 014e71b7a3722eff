#ifndef UQH_SHAPOVALOV_HPP
#define UQH_SHAPOVALOV_HPP

#include "uqh/wmod.hpp"

namespace uqh {

struct GramPiece {
    RootVec eta;
    std::vector<std::vector<int>> exponents;  // PBW exponent vectors
    Matrix word_gram;                         // in the word basis of the Verma
    Matrix gram;                              // in the PBW monomial basis
    Cyclotomic det;
    int rank = 0;
    int radical_dim = 0;
};

struct GramTables {
    Weight lambda;
    std::vector<GramPiece> pieces;  // same order as the negative-part pieces
    int radical_total() const;
};

// Contravariant form with B(v,v) = 1 and B(Xu, v) = B(u, X' v), X' swapping E_i and F_i and fixing K.
GramTables contravariant_form(const ModulePtr& verma);
// Closed-form determinant over m = 1 .. r_alpha - 1.
Cyclotomic gram_det_closed(const Session& S, const Weight& lambda, const RootVec& eta);

struct RootTypicality {
    RootVec root;
    Rational lambda_alpha;
    bool typical_by_congruence = true;  // no (k, n) with 2(lambda_alpha - k d) = n ell, 1 <= k < r_alpha
    bool typical_by_sets = true;        // membership in the arithmetic set
    int witness_k = 0, witness_n = 0;
};

struct Typicality {
    std::vector<RootTypicality> roots;
    bool typical = true;
};

Typicality typicality(const RootDatum& R, const Weight& lambda);  // InvariantViolation if the two tests disagree
bool is_typical(const RootDatum& R, const Weight& lambda);

// kernel of the word-basis Gram matrices; closure under the action is checked
Subspace radical_submodule(const ModulePtr& verma, const GramTables& tables);

}  // namespace uqh

#endif
