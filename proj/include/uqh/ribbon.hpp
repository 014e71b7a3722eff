#ifndef UQH_RIBBON_HPP
#define UQH_RIBBON_HPP

#include <optional>

#include "uqh/wmod.hpp"

namespace uqh {

struct RootVectorMatrices {
    std::vector<SparseMatrix> pos, neg;  // X_{beta_k}, X_{-beta_k} in convex order
};
// cached per module instance
const RootVectorMatrices& root_vector_matrices(const ModulePtr& M);

RootVec two_rho(const RootDatum& R);
// eigenvalues of K_{2 rho}^{1-r} on the basis
std::vector<Cyclotomic> pivot_eigenvalues(const WeightModule& M);

SparseMatrix cartan_factor(const WeightModule& M, const WeightModule& N);
SparseMatrix r_tilde(const ModulePtr& M, const ModulePtr& N);
SparseMatrix r_matrix(const ModulePtr& M, const ModulePtr& N);
SparseMatrix flip(int dm, int dn, const FieldContext& F);  // M (x) N -> N (x) M
SparseMatrix braiding(const ModulePtr& M, const ModulePtr& N);
// c_{M,N} applied to one vector of M (x) N, keys x * dim N + y
using SparseVec = std::map<long, Cyclotomic>;
SparseVec apply_braiding(const ModulePtr& M, const ModulePtr& N, const SparseVec& v);

Cyclotomic double_braiding_scalar(const Session& S, const Weight& lambda, const Weight& mu);
// c_{N,M} c_{M,N} applied to v (x) w for the top vectors of two highest-weight modules; returns the scalar
Cyclotomic double_braiding_on_top(const ModulePtr& M, const Weight& lambda, const ModulePtr& N, const Weight& mu);

// twist from the duality morphisms and the braiding
SparseMatrix twist(const ModulePtr& M);
// same operator from the expansion of R, without forming V (x) V
SparseMatrix twist_expanded(const ModulePtr& M);
Cyclotomic twist_scalar_closed(const Session& S, const Weight& lambda);

struct DualityMorphisms {
    ModulePtr dual, dual_dual;
    SparseMatrix coev_right;  // 1 -> V (x) V*
    SparseMatrix ev_right;    // V* (x) V -> 1
    SparseMatrix coev_left;   // 1 -> V* (x) V
    SparseMatrix ev_left;     // V (x) V* -> 1
    SparseMatrix pivot;       // V -> V**
};
DualityMorphisms duality_morphisms(const ModulePtr& M);
// snake identities, morphism property of all four maps and of the pivot
std::vector<std::string> duality_violations(const ModulePtr& M);
std::vector<std::string> pivot_monoidal_violations(const ModulePtr& M, const ModulePtr& N);
// S^2(g) = K_{2rho}^{1-r} g K_{2rho}^{r-1} for every generator
std::vector<std::string> antipode_square_violations(const ModulePtr& M);

bool yang_baxter_holds(const ModulePtr& A, const ModulePtr& B, const ModulePtr& C);
bool twist_balance_holds(const ModulePtr& M, const ModulePtr& N);
// c_{M',N} (f (x) 1) = (1 (x) f) c_{M,N}
bool braiding_natural(const ModulePtr& M, const ModulePtr& Mp, const SparseMatrix& f, const ModulePtr& N);

// a weight mu with q^{2<lambda,mu>} != 1, or nothing for lambda = 0
std::optional<Weight> transparency_witness(const RootDatum& R, const Weight& lambda);

}  // namespace uqh

#endif
