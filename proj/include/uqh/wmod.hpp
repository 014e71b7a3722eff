#ifndef UQH_WMOD_HPP
#define UQH_WMOD_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "uqh/session.hpp"

namespace uqh {

struct VermaInfo {
    Weight lambda;
    std::vector<RootVec> degree;                 // per basis vector
    std::vector<std::vector<std::vector<int>>> pbw_exponents;  // per piece
    std::vector<Matrix> pbw;                     // per piece: columns are PBW monomials in the word basis
};

class WeightModule {
public:
    SessionPtr session;
    std::vector<Weight> basis_weights;
    std::vector<SparseMatrix> E, F;  // per simple root
    std::vector<std::string> labels;
    std::shared_ptr<const VermaInfo> verma;

    // derived by finalize()
    std::vector<Weight> weights;             // distinct weights, sorted
    std::vector<std::vector<int>> blocks;    // basis indices per weight
    std::map<Weight, int> block_index;
    std::vector<int> position;               // index of each basis vector inside its block

    void finalize();
    int dim() const { return static_cast<int>(basis_weights.size()); }
    int rank() const { return session->rank(); }
    const FieldContext& field() const { return session->field(); }
    const RootDatum& roots() const { return session->roots(); }
    int block_of(const Weight& w) const {
        auto it = block_index.find(w);
        return it == block_index.end() ? -1 : it->second;
    }
    int block_dim(int b) const { return static_cast<int>(blocks[b].size()); }

    SparseMatrix k_matrix(const RootVec& gamma) const;
    SparseMatrix h_matrix(int i) const;
    SparseMatrix generator_matrix(const Generator& g) const;
    // block (target weight, source weight) of X_i (sign>0) or X_{-i}
    Matrix block_matrix(int i, int sign, int src_block) const;
};

using ModulePtr = std::shared_ptr<const WeightModule>;

ModulePtr make_module(SessionPtr S, std::vector<Weight> weights, std::vector<SparseMatrix> E,
                      std::vector<SparseMatrix> F, std::vector<std::string> labels = {});
ModulePtr trivial_module(SessionPtr S);
ModulePtr one_dimensional_module(SessionPtr S, const Weight& w);  // requires X_{+-i} = 0 compatible
ModulePtr build_verma(SessionPtr S, const Weight& lambda);

SparseMatrix evaluate(const AlgebraElement& e, const WeightModule& M);
ModulePtr tensor_module(const ModulePtr& M, const ModulePtr& N);
enum class DualKind { Star, Check };
ModulePtr dual_module(const ModulePtr& M, DualKind kind);

using Character = std::map<Weight, long>;
Character character(const WeightModule& M);
Character character_product(const Character& a, const Character& b);
Character verma_character(const RootDatum& R, const Weight& lambda);
long character_mass(const Character& c);
Weight grading_class(const WeightModule& M);  // GradingViolation if several cosets
Weight coset_representative(const RootDatum& R, const Weight& w);

// Subspaces given per block by a matrix whose columns are a basis (block coordinates).
struct Subspace {
    std::vector<Matrix> basis;
    int dim() const;
};
Subspace zero_subspace(const WeightModule& M);
Subspace maximal_vectors(const WeightModule& M);
// smallest submodule containing the given vectors (full coordinates)
Subspace generate_submodule(const WeightModule& M, const std::vector<Vector>& vectors);
bool is_submodule(const WeightModule& M, const Subspace& S);
// maximal submodule of a module generated by its (one-dimensional) top weight space
Subspace highest_weight_radical(const WeightModule& M, const Weight& top);

// A weight-preserving linear map between modules, stored per source block.
struct ModuleMap {
    std::vector<Matrix> blocks;  // rows: target block of the same weight (0 rows if absent)
};
SparseMatrix to_sparse(const ModuleMap& f, const WeightModule& src, const WeightModule& tgt);
ModuleMap from_sparse(const SparseMatrix& f, const WeightModule& src, const WeightModule& tgt);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f, const WeightModule& src, const WeightModule& mid);  // g after f
ModuleMap identity_map(const WeightModule& M);
bool is_intertwiner(const ModuleMap& f, const WeightModule& src, const WeightModule& tgt);
bool is_isomorphism(const ModuleMap& f, const WeightModule& src, const WeightModule& tgt);

struct SubquotientResult {
    ModulePtr module;
    ModuleMap map;  // inclusion (sub) or projection (quotient)
};
SubquotientResult submodule(const ModulePtr& M, const Subspace& S);
SubquotientResult quotient_module(const ModulePtr& M, const Subspace& S);

ModulePtr simple_module(SessionPtr S, const Weight& lambda);
std::vector<Weight> composition_factors(const ModulePtr& M);
std::vector<Weight> composition_factors_by_character(const ModulePtr& M);

// Block-structure and nilpotency invariants; returns descriptions of violations.
std::vector<std::string> module_invariant_violations(const WeightModule& M);

// highest-weight partial order: a >= b iff a - b is a nonnegative integer combination of simple roots
bool weight_geq(const RootDatum& R, const Weight& a, const Weight& b);

}  // namespace uqh

#endif
