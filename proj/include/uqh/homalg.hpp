#ifndef UQH_HOMALG_HPP
#define UQH_HOMALG_HPP

#include <optional>

#include "uqh/polynomial.hpp"
#include "uqh/wmod.hpp"

namespace uqh {

struct HomSpace {
    ModulePtr source, target;
    std::vector<ModuleMap> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

// Solves the intertwining system on a spanning set obtained by spinning generators.
// Generators are taken greedily from the highest weights unless hints are given.
HomSpace hom_space(const ModulePtr& M, const ModulePtr& N, const std::vector<Vector>& generator_hints = {});
// Hom(A (x) V, N) for a Verma module V = M^mu, through maximal vectors of weight mu in A* (x) N.
// Q must be tensor_module(A, V).
HomSpace hom_from_tensor_verma(const ModulePtr& Q, const ModulePtr& A, const ModulePtr& V, const ModulePtr& N);

std::optional<ModuleMap> find_isomorphism(const ModulePtr& M, const ModulePtr& N);
ModuleMap inverse_map(const ModuleMap& f, const WeightModule& src, const WeightModule& tgt);

struct LocalityCertificate {
    int end_dim = 0;
    int radical_dim = 0;   // kernel of the trace form on End
    bool local = false;    // End / J is the ground field
    bool minimal_polynomials_ok = false;  // every basis element has minimal polynomial (x - c)^k
    std::vector<Cyclotomic> scalars;      // c per basis element
    std::vector<int> degrees;             // k per basis element
};
LocalityCertificate locality(const ModulePtr& M);

struct Summand {
    ModulePtr module;
    ModuleMap inclusion;   // summand -> M
    ModuleMap projection;  // M -> summand
    std::vector<Weight> tops;     // nu with Hom(summand, L^nu) != 0
    std::vector<Weight> socles;   // nu with Hom(L^nu, summand) != 0
    Character ch;
    int multiplicity_class = 0;   // summands in the same class are isomorphic
    LocalityCertificate cert;
};

struct Decomposition {
    std::vector<Summand> summands;
    std::vector<SparseMatrix> idempotents;  // on M, orthogonal and summing to 1
    bool character_conserved = false;
    bool idempotents_ok = false;
};
// reverse_order flips the order in which top weights and basis elements are used
Decomposition decompose(const ModulePtr& M, bool reverse_order = false);

// Explicit splitting of a module whose maximal vectors generate typical Vermas.
struct SemisimpleSplitting {
    std::vector<Weight> highest_weights;
    std::vector<int> dims;
    bool all_typical = false;
    bool dims_match = false;    // each U.w has the Verma dimension
    bool spans = false;         // the summands span M
    bool direct = false;        // sum of dimensions equals dim M
    bool character_conserved = false;
    bool ok() const { return all_typical && dims_match && spans && direct && character_conserved; }
};
SemisimpleSplitting decompose_semisimple(const ModulePtr& M);
// The same for T = tensor_module(A, N) with N a highest-weight module whose E's are injective below
// the top (a typical simple).  Maximal vectors are solved from their component in A (x) v_top and
// checked exactly; spanning is certified modulo p.  Other N fall back to decompose_semisimple.
SemisimpleSplitting decompose_semisimple_tensor(const ModulePtr& T, const ModulePtr& A, const ModulePtr& N);

std::vector<Weight> top_weights(const ModulePtr& M);
std::vector<Weight> socle_weights(const ModulePtr& M);

// least-denominator typical weight used to build projective sources
Weight choose_tau(const Session& S);

struct ProjectiveCover {
    Weight lambda, tau, mu;
    bool typical = false;
    std::string source;              // description of the projective source
    ModulePtr source_module;         // A (x) M^mu
    ModulePtr P;
    ModuleMap inclusion, retraction; // P -> source -> P composes to the identity
    bool retraction_ok = false;
    int hom_to_simple = 0;           // dim Hom(P, L^lambda)
    int source_summands = 0;
    int candidates = 0;              // summands of the source with top L^lambda, all isomorphic
    bool characters_determine = false;  // summands of the source with equal characters are isomorphic
    LocalityCertificate cert;
};
// P^lambda as the summand with top L^lambda of a decomposed projective source
ProjectiveCover projective_cover(const SessionPtr& S, const Weight& lambda);

struct BggLine {
    Weight mu;
    long standard = 0;     // (P : M^mu) from characters
    long composition = 0;  // [M^mu : L^lambda]
    bool equal() const { return standard == composition; }
};
struct BggReport {
    Weight lambda;
    std::vector<BggLine> lines;
    bool all_equal = false;
    int dim = 0;
    bool character_determines = false;
};
BggReport bgg_report(const ProjectiveCover& pc);

struct SelfDuality {
    ModulePtr dual;
    bool characters_equal = false;
    bool iso = false;
    ModuleMap certificate;  // dual -> module
};
SelfDuality self_duality_check(const ModulePtr& M);

}  // namespace uqh

#endif
