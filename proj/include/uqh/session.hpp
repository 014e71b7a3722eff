#ifndef UQH_SESSION_HPP
#define UQH_SESSION_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "uqh/algebra.hpp"
#include "uqh/matrix.hpp"
#include "uqh/rootdata.hpp"

namespace uqh {

// A noncommutative polynomial in F_1..F_n: F-index word -> coefficient.
using FWord = std::vector<int>;
using FPolynomial = std::map<FWord, Cyclotomic>;

// Graded pieces of the restricted negative part, computed once per session.
struct NegativePart {
    struct Piece {
        RootVec degree;
        std::vector<std::pair<int, int>> provenance;  // basis vector = F_j * parent
        std::vector<FWord> words;
        int offset = 0;  // position of the first basis vector in the flat basis
    };
    std::vector<Piece> pieces;            // ordered by height, then degree
    std::map<RootVec, int> piece_index;
    // left[j][p] : coordinates of F_j * (basis of piece p) in the piece of degree+alpha_j
    std::vector<std::vector<SparseMatrix>> left;
    std::vector<FPolynomial> root_polys;  // pure-F form of X_{-beta_k}
    int dim = 0;

    int find(const RootVec& d) const {
        auto it = piece_index.find(d);
        return it == piece_index.end() ? -1 : it->second;
    }
};

class Session {
public:
    // Field sized by an explicit exponent denominator (see FieldContext::create).
    static std::shared_ptr<const Session> create(char type, int rank, int ell, long exponent_denominator = 1);
    // Field sized so that every weight in `declared`, all pairings among them and with rho,
    // and all K-actions are representable.
    static std::shared_ptr<const Session> for_weights(char type, int rank, int ell, const std::vector<Weight>& declared);
    // Field sized from a denominator bound D for weights (braided sessions use det(A) D^2).
    static std::shared_ptr<const Session> with_bound(char type, int rank, int ell, long D);

    const RootDatum& roots() const { return R_; }
    const FieldContext& field() const { return F_; }
    int rank() const { return R_.rank(); }
    long exponent_denominator() const { return E_; }

    // cached symbolic root vectors
    const AlgebraElement& root_vector(int k, int sign) const;
    const NegativePart& negative_part() const;

    Cyclotomic q_pow(const Rational& x) const { return F_.q_pow(x); }
    // q^{<gamma, mu>} as the eigenvalue of K_gamma on weight mu
    Cyclotomic k_eigenvalue(const RootVec& gamma, const Weight& mu) const;

private:
    RootDatum R_;
    FieldContext F_;
    long E_ = 1;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, AlgebraElement> rv_;
    mutable std::unique_ptr<NegativePart> neg_;
};

using SessionPtr = std::shared_ptr<const Session>;

long exponent_denominator_for(const RootDatum& R, const std::vector<Weight>& declared);

}  // namespace uqh

#endif
