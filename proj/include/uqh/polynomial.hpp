#ifndef UQH_POLYNOMIAL_HPP
#define UQH_POLYNOMIAL_HPP

#include "uqh/matrix.hpp"

namespace uqh {

// coefficients low degree first, monic when produced by minimal_polynomial
using Polynomial = std::vector<Cyclotomic>;

Polynomial minimal_polynomial(const SparseMatrix& a, const FieldContext& F);
// c with p = (x - c)^deg p, if p has that form
std::optional<Cyclotomic> single_root(const Polynomial& p, const FieldContext& F);
std::string polynomial_str(const Polynomial& p);

}  // namespace uqh

#endif
