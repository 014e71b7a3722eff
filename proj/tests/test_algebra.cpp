#include <doctest.h>

#include "uqh/algebra.hpp"
#include "uqh/suites.hpp"
#include "uqh/wmod.hpp"

using namespace uqh;

namespace {

std::vector<Generator> generators(int n) {
    std::vector<Generator> g;
    for (int i = 0; i < n; ++i) {
        g.push_back(Generator::e(i));
        g.push_back(Generator::f(i));
        g.push_back(Generator::h(i));
        g.push_back(Generator::k(unit_root(n, i)));
    }
    return g;
}

// a few modules per cell, small enough for repeated evaluation
std::vector<ModulePtr> modules(const SessionPtr& S) {
    int n = S->rank();
    Weight w1 = Weight::zero(n), w2 = Weight::zero(n);
    w2.h[0] = Rational(1, 3);
    return {build_verma(S, w1), build_verma(S, w2), simple_module(S, w1)};
}

}  // namespace

TEST_CASE("generators print") {
    CHECK(Generator::e(0).str() == "E1");
    CHECK(Generator::f(1).str() == "F2");
    CHECK_FALSE(Generator::k({1, 0}).str().empty());
}

TEST_CASE("element arithmetic is the free algebra") {
    FieldContext F = FieldContext::create(4);
    auto E = AlgebraElement::E(F, 0), Fm = AlgebraElement::Fm(F, 0);
    CHECK((E + Fm - E) == Fm);
    CHECK((E * Fm).size() == 1);
    CHECK(commutator(E, Fm).size() == 2);
    CHECK((E.pow(3)).size() == 1);
    CHECK((E.scaled(F.zero())).is_zero());
    CHECK(counit(AlgebraElement::one(F)).is_one());
    CHECK(counit(E).is_zero());
    CHECK(counit(AlgebraElement::K(F, {3})).is_one());
}

TEST_CASE("antipode and counit satisfy the Hopf axiom") {
    for (auto [t, n, ell] : {std::tuple{'A', 1, 4}, std::tuple{'A', 2, 3}, std::tuple{'B', 2, 5}}) {
        SessionPtr S = Session::create(t, n, ell, 3);
        const RootDatum& R = S->roots();
        const FieldContext& F = S->field();
        for (auto& M : modules(S)) {
            for (auto& g : generators(n)) {
                CAPTURE(g.str());
                SparseMatrix lhs(M->dim(), M->dim()), rhs(M->dim(), M->dim());
                for (auto& [a, b] : coproduct_image(R, F, g)) {
                    lhs = lhs + evaluate(symmetry_map(R, Symmetry::Antipode, a) * b, *M);
                    rhs = rhs + evaluate(a * symmetry_map(R, Symmetry::Antipode, b), *M);
                }
                SparseMatrix eps = SparseMatrix::identity(F, M->dim()).scaled(counit(AlgebraElement::gen(F, g)));
                CHECK(lhs == eps);
                CHECK(rhs == eps);
            }
        }
    }
}

TEST_CASE("omega is an involutive automorphism") {
    SessionPtr S = Session::create('A', 2, 4, 3);
    const RootDatum& R = S->roots();
    const FieldContext& F = S->field();
    ModulePtr M = build_verma(S, Weight({Rational(1, 3), Rational(0)}));
    auto gens = generators(2);
    for (auto& a : gens)
        for (auto& b : gens) {
            auto x = AlgebraElement::gen(F, a), y = AlgebraElement::gen(F, b);
            CHECK(evaluate(symmetry_map(R, Symmetry::Omega, x * y), *M) ==
                  evaluate(symmetry_map(R, Symmetry::Omega, x) * symmetry_map(R, Symmetry::Omega, y), *M));
        }
    for (auto& a : gens) {
        auto x = AlgebraElement::gen(F, a);
        CHECK(evaluate(symmetry_map(R, Symmetry::Omega, symmetry_map(R, Symmetry::Omega, x)), *M) == evaluate(x, *M));
    }
}

TEST_CASE("K normal form does not change the operator") {
    SessionPtr S = Session::create('B', 2, 3, 3);
    const RootDatum& R = S->roots();
    const FieldContext& F = S->field();
    ModulePtr M = build_verma(S, Weight::zero(2));
    auto x = AlgebraElement::K(F, {1, -1}) * AlgebraElement::E(F, 0) * AlgebraElement::Fm(F, 1) *
             AlgebraElement::K(F, {0, 2}) * AlgebraElement::E(F, 1);
    CHECK(evaluate(k_normal_form(R, x), *M) == evaluate(x, *M));
}

TEST_CASE("simple root vectors are the Chevalley generators") {
    for (char t : {'A', 'B'}) {
        SessionPtr S = Session::create(t, 2, 5, 3);
        const RootDatum& R = S->roots();
        ModulePtr M = build_verma(S, Weight::zero(2));
        for (int i = 0; i < 2; ++i) {
            int k = R.simple_index(i);
            CHECK(evaluate(S->root_vector(k, 1), *M) == M->E[i]);
            CHECK(evaluate(S->root_vector(k, -1), *M) == M->F[i]);
        }
    }
}

TEST_CASE("braid automorphisms are multiplicative") {
    SessionPtr S = Session::create('A', 2, 4, 3);
    const RootDatum& R = S->roots();
    const FieldContext& F = S->field();
    ModulePtr M = build_verma(S, Weight({Rational(1, 3), Rational(1, 3)}));
    auto x = AlgebraElement::E(F, 0), y = AlgebraElement::Fm(F, 1) + AlgebraElement::H(F, 0);
    for (int i = 0; i < 2; ++i)
        CHECK(evaluate(braid_apply(R, i, x * y), *M) == evaluate(braid_apply(R, i, x) * braid_apply(R, i, y), *M));
    // T_i maps E_j (j != i) to an element of weight s_i(alpha_j)
    auto img = braid_apply(R, 0, AlgebraElement::H(F, 1));
    CHECK(evaluate(img, *M) == evaluate(AlgebraElement::H(F, 1) + AlgebraElement::H(F, 0), *M));
}

TEST_CASE("relation and braid suites pass on honest modules") {
    for (auto [t, ell] : {std::pair{'A', 3}, std::pair{'B', 3}, std::pair{'A', 5}}) {
        SessionPtr S = Session::create(t, 2, ell, 3);
        for (auto& M : modules(S)) {
            CHECK(relation_violations(M).empty());
            CHECK(braid_violations(M).empty());
            CHECK(braid_image_violations(M).empty());
        }
    }
}

TEST_CASE("the relation suite notices a broken module") {
    SessionPtr S = Session::create('A', 2, 3, 3);
    ModulePtr V = build_verma(S, Weight({Rational(1, 3), Rational(0)}));
    auto E = V->E;
    E[0] = E[0].scaled(S->field().from_int(2));
    ModulePtr bad = make_module(S, V->basis_weights, E, V->F);
    auto v = relation_violations(bad);
    CHECK_FALSE(v.empty());
}

TEST_CASE("degenerate divided powers are refused") {
    RootDatum R = RootDatum::build('B', 2, 4);
    FieldContext F = FieldContext::create(4);
    int longi = R.d(0) == 2 ? 0 : 1;
    CHECK_THROWS_AS(cartan_commutator(R, F, longi), Error);
    try {
        q_difference(R, F, 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateParameter);
    }
    CHECK_NOTHROW(cartan_commutator(R, F, 1 - longi));
}
