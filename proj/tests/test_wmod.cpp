#include <doctest.h>

#include <set>

#include "uqh/wmod.hpp"

using namespace uqh;

namespace {

Weight w1(Rational a) { return Weight({a}); }
Weight w2(Rational a, Rational b) { return Weight({a, b}); }

// [x]_q = 0 iff q^{2x} = 1 iff 2x/ell is an integer
bool qint_vanishes(const Rational& x, int ell) { return is_integer(x * 2 / ell); }

// sl2: F^k v is singular when [k][lambda + 1 - k] = 0, and [k] != 0 below r
int sl2_simple_dim(const Rational& lambda, int ell) {
    int r = ell % 2 ? ell : ell / 2;
    for (int k = 1; k < r; ++k)
        if (qint_vanishes(lambda + 1 - k, ell)) return k;
    return r;
}

}  // namespace

TEST_CASE("sl2 simples have the dimension of the first singular vector") {
    for (int ell : {3, 4, 5, 6, 8}) {
        std::vector<Rational> ls = {0, 1, 2, 3, -1, -2, 5, Rational(1, 2), Rational(1, 3), Rational(-2, 3)};
        SessionPtr S = Session::for_weights('A', 1, ell, {w1(Rational(1, 2)), w1(Rational(1, 3))});
        for (auto& l : ls) {
            CAPTURE(ell);
            CAPTURE(rational_string(l));
            ModulePtr L = simple_module(S, w1(l));
            CHECK(L->dim() == sl2_simple_dim(l, ell));
            CHECK(module_invariant_violations(*L).empty());
        }
    }
}

TEST_CASE("Verma characters") {
    for (auto [t, ell] : {std::pair{'A', 4}, std::pair{'A', 5}, std::pair{'B', 3}}) {
        SessionPtr S = Session::create(t, 2, ell, 3);
        const RootDatum& R = S->roots();
        for (auto& l : {w2(0, 0), w2(Rational(1, 3), 2), w2(-1, Rational(2, 3))}) {
            ModulePtr V = build_verma(S, l);
            CHECK(V->dim() == R.pbw_dimension());
            CHECK(character(*V) == verma_character(R, l));
            CHECK(character_mass(character(*V)) == V->dim());
            CHECK(module_invariant_violations(*V).empty());
            // the top weight space is a line and every weight lies below it
            CHECK(V->block_dim(V->block_of(l)) == 1);
            for (auto& w : V->weights) CHECK(weight_geq(R, l, w));
        }
    }
}

TEST_CASE("tensor and dual characters") {
    SessionPtr S = Session::create('A', 2, 4, 3);
    ModulePtr A = simple_module(S, w2(1, 0)), B = build_verma(S, w2(Rational(1, 3), 0));
    ModulePtr T = tensor_module(A, B);
    CHECK(T->dim() == A->dim() * B->dim());
    CHECK(character(*T) == character_product(character(*A), character(*B)));
    CHECK(module_invariant_violations(*T).empty());
    ModulePtr Ds = dual_module(B, DualKind::Star), Dc = dual_module(B, DualKind::Check);
    Character neg;
    for (auto& [w, m] : character(*B)) neg[-w] += m;
    CHECK(character(*Ds) == neg);
    CHECK(character(*Dc) == character(*B));
    CHECK(module_invariant_violations(*Ds).empty());
    CHECK(module_invariant_violations(*Dc).empty());
}

TEST_CASE("composition factors of small Vermas") {
    SessionPtr S = Session::create('A', 1, 4);
    ModulePtr V = build_verma(S, w1(2));
    auto cf = composition_factors(V);
    std::multiset<Weight> got(cf.begin(), cf.end()), want = {w1(2), w1(0)};
    CHECK(got == want);
    auto cc = composition_factors_by_character(V);
    CHECK(std::multiset<Weight>(cc.begin(), cc.end()) == want);
    // typical: irreducible
    CHECK(composition_factors(build_verma(S, w1(1))).size() == 1);

    SessionPtr S2 = Session::create('A', 2, 3, 3);
    for (auto& l : {w2(0, 0), w2(1, 1), w2(2, 0), w2(Rational(1, 3), 0)}) {
        ModulePtr M = build_verma(S2, l);
        auto a = composition_factors(M), b = composition_factors_by_character(M);
        CHECK(std::multiset<Weight>(a.begin(), a.end()) == std::multiset<Weight>(b.begin(), b.end()));
        long mass = 0;
        for (auto& w : a) mass += simple_module(S2, w)->dim();
        CHECK(mass == M->dim());
    }
}

TEST_CASE("radical, submodule and quotient") {
    SessionPtr S = Session::create('A', 1, 4);
    ModulePtr V = build_verma(S, w1(2));
    Subspace rad = highest_weight_radical(*V, w1(2));
    CHECK(rad.dim() == 1);
    CHECK(is_submodule(*V, rad));
    auto sub = submodule(V, rad);
    auto quo = quotient_module(V, rad);
    CHECK(sub.module->dim() == 1);
    CHECK(quo.module->dim() == 1);
    CHECK(is_intertwiner(sub.map, *sub.module, *V));
    CHECK(is_intertwiner(quo.map, *V, *quo.module));
    CHECK(is_isomorphism(identity_map(*V), *V, *V));
    // maximal vectors: the top and F v
    CHECK(maximal_vectors(*V).dim() == 2);
    CHECK(maximal_vectors(*build_verma(S, w1(1))).dim() == 1);
}

TEST_CASE("submodule generation") {
    SessionPtr S = Session::create('A', 2, 4, 3);
    ModulePtr V = build_verma(S, w2(0, 0));
    Vector top(V->dim(), S->field().zero());
    top[0] = S->field().one();
    CHECK(generate_submodule(*V, {top}).dim() == V->dim());
    Subspace mv = maximal_vectors(*V);
    CHECK(is_submodule(*V, highest_weight_radical(*V, w2(0, 0))));
    CHECK(mv.dim() >= 1);
}

TEST_CASE("one-dimensional modules") {
    SessionPtr S = Session::create('A', 2, 3);
    ModulePtr T = trivial_module(S);
    CHECK(T->dim() == 1);
    CHECK(character(*T) == Character{{w2(0, 0), 1}});
    ModulePtr L = simple_module(S, w2(0, 0));
    CHECK(L->dim() == 1);
}

TEST_CASE("sessions must agree") {
    SessionPtr S = Session::create('A', 1, 4), S2 = Session::create('A', 1, 4);
    CHECK_THROWS_AS(tensor_module(build_verma(S, w1(0)), build_verma(S2, w1(0))), Error);
}

TEST_CASE("fields are sized from the declared weights") {
    SessionPtr S = Session::for_weights('A', 2, 4, {w2(Rational(1, 3), 0)});
    CHECK(S->field().has_q_pow(Rational(1, 3)));
    CHECK_NOTHROW(build_verma(S, w2(Rational(1, 3), 0)));
    SessionPtr T = Session::create('A', 1, 4);
    CHECK_THROWS_AS(build_verma(T, w1(Rational(1, 3))), Error);
    SessionPtr B = Session::with_bound('A', 1, 4, 5);
    CHECK_NOTHROW(build_verma(B, w1(Rational(2, 5))));
}
