#include <doctest.h>

#include <algorithm>

#include "uqh/homalg.hpp"
#include "uqh/shapovalov.hpp"

using namespace uqh;

namespace {

Weight w1(Rational a) { return Weight({a}); }

std::vector<Weight> sorted(std::vector<Weight> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("hom spaces between sl2 Vermas and simples") {
    SessionPtr S = Session::create('A', 1, 4);
    ModulePtr M2 = build_verma(S, w1(2)), L2 = simple_module(S, w1(2)), L0 = simple_module(S, w1(0));
    CHECK(hom_space(M2, M2).dim() == 1);
    CHECK(hom_space(M2, L2).dim() == 1);
    CHECK(hom_space(L0, M2).dim() == 1);
    CHECK(hom_space(L2, M2).dim() == 0);
    CHECK(sorted(top_weights(M2)) == std::vector<Weight>{w1(2)});
    CHECK(sorted(socle_weights(M2)) == std::vector<Weight>{w1(0)});
    for (auto& f : hom_space(M2, M2).basis) CHECK(is_intertwiner(f, *M2, *M2));
}

TEST_CASE("simples are fixed by the duality functor") {
    SessionPtr S = Session::create('A', 2, 4, 3);
    for (auto& l : {Weight({Rational(0), Rational(0)}), Weight({Rational(1), Rational(0)}),
                    Weight({Rational(1, 3), Rational(2, 3)})}) {
        ModulePtr L = simple_module(S, l);
        ModulePtr D = dual_module(L, DualKind::Check);
        auto f = find_isomorphism(D, L);
        REQUIRE(f.has_value());
        CHECK(is_isomorphism(*f, *D, *L));
        ModuleMap g = inverse_map(*f, *D, *L);
        CHECK(is_isomorphism(g, *L, *D));
    }
    // a reducible Verma is not self-dual
    ModulePtr V = build_verma(S, Weight({Rational(0), Rational(0)}));
    CHECK_FALSE(find_isomorphism(dual_module(V, DualKind::Check), V).has_value());
}

TEST_CASE("sl2 at ell = 4: projective covers") {
    SessionPtr S = Session::for_weights('A', 1, 4, {w1(0), w1(2), w1(-2)});
    for (Rational l : {Rational(0), Rational(2), Rational(-2)}) {
        CAPTURE(rational_string(l));
        ProjectiveCover pc = projective_cover(S, w1(l));
        REQUIRE(pc.P);
        CHECK_FALSE(pc.typical);
        CHECK(pc.P->dim() == 4);
        CHECK(pc.retraction_ok);
        CHECK(pc.hom_to_simple == 1);
        CHECK(pc.cert.local);
        CHECK(sorted(top_weights(pc.P)) == std::vector<Weight>{w1(l)});
        CHECK(sorted(socle_weights(pc.P)) == std::vector<Weight>{w1(l)});
        // standard filtration: M^l and the linked Verma M^{-l-2}
        BggReport b = bgg_report(pc);
        CHECK(b.all_equal);
        long flags = 0;
        for (auto& line : b.lines) {
            CHECK(line.equal());
            flags += line.standard;
        }
        CHECK(flags == 2);
        SelfDuality sd = self_duality_check(pc.P);
        CHECK(sd.characters_equal);
        CHECK(sd.iso);
        CHECK(is_isomorphism(sd.certificate, *sd.dual, *pc.P));
    }
    ProjectiveCover t = projective_cover(S, w1(1));
    CHECK(t.typical);
    CHECK(t.P->dim() == 2);
}

TEST_CASE("locality separates projectives from sums") {
    SessionPtr S = Session::create('A', 1, 5, 3);
    ModulePtr V = build_verma(S, w1(Rational(1, 3)));
    LocalityCertificate c = locality(V);
    CHECK(c.local);
    CHECK(c.end_dim == 1);
    ModulePtr A = simple_module(S, w1(Rational(1, 3))), B = simple_module(S, w1(Rational(-1, 3)));
    ModulePtr T = tensor_module(A, B);
    CHECK_FALSE(locality(T).local);
}

TEST_CASE("decompositions conserve characters") {
    SessionPtr S = Session::create('A', 1, 4);
    ModulePtr L1 = simple_module(S, w1(1));
    ModulePtr T = tensor_module(L1, L1);
    Decomposition D = decompose(T);
    CHECK(D.character_conserved);
    CHECK(D.idempotents_ok);
    int sum = 0;
    for (auto& s : D.summands) {
        sum += s.module->dim();
        CHECK(s.cert.local);
    }
    CHECK(sum == T->dim());
    Decomposition Dr = decompose(T, true);
    CHECK(Dr.summands.size() == D.summands.size());
}

TEST_CASE("generic tensor products split into typical simples") {
    // highest weights are -1/3 - 2k: never half-integers, so all typical
    SessionPtr S = Session::create('A', 1, 5, 6);
    ModulePtr A = simple_module(S, w1(Rational(1, 3))), B = simple_module(S, w1(Rational(-2, 3)));
    ModulePtr T = tensor_module(A, B);
    SemisimpleSplitting fast = decompose_semisimple_tensor(T, A, B), slow = decompose_semisimple(T);
    CHECK(fast.ok());
    CHECK(slow.ok());
    CHECK(sorted(fast.highest_weights) == sorted(slow.highest_weights));
    CHECK(fast.highest_weights.size() == 5);

    SessionPtr S2 = Session::create('A', 2, 3, 6);
    Weight a({Rational(1, 6), Rational(1, 6)}), b({Rational(1, 6), Rational(5, 6)});
    REQUIRE(is_typical(S2->roots(), a));
    ModulePtr A2 = simple_module(S2, a), B2 = simple_module(S2, b);
    SemisimpleSplitting sp = decompose_semisimple_tensor(tensor_module(A2, B2), A2, B2);
    CHECK(sp.character_conserved);
    CHECK(sp.highest_weights.size() == 27);
}

TEST_CASE("the splitting test refuses non-semisimple products") {
    SessionPtr S = Session::create('A', 1, 4);
    ModulePtr L1 = simple_module(S, w1(1));
    ModulePtr T = tensor_module(L1, L1);
    CHECK_FALSE(decompose_semisimple_tensor(T, L1, L1).ok());
    CHECK_FALSE(decompose_semisimple(T).ok());
}

TEST_CASE("minimal polynomials") {
    FieldContext F = FieldContext::create(4);
    SparseMatrix J(2, 2);
    J.add(0, 0, F.q());
    J.add(1, 1, F.q());
    J.add(0, 1, F.one());
    Polynomial p = minimal_polynomial(J, F);
    REQUIRE(p.size() == 3);
    auto c = single_root(p, F);
    REQUIRE(c.has_value());
    CHECK(*c == F.q());
    SparseMatrix D = diagonal({F.one(), F.from_int(2)});
    CHECK_FALSE(single_root(minimal_polynomial(D, F), F).has_value());
}
