#include <doctest.h>

#include <map>

#include "uqh/shapovalov.hpp"

using namespace uqh;

namespace {

bool vanishes(const Rational& x, int d, int ell) { return is_integer(x * 2 * d / ell); }

// independent typicality: a root is atypical when 2(lambda_alpha - k d) in ell Z for some 1 <= k < r_alpha
bool typical_oracle(const RootDatum& R, const Weight& l) {
    for (int b = 0; b < R.num_positive(); ++b) {
        Rational la = R.pairing(R.root(b), l + R.rho());
        for (int k = 1; k < R.r_alpha(b); ++k)
            if (is_integer((la - k * R.d_alpha(b)) * 2 / R.ell())) return false;
    }
    return true;
}

std::vector<Weight> sample(int n, int den) {
    std::vector<Weight> out;
    for (int a = -2; a <= 3; ++a)
        for (int b = 0; b < (n == 2 ? 3 : 1); ++b) {
            Weight w = Weight::zero(n);
            w.h[0] = Rational(a, den);
            if (n == 2) w.h[1] = Rational(b * (den == 1 ? 1 : 2), den);
            out.push_back(w);
        }
    return out;
}

}  // namespace

TEST_CASE("sl2 Gram entries are products of quantum integers") {
    for (int ell : {4, 5, 8}) {
        SessionPtr S = Session::for_weights('A', 1, ell, {Weight({Rational(1, 2)})});
        const FieldContext& F = S->field();
        for (Rational l : {Rational(0), Rational(1), Rational(3), Rational(1, 2), Rational(-2)}) {
            GramTables g = contravariant_form(build_verma(S, Weight({l})));
            for (auto& p : g.pieces) {
                int k = p.eta[0];
                Cyclotomic want = F.one();
                for (int j = 1; j <= k; ++j) want *= F.bracket(Rational(j)) * F.bracket(l + 1 - j);
                CHECK(p.word_gram(0, 0) == want);
                CHECK(p.det.is_zero() == want.is_zero());
            }
        }
    }
}

TEST_CASE("sl2 at ell = 4: weight 2 is atypical with witness k = 1") {
    RootDatum R = RootDatum::build('A', 1, 4);
    Typicality t = typicality(R, Weight({Rational(2)}));
    CHECK_FALSE(t.typical);
    REQUIRE(t.roots.size() == 1);
    CHECK(t.roots[0].lambda_alpha == 3);
    CHECK(t.roots[0].witness_k == 1);
    CHECK(is_typical(R, Weight({Rational(1)})));
}

TEST_CASE("typicality matches the congruence oracle") {
    for (auto [t, n, ell] : {std::tuple{'A', 1, 3}, std::tuple{'A', 2, 4}, std::tuple{'A', 2, 5}, std::tuple{'B', 2, 3},
                             std::tuple{'B', 2, 8}, std::tuple{'A', 2, 6}}) {
        RootDatum R = RootDatum::build(t, n, ell);
        for (int den : {1, 2, 3})
            for (auto& l : sample(n, den)) {
                CAPTURE(l.str());
                Typicality ty = typicality(R, l);
                CHECK(ty.typical == typical_oracle(R, l));
                for (auto& rt : ty.roots) CHECK(rt.typical_by_congruence == rt.typical_by_sets);
            }
    }
}

TEST_CASE("Gram radical vanishes exactly on typical weights") {
    for (auto [t, ell] : {std::pair{'A', 3}, std::pair{'A', 4}, std::pair{'B', 3}}) {
        SessionPtr S = Session::create(t, 2, ell, 3);
        const RootDatum& R = S->roots();
        for (auto& l : sample(2, 3)) {
            CAPTURE(l.str());
            ModulePtr V = build_verma(S, l);
            GramTables g = contravariant_form(V);
            CHECK((g.radical_total() == 0) == typical_oracle(R, l));
            Subspace rad = radical_submodule(V, g);
            CHECK(rad.dim() == g.radical_total());
            CHECK(V->dim() - rad.dim() == simple_module(S, l)->dim());
        }
    }
}

TEST_CASE("closed determinant has the same zeros and a weight-independent ratio") {
    for (auto [t, ell] : {std::pair{'A', 4}, std::pair{'A', 5}, std::pair{'B', 3}}) {
        SessionPtr S = Session::create(t, 2, ell, 3);
        std::map<RootVec, Cyclotomic> ratio;
        for (auto& l : sample(2, 3)) {
            GramTables g = contravariant_form(build_verma(S, l));
            for (auto& p : g.pieces) {
                Cyclotomic c = gram_det_closed(*S, l, p.eta);
                CAPTURE(l.str());
                CAPTURE(rootvec_str(p.eta));
                CHECK(c.is_zero() == p.det.is_zero());
                if (c.is_zero()) continue;
                Cyclotomic r = p.det / c;
                auto it = ratio.find(p.eta);
                if (it == ratio.end()) ratio[p.eta] = r;
                else CHECK(it->second == r);
            }
        }
        CHECK_FALSE(ratio.empty());
    }
}

TEST_CASE("Gram matrices are symmetric in the PBW basis") {
    SessionPtr S = Session::create('A', 2, 5, 3);
    GramTables g = contravariant_form(build_verma(S, Weight({Rational(1, 3), Rational(2, 3)})));
    for (auto& p : g.pieces) {
        CHECK(p.rank + p.radical_dim == p.gram.rows());
        CHECK(p.exponents.size() == static_cast<size_t>(p.gram.rows()));
        for (int i = 0; i < p.gram.rows(); ++i)
            for (int j = 0; j < i; ++j) CHECK(p.gram(i, j) == p.gram(j, i));
    }
}
