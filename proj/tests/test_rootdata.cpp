#include <doctest.h>

#include <functional>
#include <numeric>
#include <set>

#include "uqh/rootdata.hpp"

using namespace uqh;

namespace {

// positive roots as the Weyl orbit of the simple roots, closed under all s_i
std::set<RootVec> orbit_roots(const RootDatum& R) {
    int n = R.rank();
    std::set<RootVec> all, frontier;
    for (int i = 0; i < n; ++i) frontier.insert(unit_root(n, i));
    while (!frontier.empty()) {
        std::set<RootVec> next;
        for (auto& g : frontier) {
            if (!all.insert(g).second) continue;
            for (int i = 0; i < n; ++i) {
                RootVec h = g;
                int c = 0;
                for (int j = 0; j < n; ++j) c += R.a(i, j) * g[j];  // alpha_i^vee(g)
                h[i] -= c;
                if (!all.count(h)) next.insert(h);
            }
        }
        frontier = next;
    }
    std::set<RootVec> pos;
    for (auto& g : all)
        if (rootvec_nonneg(g)) pos.insert(g);
    return pos;
}

long brute(const RootDatum& R, const RootVec& eta) {
    long c = 0;
    int N = R.num_positive();
    std::function<void(int, RootVec)> go = [&](int k, RootVec rest) {
        if (k == N) {
            c += std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; });
            return;
        }
        for (int j = 0; j < R.r_alpha(k); ++j) {
            RootVec r2 = rootvec_sub(rest, rootvec_scale(R.root(k), j));
            if (!rootvec_nonneg(r2)) break;
            go(k + 1, r2);
        }
    };
    go(0, eta);
    return c;
}

long inner(const RootDatum& R, const RootVec& x, const RootVec& y) {
    long s = 0;
    for (int i = 0; i < R.rank(); ++i)
        for (int j = 0; j < R.rank(); ++j) s += x[i] * R.d(i) * R.a(i, j) * y[j];
    return s;
}

struct Cell {
    char t;
    int n, ell;
};
const Cell grid[] = {{'A', 1, 3}, {'A', 1, 4}, {'A', 2, 3}, {'A', 2, 5}, {'A', 3, 4}, {'B', 2, 3}, {'B', 2, 5},
                     {'B', 2, 8}, {'C', 3, 5}, {'G', 2, 5}, {'G', 2, 6}, {'D', 4, 3}};

}  // namespace

TEST_CASE("Cartan data is symmetrizable with the expected determinant") {
    std::map<std::string, long> det = {{"A1", 2}, {"A2", 3}, {"A3", 4}, {"B2", 2}, {"C3", 2}, {"G2", 1}, {"D4", 4}};
    for (auto& c : grid) {
        RootDatum R = RootDatum::build(c.t, c.n, c.ell);
        CAPTURE(R.name());
        for (int i = 0; i < c.n; ++i) {
            CHECK(R.a(i, i) == 2);
            for (int j = 0; j < c.n; ++j) {
                CHECK(R.d(i) * R.a(i, j) == R.d(j) * R.a(j, i));
                if (i != j) CHECK(R.a(i, j) <= 0);
            }
        }
        CHECK(*std::min_element(R.symmetrizers().begin(), R.symmetrizers().end()) == 1);
        CHECK(R.cartan_det() == det[R.name()]);
    }
}

TEST_CASE("braid orders follow the product a_ij a_ji") {
    const int order[] = {2, 3, 4, 6};
    for (auto& c : grid) {
        RootDatum R = RootDatum::build(c.t, c.n, c.ell);
        for (int i = 0; i < c.n; ++i)
            for (int j = 0; j < c.n; ++j)
                if (i != j) CHECK(R.m(i, j) == order[R.a(i, j) * R.a(j, i)]);
    }
}

TEST_CASE("positive roots match the Weyl orbit") {
    std::map<std::string, int> count = {{"A1", 1}, {"A2", 3}, {"A3", 6}, {"B2", 4}, {"C3", 9}, {"G2", 6}, {"D4", 12}};
    for (auto& c : grid) {
        RootDatum R = RootDatum::build(c.t, c.n, c.ell);
        CAPTURE(R.name());
        std::set<RootVec> got(R.positive_roots().begin(), R.positive_roots().end());
        CHECK(got == orbit_roots(R));
        CHECK(R.num_positive() == count[R.name()]);
        for (int k = 0; k < R.num_positive(); ++k) CHECK(R.root_index(R.root(k)) == k);
        CHECK(R.root_index(rootvec_scale(unit_root(c.n, 0), 2)) == -1);
    }
}

TEST_CASE("convex order comes from the reduced word of w0") {
    for (auto& c : grid) {
        RootDatum R = RootDatum::build(c.t, c.n, c.ell);
        CAPTURE(R.name());
        const auto& w = R.w0_word();
        REQUIRE(static_cast<int>(w.size()) == R.num_positive());
        for (size_t k = 0; k < w.size(); ++k) {
            RootVec b = unit_root(c.n, w[k]);
            for (size_t j = k; j-- > 0;) b = R.reflect(w[j], b);
            CHECK(b == R.root(static_cast<int>(k)));
        }
        for (int i = 0; i < c.n; ++i) CHECK(R.root(R.simple_index(i)) == unit_root(c.n, i));
    }
}

TEST_CASE("reflections are involutions fixing the form") {
    RootDatum R = RootDatum::build('G', 2, 5);
    for (auto& g : R.positive_roots())
        for (int i = 0; i < 2; ++i) {
            CHECK(R.reflect(i, R.reflect(i, g)) == g);
            CHECK(inner(R, R.reflect(i, g), R.reflect(i, g)) == inner(R, g, g));
        }
    CHECK(R.reflect(0, unit_root(2, 0)) == RootVec{-1, 0});
}

TEST_CASE("root lengths and truncation orders") {
    for (auto& c : grid) {
        RootDatum R = RootDatum::build(c.t, c.n, c.ell);
        CAPTURE(R.name());
        CAPTURE(c.ell);
        int r = c.ell % 2 ? c.ell : c.ell / 2;
        CHECK(R.r() == r);
        long pbw = 1;
        for (int k = 0; k < R.num_positive(); ++k) {
            long len = inner(R, R.root(k), R.root(k));
            CHECK(len % 2 == 0);
            CHECK(R.d_alpha(k) == len / 2);
            CHECK(R.r_alpha(k) == r / std::gcd(R.d_alpha(k), r));
            pbw *= R.r_alpha(k);
        }
        CHECK(R.pbw_dimension() == pbw);
    }
}

TEST_CASE("small instances") {
    RootDatum A = RootDatum::build('A', 1, 4);
    CHECK(A.r() == 2);
    CHECK(A.num_positive() == 1);
    CHECK(A.pbw_dimension() == 2);
    // long roots of G2 at ell = 6 are not truncated beyond order 1
    RootDatum G = RootDatum::build('G', 2, 6);
    CHECK(G.r() == 3);
    CHECK(G.pbw_dimension() == 27);
    RootDatum B = RootDatum::build('B', 2, 4);
    CHECK(B.pbw_dimension() == 4);
}

TEST_CASE("truncated partitions against enumeration") {
    for (auto& c : grid) {
        RootDatum R = RootDatum::build(c.t, c.n, c.ell);
        if (R.pbw_dimension() > 200000) continue;
        CAPTURE(R.name());
        std::vector<int> top(c.n, 0);
        for (int k = 0; k < R.num_positive(); ++k)
            for (int i = 0; i < c.n; ++i) top[i] += (R.r_alpha(k) - 1) * R.root(k)[i];
        long total = 0;
        std::vector<int> eta(c.n, 0);
        for (;;) {
            long p = partition_count(R, eta);
            CHECK(p == brute(R, eta));
            CHECK(static_cast<long>(partitions(R, eta).size()) == p);
            total += p;
            int i = 0;
            while (i < c.n && ++eta[i] > top[i]) eta[i++] = 0;
            if (i == c.n) break;
        }
        CHECK(total == R.pbw_dimension());
    }
}

TEST_CASE("rho and the pairing") {
    for (auto& c : grid) {
        RootDatum R = RootDatum::build(c.t, c.n, c.ell);
        RootVec sum(c.n, 0);
        for (auto& b : R.positive_roots()) sum = rootvec_add(sum, b);
        CHECK(R.root_weight(sum) == R.rho().scaled(Rational(2)));
        for (int i = 0; i < c.n; ++i)
            for (int j = 0; j < c.n; ++j) {
                Weight ai = R.root_weight(unit_root(c.n, i)), aj = R.root_weight(unit_root(c.n, j));
                CHECK(R.pairing(ai, aj) == Rational(R.d(i) * R.a(i, j)));
                CHECK(R.pairing(unit_root(c.n, i), aj) == Rational(R.d(i) * R.a(i, j)));
            }
        Weight l = Weight::zero(c.n);
        for (int i = 0; i < c.n; ++i) l.h[i] = Rational(i + 1, 3);
        for (int k = 0; k < R.num_positive(); ++k)
            CHECK(R.lambda_alpha(l, k) == R.pairing(R.root(k), l + R.rho()));
        std::vector<Rational> co = R.root_coordinates(R.root_weight(RootVec(c.n, 2)));
        for (auto& x : co) CHECK(x == 2);
        CHECK(R.in_root_lattice(R.root_weight(unit_root(c.n, 0))));
    }
}

TEST_CASE("weights parse from exact rationals only") {
    Weight w = parse_weight("1/3,-2", 2);
    CHECK(w.h[0] == Rational(1, 3));
    CHECK(w.h[1] == Rational(-2));
    CHECK(w.str() == "(1/3,-2)");
    CHECK(w.denominator() == 3);
    CHECK_THROWS_AS(parse_weight("1,2", 3), Error);
    CHECK_THROWS_AS(parse_weight("0.5", 1), Error);
    CHECK_THROWS_AS(parse_weight("x", 1), Error);
}

TEST_CASE("bad parameters are rejected") {
    CHECK_THROWS_AS(RootDatum::build('A', 0, 4), Error);
    CHECK_THROWS_AS(RootDatum::build('Q', 2, 4), Error);
    CHECK_THROWS_AS(RootDatum::build('A', 2, 2), Error);
    CHECK_THROWS_AS(RootDatum::build('G', 3, 5), Error);
}
