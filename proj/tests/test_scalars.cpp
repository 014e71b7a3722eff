#include <doctest.h>

#include <complex>
#include <numeric>
#include <random>

#include "uqh/matrix.hpp"
#include "uqh/scalars.hpp"

using namespace uqh;
using cd = std::complex<double>;

namespace {

// value at zeta_N = exp(2 pi i / N)
cd numeric(const Cyclotomic& x, int N) {
    cd z = std::polar(1.0, 2 * M_PI / N), acc = 0, p = 1;
    for (auto& c : x.coefficients()) {
        acc += p * static_cast<double>(c);
        p *= z;
    }
    return acc;
}

int euler_phi(int n) {
    int c = 0;
    for (int k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++c;
    return c;
}

Cyclotomic random_element(const FieldContext& F, std::mt19937& g) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    std::vector<Rational> c(F.phi());
    for (auto& x : c) x = Rational(num(g), den(g));
    return F.from_coefficients(c);
}

bool close(cd a, cd b) { return std::abs(a - b) < 1e-9 * (1 + std::abs(b)); }

}  // namespace

TEST_CASE("rationals print as p/q and parse back") {
    CHECK(rational_string(Rational(3)) == "3/1");
    CHECK(rational_string(Rational(-2, 6)) == "-1/3");
    CHECK(parse_rational("4/6") == Rational(2, 3));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK_THROWS_AS(parse_rational("0.5"), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("field order follows lcm(2 ell, ell E)") {
    for (int ell : {3, 4, 5, 6, 8})
        for (long E : {1L, 2L, 3L, 6L}) {
            FieldContext F = FieldContext::create(ell, E);
            long want = std::lcm(2L * ell, ell * E);
            CHECK(F.N() == want);
            CHECK(F.phi() == euler_phi(F.N()));
        }
    CHECK(FieldContext::create(4).r() == 2);
    CHECK(FieldContext::create(5).r() == 5);
}

TEST_CASE("interned fields compare equal") {
    CHECK(FieldContext::create(6, 3) == FieldContext::create(6, 3));
    CHECK(FieldContext::create(3, 1).N() == FieldContext::create(3, 2).N());
}

TEST_CASE("arithmetic agrees with complex evaluation") {
    std::mt19937 g(7);
    for (int N : {6, 8, 12, 18, 24, 30}) {
        FieldContext F = FieldContext::with_order(N / 2, N);
        for (int t = 0; t < 20; ++t) {
            Cyclotomic a = random_element(F, g), b = random_element(F, g);
            CHECK(close(numeric(a + b, N), numeric(a, N) + numeric(b, N)));
            CHECK(close(numeric(a * b, N), numeric(a, N) * numeric(b, N)));
            if (!b.is_zero()) {
                CHECK(close(numeric(a / b, N), numeric(a, N) / numeric(b, N)));
                CHECK((b * b.inv()).is_one());
            }
            CHECK(close(numeric(a.conj(), N), std::conj(numeric(a, N))));
        }
    }
}

TEST_CASE("zeta has exact order N") {
    for (int ell : {3, 4, 5, 8}) {
        FieldContext F = FieldContext::create(ell, 3);
        int N = F.N();
        CHECK(F.zeta(N).is_one());
        for (int k = 1; k < N; ++k) CHECK_FALSE(F.zeta(k).is_one());
        CHECK(F.zeta(-1) * F.zeta(1) == F.one());
        CHECK(F.zeta(5).root_of_unity_exponent() == std::optional<int>(5 % N));
        CHECK_FALSE(F.from_int(2).root_of_unity_exponent().has_value());
    }
}

TEST_CASE("q is a primitive ell-th root of unity") {
    for (int ell : {3, 4, 5, 6, 8}) {
        FieldContext F = FieldContext::create(ell);
        CHECK(F.q().pow(ell).is_one());
        for (int k = 1; k < ell; ++k) CHECK_FALSE(F.q().pow(k).is_one());
        CHECK(close(numeric(F.q(), F.N()), std::polar(1.0, 2 * M_PI / ell)));
    }
}

TEST_CASE("fractional q powers") {
    FieldContext F = FieldContext::create(4, 3);
    CHECK(F.has_q_pow(Rational(1, 3)));
    CHECK_FALSE(F.has_q_pow(Rational(1, 5)));
    CHECK_THROWS_AS(F.q_pow(Rational(1, 5)), Error);
    CHECK(F.q_pow(Rational(1, 3)).pow(3) == F.q());
    CHECK(close(numeric(F.q_pow(Rational(-2, 3)), F.N()), std::polar(1.0, 2 * M_PI / 4 * (-2.0 / 3))));
}

TEST_CASE("quantum integers against the sine formula") {
    for (int ell : {5, 8}) {
        FieldContext F = FieldContext::create(ell, 2);
        double t = 2 * M_PI / ell;
        for (int d : {1, 2})
            for (int n = 0; n < 9; ++n) {
                if (std::abs(std::sin(d * t)) < 1e-12) continue;
                double want = std::sin(n * d * t) / std::sin(d * t);
                CHECK(close(numeric(F.bracket(Rational(n), d), F.N()), cd(want, 0)));
            }
        // [ell] = 0 and the binomial recursion
        CHECK(F.bracket(Rational(ell)).is_zero());
        for (int n = 1; n < 6; ++n)
            for (int m = 1; m < n; ++m)
                CHECK(F.binomial(n, m) == F.binomial(n - 1, m - 1) * F.q_pow(static_cast<long>(n - m)) +
                                              F.binomial(n - 1, m) * F.q_pow(static_cast<long>(-m)));
    }
}

TEST_CASE("modular images are ring maps") {
    std::mt19937 g(11);
    for (int N : {12, 24, 48}) {
        FieldContext F = FieldContext::with_order(N / 2, N);
        const ModularImage& m = modular_image(N);
        CHECK(m.p % N == 1);
        CHECK(m.p < (1ULL << 31));
        // zeta maps to a primitive N-th root
        for (int k = 1; k < N; ++k) CHECK(m.zpow[k] != 1);
        for (int t = 0; t < 20; ++t) {
            Cyclotomic a = random_element(F, g), b = random_element(F, g);
            std::uint64_t ra, rb, rab, rs;
            REQUIRE(a.reduce_mod(m.p, m.zpow, ra));
            REQUIRE(b.reduce_mod(m.p, m.zpow, rb));
            REQUIRE((a * b).reduce_mod(m.p, m.zpow, rab));
            REQUIRE((a + b).reduce_mod(m.p, m.zpow, rs));
            CHECK(rab == ra * rb % m.p);
            CHECK(rs == (ra + rb) % m.p);
        }
    }
}

TEST_CASE("mixing fields is rejected") {
    FieldContext F = FieldContext::create(3), G = FieldContext::create(5);
    CHECK_THROWS_AS(F.q() + G.q(), Error);
    CHECK_THROWS_AS(F.zero().inv(), Error);
}

TEST_CASE("exact linear algebra") {
    FieldContext F = FieldContext::create(4);
    Matrix m(3, 3);
    int v[3][3] = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = F.from_int(v[i][j]);
    CHECK(rank(m) == 2);
    CHECK(determinant(m).is_zero());
    Matrix k = nullspace(m);
    CHECK(k.cols() == 1);
    CHECK((m * k).is_zero());
    m(1, 1) = F.q();
    Matrix inv = inverse(m);
    CHECK(m * inv == Matrix::identity(F, 3));
    std::vector<Vector> rows = {m.row(0), m.row(1), m.row(2)};
    CHECK(modular_rank(rows, 3) == 3);
}
