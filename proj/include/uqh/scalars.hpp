#ifndef UQH_SCALARS_HPP
#define UQH_SCALARS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uqh/error.hpp"

namespace uqh {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string rational_string(const Rational& x);  // always "p/q"
Rational parse_rational(const std::string& s);
bool is_integer(const Rational& x);

/* Immutable data for Q(zeta_N).  Instances are interned for the lifetime of the
   process, so elements may hold a plain pointer to them. */
struct FieldData {
    int N = 0;
    int phi = 0;
    int ell = 0;
    int r = 0;       // ell odd: ell, ell even: ell/2
    int qstep = 0;   // q = zeta_N^qstep
    std::vector<std::int64_t> cyclo;                 // Phi_N, low degree first, monic
    std::vector<std::vector<std::int64_t>> reduce;   // x^k mod Phi_N for k < 2*phi
    std::vector<std::vector<std::int64_t>> powers;   // zeta^k for k < N
};

class Cyclotomic {
public:
    Cyclotomic() = default;

    const FieldData* field() const { return f_; }
    bool is_zero() const { return num_.empty(); }
    bool is_one() const;
    bool is_rational() const;
    Rational rational_value() const;  // requires is_rational()
    Rational coeff(int k) const;
    std::vector<Rational> coefficients() const;  // length phi

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    Cyclotomic inv() const;
    Cyclotomic pow(long e) const;
    Cyclotomic scaled(const Rational& c) const;
    Cyclotomic conj() const;  // zeta -> zeta^-1

    // k with value == zeta^k, if the value is a root of unity of order dividing N
    std::optional<int> root_of_unity_exponent() const;

    // image under zeta -> zpow[1] in F_p (zpow[k] = image of zeta^k); false if p divides the denominator
    bool reduce_mod(std::uint64_t p, const std::vector<std::uint64_t>& zpow, std::uint64_t& out) const;

    std::string str() const;  // e.g. "1/2 - z^2" with z = zeta_N
    std::vector<std::string> coefficient_strings() const;

    friend class FieldContext;

private:
    const FieldData* f_ = nullptr;
    std::vector<Integer> num_;  // empty means zero, else length phi
    Integer den_ = 1;

    void normalize();
    void adopt(const Cyclotomic& o);
};

// A prime p = 1 mod N with the powers of a primitive N-th root of unity mod p.
// Reduction along it is a ring map from the p-integral elements of Q(zeta_N) to F_p.
struct ModularImage {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> zpow;  // k < N
};
const ModularImage& modular_image(int N);

class FieldContext {
public:
    FieldContext() = default;
    explicit FieldContext(const FieldData* d) : d_(d) {}

    /* Field for q = exp(2 pi i / ell).  exponent_denominator E asks that q^x be
       representable for every x in (1/E)Z; N = lcm(2 ell, ell E). */
    static FieldContext create(int ell, long exponent_denominator = 1);
    static FieldContext with_order(int ell, int N);

    bool valid() const { return d_ != nullptr; }
    const FieldData* data() const { return d_; }
    int N() const { return d_->N; }
    int phi() const { return d_->phi; }
    int ell() const { return d_->ell; }
    int r() const { return d_->r; }

    Cyclotomic zero() const;
    Cyclotomic one() const;
    Cyclotomic from_int(long v) const;
    Cyclotomic from_rational(const Rational& v) const;
    Cyclotomic from_coefficients(const std::vector<Rational>& c) const;
    Cyclotomic zeta(long k) const;
    Cyclotomic q() const { return zeta(d_->qstep); }
    Cyclotomic q_pow(long k) const { return zeta(static_cast<long>(d_->qstep) * k); }
    Cyclotomic q_pow(const Rational& x) const;  // FieldResolution if not in the field
    bool has_q_pow(const Rational& x) const;

    // q-symbols; d scales the exponent (q_d = q^d)
    Cyclotomic brace(const Rational& x, int d = 1) const;    // q^{dx} - q^{-dx}
    Cyclotomic bracket(const Rational& x, int d = 1) const;  // brace(x,d)/brace(1,d)
    Cyclotomic bracket_factorial(long n, int d = 1) const;
    Cyclotomic brace_factorial(long n, int d = 1) const;
    Cyclotomic binomial(long n, long m, int d = 1) const;
    Cyclotomic jq(long j, long e) const;            // 1 + q^e + ... + q^{e(j-1)}
    Cyclotomic jq_factorial(long j, long e) const;

    friend bool operator==(const FieldContext& a, const FieldContext& b) { return a.d_ == b.d_; }

private:
    const FieldData* d_ = nullptr;
};

}  // namespace uqh

#endif
