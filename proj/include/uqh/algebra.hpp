#ifndef UQH_ALGEBRA_HPP
#define UQH_ALGEBRA_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "uqh/rootdata.hpp"
#include "uqh/scalars.hpp"

namespace uqh {

struct Generator {
    enum Kind { E = 0, F = 1, K = 2, H = 3 };
    Kind kind = E;
    int index = 0;    // E, F, H
    RootVec gamma;    // K only

    static Generator e(int i) { return {E, i, {}}; }
    static Generator f(int i) { return {F, i, {}}; }
    static Generator h(int i) { return {H, i, {}}; }
    static Generator k(RootVec g) { return {K, 0, std::move(g)}; }

    friend bool operator<(const Generator& a, const Generator& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.index != b.index) return a.index < b.index;
        return a.gamma < b.gamma;
    }
    friend bool operator==(const Generator& a, const Generator& b) {
        return a.kind == b.kind && a.index == b.index && a.gamma == b.gamma;
    }
    std::string str() const;
};

using Word = std::vector<Generator>;

std::string word_str(const Word& w);

class AlgebraElement {
public:
    AlgebraElement() = default;
    explicit AlgebraElement(const FieldContext& F) : F_(F) {}

    static AlgebraElement scalar(const FieldContext& F, const Cyclotomic& c);
    static AlgebraElement one(const FieldContext& F) { return scalar(F, F.one()); }
    static AlgebraElement gen(const FieldContext& F, const Generator& g);
    static AlgebraElement E(const FieldContext& F, int i) { return gen(F, Generator::e(i)); }
    static AlgebraElement Fm(const FieldContext& F, int i) { return gen(F, Generator::f(i)); }
    static AlgebraElement H(const FieldContext& F, int i) { return gen(F, Generator::h(i)); }
    static AlgebraElement K(const FieldContext& F, const RootVec& g) { return gen(F, Generator::k(g)); }

    const FieldContext& field() const { return F_; }
    const std::map<Word, Cyclotomic>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    void add_term(const Word& w, const Cyclotomic& c);

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    AlgebraElement scaled(const Cyclotomic& c) const;
    AlgebraElement operator-() const;
    AlgebraElement pow(int n) const;

    // termwise identity; no normal form is applied
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.terms_ == b.terms_; }

    std::string str() const;
    nlohmann::json to_json() const;

private:
    FieldContext F_;
    std::map<Word, Cyclotomic> terms_;
};

Word normalize_word(const Word& w);

// T_i extended multiplicatively; DegenerateParameter if a divided power is undefined.
AlgebraElement braid_apply(const RootDatum& R, int i, const AlgebraElement& e);
AlgebraElement braid_generator(const RootDatum& R, const FieldContext& F, int i, const Generator& g);

// same element with all K factors collected at the right end of each word
AlgebraElement k_normal_form(const RootDatum& R, const AlgebraElement& e);
// X_{+beta_k} for sign > 0, X_{-beta_k} for sign < 0 (k zero-based in convex order)
AlgebraElement root_vector(const RootDatum& R, const FieldContext& F, int k, int sign);

enum class Symmetry { Omega, Antipode, AntipodeSquared };
AlgebraElement symmetry_map(const RootDatum& R, Symmetry kind, const AlgebraElement& e);

using TensorTerm = std::pair<AlgebraElement, AlgebraElement>;
std::vector<TensorTerm> coproduct_image(const RootDatum& R, const FieldContext& F, const Generator& g);
Cyclotomic counit(const AlgebraElement& e);

// [K_i; n] = (K_i q^n - K_i^{-1} q^{-n}) / (q_i - q_i^{-1})
AlgebraElement bracket_K(const RootDatum& R, const FieldContext& F, int i, long n);
// (K_i - K_i^{-1}) / (q_i - q_i^{-1}) ; DegenerateParameter when q_i^2 = 1
AlgebraElement cartan_commutator(const RootDatum& R, const FieldContext& F, int i);
// quantum Serre relator for i != j; sign > 0 uses E, sign < 0 uses F
AlgebraElement serre_relator(const RootDatum& R, const FieldContext& F, int i, int j, int sign);
AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);

// q_i - q_i^{-1}, raising DegenerateParameter if it vanishes
Cyclotomic q_difference(const RootDatum& R, const FieldContext& F, int d);

}  // namespace uqh

#endif
