#ifndef UQH_ROOTDATA_HPP
#define UQH_ROOTDATA_HPP

#include <string>
#include <vector>

#include "uqh/scalars.hpp"

namespace uqh {

// Values lambda(H_1), ..., lambda(H_n).
struct Weight {
    std::vector<Rational> h;

    Weight() = default;
    explicit Weight(std::vector<Rational> v) : h(std::move(v)) {}
    static Weight zero(int n) { return Weight(std::vector<Rational>(n, Rational(0))); }

    int size() const { return static_cast<int>(h.size()); }
    Weight operator+(const Weight& o) const;
    Weight operator-(const Weight& o) const;
    Weight operator-() const;
    Weight scaled(const Rational& c) const;
    bool is_zero() const;
    friend bool operator==(const Weight& a, const Weight& b) { return a.h == b.h; }
    friend bool operator!=(const Weight& a, const Weight& b) { return a.h != b.h; }
    friend bool operator<(const Weight& a, const Weight& b) { return a.h < b.h; }
    std::string str() const;                   // "(1/3,2)"
    std::vector<std::string> strings() const;  // "p/q" per entry
    Integer denominator() const;               // lcm of entry denominators
};

Weight parse_weight(const std::string& s, int rank);

using RootVec = std::vector<int>;  // coordinates in the simple roots

std::string rootvec_str(const RootVec& v);
RootVec rootvec_add(const RootVec& a, const RootVec& b);
RootVec rootvec_sub(const RootVec& a, const RootVec& b);
RootVec rootvec_scale(const RootVec& a, int c);
RootVec unit_root(int n, int i);
bool rootvec_nonneg(const RootVec& a);
int rootvec_height(const RootVec& a);

class RootDatum {
public:
    static RootDatum build(char type, int rank, int ell);

    char type() const { return type_; }
    int rank() const { return n_; }
    int ell() const { return ell_; }
    int r() const { return r_; }
    std::string name() const { return std::string(1, type_) + std::to_string(n_); }

    int a(int i, int j) const { return A_[i][j]; }  // alpha_j(H_i)
    const std::vector<std::vector<int>>& cartan() const { return A_; }
    int d(int i) const { return d_[i]; }
    const std::vector<int>& symmetrizers() const { return d_; }
    int m(int i, int j) const { return m_[i][j]; }
    long cartan_det() const { return det_; }
    const std::vector<std::vector<Rational>>& cartan_inverse() const { return Ainv_; }

    int num_positive() const { return static_cast<int>(roots_.size()); }
    const std::vector<RootVec>& positive_roots() const { return roots_; }  // convex order
    const RootVec& root(int k) const { return roots_[k]; }
    const std::vector<int>& w0_word() const { return word_; }
    int d_alpha(int k) const { return d_alpha_[k]; }
    int r_alpha(int k) const { return r_alpha_[k]; }
    int g_alpha(int k) const { return g_alpha_[k]; }
    int r_simple(int i) const;  // r_alpha for the simple root alpha_i
    int root_index(const RootVec& v) const;  // -1 if not a positive root
    int simple_index(int i) const;           // index of alpha_i in the convex order
    long pbw_dimension() const;              // product of r_alpha

    Weight rho() const { return Weight(std::vector<Rational>(n_, Rational(1))); }
    Weight root_weight(const RootVec& g) const;  // H-values of a root-lattice vector
    long root_pairing(const RootVec& x, const RootVec& y) const;
    Rational pairing(const Weight& l, const Weight& m) const;
    Rational pairing(const RootVec& g, const Weight& l) const;  // sum_i d_i g_i l_i
    Rational lambda_alpha(const Weight& l, int k) const;
    RootVec reflect(int i, const RootVec& g) const;
    // Coordinates of a weight in the root basis, if it lies in the rational span.
    std::vector<Rational> root_coordinates(const Weight& l) const;
    bool in_root_lattice(const Weight& l) const;

private:
    char type_ = 'A';
    int n_ = 0, ell_ = 0, r_ = 0;
    long det_ = 1;
    std::vector<std::vector<int>> A_, m_;
    std::vector<int> d_;
    std::vector<std::vector<Rational>> Ainv_;
    std::vector<int> word_;
    std::vector<RootVec> roots_;
    std::vector<int> d_alpha_, r_alpha_, g_alpha_;
};

// Kostant-type partition count |Par(eta)| with truncation 0 <= k_i < r_alpha.
long partition_count(const RootDatum& R, const RootVec& eta);
std::vector<std::vector<int>> partitions(const RootDatum& R, const RootVec& eta);

}  // namespace uqh

#endif
