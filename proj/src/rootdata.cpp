#include "uqh/rootdata.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace uqh {

Weight Weight::operator+(const Weight& o) const {
    Weight w = *this;
    for (size_t i = 0; i < h.size(); ++i) w.h[i] += o.h[i];
    return w;
}

Weight Weight::operator-(const Weight& o) const {
    Weight w = *this;
    for (size_t i = 0; i < h.size(); ++i) w.h[i] -= o.h[i];
    return w;
}

Weight Weight::operator-() const {
    Weight w = *this;
    for (auto& x : w.h) x = -x;
    return w;
}

Weight Weight::scaled(const Rational& c) const {
    Weight w = *this;
    for (auto& x : w.h) x *= c;
    return w;
}

bool Weight::is_zero() const {
    for (auto& x : h)
        if (x != 0) return false;
    return true;
}

std::string Weight::str() const {
    std::ostringstream o;
    o << '(';
    for (size_t i = 0; i < h.size(); ++i) {
        if (i) o << ',';
        if (is_integer(h[i]))
            o << boost::multiprecision::numerator(h[i]);
        else
            o << rational_string(h[i]);
    }
    o << ')';
    return o.str();
}

std::vector<std::string> Weight::strings() const {
    std::vector<std::string> s;
    for (auto& x : h) s.push_back(rational_string(x));
    return s;
}

Integer Weight::denominator() const {
    Integer l = 1;
    for (auto& x : h) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    return l;
}

Weight parse_weight(const std::string& s, int rank) {
    std::vector<Rational> v;
    std::string cur;
    std::string t = s;
    if (!t.empty() && (t.front() == '(' || t.front() == '[')) t = t.substr(1);
    if (!t.empty() && (t.back() == ')' || t.back() == ']')) t.pop_back();
    std::stringstream ss(t);
    while (std::getline(ss, cur, ',')) v.push_back(parse_rational(cur));
    if (static_cast<int>(v.size()) != rank)
        fail(ErrorKind::InvalidArgument,
             "weight '" + s + "' has " + std::to_string(v.size()) + " entries, rank is " + std::to_string(rank));
    return Weight(v);
}

std::string rootvec_str(const RootVec& v) {
    std::ostringstream o;
    o << '[';
    for (size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
    o << ']';
    return o.str();
}

RootVec rootvec_add(const RootVec& a, const RootVec& b) {
    RootVec c = a;
    for (size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
}

RootVec rootvec_sub(const RootVec& a, const RootVec& b) {
    RootVec c = a;
    for (size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
    return c;
}

RootVec rootvec_scale(const RootVec& a, int s) {
    RootVec c = a;
    for (auto& x : c) x *= s;
    return c;
}

RootVec unit_root(int n, int i) {
    RootVec v(n, 0);
    v[i] = 1;
    return v;
}

bool rootvec_nonneg(const RootVec& a) {
    for (int x : a)
        if (x < 0) return false;
    return true;
}

int rootvec_height(const RootVec& a) { return std::accumulate(a.begin(), a.end(), 0); }

namespace {

struct Dynkin {
    std::vector<int> d;
    std::vector<std::pair<int, int>> edges;
};

Dynkin dynkin(char type, int n) {
    Dynkin g;
    auto chain = [&](int upto) {
        for (int i = 0; i + 1 < upto; ++i) g.edges.push_back({i, i + 1});
    };
    switch (type) {
    case 'A':
        if (n < 1 || n > 8) break;
        g.d.assign(n, 1);
        chain(n);
        return g;
    case 'B':
        if (n < 2 || n > 8) break;
        g.d.assign(n, 2);
        g.d[n - 1] = 1;
        chain(n);
        return g;
    case 'C':
        if (n < 2 || n > 8) break;
        g.d.assign(n, 1);
        g.d[n - 1] = 2;
        chain(n);
        return g;
    case 'D':
        if (n < 4 || n > 8) break;
        g.d.assign(n, 1);
        chain(n - 1);
        g.edges.push_back({n - 3, n - 1});
        return g;
    case 'E':
        if (n < 6 || n > 8) break;
        g.d.assign(n, 1);
        g.edges = {{0, 2}, {2, 3}, {3, 4}, {1, 3}};
        for (int i = 4; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
        return g;
    case 'F':
        if (n != 4) break;
        g.d = {2, 2, 1, 1};
        chain(4);
        return g;
    case 'G':
        if (n != 2) break;
        g.d = {1, 3};
        chain(2);
        return g;
    default:
        break;
    }
    fail(ErrorKind::Unsupported, std::string("unsupported Cartan type ") + type + std::to_string(n));
}

}  // namespace

RootDatum RootDatum::build(char type, int n, int ell) {
    if (ell < 3) fail(ErrorKind::InvalidOrder, "root-of-unity order must be at least 3, got " + std::to_string(ell));
    Dynkin g = dynkin(type, n);
    RootDatum R;
    R.type_ = type;
    R.n_ = n;
    R.ell_ = ell;
    R.r_ = (ell % 2 == 1) ? ell : ell / 2;
    R.d_ = g.d;
    std::vector<std::vector<int>> b(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) b[i][i] = 2 * g.d[i];
    for (auto [i, j] : g.edges) b[i][j] = b[j][i] = -std::max(g.d[i], g.d[j]);
    R.A_.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R.A_[i][j] = b[i][j] / g.d[i];
    R.m_.assign(n, std::vector<int>(n, 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            int p = R.A_[i][j] * R.A_[j][i];
            R.m_[i][j] = p == 0 ? 2 : p == 1 ? 3 : p == 2 ? 4 : 6;
        }

    // inverse and determinant over Q
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n, Rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = R.A_[i][j];
        m[i][n + i] = 1;
    }
    Rational det = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (m[p][c] == 0) ++p;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Rational pv = m[c][c];
        for (auto& x : m[c]) x /= pv;
        for (int i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (int j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    R.det_ = static_cast<long>(boost::multiprecision::numerator(det));
    R.Ainv_.assign(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R.Ainv_[i][j] = m[i][n + j];

    // Lexicographically least reduced word for w_0: greedily append the least s_i
    // with u(alpha_i) > 0, where u is the current prefix.
    std::vector<RootVec> ucols(n);  // u(alpha_j)
    for (int j = 0; j < n; ++j) ucols[j] = unit_root(n, j);
    auto positive = [](const RootVec& v) {
        for (int x : v)
            if (x < 0) return false;
        return true;
    };
    while (true) {
        int pick = -1;
        for (int i = 0; i < n; ++i)
            if (positive(ucols[i])) {
                pick = i;
                break;
            }
        if (pick < 0) break;
        R.word_.push_back(pick);
        R.roots_.push_back(ucols[pick]);
        // u <- u s_pick : (u s_i)(alpha_j) = u(alpha_j - a_ij alpha_i)
        std::vector<RootVec> next = ucols;
        for (int j = 0; j < n; ++j) {
            int c = R.A_[pick][j];
            if (c == 0) continue;
            for (int k = 0; k < n; ++k) next[j][k] = ucols[j][k] - c * ucols[pick][k];
        }
        ucols = next;
        if (R.word_.size() > 200) fail(ErrorKind::Internal, "longest-element search did not terminate");
    }
    for (auto& beta : R.roots_) {
        long nb = R.root_pairing(beta, beta);
        int da = static_cast<int>(nb / 2);
        int gg = std::gcd(da, R.r_);
        R.d_alpha_.push_back(da);
        R.g_alpha_.push_back(gg);
        R.r_alpha_.push_back(R.r_ / gg);
    }
    return R;
}

int RootDatum::root_index(const RootVec& v) const {
    for (size_t k = 0; k < roots_.size(); ++k)
        if (roots_[k] == v) return static_cast<int>(k);
    return -1;
}

int RootDatum::simple_index(int i) const { return root_index(unit_root(n_, i)); }

int RootDatum::r_simple(int i) const { return r_ / std::gcd(d_[i], r_); }

long RootDatum::pbw_dimension() const {
    long p = 1;
    for (int x : r_alpha_) p *= x;
    return p;
}

Weight RootDatum::root_weight(const RootVec& g) const {
    Weight w = Weight::zero(n_);
    for (int i = 0; i < n_; ++i) {
        long s = 0;
        for (int j = 0; j < n_; ++j) s += static_cast<long>(A_[i][j]) * g[j];
        w.h[i] = s;
    }
    return w;
}

long RootDatum::root_pairing(const RootVec& x, const RootVec& y) const {
    long s = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) s += static_cast<long>(x[i]) * y[j] * d_[i] * A_[i][j];
    return s;
}

Rational RootDatum::pairing(const Weight& l, const Weight& m) const {
    if (l.size() != n_ || m.size() != n_) fail(ErrorKind::InvalidArgument, "weight rank mismatch in pairing");
    Rational s = 0;
    for (int i = 0; i < n_; ++i) {
        if (l.h[i] == 0) continue;
        for (int j = 0; j < n_; ++j)
            if (Ainv_[i][j] != 0 && m.h[j] != 0) s += Rational(d_[i]) * Ainv_[i][j] * l.h[i] * m.h[j];
    }
    return s;
}

Rational RootDatum::pairing(const RootVec& g, const Weight& l) const {
    Rational s = 0;
    for (int i = 0; i < n_; ++i)
        if (g[i] != 0) s += Rational(static_cast<long>(g[i]) * d_[i]) * l.h[i];
    return s;
}

Rational RootDatum::lambda_alpha(const Weight& l, int k) const { return pairing(roots_[k], l + rho()); }

RootVec RootDatum::reflect(int i, const RootVec& g) const {
    long s = 0;
    for (int j = 0; j < n_; ++j) s += static_cast<long>(A_[i][j]) * g[j];
    RootVec out = g;
    out[i] -= static_cast<int>(s);
    return out;
}

std::vector<Rational> RootDatum::root_coordinates(const Weight& l) const {
    // l(H_i) = sum_j a_ij c_j  =>  c = A^{-1} l
    std::vector<Rational> c(n_, Rational(0));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) c[i] += Ainv_[i][j] * l.h[j];
    return c;
}

bool RootDatum::in_root_lattice(const Weight& l) const {
    for (auto& c : root_coordinates(l))
        if (!is_integer(c)) return false;
    return true;
}

static void partition_rec(const RootDatum& R, RootVec& rest, int k, std::vector<int>& cur,
                          std::vector<std::vector<int>>* out, long& count) {
    int N = R.num_positive();
    if (k == N) {
        for (int x : rest)
            if (x != 0) return;
        ++count;
        if (out) out->push_back(cur);
        return;
    }
    const RootVec& b = R.root(k);
    int taken = 0;
    for (int c = 0; c < R.r_alpha(k); ++c) {
        if (c > 0) {
            bool ok = true;
            for (size_t i = 0; i < rest.size(); ++i)
                if (rest[i] < b[i]) ok = false;
            if (!ok) break;
            for (size_t i = 0; i < rest.size(); ++i) rest[i] -= b[i];
            ++taken;
        }
        cur[k] = c;
        partition_rec(R, rest, k + 1, cur, out, count);
    }
    for (size_t i = 0; i < rest.size(); ++i) rest[i] += b[i] * taken;
    cur[k] = 0;
}

long partition_count(const RootDatum& R, const RootVec& eta) {
    if (!rootvec_nonneg(eta)) return 0;
    RootVec rest = eta;
    std::vector<int> cur(R.num_positive(), 0);
    long count = 0;
    partition_rec(R, rest, 0, cur, nullptr, count);
    return count;
}

std::vector<std::vector<int>> partitions(const RootDatum& R, const RootVec& eta) {
    std::vector<std::vector<int>> out;
    if (!rootvec_nonneg(eta)) return out;
    RootVec rest = eta;
    std::vector<int> cur(R.num_positive(), 0);
    long count = 0;
    partition_rec(R, rest, 0, cur, &out, count);
    return out;
}

}  // namespace uqh
