#include "uqh/polynomial.hpp"

namespace uqh {

Polynomial minimal_polynomial(const SparseMatrix& a, const FieldContext& F) {
    int d = a.rows();
    if (a.cols() != d) fail(ErrorKind::InvalidArgument, "minimal polynomial of a non-square matrix");
    // powers of a, flattened, until linearly dependent
    std::vector<Vector> echelon;
    std::vector<int> piv;
    std::vector<Vector> combo;  // which powers each echelon row came from
    SparseMatrix p = SparseMatrix::identity(F, d);
    for (int k = 0; k <= d; ++k) {
        Vector v(static_cast<size_t>(d) * d, F.zero());
        for (int i = 0; i < d; ++i)
            for (auto& e : p.row(i)) v[static_cast<size_t>(i) * d + e.col] = e.val;
        Vector c(k + 1, F.zero());
        c[k] = F.one();
        for (size_t r = 0; r < echelon.size(); ++r) {
            Cyclotomic x = v[piv[r]];
            if (x.is_zero()) continue;
            for (size_t j = 0; j < v.size(); ++j)
                if (!echelon[r][j].is_zero()) v[j] -= x * echelon[r][j];
            for (size_t j = 0; j < combo[r].size(); ++j) c[j] -= x * combo[r][j];
        }
        int pv = -1;
        for (size_t j = 0; j < v.size() && pv < 0; ++j)
            if (!v[j].is_zero()) pv = static_cast<int>(j);
        if (pv < 0) return c;  // sum c_j a^j = 0 with c_k = 1
        Cyclotomic s = v[pv].inv();
        for (auto& x : v) x *= s;
        for (auto& x : c) x *= s;
        echelon.push_back(std::move(v));
        piv.push_back(pv);
        combo.push_back(std::move(c));
        p = a * p;
    }
    fail(ErrorKind::Internal, "no minimal polynomial found");
}

std::optional<Cyclotomic> single_root(const Polynomial& p, const FieldContext& F) {
    int n = static_cast<int>(p.size()) - 1;
    if (n < 1) return std::nullopt;
    Cyclotomic lead = p[n];
    Cyclotomic c = -(p[n - 1] / lead) / F.from_int(n);
    // expand (x - c)^n
    Polynomial q = {F.one()};
    for (int k = 0; k < n; ++k) {
        Polynomial r(q.size() + 1, F.zero());
        for (size_t j = 0; j < q.size(); ++j) {
            r[j + 1] += q[j];
            r[j] -= c * q[j];
        }
        q = std::move(r);
    }
    for (int j = 0; j <= n; ++j)
        if (q[j] * lead != p[j]) return std::nullopt;
    return c;
}

std::string polynomial_str(const Polynomial& p) {
    std::string s;
    for (int j = static_cast<int>(p.size()) - 1; j >= 0; --j) {
        if (p[j].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + p[j].str() + ")";
        if (j > 0) s += j == 1 ? "x" : "x^" + std::to_string(j);
    }
    return s.empty() ? "0" : s;
}

}  // namespace uqh
