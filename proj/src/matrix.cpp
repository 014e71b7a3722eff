#include "uqh/matrix.hpp"

#include <algorithm>
#include <map>

namespace uqh {

Matrix Matrix::identity(const FieldContext& F, int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = F.one();
    return m;
}

bool Matrix::is_zero() const {
    for (auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Vector Matrix::column(int j) const {
    Vector v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vector Matrix::row(int i) const {
    Vector v(c_);
    for (int j = 0; j < c_; ++j) v[j] = (*this)(i, j);
    return v;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) fail(ErrorKind::InvalidArgument, "matrix shape mismatch in product");
    Matrix m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k) {
            const Cyclotomic& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.c_; ++j) {
                const Cyclotomic& y = b(k, j);
                if (!y.is_zero()) m(i, j) += x * y;
            }
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) fail(ErrorKind::InvalidArgument, "matrix shape mismatch in sum");
    Matrix m = a;
    for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) fail(ErrorKind::InvalidArgument, "matrix shape mismatch in difference");
    Matrix m = a;
    for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= b.a_[i];
    return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) return false;
    for (size_t i = 0; i < a.a_.size(); ++i)
        if (a.a_[i] != b.a_[i]) return false;
    return true;
}

Matrix Matrix::scaled(const Cyclotomic& s) const {
    Matrix m = *this;
    for (auto& x : m.a_)
        if (!x.is_zero()) x *= s;
    return m;
}

Vector Matrix::apply(const Vector& v) const {
    Vector out(r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

Echelon rref(Matrix m) {
    Echelon e;
    int R = m.rows(), C = m.cols();
    int row = 0;
    for (int c = 0; c < C && row < R; ++c) {
        int p = -1;
        for (int i = row; i < R; ++i)
            if (!m(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < C; ++j) std::swap(m(p, j), m(row, j));
        Cyclotomic inv = m(row, c).inv();
        for (int j = c; j < C; ++j)
            if (!m(row, j).is_zero()) m(row, j) *= inv;
        for (int i = 0; i < R; ++i) {
            if (i == row || m(i, c).is_zero()) continue;
            Cyclotomic f = m(i, c);
            for (int j = c; j < C; ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
        }
        e.pivots.push_back(c);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

int modular_rank(const std::vector<Vector>& rows, int length) {
    const FieldData* f = nullptr;
    for (auto& r : rows)
        for (auto& x : r)
            if (!f && x.field()) f = x.field();
    if (!f) return 0;
    const ModularImage& im = modular_image(f->N);
    const std::uint64_t p = im.p;
    std::vector<std::vector<std::uint64_t>> a;
    a.reserve(rows.size());
    for (auto& r : rows) {
        std::vector<std::uint64_t> v(static_cast<size_t>(length), 0);
        for (int j = 0; j < length; ++j)
            if (!r[j].reduce_mod(p, im.zpow, v[j])) return -1;
        a.push_back(std::move(v));
    }
    return rank_mod_p(std::move(a), p);
}

int rank_mod_p(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
    auto inv = [p](std::uint64_t x) {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return r;
    };
    int length = a.empty() ? 0 : static_cast<int>(a[0].size());
    int rk = 0;
    for (int c = 0; c < length && rk < static_cast<int>(a.size()); ++c) {
        int piv = -1;
        for (int i = rk; i < static_cast<int>(a.size()) && piv < 0; ++i)
            if (a[i][c]) piv = i;
        if (piv < 0) continue;
        std::swap(a[piv], a[rk]);
        std::uint64_t s = inv(a[rk][c]);
        for (int j = c; j < length; ++j) a[rk][j] = a[rk][j] * s % p;
        for (int i = rk + 1; i < static_cast<int>(a.size()); ++i) {
            std::uint64_t t = a[i][c];
            if (!t) continue;
            for (int j = c; j < length; ++j) a[i][j] = (a[i][j] + (p - t) * a[rk][j]) % p;
        }
        ++rk;
    }
    return rk;
}

int rank(const Matrix& m) {
    // forward elimination only
    Matrix a = m;
    int R = a.rows(), C = a.cols(), row = 0;
    for (int c = 0; c < C && row < R; ++c) {
        int p = -1;
        for (int i = row; i < R; ++i)
            if (!a(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < C; ++j) std::swap(a(p, j), a(row, j));
        Cyclotomic inv = a(row, c).inv();
        for (int i = row + 1; i < R; ++i) {
            if (a(i, c).is_zero()) continue;
            Cyclotomic f = a(i, c) * inv;
            for (int j = c; j < C; ++j)
                if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
        }
        ++row;
    }
    return row;
}

Matrix nullspace(const Matrix& m) { return nullspace(m, FieldContext()); }

Matrix nullspace(const Matrix& m, const FieldContext& F) {
    int C = m.cols();
    Echelon e = rref(m);
    std::vector<bool> is_pivot(C, false);
    for (int p : e.pivots) is_pivot[p] = true;
    std::vector<int> free;
    for (int j = 0; j < C; ++j)
        if (!is_pivot[j]) free.push_back(j);
    Matrix ns(C, static_cast<int>(free.size()));
    const FieldData* fd = F.data();
    for (int i = 0; i < m.rows() && !fd; ++i)
        for (int j = 0; j < C && !fd; ++j)
            if (m(i, j).field()) fd = m(i, j).field();
    for (size_t k = 0; k < free.size(); ++k) {
        int f = free[k];
        if (fd) ns(f, static_cast<int>(k)) = FieldContext(fd).one();
        for (size_t r = 0; r < e.pivots.size(); ++r) {
            const Cyclotomic& v = e.reduced(static_cast<int>(r), f);
            if (!v.is_zero()) ns(e.pivots[r], static_cast<int>(k)) = -v;
        }
    }
    if (!fd && !free.empty())
        fail(ErrorKind::InvalidArgument, "nullspace of an all-zero matrix needs a field; use a typed zero");
    return ns;
}

Cyclotomic determinant(Matrix a) {
    int n = a.rows();
    if (n != a.cols()) fail(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
    Cyclotomic det;
    const FieldData* fd = nullptr;
    for (int i = 0; i < n && !fd; ++i)
        for (int j = 0; j < n && !fd; ++j)
            if (a(i, j).field()) fd = a(i, j).field();
    if (n == 0 || !fd) {
        if (n == 0 && fd) return FieldContext(fd).one();
        if (n == 0) fail(ErrorKind::InvalidArgument, "determinant of an empty matrix needs a field");
        return Cyclotomic();
    }
    det = FieldContext(fd).one();
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!a(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) return FieldContext(fd).zero();
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        Cyclotomic inv = a(c, c).inv();
        for (int i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            Cyclotomic f = a(i, c) * inv;
            for (int j = c; j < n; ++j)
                if (!a(c, j).is_zero()) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

Matrix inverse(const Matrix& m) {
    int n = m.rows();
    if (n != m.cols()) fail(ErrorKind::InvalidArgument, "inverse of a non-square matrix");
    if (n == 0) return m;
    const FieldData* fd = nullptr;
    for (int i = 0; i < n && !fd; ++i)
        for (int j = 0; j < n && !fd; ++j)
            if (m(i, j).field()) fd = m(i, j).field();
    if (!fd) fail(ErrorKind::DivisionByZero, "singular matrix");
    Echelon e = rref(hstack(m, Matrix::identity(FieldContext(fd), n)));
    if (static_cast<int>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1)
        fail(ErrorKind::DivisionByZero, "singular matrix");
    Matrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

bool solve(const Matrix& m, const Vector& b, Vector& x) {
    int R = m.rows(), C = m.cols();
    Matrix aug(R, C + 1);
    for (int i = 0; i < R; ++i) {
        for (int j = 0; j < C; ++j) aug(i, j) = m(i, j);
        aug(i, C) = b[i];
    }
    Echelon e = rref(aug);
    x.assign(C, Cyclotomic());
    for (size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == C) return false;
        x[e.pivots[r]] = e.reduced(static_cast<int>(r), C);
    }
    return true;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) fail(ErrorKind::InvalidArgument, "hstack row mismatch");
    Matrix m(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) fail(ErrorKind::InvalidArgument, "vstack column mismatch");
    Matrix m(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    if (!b(k, l).is_zero()) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return m;
}

Matrix from_columns(int rows, const std::vector<Vector>& cols) {
    Matrix m(rows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < rows; ++i) m(i, static_cast<int>(j)) = cols[j][i];
    return m;
}

// ---- SparseMatrix ----

SparseMatrix SparseMatrix::identity(const FieldContext& F, int n) {
    SparseMatrix s(n, n);
    for (int i = 0; i < n; ++i) s.rows_[i].push_back({i, F.one()});
    return s;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
    SparseMatrix s(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) s.rows_[i].push_back({j, m(i, j)});
    return s;
}

void SparseMatrix::add(int i, int j, const Cyclotomic& v) {
    if (v.is_zero()) return;
    auto& row = rows_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j, [](const Entry& e, int c) { return e.col < c; });
    if (it != row.end() && it->col == j) {
        it->val += v;
        if (it->val.is_zero()) row.erase(it);
    } else {
        row.insert(it, Entry{j, v});
    }
}

Cyclotomic SparseMatrix::get(int i, int j) const {
    const auto& row = rows_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j, [](const Entry& e, int c) { return e.col < c; });
    if (it != row.end() && it->col == j) return it->val;
    return Cyclotomic();
}

size_t SparseMatrix::nnz() const {
    size_t n = 0;
    for (auto& r : rows_) n += r.size();
    return n;
}

bool SparseMatrix::is_zero() const { return nnz() == 0; }

Matrix SparseMatrix::dense() const {
    Matrix m(r_, c_);
    for (int i = 0; i < r_; ++i)
        for (auto& e : rows_[i]) m(i, e.col) = e.val;
    return m;
}

Matrix SparseMatrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
    std::map<int, int> cpos;
    for (size_t j = 0; j < cols.size(); ++j) cpos[cols[j]] = static_cast<int>(j);
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (auto& e : rows_[rows[i]]) {
            auto it = cpos.find(e.col);
            if (it != cpos.end()) m(static_cast<int>(i), it->second) = e.val;
        }
    return m;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (auto& e : rows_[i]) t.rows_[e.col].push_back({i, e.val});
    return t;
}

SparseMatrix SparseMatrix::scaled(const Cyclotomic& s) const {
    if (s.is_zero()) return SparseMatrix(r_, c_);
    SparseMatrix m = *this;
    for (auto& r : m.rows_)
        for (auto& e : r) e.val *= s;
    return m;
}

Vector SparseMatrix::apply(const Vector& v) const {
    Vector out(r_);
    for (int i = 0; i < r_; ++i)
        for (auto& e : rows_[i])
            if (!v[e.col].is_zero()) out[i] += e.val * v[e.col];
    return out;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.c_ != b.r_) fail(ErrorKind::InvalidArgument, "sparse shape mismatch in product");
    SparseMatrix m(a.r_, b.c_);
    std::vector<Cyclotomic> acc(b.c_);
    std::vector<char> touched(b.c_, 0);
    std::vector<int> idx;
    for (int i = 0; i < a.r_; ++i) {
        idx.clear();
        for (auto& e : a.rows_[i])
            for (auto& f : b.rows_[e.col]) {
                if (!touched[f.col]) {
                    touched[f.col] = 1;
                    idx.push_back(f.col);
                    acc[f.col] = e.val * f.val;
                } else {
                    acc[f.col] += e.val * f.val;
                }
            }
        std::sort(idx.begin(), idx.end());
        auto& row = m.rows_[i];
        for (int j : idx) {
            if (!acc[j].is_zero()) row.push_back({j, std::move(acc[j])});
            acc[j] = Cyclotomic();
            touched[j] = 0;
        }
    }
    return m;
}

static SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, bool subtract) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorKind::InvalidArgument, "sparse shape mismatch in sum");
    SparseMatrix m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        const auto& x = a.row(i);
        const auto& y = b.row(i);
        auto& out = m.row_mut(i);
        size_t p = 0, q = 0;
        while (p < x.size() || q < y.size()) {
            if (q == y.size() || (p < x.size() && x[p].col < y[q].col)) {
                out.push_back(x[p++]);
            } else if (p == x.size() || y[q].col < x[p].col) {
                out.push_back({y[q].col, subtract ? -y[q].val : y[q].val});
                ++q;
            } else {
                Cyclotomic v = subtract ? x[p].val - y[q].val : x[p].val + y[q].val;
                if (!v.is_zero()) out.push_back({x[p].col, v});
                ++p;
                ++q;
            }
        }
    }
    return m;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, false); }
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, true); }

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) return false;
    for (int i = 0; i < a.r_; ++i) {
        const auto& x = a.rows_[i];
        const auto& y = b.rows_[i];
        if (x.size() != y.size()) return false;
        for (size_t k = 0; k < x.size(); ++k)
            if (x[k].col != y[k].col || x[k].val != y[k].val) return false;
    }
    return true;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < b.rows(); ++k) {
            auto& out = m.row_mut(i * b.rows() + k);
            for (auto& e : a.row(i))
                for (auto& f : b.row(k)) out.push_back({e.col * b.cols() + f.col, e.val * f.val});
        }
    return m;
}

SparseMatrix diagonal(const std::vector<Cyclotomic>& d) {
    int n = static_cast<int>(d.size());
    SparseMatrix s(n, n);
    for (int i = 0; i < n; ++i)
        if (!d[i].is_zero()) s.row_mut(i).push_back({i, d[i]});
    return s;
}

}  // namespace uqh
