#ifndef UQH_MATRIX_HPP
#define UQH_MATRIX_HPP

#include <cstdint>
#include <vector>

#include "uqh/scalars.hpp"

namespace uqh {

using Vector = std::vector<Cyclotomic>;

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Matrix identity(const FieldContext& F, int n);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Cyclotomic& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Cyclotomic& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    bool is_zero() const;
    Matrix transpose() const;
    Vector column(int j) const;
    Vector row(int i) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }
    Matrix scaled(const Cyclotomic& s) const;
    Vector apply(const Vector& v) const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Cyclotomic> a_;
};

struct Echelon {
    Matrix reduced;            // reduced row echelon form
    std::vector<int> pivots;   // pivot column of each nonzero row
};

Echelon rref(Matrix m);
int rank(const Matrix& m);
// columns form a basis of {x : m x = 0}
Matrix nullspace(const Matrix& m);
Matrix nullspace(const Matrix& m, const FieldContext& F);  // F is used when m carries no field
Cyclotomic determinant(Matrix m);
Matrix inverse(const Matrix& m);  // DivisionByZero if singular
// solve m x = b for one particular x; returns false if inconsistent
bool solve(const Matrix& m, const Vector& b, Vector& x);
// Rank of the image modulo a prime p = 1 mod N.  Never exceeds the rank over Q(zeta_N);
// -1 when some entry has a denominator divisible by p.
int modular_rank(const std::vector<Vector>& rows, int length);
// rank over F_p of rows with entries already reduced below p < 2^32
int rank_mod_p(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix from_columns(int rows, const std::vector<Vector>& cols);

// Row-sparse matrix used for module operators.
class SparseMatrix {
public:
    struct Entry {
        int col;
        Cyclotomic val;
    };

    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : r_(rows), c_(cols), rows_(rows) {}

    static SparseMatrix identity(const FieldContext& F, int n);
    static SparseMatrix from_dense(const Matrix& m);

    int rows() const { return r_; }
    int cols() const { return c_; }
    const std::vector<Entry>& row(int i) const { return rows_[i]; }
    std::vector<Entry>& row_mut(int i) { return rows_[i]; }
    void add(int i, int j, const Cyclotomic& v);
    Cyclotomic get(int i, int j) const;
    size_t nnz() const;
    bool is_zero() const;

    Matrix dense() const;
    Matrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
    SparseMatrix transpose() const;
    SparseMatrix scaled(const Cyclotomic& s) const;
    Vector apply(const Vector& v) const;

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);
    friend bool operator!=(const SparseMatrix& a, const SparseMatrix& b) { return !(a == b); }

private:
    int r_ = 0, c_ = 0;
    std::vector<std::vector<Entry>> rows_;  // sorted by col, no zeros
};

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix diagonal(const std::vector<Cyclotomic>& d);

}  // namespace uqh

#endif
