#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgcell {

using Rat = mpq_class;

/* Dense exact matrix over Q.  All eliminations are fraction-free in spirit but
 * simply use mpq arithmetic; sizes at desk scale are tiny. */
class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, Rat(0)) {}

    static QMatrix identity(int n);
    static QMatrix zero(int rows, int cols) { return QMatrix(rows, cols); }
    static QMatrix from_rows(const std::vector<std::vector<Rat>>& rows);
    static QMatrix from_cols(const std::vector<std::vector<Rat>>& cols);
    static QMatrix col_vector(const std::vector<Rat>& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const QMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
    bool operator!=(const QMatrix& o) const { return !(*this == o); }

    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix operator*(const Rat& s) const;
    QMatrix operator-() const { return *this * Rat(-1); }

    QMatrix transpose() const;
    std::vector<Rat> col(int j) const;
    std::vector<Rat> row(int i) const;
    std::vector<Rat> apply(const std::vector<Rat>& v) const;  // matrix * column vector

    QMatrix hstack(const QMatrix& o) const;
    QMatrix vstack(const QMatrix& o) const;
    QMatrix submatrix_cols(const std::vector<int>& cols) const;

    std::string str() const;

private:
    int rows_, cols_;
    std::vector<Rat> data_;
};

/* Row-reduce in place; returns pivot column indices. */
std::vector<int> rref(QMatrix& m);
int rank(const QMatrix& m);
/* Basis of the right kernel, as columns. */
QMatrix kernel_basis(const QMatrix& m);
/* Basis of the column space: the subset of columns forming the pivot set under rref. */
QMatrix image_basis(const QMatrix& m);
/* Solve A x = b; nullopt when inconsistent. */
std::optional<std::vector<Rat>> solve(const QMatrix& a, const std::vector<Rat>& b);
std::optional<QMatrix> inverse(const QMatrix& m);

/* Subspaces of Q^n represented by column-span matrices in reduced column
 * echelon form, so equal subspaces have equal representations. */
class Subspace {
public:
    Subspace() : ambient_(0) {}
    explicit Subspace(int ambient_dim) : ambient_(ambient_dim), basis_(ambient_dim, 0) {}
    /* span of columns */
    static Subspace span(const QMatrix& cols);
    static Subspace span(int ambient_dim, const std::vector<std::vector<Rat>>& vectors);
    static Subspace full(int ambient_dim) { return span(QMatrix::identity(ambient_dim)); }

    int ambient() const { return ambient_; }
    int dim() const { return basis_.cols(); }
    const QMatrix& basis() const { return basis_; }
    std::vector<Rat> basis_vector(int j) const { return basis_.col(j); }

    bool contains(const std::vector<Rat>& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;
    /* coordinates of v in this basis; nullopt if v outside */
    std::optional<std::vector<Rat>> coordinates(const std::vector<Rat>& v) const;
    /* deterministic complement spanned by standard basis vectors */
    Subspace complement() const;

private:
    int ambient_;
    QMatrix basis_;
};

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

}  // namespace dgcell
