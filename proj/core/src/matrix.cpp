#include "dgcell/matrix.hpp"

#include <sstream>

namespace dgcell {

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    QMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

QMatrix QMatrix::from_cols(const std::vector<std::vector<Rat>>& cols) {
    int c = static_cast<int>(cols.size());
    int r = c == 0 ? 0 : static_cast<int>(cols[0].size());
    QMatrix m(r, c);
    for (int j = 0; j < c; ++j) {
        if (static_cast<int>(cols[j].size()) != r) throw std::invalid_argument("ragged cols");
        for (int i = 0; i < r; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

QMatrix QMatrix::col_vector(const std::vector<Rat>& v) {
    QMatrix m(static_cast<int>(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) m.at(static_cast<int>(i), 0) = v[i];
    return m;
}

bool QMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    QMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Rat& b = o.at(k, j);
                if (b != 0) r.at(i, j) += a * b;
            }
        }
    return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    QMatrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix diff shape mismatch");
    QMatrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

QMatrix QMatrix::operator*(const Rat& s) const {
    QMatrix r = *this;
    for (auto& x : r.data_) x *= s;
    return r;
}

QMatrix QMatrix::transpose() const {
    QMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::vector<Rat> QMatrix::col(int j) const {
    std::vector<Rat> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

std::vector<Rat> QMatrix::row(int i) const {
    std::vector<Rat> v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

std::vector<Rat> QMatrix::apply(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("apply shape mismatch");
    std::vector<Rat> r(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
    return r;
}

QMatrix QMatrix::hstack(const QMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hstack shape mismatch");
    QMatrix r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

QMatrix QMatrix::vstack(const QMatrix& o) const {
    if (cols_ != o.cols_) throw std::invalid_argument("vstack shape mismatch");
    QMatrix r(rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
    return r;
}

QMatrix QMatrix::submatrix_cols(const std::vector<int>& cols) const {
    QMatrix r(rows_, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < rows_; ++i) r.at(i, static_cast<int>(j)) = at(i, cols[j]);
    return r;
}

std::string QMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < cols_; ++j) os << at(i, j).get_str() << (j + 1 < cols_ ? " " : "");
        os << (i + 1 < rows_ ? "\n" : "]");
    }
    return os.str();
}

std::vector<int> rref(QMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        Rat inv = 1 / m.at(r, c);
        for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(const QMatrix& m) {
    QMatrix c = m;
    return static_cast<int>(rref(c).size());
}

QMatrix kernel_basis(const QMatrix& m) {
    QMatrix red = m;
    std::vector<int> pivots = rref(red);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rat> v(m.cols(), Rat(0));
        v[c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red.at(static_cast<int>(r), c);
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return QMatrix(m.cols(), 0);
    return QMatrix::from_cols(basis);
}

QMatrix image_basis(const QMatrix& m) {
    QMatrix red = m;
    std::vector<int> pivots = rref(red);
    return m.submatrix_cols(pivots);
}

std::optional<std::vector<Rat>> solve(const QMatrix& a, const std::vector<Rat>& b) {
    if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve shape mismatch");
    QMatrix aug = a.hstack(QMatrix::col_vector(b));
    std::vector<int> pivots = rref(aug);
    for (int p : pivots)
        if (p == a.cols()) return std::nullopt;
    std::vector<Rat> x(a.cols(), Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), a.cols());
    return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    QMatrix aug = m.hstack(QMatrix::identity(m.rows()));
    std::vector<int> pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != m.rows()) return std::nullopt;
    for (size_t i = 0; i < pivots.size(); ++i)
        if (pivots[i] != static_cast<int>(i)) return std::nullopt;
    QMatrix inv(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) inv.at(i, j) = aug.at(i, m.cols() + j);
    return inv;
}

Subspace Subspace::span(const QMatrix& cols) {
    Subspace s(cols.rows());
    QMatrix t = cols.transpose();
    std::vector<int> pivots = rref(t);
    std::vector<std::vector<Rat>> rows;
    for (size_t i = 0; i < pivots.size(); ++i) rows.push_back(t.row(static_cast<int>(i)));
    s.basis_ = rows.empty() ? QMatrix(cols.rows(), 0) : QMatrix::from_rows(rows).transpose();
    return s;
}

Subspace Subspace::span(int ambient_dim, const std::vector<std::vector<Rat>>& vectors) {
    if (vectors.empty()) return Subspace(ambient_dim);
    for (const auto& v : vectors)
        if (static_cast<int>(v.size()) != ambient_dim) throw std::invalid_argument("span ambient mismatch");
    return span(QMatrix::from_cols(vectors));
}

bool Subspace::contains(const std::vector<Rat>& v) const {
    return coordinates(v).has_value();
}

bool Subspace::contains(const Subspace& other) const {
    if (ambient_ != other.ambient_) return false;
    for (int j = 0; j < other.dim(); ++j)
        if (!contains(other.basis_.col(j))) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& o) const {
    if (ambient_ != o.ambient_) throw std::invalid_argument("subspace sum ambient mismatch");
    return span(basis_.hstack(o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const {
    if (ambient_ != o.ambient_) throw std::invalid_argument("subspace intersect ambient mismatch");
    if (dim() == 0 || o.dim() == 0) return Subspace(ambient_);
    QMatrix glued = basis_.hstack(o.basis_);
    QMatrix ker = kernel_basis(glued);
    std::vector<std::vector<Rat>> vecs;
    for (int j = 0; j < ker.cols(); ++j) {
        std::vector<Rat> coeff(dim());
        for (int i = 0; i < dim(); ++i) coeff[i] = ker.at(i, j);
        vecs.push_back(basis_.apply(coeff));
    }
    return span(ambient_, vecs);
}

std::optional<std::vector<Rat>> Subspace::coordinates(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != ambient_) throw std::invalid_argument("coordinates ambient mismatch");
    if (dim() == 0) {
        for (const auto& x : v)
            if (x != 0) return std::nullopt;
        return std::vector<Rat>{};
    }
    return solve(basis_, v);
}

Subspace Subspace::complement() const {
    QMatrix glued = basis_;
    std::vector<std::vector<Rat>> extra;
    int current = dim();
    for (int i = 0; i < ambient_ && current < ambient_; ++i) {
        std::vector<Rat> e(ambient_, Rat(0));
        e[i] = 1;
        QMatrix cand = glued.hstack(QMatrix::col_vector(e));
        if (rank(cand) > current) {
            glued = cand;
            ++current;
            extra.push_back(e);
        }
    }
    return Subspace::span(ambient_, extra);
}

std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r(s);
    r.canonicalize();
    return r;
}

}  // namespace dgcell
