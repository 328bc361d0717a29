#include "dgcell/graded.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgcell {

void GradedVectorSpace::set_dim(int deg, int dim) {
    if (dim < 0) throw std::invalid_argument("negative dimension");
    if (dim == 0) {
        dims.erase(deg);
        labels.erase(deg);
    } else {
        dims[deg] = dim;
    }
}

int GradedVectorSpace::dim(int deg) const {
    auto it = dims.find(deg);
    return it == dims.end() ? 0 : it->second;
}

int GradedVectorSpace::total_dim() const {
    int t = 0;
    for (const auto& [k, d] : dims) t += d;
    return t;
}

int GradedVectorSpace::min_deg() const { return dims.empty() ? 0 : dims.begin()->first; }
int GradedVectorSpace::max_deg() const { return dims.empty() ? 0 : dims.rbegin()->first; }

int GradedVectorSpace::flat_index(int deg, int i) const {
    int off = 0;
    for (const auto& [k, d] : dims) {
        if (k == deg) {
            if (i < 0 || i >= d) throw std::out_of_range("flat_index slice index");
            return off + i;
        }
        off += d;
    }
    throw std::out_of_range("flat_index degree");
}

std::pair<int, int> GradedVectorSpace::from_flat(int idx) const {
    int off = 0;
    for (const auto& [k, d] : dims) {
        if (idx < off + d) return {k, idx - off};
        off += d;
    }
    throw std::out_of_range("from_flat index");
}

GradedMap GradedMap::zero(const GradedVectorSpace& src, const GradedVectorSpace& tgt, int degree) {
    GradedMap f;
    f.source = src;
    f.target = tgt;
    f.degree = degree;
    return f;
}

GradedMap GradedMap::identity(const GradedVectorSpace& v) {
    GradedMap f = zero(v, v, 0);
    for (const auto& [k, d] : v.dims) f.blocks[k] = QMatrix::identity(d);
    return f;
}

GradedMap GradedMap::sign_operator(const GradedVectorSpace& v) {
    GradedMap f = zero(v, v, 0);
    for (const auto& [k, d] : v.dims) {
        QMatrix m = QMatrix::identity(d);
        if (k % 2 != 0) m = -m;
        f.blocks[k] = m;
    }
    return f;
}

QMatrix GradedMap::block(int k) const {
    auto it = blocks.find(k);
    if (it != blocks.end()) return it->second;
    return QMatrix::zero(target.dim(k + degree), source.dim(k));
}

void GradedMap::set_block(int k, QMatrix m) {
    if (m.rows() != target.dim(k + degree) || m.cols() != source.dim(k))
        throw std::invalid_argument("set_block shape mismatch");
    if (m.is_zero())
        blocks.erase(k);
    else
        blocks[k] = std::move(m);
}

bool GradedMap::is_zero() const {
    for (const auto& [k, m] : blocks)
        if (!m.is_zero()) return false;
    return true;
}

bool GradedMap::operator==(const GradedMap& o) const {
    if (!(source == o.source) || !(target == o.target) || degree != o.degree) return false;
    for (const auto& [k, d] : source.dims) {
        (void)d;
        if (block(k) != o.block(k)) return false;
    }
    return true;
}

GradedMap GradedMap::compose(const GradedMap& inner) const {
    if (!(inner.target == source)) throw std::invalid_argument("compose: middle space mismatch");
    GradedMap r = zero(inner.source, target, degree + inner.degree);
    for (const auto& [k, m] : inner.blocks) {
        QMatrix outer = block(k + inner.degree);
        if (outer.rows() == 0 || outer.cols() == 0) continue;
        QMatrix prod = outer * m;
        if (!prod.is_zero()) r.blocks[k] = prod;
    }
    return r;
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
    if (!(source == o.source) || !(target == o.target) || degree != o.degree)
        throw std::invalid_argument("graded map sum mismatch");
    GradedMap r = zero(source, target, degree);
    for (const auto& [k, d] : source.dims) {
        (void)d;
        QMatrix s = block(k) + o.block(k);
        if (!s.is_zero()) r.blocks[k] = s;
    }
    return r;
}

GradedMap GradedMap::operator-(const GradedMap& o) const { return *this + (o * Rat(-1)); }

GradedMap GradedMap::operator*(const Rat& s) const {
    GradedMap r = zero(source, target, degree);
    if (s == 0) return r;
    for (const auto& [k, m] : blocks) r.blocks[k] = m * s;
    return r;
}

QMatrix GradedMap::flat_matrix() const {
    QMatrix m(target.total_dim(), source.total_dim());
    for (const auto& [k, b] : blocks) {
        if (b.rows() == 0 || b.cols() == 0) continue;
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j)
                if (b.at(i, j) != 0) m.at(target.flat_index(k + degree, i), source.flat_index(k, j)) = b.at(i, j);
    }
    return m;
}

std::vector<Rat> GradedMap::flat_vector() const {
    QMatrix m = flat_matrix();
    std::vector<Rat> v;
    v.reserve(static_cast<size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
    return v;
}

std::vector<Rat> GradedMap::apply_flat(const std::vector<Rat>& v) const { return flat_matrix().apply(v); }

void GradedMap::check_shapes() const {
    for (const auto& [k, b] : blocks)
        if (b.rows() != target.dim(k + degree) || b.cols() != source.dim(k))
            throw std::invalid_argument("graded map block shape mismatch at degree " + std::to_string(k));
}

Complex Complex::with_zero_differential(const GradedVectorSpace& v) {
    Complex c;
    c.space = v;
    c.d = GradedMap::zero(v, v, 1);
    return c;
}

bool Complex::validate() const {
    if (d.degree != 1 || !(d.source == space) || !(d.target == space)) return false;
    try {
        d.check_shapes();
    } catch (const std::invalid_argument&) {
        return false;
    }
    return d.compose(d).is_zero();
}

GradedMap map_differential(const GradedMap& f, const Complex& v, const Complex& w) {
    if (!(f.source == v.space) || !(f.target == w.space))
        throw std::invalid_argument("map_differential: space mismatch");
    GradedMap a = w.d.compose(f);
    GradedMap b = f.compose(v.d);
    Rat sign = (f.degree % 2 == 0) ? Rat(1) : Rat(-1);
    return a - b * sign;
}

GradedVectorSpace shift(const GradedVectorSpace& v, int t) {
    GradedVectorSpace r;
    for (const auto& [k, d] : v.dims) r.dims[k - t] = d;
    for (const auto& [k, l] : v.labels) r.labels[k - t] = l;
    return r;
}

Complex shift(const Complex& v, int t) {
    Complex r;
    r.space = shift(v.space, t);
    r.d = GradedMap::zero(r.space, r.space, 1);
    Rat sign = (t % 2 == 0) ? Rat(1) : Rat(-1);
    for (const auto& [k, m] : v.d.blocks) {
        QMatrix b = m * sign;
        if (!b.is_zero()) r.d.blocks[k - t] = b;
    }
    return r;
}

GradedMap shift(const GradedMap& f, int t_source, int t_target) {
    GradedMap r;
    r.source = shift(f.source, t_source);
    r.target = shift(f.target, t_target);
    r.degree = f.degree + t_source - t_target;
    for (const auto& [k, m] : f.blocks) r.blocks[k - t_source] = m;
    return r;
}

GradedMap graded_from_flat(const GradedVectorSpace& src, const GradedVectorSpace& tgt, int degree,
                           const QMatrix& flat) {
    if (flat.rows() != tgt.total_dim() || flat.cols() != src.total_dim())
        throw std::invalid_argument("graded_from_flat: shape mismatch");
    GradedMap res = GradedMap::zero(src, tgt, degree);
    std::map<int, QMatrix> acc;
    for (int i = 0; i < flat.rows(); ++i)
        for (int j = 0; j < flat.cols(); ++j) {
            if (flat.at(i, j) == 0) continue;
            auto [dt, st] = tgt.from_flat(i);
            auto [ds, ss] = src.from_flat(j);
            if (dt != ds + degree) throw std::invalid_argument("graded_from_flat: degree pattern violated");
            auto it = acc.find(ds);
            if (it == acc.end()) it = acc.emplace(ds, QMatrix(tgt.dim(ds + degree), src.dim(ds))).first;
            it->second.at(st, ss) = flat.at(i, j);
        }
    for (auto& [k, m] : acc) res.set_block(k, std::move(m));
    return res;
}

int cohomology(const Complex& v, int k) {
    int dim_k = v.space.dim(k);
    QMatrix dk = v.d.block(k);
    int rank_k = (dk.rows() == 0 || dk.cols() == 0) ? 0 : rank(dk);
    QMatrix dkm1 = v.d.block(k - 1);
    int rank_km1 = (dkm1.rows() == 0 || dkm1.cols() == 0) ? 0 : rank(dkm1);
    return dim_k - rank_k - rank_km1;
}

std::map<int, int> cohomology_all(const Complex& v) {
    std::map<int, int> h;
    for (const auto& [k, d] : v.space.dims) {
        (void)d;
        int hk = cohomology(v, k);
        if (hk != 0) h[k] = hk;
    }
    return h;
}

namespace {
/* Greedily extend the span of `current` (columns) by columns of `candidates`;
 * returns the chosen candidate columns. */
std::vector<std::vector<Rat>> extend_span(QMatrix current, const QMatrix& candidates) {
    std::vector<std::vector<Rat>> chosen;
    int cur_rank = current.cols() == 0 ? 0 : rank(current);
    for (int j = 0; j < candidates.cols(); ++j) {
        QMatrix cand = current.hstack(candidates.submatrix_cols({j}));
        if (rank(cand) > cur_rank) {
            current = cand;
            ++cur_rank;
            chosen.push_back(candidates.col(j));
        }
    }
    return chosen;
}
}  // namespace

AdaptedBasis decompose_complex(const Complex& v) {
    AdaptedBasis out;
    if (!v.validate()) throw std::invalid_argument("decompose_complex: invalid complex");
    std::map<int, std::vector<std::vector<Rat>>> incoming;  // deg -> image vectors d(C_{deg-1})
    for (const auto& [k, dim_k] : v.space.dims) {
        QMatrix img = incoming.count(k) ? QMatrix::from_cols(incoming[k]) : QMatrix(dim_k, 0);
        QMatrix dk = v.d.block(k);
        QMatrix ker = (dk.rows() == 0) ? QMatrix::identity(dim_k) : kernel_basis(dk);
        /* free generators: extend im(d) inside ker(d) */
        for (auto& f : extend_span(img, ker)) out.free.push_back({k, std::move(f)});
        /* pair sources: extend ker(d) to the whole slice by standard vectors */
        QMatrix std_basis = QMatrix::identity(dim_k);
        for (auto& c : extend_span(ker, std_basis)) {
            std::vector<Rat> t = dk.apply(c);
            incoming[k + 1].push_back(t);
            out.pairs.push_back({k, std::move(c), std::move(t)});
        }
    }
    return out;
}

GradedVectorSpace tensor(const GradedVectorSpace& a, const GradedVectorSpace& b) {
    GradedVectorSpace r;
    for (const auto& [pa, da] : a.dims)
        for (const auto& [pb, db] : b.dims) r.dims[pa + pb] += da * db;
    return r;
}

int tensor_pos(const GradedVectorSpace& a, const GradedVectorSpace& b, int pa, int ia, int pb, int ib) {
    int d = pa + pb;
    int off = 0;
    for (const auto& [p, da] : a.dims) {
        if (p > pa) break;
        int db = b.dim(d - p);
        if (db == 0) continue;
        if (p == pa) return off + ia * db + ib;
        off += da * db;
    }
    throw std::out_of_range("tensor_pos");
}

Complex tensor(const Complex& a, const Complex& b) {
    Complex r = Complex::with_zero_differential(tensor(a.space, b.space));
    for (const auto& [deg, dim] : r.space.dims) {
        int tdim = r.space.dim(deg + 1);
        if (tdim == 0) continue;
        QMatrix m(tdim, dim);
        bool nonzero = false;
        for (const auto& [pa, da] : a.space.dims) {
            int pb = deg - pa;
            int db = b.space.dim(pb);
            if (db == 0) continue;
            QMatrix da_blk = a.d.block(pa);
            QMatrix db_blk = b.d.block(pb);
            for (int ia = 0; ia < da; ++ia)
                for (int ib = 0; ib < db; ++ib) {
                    int src = tensor_pos(a.space, b.space, pa, ia, pb, ib);
                    /* d(a)⊗b */
                    for (int i2 = 0; i2 < da_blk.rows(); ++i2) {
                        if (da_blk.at(i2, ia) == 0) continue;
                        int dst = tensor_pos(a.space, b.space, pa + 1, i2, pb, ib);
                        m.at(dst, src) += da_blk.at(i2, ia);
                        nonzero = true;
                    }
                    /* (−1)^{|a|} a⊗d(b) */
                    Rat sign = (pa % 2 == 0) ? Rat(1) : Rat(-1);
                    for (int j2 = 0; j2 < db_blk.rows(); ++j2) {
                        if (db_blk.at(j2, ib) == 0) continue;
                        int dst = tensor_pos(a.space, b.space, pa, ia, pb + 1, j2);
                        m.at(dst, src) += sign * db_blk.at(j2, ib);
                        nonzero = true;
                    }
                }
        }
        if (nonzero) r.d.blocks[deg] = std::move(m);
    }
    return r;
}

}  // namespace dgcell
