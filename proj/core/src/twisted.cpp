#include "dgcell/twisted.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgcell {

namespace {

Rat pm(long exponent) { return (exponent % 2 + 2) % 2 == 0 ? Rat(1) : Rat(-1); }

Bimodule part_bimodule(const CatContext& ctx, const TCEntry& e) {
    return shift_bimodule(ctx.realize(e.gens).bim, e.shift);
}

Complex as_complex(const Bimodule& m) {
    Complex c;
    c.space = m.space;
    c.d = m.d;
    return c;
}

GradedMap alpha_at(const TwistedComplex& x, const std::vector<Bimodule>& parts, int i, int j) {
    if (x.alpha.size() == x.entries.size() && x.alpha[i].size() == x.entries.size())
        return x.alpha[i][j];
    return GradedMap::zero(parts[j].space, parts[i].space, 1);
}

std::vector<std::vector<GradedMap>> zero_alpha(const std::vector<Bimodule>& parts) {
    size_t n = parts.size();
    std::vector<std::vector<GradedMap>> a(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            a[i].push_back(GradedMap::zero(parts[j].space, parts[i].space, 1));
    return a;
}

std::vector<Bimodule> all_parts(const TwistedComplex& x) {
    std::vector<Bimodule> parts;
    for (const TCEntry& e : x.entries) parts.push_back(part_bimodule(*x.ctx, e));
    return parts;
}

int flat_of_tuple(const Realization& r, int idx) {
    auto [deg, sl] = r.tuple_pos[idx];
    return r.bim.space.flat_index(deg, sl);
}

}  // namespace

TwistedComplex tc_zero(const CatContext& ctx) {
    TwistedComplex x;
    x.ctx = &ctx;
    return x;
}

TwistedComplex tc_single(const CatContext& ctx, const GenList& gens, int shift) {
    TwistedComplex x;
    x.ctx = &ctx;
    GenList n = ctx.normalize(gens);
    if (n.empty()) return x;
    x.entries.push_back({n, shift});
    x.alpha = zero_alpha(all_parts(x));
    return x;
}

TwistedComplex tc_from_entries(const CatContext& ctx, const std::vector<TCEntry>& entries) {
    TwistedComplex x;
    x.ctx = &ctx;
    for (const TCEntry& e : entries) x.entries.push_back({ctx.normalize(e.gens), e.shift});
    x.alpha = zero_alpha(all_parts(x));
    return x;
}

GradedMap TotData::include(int i) const {
    GradedMap f = GradedMap::zero(parts[i].space, bim.space, 0);
    for (const auto& [k, d] : parts[i].space.dims) {
        QMatrix m(bim.space.dim(k), d);
        int off = offsets[i].at(k);
        for (int r = 0; r < d; ++r) m.at(off + r, r) = 1;
        f.set_block(k, std::move(m));
    }
    return f;
}

GradedMap TotData::project(int i) const {
    GradedMap f = GradedMap::zero(bim.space, parts[i].space, 0);
    for (const auto& [k, d] : parts[i].space.dims) {
        QMatrix m(d, bim.space.dim(k));
        int off = offsets[i].at(k);
        for (int r = 0; r < d; ++r) m.at(r, off + r) = 1;
        f.set_block(k, std::move(m));
    }
    return f;
}

TotData tot(const TwistedComplex& x) {
    if (!x.ctx) throw std::invalid_argument("tot: unbound twisted complex");
    const CatContext& ctx = *x.ctx;
    const DgAlgebra& a = ctx.algebra();
    TotData t;
    t.parts = all_parts(x);
    int n = static_cast<int>(t.parts.size());
    t.offsets.resize(n);
    t.bim.A = &a;
    for (int i = 0; i < n; ++i)
        for (const auto& [k, d] : t.parts[i].space.dims) {
            t.offsets[i][k] = t.bim.space.dim(k);
            t.bim.space.dims[k] += d;
        }
    t.bim.src_block = n > 0 ? t.parts[0].src_block : -1;
    t.bim.tgt_block = n > 0 ? t.parts[0].tgt_block : -1;
    for (int i = 1; i < n; ++i) {
        if (t.parts[i].src_block != t.bim.src_block) t.bim.src_block = -1;
        if (t.parts[i].tgt_block != t.bim.tgt_block) t.bim.tgt_block = -1;
    }
    t.bim.d = GradedMap::zero(t.bim.space, t.bim.space, 1);
    for (int m = 0; m < a.dim(); ++m) {
        t.bim.left.push_back(GradedMap::zero(t.bim.space, t.bim.space, a.degrees[m]));
        t.bim.right.push_back(GradedMap::zero(t.bim.space, t.bim.space, a.degrees[m]));
    }
    if (n == 0) return t;
    std::vector<GradedMap> inc, prj;
    for (int i = 0; i < n; ++i) {
        inc.push_back(t.include(i));
        prj.push_back(t.project(i));
    }
    GradedMap d = t.bim.d;
    for (int i = 0; i < n; ++i) d = d + inc[i].compose(t.parts[i].d).compose(prj[i]);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            GradedMap aij = alpha_at(x, t.parts, i, j);
            if (!aij.is_zero()) d = d + inc[i].compose(aij).compose(prj[j]);
        }
    t.bim.d = d;
    for (int m = 0; m < a.dim(); ++m) {
        GradedMap l = t.bim.left[m], r = t.bim.right[m];
        for (int i = 0; i < n; ++i) {
            l = l + inc[i].compose(t.parts[i].left[m]).compose(prj[i]);
            r = r + inc[i].compose(t.parts[i].right[m]).compose(prj[i]);
        }
        t.bim.left[m] = l;
        t.bim.right[m] = r;
    }
    return t;
}

std::vector<std::string> validate_tc(const TwistedComplex& x) {
    std::vector<std::string> issues;
    if (!x.ctx) return {"unbound twisted complex"};
    std::vector<Bimodule> parts = all_parts(x);
    size_t n = x.entries.size();
    if (!x.alpha.empty()) {
        if (x.alpha.size() != n) issues.push_back("connection grid has wrong size");
        for (size_t i = 0; i < x.alpha.size() && i < n; ++i) {
            if (x.alpha[i].size() != n) {
                issues.push_back("connection row has wrong size");
                continue;
            }
            for (size_t j = 0; j < n; ++j) {
                const GradedMap& a = x.alpha[i][j];
                if (a.degree != 1 || !(a.source == parts[j].space) || !(a.target == parts[i].space))
                    issues.push_back("connection component has wrong shape");
                else if (i >= j && !a.is_zero())
                    issues.push_back("connection is not strictly upper triangular");
            }
        }
    }
    if (!issues.empty()) return issues;
    TotData t = tot(x);
    for (const auto& s : t.bim.validate()) issues.push_back("total bimodule: " + s);
    return issues;
}

TwistedComplex tc_normalize(const TwistedComplex& x) {
    if (!x.ctx) return x;
    TwistedComplex out;
    out.ctx = x.ctx;
    std::vector<Bimodule> parts = all_parts(x);
    std::vector<int> keep;
    for (size_t i = 0; i < x.entries.size(); ++i) {
        GenList n = x.ctx->normalize(x.entries[i].gens);
        if (n.empty() || parts[i].is_zero_object()) continue;
        keep.push_back(static_cast<int>(i));
        out.entries.push_back({n, x.entries[i].shift});
    }
    std::vector<Bimodule> nparts = all_parts(out);
    out.alpha = zero_alpha(nparts);
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = 0; j < keep.size(); ++j) {
            GradedMap a = alpha_at(x, parts, keep[i], keep[j]);
            if (!a.is_zero()) out.alpha[i][j] = a;
        }
    return out;
}

bool tc_equal(const TwistedComplex& a, const TwistedComplex& b) {
    TwistedComplex na = tc_normalize(a), nb = tc_normalize(b);
    if (na.entries != nb.entries) return false;
    std::vector<Bimodule> pa = all_parts(na), pb = all_parts(nb);
    for (size_t i = 0; i < na.entries.size(); ++i)
        for (size_t j = 0; j < na.entries.size(); ++j)
            if (!(alpha_at(na, pa, static_cast<int>(i), static_cast<int>(j)) ==
                  alpha_at(nb, pb, static_cast<int>(i), static_cast<int>(j))))
                return false;
    return true;
}

TwistedComplex tc_shift(const TwistedComplex& x, int t) {
    TwistedComplex out;
    out.ctx = x.ctx;
    std::vector<Bimodule> parts = all_parts(x);
    for (const TCEntry& e : x.entries) out.entries.push_back({e.gens, e.shift + t});
    out.alpha = zero_alpha(all_parts(out));
    for (size_t i = 0; i < x.entries.size(); ++i)
        for (size_t j = 0; j < x.entries.size(); ++j) {
            GradedMap a = alpha_at(x, parts, static_cast<int>(i), static_cast<int>(j));
            if (!a.is_zero()) out.alpha[i][j] = shift(a, t, t) * pm(t);
        }
    return out;
}

TwistedComplex tc_direct_sum(const TwistedComplex& a, const TwistedComplex& b) {
    if (a.ctx != b.ctx) throw std::invalid_argument("tc_direct_sum: different contexts");
    TwistedComplex out;
    out.ctx = a.ctx;
    out.entries = a.entries;
    out.entries.insert(out.entries.end(), b.entries.begin(), b.entries.end());
    std::vector<Bimodule> pa = all_parts(a), pb = all_parts(b);
    out.alpha = zero_alpha(all_parts(out));
    size_t na = a.entries.size();
    for (size_t i = 0; i < na; ++i)
        for (size_t j = 0; j < na; ++j) {
            GradedMap m = alpha_at(a, pa, static_cast<int>(i), static_cast<int>(j));
            if (!m.is_zero()) out.alpha[i][j] = m;
        }
    for (size_t i = 0; i < b.entries.size(); ++i)
        for (size_t j = 0; j < b.entries.size(); ++j) {
            GradedMap m = alpha_at(b, pb, static_cast<int>(i), static_cast<int>(j));
            if (!m.is_zero()) out.alpha[na + i][na + j] = m;
        }
    return out;
}

TwistedComplex tc_cone(const TwistedComplex& x, const TwistedComplex& y, const GradedMap& f_tot) {
    if (x.ctx != y.ctx) throw std::invalid_argument("tc_cone: different contexts");
    TotData tx = tot(x), ty = tot(y);
    if (f_tot.degree != 0 || !(f_tot.source == tx.bim.space) || !(f_tot.target == ty.bim.space))
        throw std::invalid_argument("tc_cone: morphism shape mismatch");
    if (!map_differential(f_tot, as_complex(tx.bim), as_complex(ty.bim)).is_zero())
        throw std::invalid_argument("tc_cone: morphism is not a chain map");
    TwistedComplex out;
    out.ctx = x.ctx;
    out.entries = y.entries;
    for (const TCEntry& e : x.entries) out.entries.push_back({e.gens, e.shift + 1});
    out.alpha = zero_alpha(all_parts(out));
    size_t ny = y.entries.size(), nx = x.entries.size();
    for (size_t i = 0; i < ny; ++i)
        for (size_t j = 0; j < ny; ++j) {
            GradedMap m = alpha_at(y, ty.parts, static_cast<int>(i), static_cast<int>(j));
            if (!m.is_zero()) out.alpha[i][j] = m;
        }
    for (size_t i = 0; i < nx; ++i)
        for (size_t j = 0; j < nx; ++j) {
            GradedMap m = alpha_at(x, tx.parts, static_cast<int>(i), static_cast<int>(j));
            if (!m.is_zero()) out.alpha[ny + i][ny + j] = shift(m, 1, 1) * Rat(-1);
        }
    for (size_t i = 0; i < ny; ++i)
        for (size_t j = 0; j < nx; ++j) {
            GradedMap fij = ty.project(static_cast<int>(i)).compose(f_tot).compose(tx.include(static_cast<int>(j)));
            if (!fij.is_zero()) out.alpha[i][ny + j] = shift(fij, 1, 0);
        }
    return out;
}

TwistedComplex tc_hcompose(const TwistedComplex& x, const TwistedComplex& y) {
    if (x.ctx != y.ctx) throw std::invalid_argument("tc_hcompose: different contexts");
    const CatContext& ctx = *x.ctx;
    TwistedComplex out;
    out.ctx = &ctx;
    size_t nx = x.entries.size(), ny = y.entries.size();
    for (size_t i = 0; i < nx; ++i)
        for (size_t j = 0; j < ny; ++j)
            out.entries.push_back(
                {ctx.compose_lists(x.entries[i].gens, y.entries[j].gens), x.entries[i].shift + y.entries[j].shift});
    std::vector<Bimodule> px = all_parts(x), py = all_parts(y);
    out.alpha = zero_alpha(all_parts(out));
    auto pos = [&](size_t i, size_t j) { return i * ny + j; };
    /* X-direction: α_x ⊗ 1, whiskered on the right by Y_j, with sign (−1)^{t_j} */
    for (size_t i = 0; i < nx; ++i)
        for (size_t i2 = i + 1; i2 < nx; ++i2) {
            GradedMap beta = alpha_at(x, px, static_cast<int>(i), static_cast<int>(i2));
            if (beta.is_zero()) continue;
            int si = x.entries[i].shift, si2 = x.entries[i2].shift;
            GradedMap beta0 = shift(beta, -si2, -si);
            for (size_t j = 0; j < ny; ++j) {
                int tj = y.entries[j].shift;
                GradedMap w = ctx.whisker_right_list(x.entries[i2].gens, x.entries[i].gens, y.entries[j].gens, beta0);
                GradedMap comp = shift(w, si2 + tj, si + tj) * pm(tj);
                if (!comp.is_zero()) out.alpha[pos(i, j)][pos(i2, j)] = comp;
            }
        }
    /* Y-direction: 1 ⊗ α_y, whiskered on the left by X_i, with sign
     * (−1)^{s_i(t_j − t_{j'}) + s_i} */
    for (size_t j = 0; j < ny; ++j)
        for (size_t j2 = j + 1; j2 < ny; ++j2) {
            GradedMap gamma = alpha_at(y, py, static_cast<int>(j), static_cast<int>(j2));
            if (gamma.is_zero()) continue;
            int tj = y.entries[j].shift, tj2 = y.entries[j2].shift;
            GradedMap gamma0 = shift(gamma, -tj2, -tj);
            for (size_t i = 0; i < nx; ++i) {
                int si = x.entries[i].shift;
                GradedMap w = ctx.whisker_left_list(x.entries[i].gens, y.entries[j2].gens, y.entries[j].gens, gamma0);
                GradedMap comp = shift(w, si + tj2, si + tj) * pm(static_cast<long>(si) * (tj - tj2) + si);
                if (!comp.is_zero()) out.alpha[pos(i, j)][pos(i, j2)] = comp;
            }
        }
    return out;
}

Expansion tc_expand_full(const TwistedComplex& x0) {
    TwistedComplex x = tc_normalize(x0);
    const CatContext& ctx = *x.ctx;
    const DgAlgebra& a = ctx.algebra();

    struct Item {
        TCEntry entry;
        QMatrix incl;  // flat realize(new gens) -> flat realize(original gens)
        int orig;      // original entry index
    };
    std::vector<Item> items;

    for (size_t ei = 0; ei < x.entries.size(); ++ei) {
        const TCEntry& e = x.entries[ei];
        const Realization& r = ctx.realize(e.gens);
        int k = static_cast<int>(e.gens.size());
        if (k == 1) {
            items.push_back({e, QMatrix::identity(r.bim.space.total_dim()), static_cast<int>(ei)});
            continue;
        }
        /* middle tuple complex over factors 1..k-1 of the realization */
        std::vector<int> msizes;
        for (int p = 1; p < k; ++p) msizes.push_back(r.factors[p].size());
        int nm = k - 1;
        std::vector<std::vector<int>> mtuples;
        std::vector<std::pair<int, int>> mpos;
        std::map<int, int> per_deg;
        std::map<int, std::vector<int>> by_deg;  // degree -> mid tuple indices in slice order
        {
            std::vector<int> t(nm, 0);
            for (;;) {
                int deg = 0;
                for (int p = 0; p < nm; ++p) deg += r.factors[p + 1].degs[t[p]];
                mtuples.push_back(t);
                mpos.emplace_back(deg, per_deg[deg]++);
                by_deg[deg].push_back(static_cast<int>(mtuples.size()) - 1);
                int p = nm - 1;
                while (p >= 0) {
                    if (++t[p] < msizes[p]) break;
                    t[p] = 0;
                    --p;
                }
                if (p < 0) break;
            }
        }
        auto mindex = [&](const std::vector<int>& t) {
            int idx = 0;
            for (int p = 0; p < nm; ++p) idx = idx * msizes[p] + t[p];
            return idx;
        };
        GradedVectorSpace mspace;
        for (const auto& [deg, dim] : per_deg) mspace.set_dim(deg, dim);
        Complex mid = Complex::with_zero_differential(mspace);
        {
            std::vector<QMatrix> dcoef(nm);
            for (int p = 0; p < nm; ++p) {
                int np = msizes[p];
                QMatrix fm = QMatrix::from_cols(r.factors[p + 1].vecs);
                dcoef[p] = QMatrix(np, np);
                for (int i = 0; i < np; ++i) {
                    auto s = solve(fm, a.apply_diff(r.factors[p + 1].vecs[i]));
                    if (!s) throw std::logic_error("tc_expand: middle factor is not differential-stable");
                    for (int j = 0; j < np; ++j) dcoef[p].at(j, i) = (*s)[j];
                }
            }
            std::map<int, QMatrix> acc;
            for (size_t ti = 0; ti < mtuples.size(); ++ti) {
                auto [deg, sl] = mpos[ti];
                Rat sign(1);
                for (int p = 0; p < nm; ++p) {
                    for (int j = 0; j < msizes[p]; ++j) {
                        if (dcoef[p].at(j, mtuples[ti][p]) == 0) continue;
                        std::vector<int> t2 = mtuples[ti];
                        t2[p] = j;
                        auto [d2, s2] = mpos[mindex(t2)];
                        (void)d2;
                        auto it = acc.find(deg);
                        if (it == acc.end())
                            it = acc.emplace(deg, QMatrix(mspace.dim(deg + 1), mspace.dim(deg))).first;
                        it->second.at(s2, sl) += sign * dcoef[p].at(j, mtuples[ti][p]);
                    }
                    sign *= pm(r.factors[p + 1].degs[mtuples[ti][p]]);
                }
            }
            for (auto& [deg, m] : acc)
                if (!m.is_zero()) mid.d.set_block(deg, std::move(m));
        }
        if (!mid.validate()) throw std::logic_error("tc_expand: middle complex invalid");

        AdaptedBasis ab = decompose_complex(mid);
        struct Z {
            int deg;
            int kind;  // 0 = pair target, 1 = free, 2 = pair source
            int idx;
            std::vector<Rat> vec;
        };
        std::vector<Z> zs;
        for (size_t i = 0; i < ab.free.size(); ++i) zs.push_back({ab.free[i].deg, 1, static_cast<int>(i), ab.free[i].vec});
        for (size_t i = 0; i < ab.pairs.size(); ++i) {
            zs.push_back({ab.pairs[i].deg + 1, 0, static_cast<int>(i), ab.pairs[i].target});
            zs.push_back({ab.pairs[i].deg, 2, static_cast<int>(i), ab.pairs[i].source});
        }
        std::sort(zs.begin(), zs.end(), [](const Z& p, const Z& q) {
            return std::tuple(-p.deg, p.kind, p.idx) < std::tuple(-q.deg, q.kind, q.idx);
        });

        GenList pgen = {Gen::proj(e.gens.front().e, e.gens.back().f)};
        const Realization& rp = ctx.realize(pgen);
        for (const Z& z : zs) {
            QMatrix incl(r.bim.space.total_dim(), rp.bim.space.total_dim());
            for (size_t pi = 0; pi < rp.tuples.size(); ++pi) {
                int a0 = rp.tuples[pi][0], a1 = rp.tuples[pi][1];
                int col = flat_of_tuple(rp, static_cast<int>(pi));
                Rat sign = pm(static_cast<long>(z.deg) * rp.factors[0].degs[a0]);
                const std::vector<int>& slice = by_deg.count(z.deg) ? by_deg.at(z.deg) : std::vector<int>{};
                for (size_t s = 0; s < z.vec.size(); ++s) {
                    if (z.vec[s] == 0) continue;
                    const std::vector<int>& mu = mtuples[slice[s]];
                    std::vector<int> tup;
                    tup.push_back(a0);
                    tup.insert(tup.end(), mu.begin(), mu.end());
                    tup.push_back(a1);
                    incl.at(flat_of_tuple(r, r.tuple_index(tup)), col) += sign * z.vec[s];
                }
            }
            items.push_back({{pgen, e.shift - z.deg}, std::move(incl), static_cast<int>(ei)});
        }
    }

    TwistedComplex out;
    out.ctx = &ctx;
    for (const Item& it : items) out.entries.push_back(it.entry);
    out.alpha = zero_alpha(all_parts(out));
    TotData texp = tot(out);  // zero connection for now: diagonal differentials only
    TotData torig = tot(x);

    int ne = static_cast<int>(items.size());
    QMatrix phi(torig.bim.space.total_dim(), texp.bim.space.total_dim());
    {
        QMatrix acc = phi;
        for (int q = 0; q < ne; ++q) {
            QMatrix col = torig.include(items[q].orig).flat_matrix() * items[q].incl *
                          texp.project(q).flat_matrix();
            acc = acc + col;
        }
        phi = acc;
    }
    auto phi_inv = inverse(phi);
    if (!phi_inv) throw std::logic_error("tc_expand: change of basis is singular");
    QMatrix conj = *phi_inv * torig.bim.d.flat_matrix() * phi;

    for (int i = 0; i < ne; ++i)
        for (int j = 0; j < ne; ++j) {
            QMatrix comp = texp.project(i).flat_matrix() * conj * texp.include(j).flat_matrix();
            if (i == j) {
                if (comp != texp.parts[i].d.flat_matrix())
                    throw std::logic_error("tc_expand: diagonal differs from the entry differential");
            } else if (i > j) {
                if (!comp.is_zero()) throw std::logic_error("tc_expand: connection not upper triangular");
            } else if (!comp.is_zero()) {
                out.alpha[i][j] = graded_from_flat(texp.parts[j].space, texp.parts[i].space, 1, comp);
            }
        }
    return {out, phi};
}

TwistedComplex tc_expand(const TwistedComplex& x) { return tc_expand_full(x).tc; }

TwistedComplex hcompose(const CatContext& ctx, const Gen& f, const Gen& g) {
    return tc_expand(tc_hcompose(tc_single(ctx, {f}), tc_single(ctx, {g})));
}

HomSpace tc_hom(const TwistedComplex& x, const TwistedComplex& y) {
    /* unshifted single-entry complexes hit the context-level Hom cache */
    if (x.ctx && x.ctx == y.ctx && x.entries.size() == 1 && y.entries.size() == 1 &&
        x.entries[0].shift == 0 && y.entries[0].shift == 0)
        return x.ctx->hom(x.entries[0].gens, y.entries[0].gens);
    return oracle_hom(tot(x).bim, tot(y).bim);
}

Completion split_idempotent(const TwistedComplex& x, const GradedMap& e_tot) {
    TotData t = tot(x);
    if (e_tot.degree != 0 || !(e_tot.source == t.bim.space) || !(e_tot.target == t.bim.space))
        throw std::invalid_argument("split_idempotent: endomorphism shape mismatch");
    if (!(e_tot.compose(e_tot) == e_tot)) throw std::invalid_argument("split_idempotent: not idempotent");
    if (!map_differential(e_tot, as_complex(t.bim), as_complex(t.bim)).is_zero())
        throw std::invalid_argument("split_idempotent: not a chain map");

    Completion res;
    int n = static_cast<int>(x.entries.size());
    /* internal case: e is the projection onto a subset of the entries */
    {
        std::vector<int> keep;
        bool diag = true;
        for (int i = 0; i < n && diag; ++i) {
            GradedMap eii = t.project(i).compose(e_tot).compose(t.include(i));
            if (eii == GradedMap::identity(t.parts[i].space))
                keep.push_back(i);
            else if (!eii.is_zero())
                diag = false;
        }
        if (diag) {
            GradedMap p = GradedMap::zero(t.bim.space, t.bim.space, 0);
            for (int i : keep) p = p + t.include(i).compose(t.project(i));
            if (p == e_tot) {
                res.internal = true;
                TwistedComplex sub;
                sub.ctx = x.ctx;
                for (int i : keep) sub.entries.push_back(x.entries[i]);
                sub.alpha = zero_alpha(all_parts(sub));
                for (size_t i = 0; i < keep.size(); ++i)
                    for (size_t j = 0; j < keep.size(); ++j) {
                        GradedMap m = alpha_at(x, t.parts, keep[i], keep[j]);
                        if (!m.is_zero()) sub.alpha[i][j] = m;
                    }
                res.sub = sub;
            }
        }
    }
    /* explicit image bimodule with compressed structure maps */
    GradedVectorSpace s;
    std::map<int, QMatrix> cols;
    for (const auto& [k, dk] : t.bim.space.dims) {
        (void)dk;
        QMatrix img = image_basis(e_tot.block(k));
        if (img.cols() == 0) continue;
        s.set_dim(k, img.cols());
        cols[k] = img;
    }
    res.bim.A = t.bim.A;
    res.bim.space = s;
    res.bim.src_block = t.bim.src_block;
    res.bim.tgt_block = t.bim.tgt_block;
    auto compress = [&](const GradedMap& op) {
        GradedMap f = GradedMap::zero(s, s, op.degree);
        for (const auto& [k, mat] : cols) {
            int tdim = s.dim(k + op.degree);
            QMatrix moved = op.block(k) * mat;
            if (moved.is_zero()) continue;
            if (tdim == 0) throw std::logic_error("split_idempotent: image not closed under structure map");
            QMatrix blk(tdim, mat.cols());
            for (int c = 0; c < mat.cols(); ++c) {
                auto sol = solve(cols.at(k + op.degree), moved.col(c));
                if (!sol) throw std::logic_error("split_idempotent: image not closed under structure map");
                for (int i = 0; i < tdim; ++i) blk.at(i, c) = (*sol)[i];
            }
            f.set_block(k, std::move(blk));
        }
        return f;
    };
    res.bim.d = compress(t.bim.d);
    for (size_t m = 0; m < t.bim.left.size(); ++m) {
        res.bim.left.push_back(compress(t.bim.left[m]));
        res.bim.right.push_back(compress(t.bim.right[m]));
    }
    res.incl = GradedMap::zero(s, t.bim.space, 0);
    for (const auto& [k, mat] : cols) res.incl.set_block(k, mat);
    /* projection: coordinates of e(v) in the image basis */
    res.proj = GradedMap::zero(t.bim.space, s, 0);
    for (const auto& [k, mat] : cols) {
        QMatrix ek = e_tot.block(k);
        QMatrix blk(mat.cols(), ek.cols());
        for (int c = 0; c < ek.cols(); ++c) {
            auto sol = solve(mat, ek.col(c));
            if (!sol) throw std::logic_error("split_idempotent: projection failed");
            for (int i = 0; i < mat.cols(); ++i) blk.at(i, c) = (*sol)[i];
        }
        if (!blk.is_zero()) res.proj.set_block(k, std::move(blk));
    }
    return res;
}

}  // namespace dgcell
