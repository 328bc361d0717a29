#include "dgcell/spec_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dgcell {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument("spec error: " + what); }

Rat rat_of(const json& v, const std::string& where) {
    try {
        if (v.is_string()) return rat_from_string(v.get<std::string>());
        if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
    } catch (const std::exception&) {
    }
    fail("expected a rational (\"p/q\" or integer) at " + where);
}

std::vector<Rat> rat_vector(const json& v, int n, const std::string& where) {
    if (!v.is_array() || static_cast<int>(v.size()) != n)
        fail("expected an array of " + std::to_string(n) + " rationals at " + where);
    std::vector<Rat> out;
    for (const auto& x : v) out.push_back(rat_of(x, where));
    return out;
}

std::vector<Poly> parse_hints(const json& j) {
    std::vector<Poly> hints;
    if (!j.contains("factorizations")) return hints;
    if (!j["factorizations"].is_array()) fail("\"factorizations\" must be an array of coefficient arrays");
    for (const auto& f : j["factorizations"]) {
        if (!f.is_array() || f.empty()) fail("each factorization hint is a non-empty coefficient array");
        std::vector<Rat> c;
        for (const auto& x : f) c.push_back(rat_of(x, "factorizations"));
        Poly p = Poly::from_coeffs(std::move(c));
        if (p.deg() < 1 || p.lead() != 1) fail("factorization hints must be monic of degree >= 1");
        hints.push_back(std::move(p));
    }
    return hints;
}

DgAlgebra parse_table(const json& j) {
    for (const char* k : {"basis", "degrees", "mult", "unit"})
        if (!j.contains(k)) fail(std::string("table form requires \"") + k + "\"");
    DgAlgebra a;
    a.name = j.value("name", std::string("algebra"));
    for (const auto& l : j["basis"]) {
        if (!l.is_string()) fail("basis labels must be strings");
        a.labels.push_back(l.get<std::string>());
    }
    int n = a.dim();
    if (n == 0) fail("empty basis");
    if (!j["degrees"].is_array() || static_cast<int>(j["degrees"].size()) != n)
        fail("\"degrees\" must list one integer per basis element");
    for (const auto& d : j["degrees"]) {
        if (!d.is_number_integer()) fail("degrees must be integers");
        a.degrees.push_back(d.get<int>());
    }
    if (!j["mult"].is_array() || static_cast<int>(j["mult"].size()) != n) fail("\"mult\" must be an n×n table");
    for (int i = 0; i < n; ++i) {
        if (!j["mult"][i].is_array() || static_cast<int>(j["mult"][i].size()) != n)
            fail("\"mult\" must be an n×n table");
        a.mult.emplace_back();
        for (int k = 0; k < n; ++k)
            a.mult.back().push_back(rat_vector(j["mult"][i][k], n, "mult[" + std::to_string(i) + "][" +
                                                                       std::to_string(k) + "]"));
    }
    a.unit = rat_vector(j["unit"], n, "unit");
    a.diff = QMatrix(n, n);
    if (j.contains("diff")) {
        if (!j["diff"].is_array() || static_cast<int>(j["diff"].size()) != n) fail("\"diff\" must be an n×n matrix");
        for (int i = 0; i < n; ++i) {
            std::vector<Rat> row = rat_vector(j["diff"][i], n, "diff[" + std::to_string(i) + "]");
            for (int k = 0; k < n; ++k) a.diff.at(i, k) = row[k];
        }
    }
    if (j.contains("idempotents")) {
        if (!j["idempotents"].is_array()) fail("\"idempotents\" must be an array of {label, vector}");
        for (const auto& e : j["idempotents"]) {
            if (!e.contains("label") || !e.contains("vector")) fail("idempotent entries need label and vector");
            a.idempotent_labels.push_back(e["label"].get<std::string>());
            a.idempotents.push_back(rat_vector(e["vector"], n, "idempotent \"" + a.idempotent_labels.back() + "\""));
        }
    } else {
        a.idempotent_labels = {"1"};
        a.idempotents = {a.unit};
    }
    return a;
}

/* ------------------------------------------------------------ quiver form -- */

struct Arrow {
    std::string name;
    int src = -1, tgt = -1;
    int degree = 0;
};

struct Path {
    std::vector<int> arrows;  // product order: arrows[0] applied last
    int src = -1, tgt = -1;
    int degree = 0;
};

struct PathSpace {
    std::vector<Path> paths;           // ordered by length, then discovery
    std::map<std::string, int> index;  // arrow-sequence key -> path id
    std::vector<int> by_length_end;    // paths with length <= k occupy [0, by_length_end[k])

    static std::string key(const std::vector<int>& arrows, int src) {
        std::ostringstream s;
        s << "v" << src;
        for (int a : arrows) s << ":" << a;
        return s.str();
    }
    int find(const std::vector<int>& arrows, int src) const {
        auto it = index.find(key(arrows, src));
        return it == index.end() ? -1 : it->second;
    }
};

PathSpace enumerate_paths(int nv, const std::vector<Arrow>& arrows, int max_len) {
    PathSpace ps;
    for (int v = 0; v < nv; ++v) {
        Path p;
        p.src = p.tgt = v;
        ps.index[PathSpace::key({}, v)] = static_cast<int>(ps.paths.size());
        ps.paths.push_back(std::move(p));
    }
    size_t level_begin = 0;
    ps.by_length_end.push_back(static_cast<int>(ps.paths.size()));
    for (int len = 1; len <= max_len; ++len) {
        size_t level_end = ps.paths.size();
        for (size_t i = level_begin; i < level_end; ++i)
            for (size_t ai = 0; ai < arrows.size(); ++ai) {
                if (arrows[ai].src != ps.paths[i].tgt) continue;
                Path p;
                /* new arrow is applied last: prepend in product order */
                p.arrows = ps.paths[i].arrows;
                p.arrows.insert(p.arrows.begin(), static_cast<int>(ai));
                p.src = ps.paths[i].src;
                p.tgt = arrows[ai].tgt;
                p.degree = ps.paths[i].degree + arrows[ai].degree;
                ps.index[PathSpace::key(p.arrows, p.src)] = static_cast<int>(ps.paths.size());
                ps.paths.push_back(std::move(p));
                if (ps.paths.size() > 20000) fail("path space explodes before the truncation bound");
            }
        level_begin = level_end;
        ps.by_length_end.push_back(static_cast<int>(ps.paths.size()));
    }
    return ps;
}

/* formal linear combination of paths as a coordinate vector over ps.paths */
using PathVec = std::vector<Rat>;

PathVec path_unit(const PathSpace& ps, int id) {
    PathVec v(ps.paths.size(), Rat(0));
    v[id] = 1;
    return v;
}

/* product of two path ids inside the workspace; -1-degree mismatch = zero */
int concat(const PathSpace& ps, int left, int right) {
    const Path &l = ps.paths[left], &r = ps.paths[right];
    if (l.src != r.tgt) return -1;
    std::vector<int> seq = l.arrows;
    seq.insert(seq.end(), r.arrows.begin(), r.arrows.end());
    int id = ps.find(seq, r.src);
    if (id < 0) fail("a product exceeds the path workspace (raise \"truncation\")");
    return id;
}

PathVec combo_times_path(const PathSpace& ps, const PathVec& combo, int right, bool path_on_left) {
    PathVec out(ps.paths.size(), Rat(0));
    for (size_t i = 0; i < combo.size(); ++i) {
        if (combo[i] == 0) continue;
        int id = path_on_left ? concat(ps, right, static_cast<int>(i)) : concat(ps, static_cast<int>(i), right);
        if (id >= 0) out[id] += combo[i];
    }
    return out;
}

struct QuiverData {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::map<std::string, int> vertex_of, arrow_of;
};

PathVec parse_combo(const json& c, const QuiverData& q, const PathSpace& ps, const std::string& where) {
    if (!c.is_array()) fail("combo at " + where + " must be an array of {coeff, path}");
    PathVec out(ps.paths.size(), Rat(0));
    for (const auto& term : c) {
        if (!term.contains("coeff") || !term.contains("path")) fail("combo terms need coeff and path at " + where);
        Rat coeff = rat_of(term["coeff"], where);
        const json& pj = term["path"];
        if (!pj.is_array() || pj.empty()) fail("paths are non-empty name arrays at " + where);
        std::vector<int> seq;
        int src = -1;
        if (pj.size() == 1 && q.vertex_of.count(pj[0].get<std::string>())) {
            src = q.vertex_of.at(pj[0].get<std::string>());
        } else {
            for (const auto& nm : pj) {
                auto it = q.arrow_of.find(nm.get<std::string>());
                if (it == q.arrow_of.end()) fail("unknown arrow \"" + nm.get<std::string>() + "\" at " + where);
                seq.push_back(it->second);
            }
            for (size_t i = 0; i + 1 < seq.size(); ++i)
                if (q.arrows[seq[i]].src != q.arrows[seq[i + 1]].tgt)
                    fail("non-composable path at " + where);
            src = q.arrows[seq.back()].src;
        }
        int id = ps.find(seq, src);
        if (id < 0) fail("path at " + where + " exceeds the workspace (raise \"truncation\")");
        out[id] += coeff;
    }
    return out;
}

DgAlgebra parse_quiver(const json& j) {
    for (const char* k : {"vertices", "arrows", "truncation"})
        if (!j.contains(k)) fail(std::string("quiver form requires \"") + k + "\"");
    QuiverData q;
    for (const auto& v : j["vertices"]) {
        std::string nm = v.get<std::string>();
        if (q.vertex_of.count(nm)) fail("duplicate vertex \"" + nm + "\"");
        q.vertex_of[nm] = static_cast<int>(q.vertices.size());
        q.vertices.push_back(nm);
    }
    if (q.vertices.empty()) fail("quiver needs at least one vertex");
    for (const auto& aj : j["arrows"]) {
        for (const char* k : {"name", "source", "target", "degree"})
            if (!aj.contains(k)) fail(std::string("arrows require \"") + k + "\"");
        Arrow ar;
        ar.name = aj["name"].get<std::string>();
        if (q.arrow_of.count(ar.name) || q.vertex_of.count(ar.name)) fail("duplicate name \"" + ar.name + "\"");
        auto sv = q.vertex_of.find(aj["source"].get<std::string>());
        auto tv = q.vertex_of.find(aj["target"].get<std::string>());
        if (sv == q.vertex_of.end() || tv == q.vertex_of.end()) fail("arrow \"" + ar.name + "\" has unknown endpoints");
        ar.src = sv->second;
        ar.tgt = tv->second;
        if (!aj["degree"].is_number_integer()) fail("arrow degrees must be integers");
        ar.degree = aj["degree"].get<int>();
        q.arrow_of[ar.name] = static_cast<int>(q.arrows.size());
        q.arrows.push_back(ar);
    }
    int T = j["truncation"].get<int>();
    if (T < 0) fail("truncation must be >= 0");
    int L = 2 * T;
    PathSpace ps = enumerate_paths(static_cast<int>(q.vertices.size()), q.arrows, L);
    int np = static_cast<int>(ps.paths.size());
    int n_short = ps.by_length_end[std::min<size_t>(T, ps.by_length_end.size() - 1)];

    /* two-sided relation ideal span inside the workspace */
    std::vector<PathVec> ideal;
    std::vector<PathVec> relations;
    if (j.contains("relations"))
        for (size_t r = 0; r < j["relations"].size(); ++r)
            relations.push_back(parse_combo(j["relations"][r], q, ps, "relations[" + std::to_string(r) + "]"));
    for (const PathVec& r : relations) {
        int max_term = 0;
        for (int i = 0; i < np; ++i)
            if (r[i] != 0) max_term = std::max(max_term, static_cast<int>(ps.paths[i].arrows.size()));
        for (int u = 0; u < np; ++u) {
            int lu = static_cast<int>(ps.paths[u].arrows.size());
            for (int v = 0; v < np; ++v) {
                int lv = static_cast<int>(ps.paths[v].arrows.size());
                if (lu + max_term + lv > L) continue;
                PathVec m = combo_times_path(ps, combo_times_path(ps, r, v, false), u, true);
                bool zero = true;
                for (const Rat& c : m) zero = zero && c == 0;
                if (!zero) ideal.push_back(std::move(m));
            }
        }
    }
    QMatrix J = ideal.empty() ? QMatrix(np, 0) : QMatrix::from_cols(ideal);
    J = image_basis(J);

    /* finite-dimension / truncation check: long paths must be visibly reducible */
    for (int i = n_short; i < np; ++i)
        if (!solve(J, path_unit(ps, i))) {
            std::ostringstream m;
            m << "not finite-dimensional at truncation " << T << ": path of length "
              << ps.paths[i].arrows.size() << " starting at vertex \"" << q.vertices[ps.paths[i].src]
              << "\" does not reduce";
            fail(m.str());
        }

    /* quotient basis: short paths independent modulo the ideal */
    std::vector<int> basis_ids;
    {
        QMatrix m = J;
        for (int i = 0; i < n_short; ++i) m = m.hstack(QMatrix::col_vector(path_unit(ps, i)));
        std::vector<int> pivots;
        QMatrix r = m;
        pivots = rref(r);
        for (int p : pivots)
            if (p >= J.cols()) basis_ids.push_back(p - J.cols());
    }
    int n = static_cast<int>(basis_ids.size());
    if (n == 0) fail("quotient algebra is zero");
    QMatrix solver = J;
    for (int id : basis_ids) solver = solver.hstack(QMatrix::col_vector(path_unit(ps, id)));
    auto reduce = [&](const PathVec& w) {
        auto c = solve(solver, w);
        if (!c) fail("internal: vector not reducible to the quotient basis");
        return std::vector<Rat>(c->begin() + J.cols(), c->end());
    };

    DgAlgebra a;
    a.name = j.value("name", std::string("quiver"));
    for (int id : basis_ids) {
        const Path& p = ps.paths[id];
        if (p.arrows.empty()) {
            a.labels.push_back(q.vertices[p.src]);
        } else {
            std::string l;
            for (size_t k = 0; k < p.arrows.size(); ++k)
                l += (k ? "*" : "") + q.arrows[p.arrows[k]].name;
            a.labels.push_back(l);
        }
        a.degrees.push_back(p.degree);
    }
    a.mult.assign(n, std::vector<std::vector<Rat>>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            int id = concat(ps, basis_ids[i], basis_ids[k]);
            a.mult[i][k] = id < 0 ? std::vector<Rat>(n, Rat(0)) : reduce(path_unit(ps, id));
        }
    {
        PathVec u(np, Rat(0));
        for (size_t v = 0; v < q.vertices.size(); ++v) u[ps.find({}, static_cast<int>(v))] = 1;
        a.unit = reduce(u);
    }
    for (size_t v = 0; v < q.vertices.size(); ++v) {
        a.idempotent_labels.push_back(q.vertices[v]);
        a.idempotents.push_back(reduce(path_unit(ps, ps.find({}, static_cast<int>(v)))));
    }

    /* differential: given on arrows, extended by the Leibniz rule */
    std::vector<PathVec> darrow(q.arrows.size(), PathVec(np, Rat(0)));
    for (const auto& aj : j["arrows"])
        if (aj.contains("diff"))
            darrow[q.arrow_of.at(aj["name"].get<std::string>())] =
                parse_combo(aj["diff"], q, ps, "diff of arrow \"" + aj["name"].get<std::string>() + "\"");
    a.diff = QMatrix(n, n);
    for (int col = 0; col < n; ++col) {
        const Path& p = ps.paths[basis_ids[col]];
        PathVec acc(np, Rat(0));
        int prefix_deg = 0;
        for (size_t i = 0; i < p.arrows.size(); ++i) {
            /* term: (arrows before i) · ∂(arrow i) · (arrows after i) */
            PathVec term = darrow[p.arrows[i]];
            bool zero = true;
            for (const Rat& c : term) zero = zero && c == 0;
            if (!zero) {
                int src = p.src;
                std::vector<int> suffix(p.arrows.begin() + static_cast<long>(i) + 1, p.arrows.end());
                std::vector<int> prefix(p.arrows.begin(), p.arrows.begin() + static_cast<long>(i));
                int sfx = ps.find(suffix, src);
                /* the prefix starts where the current arrow ends */
                int pfx = ps.find(prefix, q.arrows[p.arrows[i]].tgt);
                if (sfx < 0 || pfx < 0) fail("internal: differential factor path missing");
                term = combo_times_path(ps, term, sfx, false);
                term = combo_times_path(ps, term, pfx, true);
                Rat sign = prefix_deg % 2 == 0 ? Rat(1) : Rat(-1);
                for (int t = 0; t < np; ++t) acc[t] += sign * term[t];
            }
            prefix_deg += q.arrows[p.arrows[i]].degree;
        }
        std::vector<Rat> dc = reduce(acc);
        for (int row = 0; row < n; ++row) a.diff.at(row, col) = dc[row];
    }
    return a;
}

uint64_t fnv1a(uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::string algebra_fingerprint(const DgAlgebra& a) {
    uint64_t h = 1469598103934665603ULL;
    std::ostringstream s;
    for (const auto& l : a.labels) s << l << ";";
    for (int d : a.degrees) s << d << ";";
    for (const auto& row : a.mult)
        for (const auto& cell : row)
            for (const Rat& c : cell) s << rat_to_string(c) << ",";
    for (const Rat& c : a.unit) s << rat_to_string(c) << ",";
    for (const auto& l : a.idempotent_labels) s << l << ";";
    for (const auto& e : a.idempotents)
        for (const Rat& c : e) s << rat_to_string(c) << ",";
    for (int i = 0; i < a.diff.rows(); ++i)
        for (int j = 0; j < a.diff.cols(); ++j) s << rat_to_string(a.diff.at(i, j)) << ",";
    h = fnv1a(h, s.str());
    std::ostringstream hex;
    hex << std::hex << h;
    return hex.str();
}

AlgebraSpec parse_algebra_spec_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (j.value("field", std::string("Q")) != "Q") fail("only field \"Q\" is supported");
    std::string form = j.value("form", std::string());
    AlgebraSpec spec;
    spec.factor_hints = parse_hints(j);
    spec.commutative_mode = j.value("commutative", false);
    if (form == "table")
        spec.algebra = parse_table(j);
    else if (form == "quiver") {
        if (spec.commutative_mode) fail("commutative mode requires the table form");
        spec.algebra = parse_quiver(j);
    } else
        fail("\"form\" must be \"table\" or \"quiver\"");

    ValidationReport rep = validate_algebra(spec.algebra, /*check_primitivity=*/!spec.commutative_mode);
    if (!rep.ok) {
        std::ostringstream m;
        m << "algebra fails validation:";
        for (const auto& i : rep.issues) m << "\n  - " << i;
        fail(m.str());
    }
    spec.fingerprint = algebra_fingerprint(spec.algebra);
    return spec;
}

AlgebraSpec parse_algebra_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra_spec_text(buf.str());
}

}  // namespace dgcell
