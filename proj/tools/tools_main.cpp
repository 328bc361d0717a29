#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <dgcell/cells.hpp>
#include <dgcell/commutative.hpp>
#include <dgcell/spec_io.hpp>

#include "CLI11.hpp"
#include "json.hpp"

using namespace dgcell;
using json = nlohmann::ordered_json;

namespace {

struct Common {
    std::string spec_path;
    std::string format = "text";
    uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("spec", c.spec_path, "algebra spec file (JSON)")->required();
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--seed", c.seed, "randomization seed")->capture_default_str();
}

json header(const std::string& command, const AlgebraSpec& spec, uint64_t seed) {
    json h;
    h["schema_version"] = 1;
    h["command"] = command;
    h["algebra"] = {{"name", spec.algebra.name},
                    {"dim", spec.algebra.dim()},
                    {"fingerprint", spec.fingerprint}};
    h["seed"] = seed;
    return h;
}

json slice_entries(const std::map<std::pair<int, int>, std::map<int, Subspace>>& slices) {
    json out = json::array();
    for (const auto& [ij, by_deg] : slices)
        for (const auto& [deg, sub] : by_deg)
            if (sub.dim() > 0)
                out.push_back({{"source", ij.first},
                               {"target", ij.second},
                               {"degree", deg},
                               {"dim", sub.dim()}});
    return out;
}

json quotient_entries(const std::map<std::pair<int, int>, std::map<int, int>>& dims) {
    json out = json::array();
    for (const auto& [ij, by_deg] : dims)
        for (const auto& [deg, d] : by_deg)
            out.push_back(
                {{"source", ij.first}, {"target", ij.second}, {"degree", deg}, {"dim", d}});
    return out;
}

json descriptor_json(const CatContext& ctx, const MaxIdealDescriptor& d, bool with_rep) {
    json jd;
    jd["cell"] = d.cell;
    json members = json::array();
    for (const GenList& m : d.members) members.push_back(ctx.gen_name(m.front()));
    jd["members"] = members;
    jd["slices"] = slice_entries(d.slices);
    jd["certified_maximal"] = d.certified_maximal;
    if (with_rep) {
        jd["quotient"] = quotient_entries(d.quotient_dims);
        jd["acyclic"] = d.acyclic;
        jd["equivalent_to_natural"] = d.equivalent_to_natural;
    }
    return jd;
}

void print_descriptor_text(const CatContext& ctx, const MaxIdealDescriptor& d, bool with_rep) {
    std::cout << "cell " << d.cell << "\n  members:";
    for (const GenList& m : d.members) std::cout << " " << ctx.gen_name(m.front());
    std::cout << "\n  certified maximal: " << (d.certified_maximal ? "yes" : "no") << "\n";
    std::cout << "  slice dimensions (source -> target, degree : dim):\n";
    bool any = false;
    for (const auto& [ij, by_deg] : d.slices)
        for (const auto& [deg, sub] : by_deg)
            if (sub.dim() > 0) {
                std::cout << "    " << ij.first << " -> " << ij.second << ", deg " << deg << " : "
                          << sub.dim() << "\n";
                any = true;
            }
    if (!any) std::cout << "    (zero ideal)\n";
    if (with_rep) {
        std::cout << "  quotient Hom dimensions:\n";
        for (const auto& [ij, by_deg] : d.quotient_dims)
            for (const auto& [deg, dim] : by_deg)
                std::cout << "    " << ij.first << " -> " << ij.second << ", deg " << deg << " : "
                          << dim << "\n";
        std::cout << "  acyclic: " << (d.acyclic ? "yes" : "no") << "\n";
        std::cout << "  equivalent to natural 2-representation: "
                  << (d.equivalent_to_natural ? "yes" : "no") << "\n";
    }
}

json comm_descriptor_json(const std::vector<CommIdealDescriptor>& ds) {
    json out = json::array();
    for (const auto& d : ds)
        out.push_back({{"name", d.name},
                       {"ideal_dim", d.ideal.dim()},
                       {"quotient_dim", d.quotient_dim},
                       {"acyclic", d.acyclic}});
    return out;
}

void print_comm_descriptors_text(const std::vector<CommIdealDescriptor>& ds) {
    std::cout << "maximal dg ideals (commutative mode): " << ds.size() << "\n";
    for (const auto& d : ds)
        std::cout << "  " << d.name << ": ideal dim " << d.ideal.dim() << ", quotient dim "
                  << d.quotient_dim << ", acyclic " << (d.acyclic ? "yes" : "no") << "\n";
}

std::vector<CommIdealDescriptor> comm_maxspec_or_throw(const AlgebraSpec& spec) {
    auto ms = commutative_maxspec(spec.algebra, spec.factor_hints);
    if (!ms)
        throw std::invalid_argument(
            "could not split the algebra into local blocks: a minimal polynomial resisted "
            "factorization; add its monic factorization to \"factorizations\" in the spec");
    return *ms;
}

/* In commutative mode the quotient by each ideal is a unital dg algebra, so it
 * is acyclic exactly when its unit is a boundary, i.e. c ∈ ideal + im ∂. */
std::vector<std::string> check_comm_descriptors(const DgAlgebra& r,
                                                const std::vector<CommIdealDescriptor>& ds) {
    std::vector<std::string> issues;
    int n = r.dim();
    Subspace im_d = Subspace::span(image_basis(r.diff));
    for (const auto& d : ds) {
        if (d.ideal.contains(r.unit)) issues.push_back(d.name + ": ideal contains the unit");
        if (r.multiply(d.idempotent, d.idempotent) != d.idempotent)
            issues.push_back(d.name + ": block element is not idempotent");
        for (const Rat& c : r.apply_diff(d.idempotent))
            if (c != 0) {
                issues.push_back(d.name + ": block idempotent is not a cycle");
                break;
            }
        for (int j = 0; j < d.ideal.dim(); ++j) {
            std::vector<Rat> v = d.ideal.basis_vector(j);
            if (!d.ideal.contains(r.apply_diff(v)))
                issues.push_back(d.name + ": ideal is not closed under the differential");
            for (int i = 0; i < n; ++i)
                if (!d.ideal.contains(r.multiply(v, r.basis_element(i)))) {
                    issues.push_back(d.name + ": ideal is not closed under multiplication");
                    break;
                }
        }
        if (d.quotient_dim != n - d.ideal.dim())
            issues.push_back(d.name + ": quotient dimension is inconsistent");
        bool unit_bounds = d.ideal.sum(im_d).contains(d.idempotent);
        if (unit_bounds != d.acyclic)
            issues.push_back(d.name + ": acyclicity verdict disagrees with the boundary test");
    }
    return issues;
}

json cells_json(const CatContext& ctx, const CellStructure& cs) {
    json out;
    json gens = json::array();
    for (const Gen& g : cs.generators) gens.push_back(ctx.gen_name(g));
    out["generators"] = gens;
    for (Side s : {Side::L, Side::R, Side::J}) {
        std::string key = (s == Side::L) ? "L" : (s == Side::R) ? "R" : "J";
        json side;
        side["names"] = cs.names(s);
        side["cell_of"] = cs.cell(s);
        json rel = json::array();
        for (const auto& row : cs.rel(s)) {
            json r = json::array();
            for (bool b : row) r.push_back(b ? 1 : 0);
            rel.push_back(r);
        }
        side["rel"] = rel;
        out[key] = side;
    }
    return out;
}

void print_cells_text(const CatContext& ctx, const CellStructure& cs) {
    std::cout << "generators:";
    for (const Gen& g : cs.generators) std::cout << " " << ctx.gen_name(g);
    std::cout << "\n";
    for (Side s : {Side::L, Side::R, Side::J}) {
        std::string key = (s == Side::L) ? "L" : (s == Side::R) ? "R" : "J";
        std::cout << key << "-cells:";
        for (const std::string& n : cs.names(s)) std::cout << " " << n;
        std::cout << "\n  assignment:";
        for (size_t i = 0; i < cs.generators.size(); ++i)
            std::cout << " " << ctx.gen_name(cs.generators[i]) << "->"
                      << cs.names(s)[cs.cell(s)[i]];
        std::cout << "\n";
    }
}

int emit(const Common& c, const json& payload,
         std::chrono::steady_clock::time_point start,
         const std::function<void()>& text_body) {
    if (c.format == "json") {
        std::cout << payload.dump(2) << "\n";
    } else {
        text_body();
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cout << "time: " << ms << " ms\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dgcell: exact cell 2-representation toolkit for finite-dimensional dg algebras"};
    app.require_subcommand(1);

    Common c_validate, c_cells, c_maxspec, c_cellrep, c_order, c_verify;
    std::string opt_cell, opt_ideal_cell;
    int opt_ideal = 0;
    std::string ord_kind, ord_side, ord_lhs, ord_rhs;
    int ord_depth = 3, verify_depth = 2;

    CLI::App* cmd_validate = app.add_subcommand("validate", "check a spec and report issues");
    add_common(cmd_validate, c_validate);

    CLI::App* cmd_cells = app.add_subcommand("cells", "enumerate weak L/R/J cells");
    add_common(cmd_cells, c_cells);

    CLI::App* cmd_maxspec =
        app.add_subcommand("maxspec", "maximal dg ideals of a cell 2-representation");
    add_common(cmd_maxspec, c_maxspec);
    cmd_maxspec->add_option("--cell", opt_cell, "cell name, e.g. L0:e or J1");

    CLI::App* cmd_cellrep = app.add_subcommand("cellrep", "simple quotient of a cell 2-representation");
    add_common(cmd_cellrep, c_cellrep);
    cmd_cellrep->add_option("--cell", opt_ideal_cell, "cell name, e.g. L0:e or J1");
    cmd_cellrep->add_option("--ideal", opt_ideal, "index of the maximal ideal")
        ->capture_default_str();

    CLI::App* cmd_order = app.add_subcommand("order", "compare two generators in a cell preorder");
    add_common(cmd_order, c_order);
    cmd_order->add_option("--kind", ord_kind, "preorder kind")
        ->check(CLI::IsMember({"weak", "strong", "tri"}))
        ->required();
    cmd_order->add_option("--side", ord_side, "side of the preorder")
        ->check(CLI::IsMember({"L", "R", "J"}))
        ->required();
    cmd_order->add_option("--lhs", ord_lhs, "left generator, e.g. P:e,f or Id:1")->required();
    cmd_order->add_option("--rhs", ord_rhs, "right generator")->required();
    cmd_order->add_option("--depth", ord_depth, "search depth for strong/tri")
        ->capture_default_str();

    CLI::App* cmd_verify =
        app.add_subcommand("verify-paper", "re-derive the classification and cross-check it");
    add_common(cmd_verify, c_verify);
    cmd_verify->add_option("--depth", verify_depth, "strong-order search depth")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto start = std::chrono::steady_clock::now();
    try {
        if (cmd_validate->parsed()) {
            const Common& c = c_validate;
            json payload;
            bool valid = true;
            std::vector<std::string> issues;
            AlgebraSpec spec;
            try {
                spec = parse_algebra_spec(c.spec_path);
                payload = header("validate", spec, c.seed);
            } catch (const std::invalid_argument& e) {
                valid = false;
                issues.push_back(e.what());
                payload["schema_version"] = 1;
                payload["command"] = "validate";
                payload["seed"] = c.seed;
            }
            payload["valid"] = valid;
            payload["issues"] = issues;
            emit(c, payload, start, [&] {
                if (valid) {
                    std::cout << "spec is valid: " << spec.algebra.name << ", dim "
                              << spec.algebra.dim() << ", fingerprint " << spec.fingerprint
                              << "\n";
                } else {
                    std::cout << "spec is invalid:\n";
                    for (const std::string& s : issues) std::cout << "  " << s << "\n";
                }
            });
            return valid ? 0 : 2;
        }

        if (cmd_cells->parsed()) {
            const Common& c = c_cells;
            AlgebraSpec spec = parse_algebra_spec(c.spec_path);
            if (spec.commutative_mode)
                throw std::invalid_argument(
                    "cell enumeration is not supported in commutative mode");
            CatContext ctx(spec.algebra, c.seed);
            CellStructure cs = enumerate_cells(ctx);
            json payload = header("cells", spec, c.seed);
            payload.update(cells_json(ctx, cs));
            return emit(c, payload, start, [&] { print_cells_text(ctx, cs); });
        }

        if (cmd_maxspec->parsed()) {
            const Common& c = c_maxspec;
            AlgebraSpec spec = parse_algebra_spec(c.spec_path);
            json payload = header("maxspec", spec, c.seed);
            if (spec.commutative_mode) {
                auto ds = comm_maxspec_or_throw(spec);
                payload["ideals"] = comm_descriptor_json(ds);
                return emit(c, payload, start, [&] { print_comm_descriptors_text(ds); });
            }
            if (opt_cell.empty())
                throw std::invalid_argument("--cell is required outside commutative mode");
            CatContext ctx(spec.algebra, c.seed);
            std::vector<MaxIdealDescriptor> ds = maxspec(ctx, opt_cell);
            payload["cell"] = opt_cell;
            json ideals = json::array();
            for (const auto& d : ds) ideals.push_back(descriptor_json(ctx, d, false));
            payload["ideals"] = ideals;
            return emit(c, payload, start, [&] {
                std::cout << "maximal dg ideals of the " << opt_cell
                          << " cell 2-representation: " << ds.size() << "\n";
                for (const auto& d : ds) print_descriptor_text(ctx, d, false);
            });
        }

        if (cmd_cellrep->parsed()) {
            const Common& c = c_cellrep;
            AlgebraSpec spec = parse_algebra_spec(c.spec_path);
            json payload = header("cellrep", spec, c.seed);
            if (spec.commutative_mode) {
                auto ds = comm_maxspec_or_throw(spec);
                if (opt_ideal < 0 || opt_ideal >= static_cast<int>(ds.size()))
                    throw std::invalid_argument("--ideal index out of range");
                payload["ideals"] = comm_descriptor_json({ds[opt_ideal]});
                return emit(c, payload, start,
                            [&] { print_comm_descriptors_text({ds[opt_ideal]}); });
            }
            if (opt_ideal_cell.empty())
                throw std::invalid_argument("--cell is required outside commutative mode");
            CatContext ctx(spec.algebra, c.seed);
            MaxIdealDescriptor d = cell_rep(ctx, opt_ideal_cell, opt_ideal);
            payload["cell"] = opt_ideal_cell;
            payload["ideal"] = opt_ideal;
            payload["rep"] = descriptor_json(ctx, d, true);
            return emit(c, payload, start, [&] { print_descriptor_text(ctx, d, true); });
        }

        if (cmd_order->parsed()) {
            const Common& c = c_order;
            AlgebraSpec spec = parse_algebra_spec(c.spec_path);
            if (spec.commutative_mode)
                throw std::invalid_argument(
                    "order comparison is not supported in commutative mode");
            CatContext ctx(spec.algebra, c.seed);
            Gen lhs = ctx.gen_by_name(ord_lhs);
            Gen rhs = ctx.gen_by_name(ord_rhs);
            Side side = (ord_side == "L") ? Side::L : (ord_side == "R") ? Side::R : Side::J;
            bool holds = false;
            int depth = 0;
            bool semi = (ord_kind != "weak");
            if (ord_kind == "weak") {
                holds = weak_leq(ctx, lhs, rhs, side);
            } else {
                BoundedResult r = (ord_kind == "strong")
                                      ? strong_leq_bounded(ctx, lhs, rhs, side, ord_depth)
                                      : tri_leq_bounded(ctx, lhs, rhs, side, ord_depth);
                holds = r.holds;
                depth = r.holds ? r.depth : ord_depth;
            }
            json payload = header("order", spec, c.seed);
            payload["kind"] = ord_kind;
            payload["side"] = ord_side;
            payload["lhs"] = ord_lhs;
            payload["rhs"] = ord_rhs;
            payload["holds"] = holds;
            payload["depth"] = depth;
            payload["semi_decision"] = semi;
            return emit(c, payload, start, [&] {
                std::cout << ord_lhs << " <=[" << ord_kind << "," << ord_side << "] " << ord_rhs
                          << " : " << (holds ? "true" : "false");
                if (semi) {
                    if (holds)
                        std::cout << " (witness at depth " << depth << ")";
                    else
                        std::cout << " (no witness up to depth " << depth << ")";
                }
                std::cout << "\n";
            });
        }

        if (cmd_verify->parsed()) {
            const Common& c = c_verify;
            AlgebraSpec spec = parse_algebra_spec(c.spec_path);
            json payload = header("verify-paper", spec, c.seed);
            if (spec.commutative_mode) {
                auto ds = comm_maxspec_or_throw(spec);
                std::vector<std::string> issues = check_comm_descriptors(spec.algebra, ds);
                payload["ideals"] = comm_descriptor_json(ds);
                payload["issues"] = issues;
                payload["ok"] = issues.empty();
                emit(c, payload, start, [&] {
                    print_comm_descriptors_text(ds);
                    for (const std::string& s : issues) std::cout << "issue: " << s << "\n";
                    std::cout << "verification " << (issues.empty() ? "passed" : "FAILED")
                              << "\n";
                });
                return issues.empty() ? 0 : 1;
            }
            CatContext ctx(spec.algebra, c.seed);
            ClassificationReport rep = verify_classification(ctx, verify_depth);
            payload.update(cells_json(ctx, rep.cells));
            json reps = json::array();
            for (const auto& d : rep.reps) reps.push_back(descriptor_json(ctx, d, true));
            payload["reps"] = reps;
            json strong = json::array();
            for (const auto& sc : rep.strong_cells) {
                json gens = json::array();
                for (int gi : sc.gen_indices)
                    gens.push_back(ctx.gen_name(rep.cells.generators[gi]));
                strong.push_back({{"generators", gens},
                                  {"weak_cell", sc.weak_cell},
                                  {"strong_maxspec", sc.strong_maxspec},
                                  {"weak_maxspec", sc.weak_maxspec}});
            }
            payload["strong_cells"] = strong;
            payload["issues"] = rep.issues;
            payload["ok"] = rep.ok();
            emit(c, payload, start, [&] {
                print_cells_text(ctx, rep.cells);
                std::cout << "cell 2-representations verified: " << rep.reps.size() << "\n";
                std::cout << "strong left cells at depth " << verify_depth << ": "
                          << rep.strong_cells.size() << "\n";
                for (const std::string& s : rep.issues) std::cout << "issue: " << s << "\n";
                std::cout << "verification " << (rep.ok() ? "passed" : "FAILED") << "\n";
            });
            return rep.ok() ? 0 : 1;
        }
    } catch (const ClassificationContradiction& e) {
        std::cerr << "classification contradiction: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
