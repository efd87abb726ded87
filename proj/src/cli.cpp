#include "bga/cli.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "bga/embedding.hpp"
#include "bga/errors.hpp"

namespace bga::cli {

namespace {

int64_t require_int(const json &j, const std::string &field) {
    if (!j.is_number_integer()) {
        throw InputError(field + ": expected an integer");
    }
    return j.get<int64_t>();
}

std::vector<Exponents> parse_support(const json &j, const std::string &field, const FiniteAbelianGroup &group) {
    if (!j.is_array()) {
        throw InputError(field + ": expected a list of exponent vectors");
    }
    std::vector<Exponents> out;
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < j.size(); i++) {
        std::string name = field + "[" + std::to_string(i) + "]";
        const json &e = j[i];
        if (!e.is_array()) {
            throw InputError(name + ": expected an exponent vector");
        }
        if (e.size() != group.rank()) {
            throw InputError(name + ": exponent vector has length " + std::to_string(e.size()) + ", group has " +
                             std::to_string(group.rank()) + " factors");
        }
        Exponents v;
        for (std::size_t c = 0; c < e.size(); c++) {
            v.push_back(require_int(e[c], name + "[" + std::to_string(c) + "]"));
        }
        if (!seen.insert(group.index_of(v)).second) {
            throw InputError(name + ": duplicate group element");
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::size_t optional_count(const json &j, const char *key, std::size_t fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    int64_t v = require_int(j[key], key);
    if (v < 0) {
        throw InputError(std::string(key) + ": must be nonnegative");
    }
    return static_cast<std::size_t>(v);
}

json int_vector(const IntVector &v) {
    json out = json::array();
    for (const auto &x : v) {
        out.push_back(x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()));
    }
    return out;
}

json int_matrix(const IntMatrix &m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); r++) {
        out.push_back(int_vector(m.row(r)));
    }
    return out;
}

json exponents_json(const std::vector<Exponents> &support) {
    json out = json::array();
    for (const auto &e : support) {
        out.push_back(e);
    }
    return out;
}

json sector_json(const SectorDistance &s) {
    json out;
    out["value"] = s.exact ? json(*s.exact) : json(nullptr);
    out["lower_bound"] = s.lower_bound;
    out["method"] = method_name(s.method);
    out["witness"] = s.witness ? json(s.witness->ones()) : json(nullptr);
    return out;
}

json locality_json(const LocalityReport &r) {
    return {{"rho", "1"}, {"holds", r.holds}, {"max_radius_sq", r.max_radius_sq.get_str()}, {"worst_row", r.worst_row}};
}

json code_json(const TwoBlockCode &code) {
    return {{"group", code.group.cyclic_orders()},
            {"a", exponents_json(code.a.support_exponents())},
            {"b", exponents_json(code.b.support_exponents())},
            {"n", code.n()},
            {"N", code.num_qubits()},
            {"w", code.weight()}};
}

json component_json(const ComponentCertificate &c, std::size_t index, const Exponents &coset) {
    json out;
    out["index"] = index;
    out["coset_representative"] = coset;
    out["code"] = code_json(c.code);
    out["params"] = params_to_json(c.params);
    out["D"] = c.dim;
    out["status"] = c.status;
    out["lattice"] = nullptr;
    if (c.lattice) {
        out["lattice"] = {{"basis", int_matrix(c.lattice->basis())},
                          {"hnf", int_matrix(c.lattice->hnf())},
                          {"det", c.lattice->det_abs().get_str()}};
    }
    out["locality"] = c.locality ? locality_json(*c.locality) : json(nullptr);
    out["bound"] = c.bound ? bound_to_json(*c.bound) : json(nullptr);
    out["good_basis"] = nullptr;
    if (c.basis) {
        out["good_basis"] = {{"vectors", int_matrix(c.basis->vectors)},
                             {"dual_direction", int_vector(c.basis->dual_direction)},
                             {"hyperplane_vol_sq", c.basis->hyperplane_vol_sq.get_str()},
                             {"last_len_sq", c.basis->last_len_sq.get_str()}};
    }
    out["partition"] = nullptr;
    if (c.partition) {
        json bound_ok = json::array();
        for (std::size_t cnt : c.slab_counts) {
            bound_ok.push_back(integral_point_bound_holds(*c.partition, cnt));
        }
        out["partition"] = {{"rho", c.partition->rho.get_str()},
                            {"mu", c.partition->mu},
                            {"lambda_sq", c.partition->lambda_sq.get_str()},
                            {"slab_counts", c.slab_counts},
                            {"integral_point_bound_holds", bound_ok}};
    }
    out["localized_logical"] = nullptr;
    if (c.logical) {
        const auto &l = *c.logical;
        std::size_t pop = c.slab_counts[l.slab];
        out["localized_logical"] = {{"slab", l.slab},
                                    {"weight", l.op.weight()},
                                    {"support", l.op.support()},
                                    {"x", l.op.x.str()},
                                    {"z", l.op.z.str()},
                                    {"slab_population", pop},
                                    {"m_times_population", QubitLayout::kQubitsPerVertex * pop},
                                    {"found_without_cleaning", l.from_odd_slab},
                                    {"bound_value", c.bound->bound_decimal}};
    }
    out["chain_holds"] = c.chain_holds;
    return out;
}

std::string rational_str(const Rational &q) { return q.get_str(); }

std::vector<std::size_t> sample_support(std::mt19937_64 &rng, std::size_t n, std::size_t weight) {
    // e plus weight - 1 distinct non-identity elements (partial Fisher-Yates).
    std::vector<std::size_t> pool(n - 1);
    for (std::size_t i = 0; i + 1 < n; i++) {
        pool[i] = i + 1;
    }
    std::vector<std::size_t> out{0};
    for (std::size_t i = 0; i + 1 < weight; i++) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
        out.push_back(pool[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string distance_cell(const std::optional<SectorDistance> &s) {
    if (!s) {
        return "";
    }
    return s->exact ? std::to_string(*s->exact) : ">=" + std::to_string(s->lower_bound);
}

ScanRow scan_row(const TwoBlockCode &code, const DistanceLimits &limits) {
    ScanRow row;
    row.group = code.group.cyclic_orders();
    row.a = code.a.support_exponents();
    row.b = code.b.support_exponents();
    row.w = code.weight();
    row.dim = row.w - 2;
    row.n_qubits = code.num_qubits();
    row.status = "ok";
    try {
        CodeParams p = distance(code, limits);
        row.k = p.k;
        row.d_x = distance_cell(p.dx);
        row.d_z = distance_cell(p.dz);
        if (p.k > 0) {
            row.d = p.d() ? std::to_string(*p.d()) : ">=" + std::to_string(p.d_lower_bound());
        }
        Decomposition dec = decompose(code);
        const TwoBlockCode &comp = dec.components.front();
        row.index = dec.index();
        row.n_component = comp.n();
        if (row.dim == 0) {
            row.status = "D = 0";
            return row;
        }
        PsiMap psi = build_psi(comp.a, comp.b);
        QubitLayout layout = qubit_layout(comp, psi);
        LocalityReport loc = verify_locality(comp, layout, Rational(1));
        row.radius_sq = rational_str(loc.max_radius_sq);
        row.locality_holds = loc.holds;
        BoundReport b = two_block_bound(comp);
        row.applicable = b.applicable;
        row.bound = b.bound_decimal;
        if (auto d = p.d()) {
            row.d_le_bound = within_bound(b, *d) ? "true" : "false";
        } else if (p.k > 0 && p.d_lower_bound() > b.bound_value) {
            row.d_le_bound = "false";
        }
        if (p.k > 0 && !p.d()) {
            row.status = "distance unresolved";
        }
    } catch (const BudgetExceeded &e) {
        row.status = std::string("budget exceeded: ") + e.what();
    }
    return row;
}

}  // namespace

json load_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError(path + ": invalid JSON: " + e.what());
    }
}

DistanceMethod parse_method(const std::string &name) {
    for (auto m : {DistanceMethod::Auto, DistanceMethod::Kernel, DistanceMethod::Weight, DistanceMethod::Cluster}) {
        if (method_name(m) == name) {
            return m;
        }
    }
    throw InputError("method: unknown distance method '" + name + "'");
}

CodeSpec parse_code_spec(const json &j) {
    if (!j.is_object()) {
        throw InputError("spec: expected a JSON object");
    }
    for (const char *key : {"group", "a", "b"}) {
        if (!j.contains(key)) {
            throw InputError(std::string(key) + ": missing");
        }
    }
    if (!j["group"].is_array()) {
        throw InputError("group: expected a list of cyclic orders");
    }
    std::vector<int64_t> orders;
    for (std::size_t i = 0; i < j["group"].size(); i++) {
        std::string name = "group[" + std::to_string(i) + "]";
        int64_t d = require_int(j["group"][i], name);
        if (d < 2) {
            throw InputError(name + ": cyclic order must be at least 2");
        }
        orders.push_back(d);
    }
    FiniteAbelianGroup group(orders);
    auto sa = parse_support(j["a"], "a", group);
    auto sb = parse_support(j["b"], "b", group);
    CodeSpec spec{build_two_block(group, GroupAlgebraElement::from_exponents(group, sa),
                                  GroupAlgebraElement::from_exponents(group, sb)),
                  DistanceLimits{}};
    spec.limits.max_weight = optional_count(j, "max_weight", spec.limits.max_weight);
    spec.limits.kernel_dim_cap = optional_count(j, "kernel_dim_cap", spec.limits.kernel_dim_cap);
    if (j.contains("method")) {
        if (!j["method"].is_string()) {
            throw InputError("method: expected a string");
        }
        spec.limits.method = parse_method(j["method"].get<std::string>());
    }
    return spec;
}

IntegerLattice parse_lattice_spec(const json &j) {
    if (!j.is_object() || !j.contains("basis")) {
        throw InputError("basis: missing");
    }
    const json &rows = j["basis"];
    if (!rows.is_array() || rows.empty()) {
        throw InputError("basis: expected a nonempty list of integer rows");
    }
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < rows.size(); i++) {
        std::string name = "basis[" + std::to_string(i) + "]";
        if (!rows[i].is_array() || rows[i].size() != rows.size()) {
            throw InputError(name + ": expected " + std::to_string(rows.size()) + " integers");
        }
        IntVector r;
        for (std::size_t c = 0; c < rows[i].size(); c++) {
            r.emplace_back(static_cast<long>(require_int(rows[i][c], name + "[" + std::to_string(c) + "]")));
        }
        out.push_back(std::move(r));
    }
    return IntegerLattice(IntMatrix::from_rows(out));
}

json params_to_json(const CodeParams &p) {
    json out;
    out["format_version"] = kFormatVersion;
    out["N"] = p.n_qubits;
    out["k"] = p.k;
    auto d = p.d();
    out["d"] = d ? json(*d) : json(nullptr);
    out["distance_defined"] = p.distance_defined();
    out["resolved"] = !p.distance_defined() || d.has_value();
    out["d_lower_bound"] = p.distance_defined() ? json(p.d_lower_bound()) : json(nullptr);
    out["d_x"] = p.dx ? sector_json(*p.dx) : json(nullptr);
    out["d_z"] = p.dz ? sector_json(*p.dz) : json(nullptr);
    return out;
}

json bound_to_json(const BoundReport &r) {
    json out;
    out["format_version"] = kFormatVersion;
    out["m"] = r.m;
    out["rho"] = r.rho.get_str();
    out["D"] = r.dim;
    out["n"] = r.n.get_str();
    out["gamma_pow_D"] = r.hermite.gamma_pow_dim.get_str();
    out["hermite_exact"] = r.hermite.is_exact;
    out["applicable"] = r.applicable;
    out["applicability"] = {{"condition", "n^2 >= (8 rho)^(2D) gamma_D^D"},
                            {"n_sq", r.applicability_lhs.get_str()},
                            {"threshold", r.applicability_rhs.get_str()}};
    out["bound_form"] = "d < m sqrt(gamma_D) (sqrt(D) + 4 rho) n^((D-1)/D)";
    out["bound_value"] = r.bound_value;
    out["bound_decimal"] = r.bound_decimal;
    out["bound_lower"] = r.bound_lower;
    return out;
}

json certificate_to_json(const Certificate &c) {
    json out;
    out["format_version"] = kFormatVersion;
    out["code"] = code_json(c.input);
    out["params"] = params_to_json(c.params);
    out["normalized"] = {{"a", exponents_json(c.normalized.a.support_exponents())},
                         {"b", exponents_json(c.normalized.b.support_exponents())}};
    const Decomposition &dec = c.decomposition;
    json reps = json::array();
    for (std::size_t r : dec.coset_representatives) {
        reps.push_back(dec.parent.exponents_of(r));
    }
    out["decomposition"] = {{"index", dec.index()},
                            {"subgroup", dec.subgroup.cyclic_orders()},
                            {"subgroup_order", dec.subgroup.order()},
                            {"coset_representatives", reps}};
    json comps = json::array();
    std::string verdict = "certified";
    for (std::size_t i = 0; i < c.components.size(); i++) {
        comps.push_back(component_json(c.components[i], i, dec.parent.exponents_of(dec.coset_representatives[i])));
        if (c.components[i].status != "certified") {
            verdict = c.components[i].status;
        }
    }
    out["components"] = comps;
    out["verdict"] = verdict;
    return out;
}

json lattice_to_json(const IntegerLattice &lattice, const Rational &rho) {
    json out;
    out["format_version"] = kFormatVersion;
    out["basis"] = int_matrix(lattice.basis());
    out["det"] = lattice.det_abs().get_str();
    out["hnf"] = int_matrix(lattice.hnf());
    out["D"] = lattice.dim();
    GoodBasis gb = good_basis(lattice);
    json norms = json::array();
    for (const auto &q : gb.gs.norm_sq) {
        norms.push_back(q.get_str());
    }
    HermiteValue h = hermite(lattice.dim());
    Rational lhs = h.gamma_pow_dim;
    Rational rhs(lattice.det_abs() * lattice.det_abs());
    Rational lpow = 1;
    for (std::size_t i = 0; i < lattice.dim(); i++) {
        lpow *= gb.last_len_sq;
    }
    out["good_basis"] = {{"vectors", int_matrix(gb.vectors)},
                         {"dual_direction", int_vector(gb.dual_direction)},
                         {"gram_schmidt_norm_sq", norms},
                         {"hyperplane_vol_sq", gb.hyperplane_vol_sq.get_str()},
                         {"last_len_sq", gb.last_len_sq.get_str()},
                         {"last_len_bound_holds", lpow * lhs >= rhs}};
    out["rho"] = rho.get_str();
    out["applicable"] = partition_applicable(lattice.det_abs(), lattice.dim(), rho);
    out["partition"] = nullptr;
    if (out["applicable"].get<bool>()) {
        ParallelotopePartition p = build_partition(gb, rho);
        json part = {{"mu", p.mu}, {"lambda_sq", p.lambda_sq.get_str()}};
        try {
            auto counts = slab_populations(p, lattice);
            json ok = json::array();
            for (std::size_t c : counts) {
                ok.push_back(integral_point_bound_holds(p, c));
            }
            part["slab_counts"] = counts;
            part["integral_point_bound_holds"] = ok;
        } catch (const BudgetExceeded &) {
            part["slab_counts"] = nullptr;
            part["integral_point_bound_holds"] = nullptr;
        }
        out["partition"] = part;
    }
    return out;
}

std::string format_exponents(const std::vector<Exponents> &support) {
    std::string s;
    for (std::size_t i = 0; i < support.size(); i++) {
        if (i) {
            s += ';';
        }
        for (std::size_t c = 0; c < support[i].size(); c++) {
            if (c) {
                s += ':';
            }
            s += std::to_string(support[i][c]);
        }
    }
    return s;
}

std::vector<ScanRow> run_scan(const ScanOptions &opts) {
    if (opts.order_min < 2 || opts.order_max < opts.order_min) {
        throw InputError("order range must satisfy 2 <= order-min <= order-max");
    }
    if (opts.factors != 1 && opts.factors != 2) {
        throw InputError("factors must be 1 or 2");
    }
    if (opts.weight_a < 1 || opts.weight_b < 1) {
        throw InputError("support weights must be at least 1");
    }
    auto max_n = static_cast<std::size_t>(opts.factors == 1 ? opts.order_max : opts.order_max * opts.order_max);
    if (std::max(opts.weight_a, opts.weight_b) > max_n) {
        throw InputError("support weight exceeds every group order in range");
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int64_t> order(opts.order_min, opts.order_max);
    std::set<std::tuple<std::vector<int64_t>, std::vector<std::size_t>, std::vector<std::size_t>>> seen;
    std::vector<ScanRow> rows;
    constexpr int kMaxAttempts = 10000;
    for (std::size_t i = 0; i < opts.count; i++) {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxAttempts && !placed; attempt++) {
            std::vector<int64_t> orders{order(rng)};
            if (opts.factors == 2) {
                orders.push_back(order(rng));
            }
            FiniteAbelianGroup g(orders);
            if (g.order() < std::max(opts.weight_a, opts.weight_b)) {
                continue;
            }
            auto sa = sample_support(rng, g.order(), opts.weight_a);
            auto sb = sample_support(rng, g.order(), opts.weight_b);
            if (!seen.insert({orders, sa, sb}).second) {
                continue;
            }
            TwoBlockCode code = build_two_block(g, GroupAlgebraElement(g, sa), GroupAlgebraElement(g, sb));
            DistanceLimits limits = opts.limits;
            rows.push_back(scan_row(code, limits));
            placed = true;
        }
        if (!placed) {
            throw InputError("could not sample a new distinct code; the family is exhausted");
        }
    }
    return rows;
}

std::string scan_csv(const std::vector<ScanRow> &rows) {
    std::ostringstream out;
    out << "format_version,group,a,b,w,D,N,k,d_x,d_z,d,index,n_component,locality_radius_sq,locality_holds,"
           "applicable,bound,d_le_bound,status\n";
    for (const auto &r : rows) {
        std::string group;
        for (std::size_t i = 0; i < r.group.size(); i++) {
            group += (i ? "x" : "") + std::to_string(r.group[i]);
        }
        out << kFormatVersion << ',' << group << ',' << format_exponents(r.a) << ',' << format_exponents(r.b) << ','
            << r.w << ',' << r.dim << ',' << r.n_qubits << ',' << r.k << ',' << r.d_x << ',' << r.d_z << ',' << r.d
            << ',' << r.index << ',' << r.n_component << ',' << r.radius_sq << ','
            << (r.locality_holds ? "true" : "false") << ',' << (r.applicable ? "true" : "false") << ',' << r.bound
            << ',' << r.d_le_bound << ',' << '"' << r.status << '"' << '\n';
    }
    return out.str();
}

json scan_json(const std::vector<ScanRow> &rows) {
    json arr = json::array();
    for (const auto &r : rows) {
        arr.push_back({{"group", r.group},
                       {"a", exponents_json(r.a)},
                       {"b", exponents_json(r.b)},
                       {"w", r.w},
                       {"D", r.dim},
                       {"N", r.n_qubits},
                       {"k", r.k},
                       {"d_x", r.d_x},
                       {"d_z", r.d_z},
                       {"d", r.d},
                       {"index", r.index},
                       {"n_component", r.n_component},
                       {"locality_radius_sq", r.radius_sq},
                       {"locality_holds", r.locality_holds},
                       {"applicable", r.applicable},
                       {"bound", r.bound},
                       {"d_le_bound", r.d_le_bound},
                       {"status", r.status}});
    }
    return {{"format_version", kFormatVersion}, {"rows", arr}};
}

}  // namespace bga::cli
