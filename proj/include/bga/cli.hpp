#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "bga/bound.hpp"
#include "bga/code.hpp"
#include "bga/lattice.hpp"
#include "bga/pipeline.hpp"

namespace bga::cli {

using json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

struct CodeSpec {
    TwoBlockCode code;
    DistanceLimits limits;
};

/// Parses {"group": [...], "a": [[...]], "b": [[...]]} plus optional
/// "max_weight" and "kernel_dim_cap". Errors name the offending field.
CodeSpec parse_code_spec(const json &j);
IntegerLattice parse_lattice_spec(const json &j);
json load_json_file(const std::string &path);
DistanceMethod parse_method(const std::string &name);

json params_to_json(const CodeParams &p);
json bound_to_json(const BoundReport &r);
json certificate_to_json(const Certificate &c);
json lattice_to_json(const IntegerLattice &lattice, const Rational &rho);

struct ScanOptions {
    int64_t order_min = 2;
    int64_t order_max = 30;
    int factors = 1;  // 1: Z_n; 2: Z_l x Z_m with l, m drawn from the order range
    std::size_t weight_a = 2;
    std::size_t weight_b = 2;
    std::size_t count = 100;
    uint64_t seed = 0;
    DistanceLimits limits;
};

struct ScanRow {
    std::vector<int64_t> group;
    std::vector<Exponents> a;
    std::vector<Exponents> b;
    std::size_t w = 0;
    std::size_t dim = 0;
    std::size_t n_qubits = 0;
    std::size_t k = 0;
    std::string d_x;  // value, ">=L" when unresolved, empty when undefined
    std::string d_z;
    std::string d;
    std::size_t index = 1;        // [G:H]
    std::size_t n_component = 0;  // |H|
    std::string radius_sq;        // locality radius^2 of a component
    bool locality_holds = false;
    bool applicable = false;
    std::string bound;
    std::string d_le_bound;  // "true", "false" or "" when not decidable
    std::string status;      // "ok" or the reason the row is incomplete
};

/// Rows in sample order; identical options give identical rows.
std::vector<ScanRow> run_scan(const ScanOptions &opts);
std::string scan_csv(const std::vector<ScanRow> &rows);
json scan_json(const std::vector<ScanRow> &rows);

std::string format_exponents(const std::vector<Exponents> &support);

}  // namespace bga::cli
