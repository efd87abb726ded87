#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bga/cli.hpp"
#include "bga/errors.hpp"

using namespace bga;
using namespace bga::cli;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitFault = 3;

void emit(const std::string &text, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + out_path);
    }
    out << text;
}

Rational parse_rational(const std::string &s, const std::string &field) {
    Rational q;
    if (q.set_str(s, 10) != 0) {
        throw InputError(field + ": not a rational number: " + s);
    }
    q.canonicalize();
    return q;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Two-block group algebra codes: parameters, lattice embeddings and distance bounds"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_path;
    std::string format;
    std::string method = "auto";
    std::size_t max_weight = DistanceLimits{}.max_weight;
    std::size_t kernel_dim_cap = DistanceLimits{}.kernel_dim_cap;
    uint64_t seed = 0;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--out", out_path, "Write output to FILE instead of stdout");
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_limits = [&](CLI::App *cmd) {
        cmd->add_option("--max-weight", max_weight, "Largest weight tried by the weight and cluster searches");
        cmd->add_option("--kernel-dim-cap", kernel_dim_cap, "Largest kernel dimension exhausted directly");
        cmd->add_option("--method", method, "Distance method")
            ->check(CLI::IsMember({"auto", "kernel", "weight", "cluster"}));
    };

    auto *params = app.add_subcommand("params", "Compute N, k, d_X, d_Z of a code");
    params->add_option("--spec", spec_path, "Code spec JSON file")->required();
    add_common(params);
    add_limits(params);

    auto *certify_cmd = app.add_subcommand("certify", "Run the embedding, partition and localization pipeline");
    certify_cmd->add_option("--spec", spec_path, "Code spec JSON file")->required();
    add_common(certify_cmd);
    add_limits(certify_cmd);

    ScanOptions scan_opts;
    auto *scan = app.add_subcommand("scan", "Sample random codes and tabulate parameters against the bound");
    scan->add_option("--seed", seed, "Random seed");
    scan->add_option("--order-min", scan_opts.order_min, "Smallest cyclic factor order");
    scan->add_option("--order-max", scan_opts.order_max, "Largest cyclic factor order");
    scan->add_option("--factors", scan_opts.factors, "Number of cyclic factors (1 or 2)");
    scan->add_option("--weight-a", scan_opts.weight_a, "Support size of a");
    scan->add_option("--weight-b", scan_opts.weight_b, "Support size of b");
    scan->add_option("--count", scan_opts.count, "Number of codes");
    add_common(scan);
    add_limits(scan);

    std::string rho_text = "1";
    auto *lattice = app.add_subcommand("lattice", "Good basis and slab partition of a lattice");
    lattice->add_option("--spec", spec_path, "Lattice spec JSON file")->required();
    lattice->add_option("--rho", rho_text, "Locality radius (rational)");
    add_common(lattice);

    std::size_t m = 2;
    std::size_t dim = 2;
    std::string n_text;
    auto *bound = app.add_subcommand("bound", "Evaluate the distance bound for raw m, rho, D, n");
    bound->add_option("--m", m, "Qubits per vertex");
    bound->add_option("--rho", rho_text, "Locality radius (rational)");
    bound->add_option("--dim", dim, "Lattice dimension D");
    bound->add_option("--n", n_text, "Quotient size")->required();
    add_common(bound);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }
    if (format.empty()) {
        format = scan->parsed() ? "csv" : "json";
    }

    try {
        DistanceLimits limits;
        limits.max_weight = max_weight;
        limits.kernel_dim_cap = kernel_dim_cap;
        limits.method = parse_method(method);

        if (params->parsed() || certify_cmd->parsed()) {
            if (format != "json") {
                throw InputError("--format: only json is supported for this command");
            }
            CodeSpec spec = parse_code_spec(load_json_file(spec_path));
            CLI::App *cmd = params->parsed() ? params : certify_cmd;
            if (cmd->count("--max-weight")) {
                spec.limits.max_weight = limits.max_weight;
            }
            if (cmd->count("--kernel-dim-cap")) {
                spec.limits.kernel_dim_cap = limits.kernel_dim_cap;
            }
            if (cmd->count("--method")) {
                spec.limits.method = limits.method;
            }
            json out = params->parsed() ? params_to_json(distance(spec.code, spec.limits))
                                        : certificate_to_json(certify(spec.code, spec.limits));
            emit(out.dump(2) + "\n", out_path);
        } else if (scan->parsed()) {
            scan_opts.seed = seed;
            scan_opts.limits = limits;
            auto rows = run_scan(scan_opts);
            emit(format == "csv" ? scan_csv(rows) : scan_json(rows).dump(2) + "\n", out_path);
        } else if (lattice->parsed()) {
            if (format != "json") {
                throw InputError("--format: only json is supported for this command");
            }
            IntegerLattice lat = parse_lattice_spec(load_json_file(spec_path));
            emit(lattice_to_json(lat, parse_rational(rho_text, "--rho")).dump(2) + "\n", out_path);
        } else if (bound->parsed()) {
            if (format != "json") {
                throw InputError("--format: only json is supported for this command");
            }
            Integer n;
            if (n.set_str(n_text, 10) != 0) {
                throw InputError("--n: not an integer: " + n_text);
            }
            emit(bound_to_json(bt_bound(m, parse_rational(rho_text, "--rho"), dim, n)).dump(2) + "\n", out_path);
        }
    } catch (const ConsistencyFault &e) {
        std::cerr << "internal consistency fault: " << e.what() << "\n";
        return kExitFault;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const BudgetExceeded &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NotApplicable &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitFault;
    }
    return 0;
}
