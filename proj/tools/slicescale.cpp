// Command-line front end: check / scale / gen / bench.
//
// Exit codes: 0 success (feasible / converged), 2 mathematically infeasible
// (diverged), 3 iteration budget exhausted, 1 input or solver error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "slicescale/feasibility.hpp"
#include "slicescale/generator.hpp"
#include "slicescale/io.hpp"
#include "slicescale/sinkhorn.hpp"
#include "slicescale/solver.hpp"

using namespace slicescale;
using nlohmann::json;

namespace {

int log_level() {
    const char* env = std::getenv("SLICESCALE_LOG");
    if (!env) return 0;
    std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[slicescale] " << msg << "\n";
}

std::vector<int> parse_dims(const std::string& spec) {
    std::vector<int> dims;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) dims.push_back(std::stoi(part));
    if (dims.empty()) throw CLI::ValidationError("--dims", "empty dimension list");
    return dims;
}

void dump_frame(const std::string& path, const SubspaceFrame& frame) {
    std::ofstream out(path);
    auto write_basis = [&](const char* name, const Matrix& m) {
        out << name << " " << m.rows() << " " << m.cols() << "\n";
        for (int i = 0; i < m.rows(); ++i) {
            for (int j = 0; j < m.cols(); ++j)
                out << (j ? " " : "") << format_double(m(i, j));
            out << "\n";
        }
    };
    write_basis("U", frame.basis_U);
    write_basis("V", frame.basis_V);
    write_basis("Vperp", frame.basis_Vperp);
}

json vectors_to_json(const std::vector<std::vector<double>>& v) { return json(v); }

int cmd_check(const std::string& tensor_path, const std::string& targets_path,
              bool as_json, const std::string& frame_path) {
    SparseTensor b = load_tensor(tensor_path);
    TargetSums s = load_targets(targets_path);
    if (!frame_path.empty()) dump_frame(frame_path, build_frame(b, s));
    FeasibilityReport rep = check_scalability(b, s);
    if (as_json) {
        json j;
        j["verdict"] = rep.verdict == Verdict::Feasible ? "feasible" : "infeasible";
        if (rep.certificate) {
            j["certificate"] = vectors_to_json(rep.certificate->modes);
            j["objective_at_certificate"] = rep.objective_at_certificate;
        }
        std::cout << j.dump(2) << "\n";
    } else if (rep.verdict == Verdict::Feasible) {
        std::cout << "FEASIBLE\n";
    } else {
        std::cout << "INFEASIBLE\n";
        write_mode_vectors(std::cout, "certificate v1", rep.certificate->modes);
        std::cout << "# total support sum " << format_double(rep.objective_at_certificate)
                  << "\n";
    }
    return rep.verdict == Verdict::Feasible ? 0 : 2;
}

void write_trace(const std::string& path, const ScalingResult& res) {
    json rows = json::array();
    for (const TraceRow& t : res.trace)
        rows.push_back({{"iteration", t.iteration},
                        {"objective", t.objective},
                        {"residual", t.residual},
                        {"step_length", t.step_length}});
    std::ofstream out(path);
    out << json{{"iterations", res.iterations}, {"trace", rows}}.dump(2) << "\n";
}

int cmd_scale(const std::string& tensor_path, const std::string& targets_path,
              const std::string& method, double tol, int max_iters,
              const std::string& trace_path, const std::string& out_path,
              const std::string& frame_path) {
    SparseTensor b = load_tensor(tensor_path);
    TargetSums s = load_targets(targets_path);
    if (!frame_path.empty()) dump_frame(frame_path, build_frame(b, s));

    SolverOptions opts;
    opts.residual_tol = tol;
    opts.max_iters = max_iters;
    ScalingResult res =
        method == "sinkhorn" ? sinkhorn_scale(b, s, opts) : newton_scale(b, s, opts);
    if (!trace_path.empty()) write_trace(trace_path, res);

    std::cout << "status "
              << (res.status == SolveStatus::Converged    ? "converged"
                  : res.status == SolveStatus::Diverged   ? "diverged"
                                                          : "max-iters-exceeded")
              << "\nresidual " << format_double(res.residual) << "\niterations "
              << res.iterations << "\n";

    if (res.status == SolveStatus::Converged) {
        if (!out_path.empty()) {
            save_tensor(out_path, *res.scaled_tensor);
            std::ofstream sv(out_path + ".scaling");
            write_mode_vectors(sv, "scaling v1", res.scaling.modes);
            log_info("wrote " + out_path + " and " + out_path + ".scaling");
        } else {
            write_tensor(std::cout, *res.scaled_tensor);
            write_mode_vectors(std::cout, "scaling v1", res.scaling.modes);
        }
        return 0;
    }
    if (res.status == SolveStatus::Diverged) {
        if (res.certificate)
            write_mode_vectors(std::cout, "certificate v1", res.certificate->modes);
        return 2;
    }
    return 3;
}

int cmd_gen(const std::string& dims_spec, double density, std::uint64_t seed,
            double value_spread, bool infeasible, int size, const std::string& prefix) {
    Instance inst = infeasible
                        ? generate_infeasible_2mode(size, seed)
                        : generate_feasible(parse_dims(dims_spec), density, seed, value_spread);
    save_tensor(prefix + ".tensor", inst.tensor);
    save_targets(prefix + ".targets", inst.targets);
    std::cout << "wrote " << prefix << ".tensor and " << prefix << ".targets\n";
    return 0;
}

int cmd_bench(const std::string& dims_spec, double density, int count, std::uint64_t seed,
              const std::string& csv_path, const std::string& traces_path) {
    std::vector<int> dims = parse_dims(dims_spec);
    std::ostringstream csv, traces;
    csv << "instance,method,status,iterations,residual,wall_seconds\n";
    traces << "instance,method,iteration,objective,residual\n";

    std::cout << "instance  method    status      iters   residual      seconds\n";
    for (int i = 0; i < count; ++i) {
        Instance inst = generate_feasible(dims, density, seed + static_cast<std::uint64_t>(i));
        for (const std::string& method : {"newton", "sinkhorn"}) {
            SolverOptions opts;
            opts.residual_tol = method == "newton" ? 1e-10 : 1e-8;
            opts.max_iters = method == "newton" ? 100 : 100000;
            auto t0 = std::chrono::steady_clock::now();
            ScalingResult res = method == "newton" ? newton_scale(inst.tensor, inst.targets, opts)
                                                   : sinkhorn_scale(inst.tensor, inst.targets, opts);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                              .count();
            const char* status = res.status == SolveStatus::Converged    ? "converged"
                                 : res.status == SolveStatus::Diverged   ? "diverged"
                                                                         : "max-iters";
            csv << i << "," << method << "," << status << "," << res.iterations << ","
                << format_double(res.residual) << "," << format_double(secs) << "\n";
            for (const TraceRow& t : res.trace)
                traces << i << "," << method << "," << t.iteration << ","
                       << format_double(t.objective) << "," << format_double(t.residual)
                       << "\n";
            char line[160];
            std::snprintf(line, sizeof line, "%-9d %-9s %-11s %-7d %-13.3e %.4f", i,
                          method.c_str(), status, res.iterations, res.residual, secs);
            std::cout << line << "\n";
        }
    }
    if (!csv_path.empty()) std::ofstream(csv_path) << csv.str();
    if (!traces_path.empty()) std::ofstream(traces_path) << traces.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diagonal scaling of nonnegative tensors to prescribed slice sums"};
    app.require_subcommand(1);

    std::string tensor_path, targets_path, method = "newton", trace_path, out_path;
    std::string dims_spec = "4,4", prefix = "instance", csv_path, traces_path, frame_path;
    double tol = 1e-10, density = 1.0, value_spread = 1.0;
    int max_iters = 100, count = 10, size = 4;
    std::uint64_t seed = 1;
    bool as_json = false, infeasible = false;

    auto* check = app.add_subcommand("check", "Decide whether a scaling exists");
    check->add_option("tensor", tensor_path)->required();
    check->add_option("targets", targets_path)->required();
    check->add_flag("--json", as_json, "Emit the report as JSON");
    check->add_option("--dump-frame", frame_path, "Write subspace bases to a file");

    auto* scale = app.add_subcommand("scale", "Compute the scaled tensor");
    scale->add_option("tensor", tensor_path)->required();
    scale->add_option("targets", targets_path)->required();
    scale->add_option("--method", method)->check(CLI::IsMember({"newton", "sinkhorn"}));
    scale->add_option("--tol", tol, "Relative slice-sum residual target");
    scale->add_option("--max-iters", max_iters);
    scale->add_option("--trace", trace_path, "Write a JSON iteration trace");
    scale->add_option("-o,--output", out_path, "Scaled tensor path (+ .scaling)");
    scale->add_option("--dump-frame", frame_path, "Write subspace bases to a file");

    auto* gen = app.add_subcommand("gen", "Generate test instances");
    gen->add_option("--dims", dims_spec, "Comma-separated dimensions");
    gen->add_option("--density", density);
    gen->add_option("--seed", seed);
    gen->add_option("--value-spread", value_spread, "Width of the entry value range");
    gen->add_flag("--infeasible", infeasible, "Emit an infeasible d=2 instance");
    gen->add_option("--size", size, "Matrix size for --infeasible");
    gen->add_option("-o,--output", prefix, "Output file prefix");

    auto* bench = app.add_subcommand("bench", "Compare Newton and Sinkhorn");
    bench->add_option("--dims", dims_spec);
    bench->add_option("--density", density);
    bench->add_option("--count", count);
    bench->add_option("--seed", seed);
    bench->add_option("--csv", csv_path, "Summary CSV path");
    bench->add_option("--traces", traces_path, "Per-iteration trace CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(check))
            return cmd_check(tensor_path, targets_path, as_json, frame_path);
        if (app.got_subcommand(scale))
            return cmd_scale(tensor_path, targets_path, method, tol, max_iters, trace_path,
                             out_path, frame_path);
        if (app.got_subcommand(gen))
            return cmd_gen(dims_spec, density, seed, value_spread, infeasible, size, prefix);
        if (app.got_subcommand(bench))
            return cmd_bench(dims_spec, density, count, seed, csv_path, traces_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
