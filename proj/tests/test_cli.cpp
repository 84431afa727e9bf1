#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "slicescale/io.hpp"

using namespace slicescale;

namespace {

const std::string cli = SLICESCALE_CLI_PATH;

int run(const std::string& args, const std::string& stdout_path = "/dev/null") {
    std::string cmd = cli + " " + args + " > " + stdout_path + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("check: feasible exits 0, infeasible exits 2, parse error exits 1") {
    write_file("/tmp/ss_full.tensor",
               "tensor v1\nmodes 2\ndims 2 2\nnnz 4\n1 1 1\n1 2 1\n2 1 1\n2 2 1\n");
    write_file("/tmp/ss_unit.targets", "targets v1\n1 1\n1 1\n");
    CHECK(run("check /tmp/ss_full.tensor /tmp/ss_unit.targets") == 0);

    write_file("/tmp/ss_hook.tensor",
               "tensor v1\nmodes 2\ndims 2 2\nnnz 3\n1 2 1\n2 1 1\n2 2 1\n");
    write_file("/tmp/ss_bad.targets", "targets v1\n1 1\n1.5 0.5\n");
    CHECK(run("check /tmp/ss_hook.tensor /tmp/ss_bad.targets", "/tmp/ss_check.out") == 2);
    std::string out = slurp("/tmp/ss_check.out");
    CHECK(out.find("INFEASIBLE") != std::string::npos);
    CHECK(out.find("certificate v1") != std::string::npos);

    write_file("/tmp/ss_malformed.tensor", "tensor v1\nmodes 2\ndims 2 x\n");
    CHECK(run("check /tmp/ss_malformed.tensor /tmp/ss_unit.targets") == 1);
}

TEST_CASE("check --json emits parseable JSON") {
    CHECK(run("check --json /tmp/ss_hook.tensor /tmp/ss_bad.targets", "/tmp/ss_check.json") ==
          2);
    auto j = nlohmann::json::parse(slurp("/tmp/ss_check.json"));
    CHECK(j["verdict"] == "infeasible");
    CHECK(j["certificate"].size() == 2);
    CHECK(j["objective_at_certificate"].get<double>() < -1e-6);
}

TEST_CASE("scale: converged output matches the known solution") {
    CHECK(run("scale /tmp/ss_full.tensor /tmp/ss_unit.targets -o /tmp/ss_scaled.tensor "
              "--trace /tmp/ss_trace.json") == 0);
    SparseTensor a = load_tensor("/tmp/ss_scaled.tensor");
    for (const Entry& e : a.entries())
        CHECK(e.value == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(slurp("/tmp/ss_scaled.tensor.scaling").find("scaling v1") == 0);
    auto trace = nlohmann::json::parse(slurp("/tmp/ss_trace.json"));
    CHECK(trace.contains("trace"));

    CHECK(run("scale --method sinkhorn --tol 1e-6 --max-iters 100000 /tmp/ss_full.tensor "
              "/tmp/ss_unit.targets -o /tmp/ss_scaled2.tensor") == 0);
    SparseTensor a2 = load_tensor("/tmp/ss_scaled2.tensor");
    for (std::size_t e = 0; e < 4; ++e)
        CHECK(a2.entries()[e].value ==
              doctest::Approx(a.entries()[e].value).epsilon(1e-6));
}

TEST_CASE("scale: infeasible instance exits 2") {
    CHECK(run("scale /tmp/ss_hook.tensor /tmp/ss_bad.targets") == 2);
}

TEST_CASE("gen round-trips through the file formats") {
    CHECK(run("gen --dims 3,3 --density 0.8 --seed 12 -o /tmp/ss_gen") == 0);
    SparseTensor t = load_tensor("/tmp/ss_gen.tensor");
    TargetSums s = load_targets("/tmp/ss_gen.targets");
    CHECK(t.num_modes() == 2);
    CHECK(check_compatibility(s).ok);
    CHECK(run("check /tmp/ss_gen.tensor /tmp/ss_gen.targets") == 0);

    CHECK(run("gen --infeasible --size 3 --seed 4 -o /tmp/ss_inf") == 0);
    CHECK(run("check /tmp/ss_inf.tensor /tmp/ss_inf.targets") == 2);
}

TEST_CASE("bench writes a deterministic CSV") {
    CHECK(run("bench --dims 3,3 --count 2 --seed 5 --csv /tmp/ss_bench.csv") == 0);
    std::string csv1 = slurp("/tmp/ss_bench.csv");
    CHECK(csv1.find("instance,method") == 0);
    CHECK(run("bench --dims 3,3 --count 2 --seed 5 --csv /tmp/ss_bench2.csv") == 0);
    // Timing columns differ run to run; strip the last field of each line.
    auto strip_times = [](const std::string& csv) {
        std::istringstream in(csv);
        std::string line, out;
        while (std::getline(in, line))
            out += line.substr(0, line.rfind(',')) + "\n";
        return out;
    };
    CHECK(strip_times(csv1) == strip_times(slurp("/tmp/ss_bench2.csv")));

    CHECK(run("bench --count 0 --csv /tmp/ss_empty.csv") == 0);
    CHECK(slurp("/tmp/ss_empty.csv") == "instance,method,status,iterations,residual,wall_seconds\n");
}
