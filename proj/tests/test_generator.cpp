#include <doctest.h>

#include <stdexcept>

#include "slicescale/feasibility.hpp"
#include "slicescale/generator.hpp"
#include "slicescale/solver.hpp"

using namespace slicescale;

TEST_CASE("generate_feasible: full-density 2x2 and determinism") {
    Instance a = generate_feasible({2, 2}, 1.0, 7);
    Instance b = generate_feasible({2, 2}, 1.0, 7);
    CHECK(a.tensor == b.tensor);
    CHECK(a.targets.sums == b.targets.sums);
    CHECK(a.tensor.nnz() == 4);
    CHECK(check_scalability(a.tensor, a.targets).verdict == Verdict::Feasible);
}

TEST_CASE("generate_feasible outputs are valid and scalable") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Instance inst = generate_feasible({3, 4, 2}, 0.6, seed);
        CHECK(validate_no_zero_slice(inst.tensor).empty());
        CHECK(check_compatibility(inst.targets).ok);
        CHECK(check_scalability(inst.tensor, inst.targets).verdict == Verdict::Feasible);

        ScalingResult res = newton_scale(inst.tensor, inst.targets);
        REQUIRE(res.status == SolveStatus::Converged);
        CHECK(res.residual <= 1e-10);
    }
}

TEST_CASE("generate_infeasible_2mode produces LP-infeasible instances") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Instance inst = generate_infeasible_2mode(4, seed);
        CHECK(validate_no_zero_slice(inst.tensor).empty());
        FeasibilityReport rep = check_scalability(inst.tensor, inst.targets);
        REQUIRE(rep.verdict == Verdict::Infeasible);
        CHECK(verify_certificate(inst.tensor, inst.targets, *rep.certificate));
    }
    Instance a = generate_infeasible_2mode(3, 42);
    Instance b = generate_infeasible_2mode(3, 42);
    CHECK(a.tensor == b.tensor);
    CHECK(a.targets.sums == b.targets.sums);
}

TEST_CASE("generator rejects bad parameters") {
    CHECK_THROWS_AS(generate_feasible({2, 2}, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_feasible({2, 2}, 1.0, 1, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(generate_infeasible_2mode(1, 1), std::invalid_argument);
}
