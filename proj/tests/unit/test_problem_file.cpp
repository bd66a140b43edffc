#include <doctest.h>

#include "spps/problem_file.hpp"
#include "support.hpp"

using namespace spps;

namespace {

const char* minimal = R"(
[problem]
a = 0
b = 1
[piece]
lo = 0
hi = 1
p = "-1"
q = "0"
r = "1"
[boundary.left]
alpha = [1]
beta = [0]
[boundary.right]
alpha = [1]
beta = [0]
)";

}  // namespace

TEST_CASE("fixtures survive a round trip") {
    for (const char* name :
         {"example1", "example2_real", "example2_complex", "example3", "example4", "trivial", "harmonic"}) {
        CAPTURE(name);
        const ProblemFile a = load_problem(test_support::fixture(name));
        const ProblemFile b = parse_problem(serialize_problem(a));
        CHECK(same_problem(a, b));
        CHECK(serialize_problem(b) == serialize_problem(a));
    }
}

TEST_CASE("defaults and fields") {
    const ProblemFile pf = parse_problem(minimal);
    CHECK(pf.interval.a == 0.0);
    CHECK(pf.pieces.size() == 1);
    CHECK_FALSE(pf.has_particular());
    CHECK(pf.solver.n_powers == 60);
    CHECK(pf.left.derivative_form == DerivativeForm::p_u_prime);
    CHECK(pf.right.endpoint == Endpoint::right);

    const ProblemFile c = load_problem(test_support::fixture("example2_complex"));
    CHECK(c.solver.policy == ShiftPolicy::previous_if_upper_half);
    CHECK(c.pieces[1].r.eval(0) == cplx(7, 1));
    CHECK(load_problem(test_support::fixture("example1")).left.alpha.size() == 2);
}

TEST_CASE("structure errors name the line") {
    std::string bad = minimal;
    bad += "[solver]\nn_powers = many\n";
    try {
        parse_problem(bad);
        FAIL("expected an error");
    } catch (const StructureError& e) {
        CHECK(std::string(e.what()).find("line 18") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_problem("[problem]\na = 0\n"), StructureError);
    CHECK_THROWS_AS(parse_problem(std::string(minimal) + "[mystery]\n"), StructureError);
    CHECK_THROWS_AS(parse_problem(std::string(minimal) + "[solver]\npolicy = sideways\n"), InputError);
    CHECK_THROWS_AS(load_problem("/nonexistent/file.spps"), InputError);
}

TEST_CASE("policy names") {
    for (auto p : {ShiftPolicy::always_previous, ShiftPolicy::previous_if_upper_half, ShiftPolicy::fixed_center}) {
        CHECK(parse_policy(policy_name(p)) == p);
    }
}

TEST_CASE("prepare validates supplied f") {
    const auto pp = test_support::prepared("example3", 2000);
    REQUIRE(pp.spectral.particular.has_value());
    CHECK(pp.spectral.particular->residual <= 1e-9);
    CHECK(pp.config.n_terms == 95);
    CHECK(pp.shooting.pieces.size() == 2);
}

TEST_CASE("reference tables") {
    const auto refs = parse_references("# c\n0 1.5 -2 1e-7\n\n3 4 0 1e-9  # trailing\n");
    REQUIRE(refs.size() == 2);
    CHECK(refs[0].value == cplx(1.5, -2));
    CHECK(refs[1].index == 3);
    CHECK(refs[1].tolerance == 1e-9);
    CHECK_THROWS_AS(parse_references("0 1.5\n"), InputError);
    CHECK(load_references(test_support::reference("example1")).size() == 11);
}

TEST_CASE("number formatting round-trips") {
    const cplx z(0.1537166881459068, -3.537417383243752);
    CHECK(parse_constant(format_complex(z)) == z);
    CHECK(format_real(0.5) == "0.5");
}
