#include <CLI11.hpp>
#include <iostream>

#include "spps/commands.hpp"

namespace {

struct CommonFlags {
    std::optional<int> n_powers;
    std::optional<std::size_t> mesh;
    std::optional<std::string> delta;
    std::optional<std::string> policy;
    std::optional<int> max_eigs;
    std::optional<double> threshold;
    std::optional<std::string> out;

    void attach(CLI::App* cmd) {
        cmd->add_option("--n-powers", n_powers, "number N of series terms");
        cmd->add_option("--mesh", mesh, "number M of subintervals");
        cmd->add_option("--delta", delta, "shift displacement, e.g. 0.5 or 0.5+0.5i");
        cmd->add_option("--policy", policy, "always_previous | previous_if_upper_half | fixed_center");
        cmd->add_option("--max-eigs", max_eigs, "number of eigenvalues to compute");
        cmd->add_option("--threshold", threshold, "acceptance threshold for candidate roots");
        cmd->add_option("--out", out, "output file");
    }

    spps::Overrides overrides() const {
        spps::Overrides o;
        o.n_powers = n_powers;
        o.mesh = mesh;
        if (delta) o.delta = spps::parse_constant(*delta);
        if (policy) o.policy = spps::parse_policy(*policy);
        o.max_eigenvalues = max_eigs;
        o.threshold = threshold;
        if (out) o.out = *out;
        return o;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sturm-Liouville eigenvalues by spectral parameter power series"};
    app.require_subcommand(1);

    std::string file;
    std::string reference;
    std::string center = "0";
    std::string guess = "0";
    double radius = 1.0;
    int grid = 64;
    int samples = 1024;
    int n = 1;
    double x = 0.0;
    int steps = 20000;

    CommonFlags flags;
    auto with_file = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "problem file")->required()->check(CLI::ExistingFile);
        flags.attach(cmd);
    };

    auto* solve = app.add_subcommand("solve", "compute eigenvalues by the shift sweep");
    with_file(solve);

    auto* land = app.add_subcommand("landscape", "write -log|Phi| on a grid over a disk");
    with_file(land);
    land->add_option("--center", center, "disk centre");
    land->add_option("--radius", radius, "disk radius")->required();
    land->add_option("--grid", grid, "points per side");

    auto* count = app.add_subcommand("count", "count eigenvalues inside a circle");
    with_file(count);
    count->add_option("--center", center, "circle centre");
    count->add_option("--radius", radius, "circle radius")->required();
    count->add_option("--samples", samples, "initial contour samples (at least 256)");

    auto* verify = app.add_subcommand("verify", "compare against a reference table");
    with_file(verify);
    verify->add_option("reference", reference, "reference file")->required()->check(CLI::ExistingFile);

    auto* powers = app.add_subcommand("powers", "print formal powers at a point");
    with_file(powers);
    powers->add_option("--n", n, "power index")->required();
    powers->add_option("--x", x, "abscissa")->required();

    auto* shoot = app.add_subcommand("shoot", "");
    shoot->group("");
    shoot->add_option("file", file, "problem file")->required()->check(CLI::ExistingFile);
    shoot->add_option("--guess", guess, "starting value");
    shoot->add_option("--steps", steps, "steps per piece");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : spps::exit_code::input_error;
    }

    try {
        const spps::Overrides o = flags.overrides();
        if (*solve) return spps::command_solve(file, o, std::cout, std::cerr);
        if (*land) {
            return spps::command_landscape(file, o, spps::parse_constant(center), radius, grid, std::cout,
                                           std::cerr);
        }
        if (*count) {
            return spps::command_count(file, o, spps::parse_constant(center), radius, samples, std::cout,
                                       std::cerr);
        }
        if (*verify) return spps::command_verify(file, reference, o, std::cout, std::cerr);
        if (*powers) return spps::command_powers(file, o, n, x, std::cout, std::cerr);
        if (*shoot) return spps::command_shoot(file, spps::parse_constant(guess), steps, std::cout, std::cerr);
    } catch (const spps::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return spps::exit_code::input_error;
    }
    return spps::exit_code::input_error;
}
