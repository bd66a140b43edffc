#pragma once

#include <string>

#include "spps/problem_file.hpp"

namespace test_support {

inline std::string fixture(const std::string& name) {
    return std::string(SPPS_DATA_DIR) + "/fixtures/" + name + ".spps";
}

inline std::string reference(const std::string& name) {
    return std::string(SPPS_DATA_DIR) + "/references/" + name + ".ref";
}

inline spps::PreparedProblem prepared(const std::string& name) {
    return spps::prepare(spps::load_problem(fixture(name)));
}

inline spps::PreparedProblem prepared(const std::string& name, std::size_t mesh) {
    auto pf = spps::load_problem(fixture(name));
    pf.solver.mesh = mesh;
    return spps::prepare(pf);
}

}  // namespace test_support
