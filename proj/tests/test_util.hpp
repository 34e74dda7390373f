#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#ifndef SBP_FIXTURE_DIR
#define SBP_FIXTURE_DIR "tests/fixtures"
#endif

namespace sbp_test {

// name -> value map from the golden fixture (lines of "name value",
// '#' comments).
inline std::map<std::string, double> load_golden(const std::string& file = "theory_golden.txt") {
    const std::string path = std::string(SBP_FIXTURE_DIR) + "/" + file;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden fixture: " + path);
    std::map<std::string, double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string name;
        double value = 0.0;
        if (ls >> name >> value) out[name] = value;
    }
    return out;
}

} // namespace sbp_test
