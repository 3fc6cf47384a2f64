#pragma once

// Fixed CLI invocations whose output is pinned byte-for-byte in golden/.

#include <array>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace golden {

struct Case {
    const char* file;
    std::vector<std::string> args;
};

inline const std::vector<Case>& cases() {
    static const std::vector<Case> all = {
        {"mertens.csv", {"mertens", "--limit", "100", "--every", "10"}},
        {"mertens.json", {"--format", "json", "mertens", "--limit", "30", "--every", "10"}},
        {"zeros.json", {"--format", "json", "zeros", "--t-max", "30", "--step", "0.05"}},
        {"constants.csv", {"constants", "--k", "3", "--n", "1000", "--accelerate"}},
        {"abel_check.csv", {"abel-check", "--n", "100", "--m", "1000", "--s", "0.75"}},
        {"divisor_ratio.json", {"--format", "json", "divisor-ratio", "--limit", "2000", "--every", "250", "--from", "1000"}},
        {"zeta.csv", {"zeta", "--s", "0.5+14i"}},
        {"li.csv", {"li", "--x", "2"}},
        {"prime_window.csv", {"prime-window", "--n", "10", "--h", "1"}},
        {"identity_explore.csv", {"identity-explore", "--n", "4"}},
        {"weierstrass.csv", {"weierstrass", "--x", "0.3", "--a", "1", "--terms", "1000"}},
        {"theta.csv", {"theta", "--limit", "1000", "--s", "0.75"}},
    };
    return all;
}

struct Outcome {
    int status = 0;
    std::string out;
    std::string err;
};

inline Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Outcome o;
    o.status = stieltjes::cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

/// Invocations that must be rejected with exit status 2.
inline const std::vector<std::vector<std::string>>& invalid_invocations() {
    static const std::vector<std::vector<std::string>> all = {
        {"mertens", "--limit", "100", "--bogus"},
        {"mertens"},
        {"mertens", "--limit", "0"},
        {"zeta", "--s", "1"},
        {"zeta", "--s", "2+i"},
        {"zeta", "--s", "0.5+200i"},
        {"--format", "xml", "mertens", "--limit", "10"},
        {"zeros", "--t-max", "50", "--step", "0.5"},
        {"constants", "--k", "0"},
        {"li", "--x", "1"},
        {"nonexistent-command"},
        {},
    };
    return all;
}

} // namespace golden
