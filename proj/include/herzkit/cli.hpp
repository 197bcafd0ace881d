#pragma once

#include "herzkit/builtins.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace herzkit {

enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 1,
    exit_parse = 2,
    exit_precondition = 3,
    exit_truncation = 4
};

struct JobConfig {
    std::string command;
    // Exactly one of input and builtin.
    std::string input;
    std::string builtin;
    BuiltinParams builtin_params;
    std::vector<int> grid{257};
    std::vector<double> L{8.0};

    std::vector<double> a;
    std::vector<double> q;
    double alpha = 0.0;
    double p = 1.0;
    bool nonhomogeneous = false;
    int k_min = -6;
    int k_max = 4;

    std::string output;
    // Grid-valued result (operators, synthesize).
    std::string values;
    std::string format = "json";
    bool strict = false;
    double truncation = 1e-6;
    unsigned threads = 1;
    std::uint64_t seed = 20240611;

    // maximal, fractional, weights
    double r_max = 0.0;
    int per_octave = 1;
    int stride = 1;
    double order = 0.5;
    bool fractional_maximal = false;
    // cz
    std::string commutator;
    // lp
    std::string lp_kind = "g";
    double aperture = 1.0;
    double lambda = 2.0;
    int j_min = -5;
    int j_max = 3;
    // decompose
    std::string kind = "block";
    // atoms
    int count = 20;
    int s = -1;
    std::vector<int> ks{-2, -1, 0, 1, 2};
    double epsilon = 0.0;
    // verify
    std::string suite = "rubio";
    std::string B = "auto";
    int K = 12;
};

// Runs a parsed job; the report goes to config.output or to out.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (CLI11, config file merged under explicit flags) and runs the job.
int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace herzkit
