#pragma once

// Command layer shared by the C API and the acceptance driver: configuration,
// the experiment commands, the verification suites and artifact emission.

#include "heis/dynamics.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace heis::app {

using json = nlohmann::ordered_json;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WeylConfig {
    long long samples = 1000000;
    long long escalate_to = 10000000;
    int max_index = 3;
    double tolerance = 0.05;
    double dt = 0.1;
};

struct Config {
    std::string substitution = "a->ab;b->a";
    std::optional<QuadraticContext> context;  // must match the computed one when given
    std::uint64_t seed = 1;
    long long samples = 100;
    long long iters = 10000;
    std::string format = "csv";
    // strip family / renormalization parameters (exact text)
    std::string s = "-1", s_next = "-1", theta = "0";
    // orbit
    std::string system = "niltranslation";  // niltranslation | nilflow | skew | strip | sigma
    std::string start = "[0, 0, 0]";
    std::string dt = "1/10";
    WeylConfig weyl;
    std::vector<int> criteria;  // verify subset; empty = all
};

/// Throws ConfigError on unknown keys or malformed values.
Config parse_config(const json& j);
json to_json(const Config& c);

/// Plot-ready rows: CSV cells are floats printed with 17 significant digits,
/// JSONL rows carry the exact values as strings.
struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> csv_rows;
    std::vector<json> jsonl_rows;
};

struct Result {
    std::string command;
    json report;
    std::vector<Table> tables;
    bool passed = true;  // false only for verification failures
};

/// (H) failures surface as FactorizationError, malformed input as
/// ConfigError / ParseError / ScalarError.
Result run_command(const std::string& command, const Config& cfg);

Result analyze(const Config& cfg);
Result orbit(const Config& cfg);
Result broken_line_command(const Config& cfg);
Result induce(const Config& cfg);
Result equidistribution(const Config& cfg);
Result verify(const Config& cfg);

constexpr int kCriteria = 12;
/// One acceptance criterion as a report section {id, name, passed, checks}.
json verify_criterion(int id, const Config& cfg);

/// Writes <command>.json and one file per table into `dir`, each through a
/// temporary file and a rename. Throws IoError.
std::vector<std::string> write_artifacts(const Result& r, const std::string& dir, const std::string& format,
                                         std::uint64_t seed);

std::string format_double(double v);
/// "a=p/q,b=r/s"
std::string exact(const Q& v);

}  // namespace heis::app
