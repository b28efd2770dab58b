// heis: command-line front end over the C API.

#include "heis/heis.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using json = nlohmann::ordered_json;

struct Options {
    std::string command;
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<long long> samples, iters;
    std::optional<std::string> format;
};

int run(const Options& o) {
    json cfg = json::object();
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) {
            std::cerr << "heis: cannot read config " << o.config_path << "\n";
            return HEIS_IO_ERROR;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            cfg = json::parse(buf.str());
        } catch (const json::parse_error& e) {
            std::cerr << "heis: " << o.config_path << ": " << e.what() << "\n";
            return HEIS_PARSE_ERROR;
        }
        if (!cfg.is_object()) {
            std::cerr << "heis: config must be a JSON object\n";
            return HEIS_PARSE_ERROR;
        }
    }
    // flags win over the file
    if (o.seed) cfg["seed"] = *o.seed;
    if (o.samples) cfg["samples"] = *o.samples;
    if (o.iters) cfg["iters"] = *o.iters;
    if (o.format) cfg["format"] = *o.format;

    heis_report* report = nullptr;
    const heis_status st = heis_run(o.command.c_str(), cfg.dump().c_str(), &report);
    if (!report) {
        std::cerr << "heis: " << heis_last_error() << "\n";
        return st;
    }
    std::cout << heis_report_json(report) << "\n";
    int code = st;
    if (!o.out_dir.empty()) {
        const heis_status w = heis_report_write(report, o.out_dir.c_str(), nullptr);
        if (w != HEIS_OK) {
            std::cerr << "heis: " << heis_last_error() << "\n";
            code = w;
        }
    }
    if (st == HEIS_VERIFY_FAILED) std::cerr << "heis: verification failed\n";
    heis_report_free(report);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact dynamics of Heisenberg nilflows attached to substitutions"};
    app.set_version_flag("--version", heis_version());
    app.require_subcommand(1);

    Options o;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON config file");
        sub->add_option("--out", o.out_dir, "directory for the report and data files");
        sub->add_option("--seed", o.seed, "64-bit seed");
        sub->add_option("--samples", o.samples, "sample count")->check(CLI::PositiveNumber);
        sub->add_option("--iters", o.iters, "iteration count")->check(CLI::PositiveNumber);
        sub->add_option("--format", o.format, "data file format")->check(CLI::IsMember({"csv", "jsonl"}));
    };
    const std::pair<const char*, const char*> commands[] = {
        {"analyze", "factorization, eigendata and section geometry of the substitution"},
        {"orbit", "orbit of a niltranslation, nilflow, torus map or the section return"},
        {"broken-line", "broken line of the fixed word and its projection"},
        {"induce", "first returns, renormalization and self-induction"},
        {"verify", "run the verification suites; exits 1 on any failure"},
        {"equidistribution", "Weyl sums for the skew map and the nilflow"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub);
        sub->callback([&o, n = std::string(name)] { o.command = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return HEIS_PARSE_ERROR;
    }
    return run(o);
}
