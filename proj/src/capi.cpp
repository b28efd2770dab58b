#include "heis/heis.h"

#include "heis/app.hpp"

#include <cstring>
#include <new>

struct heis_report {
    heis::app::Result result;
    heis::app::Config config;
    std::string text;
};

struct heis_substitution {
    heis::Endomorphism sigma;
};

namespace {

thread_local std::string last_error;

heis_status fail(heis_status status, const std::string& message) {
    last_error = message;
    return status;
}

// Maps the exception in flight to a status.
heis_status translate() {
    try {
        throw;
    } catch (const heis::ParseError& e) {
        return fail(HEIS_PARSE_ERROR, e.what());
    } catch (const heis::app::ConfigError& e) {
        return fail(HEIS_PARSE_ERROR, e.what());
    } catch (const heis::ScalarError& e) {
        return fail(HEIS_PARSE_ERROR, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(HEIS_PARSE_ERROR, std::string("config: ") + e.what());
    } catch (const heis::FactorizationError& e) {
        return fail(HEIS_HYPOTHESIS, e.what());
    } catch (const heis::app::IoError& e) {
        return fail(HEIS_IO_ERROR, e.what());
    } catch (const std::bad_alloc&) {
        return fail(HEIS_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(HEIS_INTERNAL, e.what());
    } catch (...) {
        return fail(HEIS_INTERNAL, "unknown error");
    }
}

}  // namespace

extern "C" {

const char* heis_version(void) { return "1.0.0"; }

const char* heis_last_error(void) { return last_error.c_str(); }

heis_status heis_run(const char* command, const char* config_json, heis_report** out) {
    if (!command || !out) return fail(HEIS_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    last_error.clear();
    try {
        const std::string text = config_json ? config_json : "";
        const heis::app::json j = text.empty() ? heis::app::json::object() : heis::app::json::parse(text);
        auto report = std::make_unique<heis_report>();
        report->config = heis::app::parse_config(j);
        report->result = heis::app::run_command(command, report->config);
        report->text = report->result.report.dump(2);
        const bool passed = report->result.passed;
        *out = report.release();
        return passed ? HEIS_OK : fail(HEIS_VERIFY_FAILED, "verification failed");
    } catch (...) {
        return translate();
    }
}

const char* heis_report_json(const heis_report* report) { return report ? report->text.c_str() : nullptr; }

int heis_report_passed(const heis_report* report) { return report && report->result.passed ? 1 : 0; }

heis_status heis_report_write(const heis_report* report, const char* dir, const char* format) {
    if (!report || !dir) return fail(HEIS_INVALID_ARGUMENT, "null argument");
    try {
        const std::string fmt = format ? format : report->config.format;
        if (fmt != "csv" && fmt != "jsonl") return fail(HEIS_INVALID_ARGUMENT, "format must be csv or jsonl");
        heis::app::write_artifacts(report->result, dir, fmt, report->config.seed);
        return HEIS_OK;
    } catch (...) {
        return translate();
    }
}

void heis_report_free(heis_report* report) { delete report; }

heis_status heis_substitution_parse(const char* text, heis_substitution** out) {
    if (!text || !out) return fail(HEIS_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        *out = new heis_substitution{heis::parse_substitution(text)};
        return HEIS_OK;
    } catch (...) {
        return translate();
    }
}

heis_status heis_substitution_matrix(const heis_substitution* s, long long out[4]) {
    if (!s || !out) return fail(HEIS_INVALID_ARGUMENT, "null argument");
    const auto m = s->sigma.abelianization();
    std::copy(m.begin(), m.end(), out);
    return HEIS_OK;
}

heis_status heis_substitution_fixed_prefix(const heis_substitution* s, size_t n, char* buf, size_t cap) {
    if (!s || !buf) return fail(HEIS_INVALID_ARGUMENT, "null argument");
    if (cap < n + 1) return fail(HEIS_INVALID_ARGUMENT, "buffer too small");
    try {
        const std::string w = heis::fixed_point_prefix(s->sigma, n).to_string();
        std::memcpy(buf, w.c_str(), w.size() + 1);
        return HEIS_OK;
    } catch (...) {
        return translate();
    }
}

void heis_substitution_free(heis_substitution* s) { delete s; }

}  // extern "C"
