#include "heis/app.hpp"

#include <algorithm>
#include <cstdio>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <unistd.h>

namespace heis::app {

namespace {

const Q kHalf(Rational(1, 2));

json qjson(const Q& v) { return {{"exact", v.to_string()}, {"float", v.to_double()}}; }

Q parse_q(const std::string& text, const std::optional<QuadraticContext>& ctx, const char* what) {
    try {
        return Q::parse(text, ctx);
    } catch (const ScalarError& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

// "[u, v]" over the golden context
std::pair<Q, Q> parse_pair(const std::string& text, const std::optional<QuadraticContext>& ctx) {
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw ConfigError("start: expected \"[u, v]\"");
    t = t.substr(1, t.size() - 2);
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos)
        throw ConfigError("start: expected two coordinates");
    return {parse_q(t.substr(0, comma), ctx, "start"), parse_q(t.substr(comma + 1), ctx, "start")};
}

HeisenbergEndo configured_endo(const Config& cfg) { return factor(parse_substitution(cfg.substitution)); }

EigenData configured_eigen(const Config& cfg) {
    EigenData E = eigen_data(configured_endo(cfg));
    if (cfg.context && !(*cfg.context == E.context))
        throw ConfigError("context " + cfg.context->to_string() + " does not match the substitution's " +
                          E.context.to_string());
    return E;
}

Table make_table(std::string name, std::vector<std::string> header) {
    Table t;
    t.name = std::move(name);
    t.header = std::move(header);
    return t;
}

void add_row(Table& t, const std::vector<std::string>& csv, json exact_row) {
    t.csv_rows.push_back(csv);
    t.jsonl_rows.push_back(std::move(exact_row));
}

std::string show_point(const GroupPoint<Q>& g) { return to_string(g); }

std::mt19937_64 command_rng(const Config& cfg, std::uint64_t salt) {
    return std::mt19937_64(cfg.seed ^ (salt * 0x9E3779B97F4A7C15ULL));
}

Rational unit_rational(std::mt19937_64& rng, long den) {
    std::uniform_int_distribution<long> num(0, den - 1);
    return Rational(num(rng), den);
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string exact(const Q& v) { return v.to_components(); }

// ---------------------------------------------------------------- config

Config parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known{"substitution", "context", "seed",   "samples", "iters", "format",
                                             "s",            "s_next",  "theta",  "system",  "start", "dt",
                                             "weyl",         "criteria"};
    for (const auto& [k, _] : j.items())
        if (!known.count(k)) throw ConfigError("unknown config key \"" + k + "\"");
    Config c;
    try {
        if (j.contains("substitution")) c.substitution = j.at("substitution").get<std::string>();
        if (j.contains("context")) c.context = QuadraticContext::parse(j.at("context").get<std::string>());
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("samples")) c.samples = j.at("samples").get<long long>();
        if (j.contains("iters")) c.iters = j.at("iters").get<long long>();
        if (j.contains("format")) c.format = j.at("format").get<std::string>();
        for (auto [key, field] : {std::pair{"s", &c.s}, {"s_next", &c.s_next}, {"theta", &c.theta},
                                  {"system", &c.system}, {"start", &c.start}, {"dt", &c.dt}})
            if (j.contains(key)) *field = j.at(key).get<std::string>();
        if (j.contains("weyl")) {
            const json& w = j.at("weyl");
            static const std::set<std::string> wk{"samples", "escalate_to", "max_index", "tolerance", "dt"};
            for (const auto& [k, _] : w.items())
                if (!wk.count(k)) throw ConfigError("unknown weyl key \"" + k + "\"");
            if (w.contains("samples")) c.weyl.samples = w.at("samples").get<long long>();
            if (w.contains("escalate_to")) c.weyl.escalate_to = w.at("escalate_to").get<long long>();
            if (w.contains("max_index")) c.weyl.max_index = w.at("max_index").get<int>();
            if (w.contains("tolerance")) c.weyl.tolerance = w.at("tolerance").get<double>();
            if (w.contains("dt")) c.weyl.dt = w.at("dt").get<double>();
        }
        if (j.contains("criteria")) c.criteria = j.at("criteria").get<std::vector<int>>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const ScalarError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (c.samples < 1) throw ConfigError("samples must be >= 1");
    if (c.iters < 1) throw ConfigError("iters must be >= 1");
    if (c.format != "csv" && c.format != "jsonl") throw ConfigError("format must be csv or jsonl");
    if (c.weyl.samples < 1 || c.weyl.max_index < 0) throw ConfigError("weyl: samples >= 1 and max_index >= 0");
    for (int id : c.criteria)
        if (id < 1 || id > kCriteria) throw ConfigError("criteria: ids run from 1 to 12");
    return c;
}

json to_json(const Config& c) {
    json j;
    j["substitution"] = c.substitution;
    if (c.context) j["context"] = c.context->to_string();
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    j["iters"] = c.iters;
    j["format"] = c.format;
    j["s"] = c.s;
    j["s_next"] = c.s_next;
    j["theta"] = c.theta;
    j["system"] = c.system;
    j["start"] = c.start;
    j["dt"] = c.dt;
    j["weyl"] = {{"samples", c.weyl.samples},
                 {"escalate_to", c.weyl.escalate_to},
                 {"max_index", c.weyl.max_index},
                 {"tolerance", c.weyl.tolerance},
                 {"dt", c.weyl.dt}};
    if (!c.criteria.empty()) j["criteria"] = c.criteria;
    return j;
}

// -------------------------------------------------------------- commands

Result analyze(const Config& cfg) {
    Result r;
    r.command = "analyze";
    const Endomorphism sigma = parse_substitution(cfg.substitution);
    const HeisenbergEndo L = factor(sigma);
    json& rep = r.report;
    rep["substitution"] = sigma.to_string();
    rep["matrix"] = {{L.m_aa, L.m_ab}, {L.m_ba, L.m_bb}};
    rep["e"] = L.e;
    rep["f"] = L.f;
    rep["det"] = L.det();
    rep["trace"] = L.trace();
    const HypothesisReport h = check_hypothesis_H(L);
    rep["hypothesis_H"] = {{"passed", h.passed}, {"failures", h.failures}};
    if (!h.passed) {
        std::string msg = "hypothesis (H) fails for " + L.to_string() + ":";
        for (const auto& f : h.failures) msg += " " + f + ";";
        throw FactorizationError(msg);
    }
    const EigenData E = configured_eigen(cfg);
    rep["context"] = E.context.to_string();
    json v;
    for (const auto& [name, q] : std::initializer_list<std::pair<const char*, const Q*>>{
             {"lambda", &E.lambda}, {"lambda_p", &E.lambda_p}, {"alpha", &E.alpha}, {"beta", &E.beta},
             {"gamma", &E.gamma}, {"alpha_p", &E.alpha_p}, {"beta_p", &E.beta_p}, {"gamma_p", &E.gamma_p},
             {"delta", &E.delta}, {"t_a", &E.t_a}, {"t_b", &E.t_b}, {"s_a", &E.s_a}, {"s_b", &E.s_b}})
        v[name] = qjson(*q);
    rep["eigendata"] = v;
    const SurfaceQuadric sq = surface_quadric(E);
    rep["surface_quadric"] = {{"xx", qjson(sq.xx)}, {"yy", qjson(sq.yy)}, {"xy", qjson(sq.xy)},
                              {"x", qjson(sq.x)},   {"y", qjson(sq.y)},   {"c", qjson(sq.c)}};
    rep["section_admissible"] = section_admissible(E);
    if (L.is_automorphism()) {
        std::string word;
        for (const auto& g : decompose(L)) word += (word.empty() ? "" : " ") + g.to_string();
        rep["decomposition"] = word;
    }
    return r;
}

Result orbit(const Config& cfg) {
    Result r;
    r.command = "orbit";
    r.report["system"] = cfg.system;
    r.report["iters"] = cfg.iters;
    const auto golden = std::optional<QuadraticContext>(QuadraticContext::golden());
    if (cfg.system == "niltranslation" || cfg.system == "nilflow") {
        const EigenData E = configured_eigen(cfg);
        const AlgebraVector<Q> v = flow_of(E, Eigen::dominant);
        GroupPoint<Q> g0;
        try {
            g0 = parse_group_point(cfg.start, E.context);
        } catch (const ScalarError& e) {
            throw ConfigError(std::string("start: ") + e.what());
        }
        const Q dt = parse_q(cfg.dt, E.context, "dt");
        Table t = make_table("orbit", {"k", "x", "y", "z"});
        GroupPoint<Q> g = canonicalize(g0).rep;
        for (long long k = 0; k <= cfg.iters; ++k) {
            if (cfg.system == "nilflow" && k > 0) g = canonicalize(flow(v, Q(k) * dt, g0)).rep;
            add_row(t, {std::to_string(k), format_double(g.x.to_double()), format_double(g.y.to_double()),
                        format_double(g.z.to_double())},
                    {{"k", k}, {"x", exact(g.x)}, {"y", exact(g.y)}, {"z", exact(g.z)}});
            if (cfg.system == "niltranslation") g = canonicalize(translate(v, g)).rep;
        }
        r.report["flow"] = {{"alpha", qjson(v.alpha)}, {"beta", qjson(v.beta)}, {"gamma", qjson(v.gamma)}};
        r.report["start"] = show_point(g0);
        if (cfg.system == "nilflow") r.report["dt"] = qjson(dt);
        r.tables.push_back(std::move(t));
    } else if (cfg.system == "skew" || cfg.system == "strip") {
        const PiecewiseTorusMap map = cfg.system == "skew"
                                          ? golden_skew_map()
                                          : strip_family(parse_q(cfg.s, golden, "s"), parse_q(cfg.theta, golden, "theta"));
        const auto [u0, v0] = parse_pair(cfg.start == "[0, 0, 0]" ? "[0, 0]" : cfg.start, golden);
        TorusPoint2 p = TorusPoint2::reduced(u0, v0);
        Table t = make_table("orbit", {"k", "u", "v"});
        for (long long k = 0; k <= cfg.iters; ++k) {
            add_row(t, {std::to_string(k), format_double(p.u.to_double()), format_double(p.v.to_double())},
                    {{"k", k}, {"u", exact(p.u)}, {"v", exact(p.v)}});
            p = map(p);
        }
        r.tables.push_back(std::move(t));
    } else if (cfg.system == "sigma") {
        const Section S(configured_eigen(cfg));
        const auto [s0, z0] = parse_pair(cfg.start == "[0, 0, 0]" ? "[0, 0]" : cfg.start, S.E.context);
        SectionPoint p{s0, z0};
        if (!on_sigma(S, p)) throw ConfigError("start is not a section point (s in [s_a, s_b), zoff in [-1/2, 1/2))");
        Table t = make_table("orbit", {"k", "s", "zoff", "time"});
        Q time(0);
        for (long long k = 0; k <= cfg.iters; ++k) {
            add_row(t, {std::to_string(k), format_double(p.s.to_double()), format_double(p.zoff.to_double()),
                        format_double(time.to_double())},
                    {{"k", k}, {"s", exact(p.s)}, {"zoff", exact(p.zoff)}, {"time", exact(time)}});
            const SectionReturn ret = sigma_return(S, p);
            time = ret.time;
            p = ret.point;
        }
        r.tables.push_back(std::move(t));
    } else {
        throw ConfigError("system must be niltranslation, nilflow, skew, strip or sigma");
    }
    return r;
}

Result broken_line_command(const Config& cfg) {
    Result r;
    r.command = "broken-line";
    const Endomorphism sigma = parse_substitution(cfg.substitution);
    const Word w = fixed_point_prefix(sigma, static_cast<std::size_t>(cfg.iters));
    const std::vector<LatticePoint> line = broken_line(w);
    std::optional<EigenData> E;
    if (check_hypothesis_H(factor(sigma)).passed) E = configured_eigen(cfg);

    Table t = make_table("broken_line", E ? std::vector<std::string>{"k", "a", "b", "c", "u", "v"}
                                          : std::vector<std::string>{"k", "a", "b", "c"});
    Q sup(0);
    long long sup_k = 0;
    long long pairs = 0, a_count = 0;
    bool inversions_ok = true;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const LatticePoint& p = line[k];
        if (k > 0) {
            if (w[k - 1] == Letter::a)
                ++a_count;
            else
                pairs += a_count;
        }
        inversions_ok = inversions_ok && p.p == pairs;
        std::vector<std::string> csv{std::to_string(k), std::to_string(p.n), std::to_string(p.m), std::to_string(p.p)};
        json row{{"k", static_cast<long long>(k)}, {"a", p.n}, {"b", p.m}, {"c", p.p}};
        if (E) {
            const Q kk(static_cast<long long>(k));
            const Q u = Q(p.n) - kk * E->alpha, v = Q(p.m) - kk * E->beta;
            const Q norm = std::max(u.abs(), v.abs());
            if (norm > sup) {
                sup = norm;
                sup_k = static_cast<long long>(k);
            }
            csv.push_back(format_double(u.to_double()));
            csv.push_back(format_double(v.to_double()));
            row["u"] = exact(u);
            row["v"] = exact(v);
        }
        add_row(t, csv, std::move(row));
    }
    r.report["substitution"] = sigma.to_string();
    r.report["length"] = static_cast<long long>(w.size());
    r.report["prefix"] = w.to_string().substr(0, 64);
    r.report["c_matches_pair_count"] = inversions_ok;
    if (E) {
        r.report["projection"] = {{"alpha", qjson(E->alpha)},
                                  {"beta", qjson(E->beta)},
                                  {"sup_norm", qjson(sup)},
                                  {"sup_at", sup_k},
                                  {"below_2", sup < Q(2)}};
    }
    r.tables.push_back(std::move(t));
    return r;
}

Result induce(const Config& cfg) {
    Result r;
    r.command = "induce";
    const auto golden = std::optional<QuadraticContext>(QuadraticContext::golden());
    const Q s = parse_q(cfg.s, golden, "s"), s_next = parse_q(cfg.s_next, golden, "s_next"),
            theta = parse_q(cfg.theta, golden, "theta");
    const PiecewiseTorusMap T = strip_family(s, theta);
    const Q bound = phi_pow(-2);
    auto rng = command_rng(cfg, 101);
    std::vector<TorusPoint2> pts;
    for (long long i = 0; i < cfg.samples; ++i)
        pts.push_back({bound * Q(unit_rational(rng, 9973)),
                       (Q(unit_rational(rng, 9973)) + Q(Rational(0), unit_rational(rng, 97), *golden)).frac()});

    Table t = make_table("first_return", {"k", "u", "v", "n", "u_ret", "v_ret"});
    const auto strip = [&](const TorusPoint2& p) { return p.u < bound; };
    long long k = 0, replay_failures = 0;
    std::map<long long, long long> counts;
    for (const auto& p : pts) {
        const TorusReturn ret = first_return(T, strip, p);
        if (!replay(T, p, ret)) ++replay_failures;
        ++counts[ret.iterates];
        add_row(t,
                {std::to_string(k), format_double(p.u.to_double()), format_double(p.v.to_double()),
                 std::to_string(ret.iterates), format_double(ret.point.u.to_double()),
                 format_double(ret.point.v.to_double())},
                {{"k", k}, {"u", exact(p.u)}, {"v", exact(p.v)}, {"n", ret.iterates},
                 {"u_ret", exact(ret.point.u)}, {"v_ret", exact(ret.point.v)}});
        ++k;
    }
    json hist = json::object();
    for (const auto& [n, c] : counts) hist[std::to_string(n)] = c;
    r.report["strip"] = {{"s", qjson(s)}, {"theta", qjson(theta)}, {"return_counts", hist},
                         {"replay_failures", replay_failures}};

    const RenormalizationReport ren = renormalization_check(s, s_next, theta, pts);
    json rj{{"s_next", qjson(s_next)}, {"a", qjson(ren.a)},         {"b", qjson(ren.b)},
            {"theta_next", qjson(ren.theta_next)}, {"samples", ren.samples}, {"passed", ren.passed}};
    if (!ren.passed) rj["witness"] = ren.witness;
    r.report["renormalization"] = rj;

    const EigenData E = configured_eigen(cfg);
    if (section_admissible(E) && E.lambda.sign() > 0) {
        const Section S(E);
        std::vector<SectionPoint> sp{{Q(0), Q(0)}};
        for (long long i = 1; i < cfg.samples; ++i)
            sp.push_back({S.E.s_a + (S.E.s_b - S.E.s_a) * Q(unit_rational(rng, 9973)),
                          Q(unit_rational(rng, 9973)) - kHalf});
        const SelfInductionReport si = self_induction_sigma(S, sp);
        json sj{{"samples", static_cast<long long>(sp.size())}, {"failures", si.failures}, {"passed", si.passed}};
        for (const auto& x : si.samples)
            if (!x.passed) {
                sj["witness"] = x.detail;
                break;
            }
        r.report["sigma_self_induction"] = sj;
    } else {
        r.report["sigma_self_induction"] = "skipped: section geometry not admissible or lambda < 0";
    }
    r.tables.push_back(std::move(t));
    return r;
}

Result equidistribution(const Config& cfg) {
    Result r;
    r.command = "equidistribution";
    const EigenData E = configured_eigen(cfg);
    const WeylConfig& w = cfg.weyl;
    const std::vector<WeylReport> reps{
        equidistribution_torus(golden_skew_map(), 0.0, 0.0, w.samples, w.max_index, w.tolerance, w.escalate_to),
        equidistribution_nilflow(flow_of(E, Eigen::dominant), {0.0, 0.0, 0.0}, w.dt, w.samples, w.max_index,
                                 w.tolerance, w.escalate_to)};
    const std::vector<std::string> names{"skew_map", "nilflow"};
    Table t = make_table("weyl", {"system", "p", "q", "modulus"});
    json systems = json::array();
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const WeylReport& rep = reps[i];
        systems.push_back({{"system", names[i]},
                           {"samples", rep.samples},
                           {"escalated", rep.escalated},
                           {"tolerance", rep.tolerance},
                           {"max_modulus", rep.max_modulus},
                           {"passed", rep.passed}});
        for (const auto& e : rep.entries)
            add_row(t, {names[i], std::to_string(e.p), std::to_string(e.q), format_double(e.modulus)},
                    {{"system", names[i]}, {"p", e.p}, {"q", e.q}, {"modulus", format_double(e.modulus)}});
    }
    r.report["systems"] = systems;
    r.report["nilflow_dt"] = w.dt;
    r.tables.push_back(std::move(t));
    return r;
}

Result verify(const Config& cfg) {
    Result r;
    r.command = "verify";
    json sections = json::array();
    bool all = true;
    for (int id = 1; id <= kCriteria; ++id) {
        if (!cfg.criteria.empty() && std::find(cfg.criteria.begin(), cfg.criteria.end(), id) == cfg.criteria.end())
            continue;
        json c = verify_criterion(id, cfg);
        all = all && c.at("passed").get<bool>();
        sections.push_back(std::move(c));
    }
    r.report["criteria"] = std::move(sections);
    r.report["passed"] = all;
    r.passed = all;
    return r;
}

Result run_command(const std::string& command, const Config& cfg) {
    Result r;
    if (command == "analyze")
        r = analyze(cfg);
    else if (command == "orbit")
        r = orbit(cfg);
    else if (command == "broken-line")
        r = broken_line_command(cfg);
    else if (command == "induce")
        r = induce(cfg);
    else if (command == "equidistribution")
        r = equidistribution(cfg);
    else if (command == "verify")
        r = verify(cfg);
    else
        throw ConfigError("unknown command \"" + command + "\"");
    json head;
    head["command"] = command;
    head["seed"] = cfg.seed;
    head["config"] = to_json(cfg);
    for (auto& [k, v] : r.report.items()) head[k] = v;
    r.report = std::move(head);
    return r;
}

// -------------------------------------------------------------- emission

namespace {

void write_atomic(const std::filesystem::path& path, const std::string& data) {
    const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << data;
        out.flush();
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename into " + path.string());
    }
}

}  // namespace

std::vector<std::string> write_artifacts(const Result& r, const std::string& dir, const std::string& format,
                                         std::uint64_t seed) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + dir);
    const std::filesystem::path base(dir);
    std::vector<std::string> written;
    const std::string stem = r.command == "broken-line" ? "broken_line" : r.command;

    const auto report_path = base / (stem + ".json");
    write_atomic(report_path, r.report.dump(2) + "\n");
    written.push_back(report_path.string());

    for (const Table& t : r.tables) {
        const json meta{{"command", r.command}, {"table", t.name}, {"seed", seed}, {"columns", t.header}};
        if (format == "jsonl") {
            std::string data = json{{"meta", meta}}.dump() + "\n";
            for (const auto& row : t.jsonl_rows) data += row.dump() + "\n";
            const auto p = base / (stem + "_" + t.name + ".jsonl");
            write_atomic(p, data);
            written.push_back(p.string());
        } else {
            std::string data;
            for (std::size_t i = 0; i < t.header.size(); ++i) data += (i ? "," : "") + t.header[i];
            data += "\n";
            for (const auto& row : t.csv_rows) {
                for (std::size_t i = 0; i < row.size(); ++i) data += (i ? "," : "") + row[i];
                data += "\n";
            }
            const auto p = base / (stem + "_" + t.name + ".csv");
            write_atomic(p, data);
            write_atomic(p.string() + ".meta.json", meta.dump(2) + "\n");
            written.push_back(p.string());
        }
    }
    return written;
}

}  // namespace heis::app
