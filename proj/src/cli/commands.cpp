#include "kdvres/cli/cli.hpp"

#include "kdvres/dmod/dmod.hpp"
#include "kdvres/fock/boson.hpp"
#include "kdvres/taulab/taulab.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace kdvres::cli {

namespace {

using nlohmann::json;

struct Row {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<Row> rows;
    json data = json::object();

    bool pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
    void add(std::string name, bool pass, std::string detail = {}) {
        rows.push_back({std::move(name), pass, pass ? std::string() : std::move(detail)});
    }
};

/// Resolved conventions shared by every command.
struct Context {
    Config cfg;
    Rational c0;
    bool calibrated = false;
    std::unique_ptr<dmod::Engine> engine;

    json conventions() const {
        return {{"c_flow", to_fraction_string(cfg.c_flow)},
                {"c0", to_fraction_string(c0)},
                {"c0_source", calibrated ? "calibrated" : "override"},
                {"notes",
                 {"c_flow fixes the flow normalization d_n u^(k) = c_flow S_{n+1}^(k+1); -2 makes d_1 the u-derivative",
                  "c0 is the diagonal of the tilde transform, fixed by requiring ev1 C = 0 through degree 6",
                  "tau series are expanded to t-degree torder + zorder so identities hold through torder"}}};
    }
};

Context make_context(const Config& cfg, bool need_engine) {
    Context ctx;
    ctx.cfg = cfg;
    if (!need_engine) {
        ctx.c0 = cfg.c0.value_or(Rational(2));
        ctx.calibrated = !cfg.c0.has_value();
        return ctx;
    }
    if (cfg.c0) {
        ctx.c0 = *cfg.c0;
    } else {
        dmod::Engine probe(dmod::Conventions{cfg.c_flow, Rational(2)});
        ctx.c0 = probe.calibrate_c0(6);
        ctx.calibrated = true;
    }
    ctx.engine = std::make_unique<dmod::Engine>(dmod::Conventions{cfg.c_flow, ctx.c0});
    return ctx;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

void emit_suites(const Context& ctx, const std::vector<SuiteResult>& suites, std::ostream& out) {
    bool all = true;
    for (const auto& s : suites) all = all && s.pass();
    switch (ctx.cfg.format) {
        case Format::Json: {
            json js = json::array();
            for (const auto& s : suites) {
                json checks = json::array();
                for (const auto& r : s.rows) {
                    json c{{"name", r.name}, {"pass", r.pass}};
                    if (!r.pass) c["failure"] = r.detail;
                    checks.push_back(c);
                }
                js.push_back({{"suite", s.suite}, {"pass", s.pass()}, {"checks", checks}, {"data", s.data}});
            }
            json report{{"conventions", ctx.conventions()}, {"pass", all}, {"suites", js}};
            out << report.dump(2) << "\n";
            break;
        }
        case Format::Text:
            out << fmt::format("conventions: c_flow = {}, c0 = {} ({})\n", to_display_string(ctx.cfg.c_flow),
                               to_display_string(ctx.c0), ctx.calibrated ? "calibrated" : "override");
            for (const auto& s : suites) {
                out << fmt::format("[{}]\n", s.suite);
                for (const auto& r : s.rows)
                    out << fmt::format("  {} {}{}\n", r.pass ? "PASS" : "FAIL", r.name,
                                       r.pass ? "" : ": " + r.detail);
            }
            out << (all ? "all checks passed\n" : "FAILURES present\n");
            break;
        case Format::Csv:
            out << "suite,check,pass,failure\n";
            for (const auto& s : suites)
                for (const auto& r : s.rows)
                    out << fmt::format("{},{},{},{}\n", csv_field(s.suite), csv_field(r.name), r.pass ? 1 : 0,
                                       csv_field(r.detail));
            break;
    }
}

std::string first_or_empty(const std::vector<std::string>& v) {
    if (v.empty()) return {};
    return v.front() + (v.size() > 1 ? fmt::format(" (+{} more)", v.size() - 1) : "");
}

// ---- suites ----

SuiteResult suite_null_vectors(Context& ctx, int dmax) {
    SuiteResult r{"null-vectors", {}, {}};
    auto& h = ctx.engine->hierarchy();
    auto s2 = h.S(2), s4 = h.S(4);
    auto rel1 = h.flow(3, s2) - h.flow(1, s4);
    auto rel2 = h.flow(1, h.flow(1, s2)) - s4 * Rational(4) + s2 * s2 * Rational(6);
    r.add("d3 S2 - d1 S4 = 0 in A", rel1.is_zero(), rel1.to_string());
    r.add("d1^2 S2 - 4 S4 + 6 S2^2 = 0 in A", rel2.is_zero(), rel2.to_string());
    json listing = json::array();
    for (int d = 0; d <= dmax; ++d) {
        auto rep = ctx.engine->null_vector_report(d);
        std::vector<std::string> bad;
        for (const auto& g : rep.generators)
            if (g.provenance == "unexplained") bad.push_back(g.text);
        r.add(fmt::format("degree {}: every null vector is a Q- or C-image", d), bad.empty(),
              "unexplained: " + first_or_empty(bad));
        listing.push_back(dmod::to_json(rep));
    }
    r.data["null_vectors"] = listing;
    return r;
}

SuiteResult suite_kernel(Context& ctx, int dmax, int rank_max) {
    SuiteResult r{"kernel", {}, {}};
    auto& e = *ctx.engine;
    auto ev1 = e.verify_ev1_kernel(dmax);
    r.add(fmt::format("ev1 Q = 0 (charge -3), ev1 C = 0 (charge -5), d <= {} [{} states]", dmax, ev1.checked),
          ev1.ok(), first_or_empty(ev1.failures));
    auto ops = e.verify_operator_identities(dmax);
    r.add(fmt::format("Q^2 = 0, [Q, C] = 0 on charges -1..-9, d <= {} [{} states]", dmax, ops.checked), ops.ok(),
          first_or_empty(ops.failures));
    json degrees = json::array();
    std::vector<std::string> not_equal, not_onto;
    for (int d = 0; d <= std::max(dmax, rank_max); ++d) {
        auto k = e.kernel_at_degree(d);
        if (d <= dmax && !k.equal) not_equal.push_back(fmt::format("d={} kernel {} image {}", d, k.kernel_dim, k.image_dim));
        if (d <= rank_max && !k.surjective())
            not_onto.push_back(fmt::format("d={} rank {} dim A {}", d, k.ev_rank, k.target_dim));
        degrees.push_back(dmod::to_json(k));
    }
    r.add(fmt::format("ker ev1 = Q-image + C-image, d <= {}", dmax), not_equal.empty(), first_or_empty(not_equal));
    r.add(fmt::format("rank ev1 = dim A_d, d <= {}", rank_max), not_onto.empty(), first_or_empty(not_onto));
    r.data["degrees"] = degrees;
    return r;
}

SuiteResult suite_ev2(Context& ctx, int dmax) {
    SuiteResult r{"ev2", {}, {}};
    auto rep = ctx.engine->verify_ev2_kernel(dmax);
    r.add(fmt::format("ev2 Q = 0 (charge -3), ev2 C = 0 (charge -5), d <= {} [{} + {} vectors]", dmax, rep.q_checked,
                      rep.c_checked),
          rep.ok(), first_or_empty(rep.failures));
    return r;
}

SuiteResult suite_characters(Context& ctx) {
    SuiteResult r{"characters", {}, {}};
    auto rep = dmod::char_report(ctx.cfg.qorder);
    r.add(fmt::format("alternating sum of column characters = (1-q)/prod(1-q^i) through q^{}", ctx.cfg.qorder),
          rep.alternating_sum_matches, "coefficient mismatch");
    r.add("Fock sector dimensions match q^{N^2}/prod(1-q^{2i})", rep.fock_counts_match, "count mismatch");
    r.data = dmod::to_json(rep);
    return r;
}

SuiteResult suite_equivalence(Context& ctx, int dmax) {
    SuiteResult r{"equivalence", {}, {}};
    auto& e = *ctx.engine;
    auto& h = e.hierarchy();
    r.add("a1 = 0", h.eta_a(1).is_zero(), h.eta_a(1).to_string());
    auto a3 = h.eta_a(3);
    auto want = diffalg::u(1) * Rational(-1, 12);
    r.add("a3 = -u'/12", a3 == want, a3.to_string());
    auto eq = e.ev_equivalence_check(3, 4);
    r.add("a_{2n-1} independent of m (n <= 3, m <= 4)", eq.ok(), first_or_empty(eq.failures));
    std::vector<std::string> bad;
    for (int d = 0; d <= dmax; ++d) {
        auto q = e.same_quotient(d);
        if (!q.same) bad.push_back(fmt::format("d={} ranks {} vs {}", d, q.ev1_rank, q.ev2_rank));
    }
    r.add(fmt::format("im ev1 + sum d_i A = im ev2 + sum d_i A, d <= {}", dmax), bad.empty(), first_or_empty(bad));
    json as = json::array();
    for (const auto& [n, p] : eq.a) as.push_back({{"index", n}, {"a", p.to_string()}});
    r.data["a"] = as;
    return r;
}

SuiteResult suite_tau(Context& ctx) {
    SuiteResult r{"tau", {}, {}};
    diffalg::Hierarchy h(ctx.cfg.c_flow);
    taulab::SuiteOptions opt;
    opt.trunc = {ctx.cfg.torder, ctx.cfg.zorder, ctx.cfg.times};
    json reports = json::array();
    for (const auto& t : ctx.cfg.taus) {
        auto rep = taulab::verify_tau(taulab::parse_tau(t), h, opt);
        for (const auto& c : rep.checks) r.add(rep.tau + ": " + c.name, c.passed, c.detail);
        reports.push_back(taulab::to_json(rep));
    }
    r.data["taus"] = reports;
    return r;
}

// ---- tables ----

struct Table {
    std::string name;
    std::vector<std::pair<std::string, GradedPoly>> entries;
};

json table_json(const Context& ctx, const Table& t) {
    json entries = json::array();
    for (const auto& [n, p] : t.entries) entries.push_back({{"name", n}, {"text", p.to_string()}, {"poly", to_json(p)}});
    return {{"table", t.name}, {"c_flow", to_fraction_string(ctx.cfg.c_flow)}, {"entries", entries}};
}

void emit_table(const Context& ctx, const Table& t, std::ostream& out) {
    switch (ctx.cfg.format) {
        case Format::Json: out << table_json(ctx, t).dump(2) << "\n"; break;
        case Format::Text:
            for (const auto& [n, p] : t.entries) out << n << " = " << p.to_string() << "\n";
            break;
        case Format::Csv:
            out << "name,polynomial\n";
            for (const auto& [n, p] : t.entries) out << csv_field(n) << "," << csv_field(p.to_string()) << "\n";
            break;
    }
}

/// 0 when freshly written or identical to the cached copy, 1 on mismatch.
int cache_table(const Context& ctx, const std::string& key, const std::string& content, std::ostream& err) {
    if (ctx.cfg.cache_dir.empty()) return 0;
    namespace fs = std::filesystem;
    fs::path dir(ctx.cfg.cache_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create cache directory " + dir.string() + ": " + ec.message());
    fs::path file = dir / key;
    if (fs::exists(file)) {
        std::ifstream in(file, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        if (ss.str() == content) {
            err << "cache hit, verified identical: " << file.string() << "\n";
            return 0;
        }
        err << "cache MISMATCH: " << file.string() << " differs from the recomputed table\n";
        return 1;
    }
    std::ofstream o(file, std::ios::binary);
    o << content;
    if (!o) throw ConfigError("cannot write " + file.string());
    err << "cached " << file.string() << "\n";
    return 0;
}

int run_table(Context& ctx, const std::string& op, int max, std::ostream& out, std::ostream& err) {
    Table t;
    std::string module = "diffalg";
    if (op == "gen-s") {
        t.name = "S";
        if (max < 2) throw ConfigError("gen-s needs --max >= 2");
        auto table = diffalg::gen_S(max - max % 2);
        for (int n = 2; n <= table.max_index(); n += 2) t.entries.emplace_back("S" + std::to_string(n), table(n));
    } else if (op == "zeta") {
        t.name = "zeta";
        diffalg::Hierarchy h(ctx.cfg.c_flow);
        for (int i = 1; i <= max; i += 2)
            for (int j = 1; j <= max; j += 2) t.entries.emplace_back(fmt::format("zeta{},{}", i, j), h.zeta(i, j));
    } else {
        t.name = "bar-S";
        module = "fock";
        auto s = fock::barS_series(max);
        for (std::size_t k = 1; k < s.size(); ++k) t.entries.emplace_back("barS" + std::to_string(2 * k), s[k]);
    }
    std::string key = cache_key(module, op, {"max" + std::to_string(max)}, ctx.cfg.c_flow, std::nullopt);
    int rc = cache_table(ctx, key, table_json(ctx, t).dump(2) + "\n", err);
    emit_table(ctx, t, out);
    return rc;
}

int run_null_vectors(Context& ctx, int lo, int hi, std::ostream& out) {
    bool red_flag = false;
    json arr = json::array();
    std::string text, csv = "degree,relation,provenance\n";
    for (int d = lo; d <= hi; ++d) {
        auto rep = ctx.engine->null_vector_report(d);
        arr.push_back(dmod::to_json(rep));
        if (rep.generators.empty()) text += fmt::format("degree {}: none\n", d);
        for (const auto& g : rep.generators) {
            red_flag = red_flag || g.provenance == "unexplained";
            text += fmt::format("degree {}: {} [{}]\n", d, g.text, g.provenance);
            csv += fmt::format("{},{},{}\n", d, csv_field(g.text), g.provenance);
        }
    }
    switch (ctx.cfg.format) {
        case Format::Json: out << json{{"conventions", ctx.conventions()}, {"degrees", arr}}.dump(2) << "\n"; break;
        case Format::Text: out << text; break;
        case Format::Csv: out << csv; break;
    }
    return red_flag ? 1 : 0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations for the KdV free resolution: tables, verification suites, null vectors.",
                 "kdvres"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, format, cache, c_flow, c0;
    std::optional<int> dmax, qorder, torder, zorder, times;
    std::vector<std::string> taus;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--format", format, "json, text or csv");
    app.add_option("--cache", cache, "cache directory (default: $KDVRES_CACHE_DIR)");
    app.add_option("--c-flow", c_flow, "override the flow constant");
    app.add_option("--c0", c0, "override the tilde constant (default: calibrated)");
    app.add_option("--dmax", dmax, "degree cutoff");
    app.add_option("--order", qorder, "character order");
    app.add_option("--t-degree", torder, "tau t-degree");
    app.add_option("--z-order", zorder, "tau z-order");
    app.add_option("--times", times, "number of odd times t1, t3, ...");
    app.add_option("--tau", taus, "catalog tau, e.g. soliton:p=1/2 (repeatable)");

    int table_max = 12;
    auto* gen_s = app.add_subcommand("gen-s", "S_2 ... S_max");
    gen_s->add_option("--max", table_max, "largest index")->check(CLI::PositiveNumber);
    int zeta_max = 7;
    auto* zeta = app.add_subcommand("zeta", "zeta_ij for odd i, j <= max");
    zeta->add_option("--max", zeta_max, "largest index")->check(CLI::PositiveNumber);
    int bars_max = 12;
    auto* bar_s = app.add_subcommand("bar-s", "bar-S_2 ... bar-S_max in the J variables");
    bar_s->add_option("--max", bars_max, "largest index")->check(CLI::PositiveNumber);

    std::string suite;
    std::optional<int> degree;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "null-vectors, kernel, ev2, characters, tau, equivalence or all")
        ->required()
        ->check(CLI::IsMember({"null-vectors", "kernel", "ev2", "characters", "tau", "equivalence", "all"}));
    verify->add_option("--degree", degree, "degree cutoff for this run");

    std::optional<int> nv_degree;
    auto* nulls = app.add_subcommand("null-vectors", "kernel generators per degree with provenance");
    nulls->add_option("--degree", nv_degree, "single degree (default: all degrees <= dmax)");

    auto* show = app.add_subcommand("config", "print the effective configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    Config cfg;
    try {
        if (!config_path.empty()) cfg = Config::from_text(read_file(config_path));
        if (cache.empty() && cfg.cache_dir.empty()) {
            if (const char* env = std::getenv("KDVRES_CACHE_DIR")) cfg.cache_dir = env;
        }
        if (!cache.empty()) cfg.cache_dir = cache;
        if (!format.empty()) cfg.format = parse_format(format);
        if (!c_flow.empty()) cfg.c_flow = parse_rational(c_flow);
        if (!c0.empty()) cfg.c0 = parse_rational(c0);
        if (dmax) cfg.dmax = *dmax;
        if (qorder) cfg.qorder = *qorder;
        if (torder) cfg.torder = *torder;
        if (zorder) cfg.zorder = *zorder;
        if (times) cfg.times = *times;
        if (!taus.empty()) cfg.taus = taus;
        if (degree && *degree < 0) throw ConfigError("--degree must be non-negative");
        if (nv_degree && *nv_degree < 0) throw ConfigError("--degree must be non-negative");
        cfg.validate();
    } catch (const Error& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*show) {
            out << cfg.to_text();
            return 0;
        }
        if (*gen_s || *zeta || *bar_s) {
            Context ctx = make_context(cfg, false);
            if (*gen_s) return run_table(ctx, "gen-s", table_max, out, err);
            if (*zeta) return run_table(ctx, "zeta", zeta_max, out, err);
            return run_table(ctx, "bar-s", bars_max, out, err);
        }
        Context ctx = make_context(cfg, *verify || *nulls);
        if (*nulls) {
            int lo = nv_degree ? *nv_degree : 0, hi = nv_degree ? *nv_degree : cfg.dmax;
            return run_null_vectors(ctx, lo, hi, out);
        }
        const int d = degree.value_or(cfg.dmax);
        std::vector<SuiteResult> results;
        auto want = [&](const char* name) { return suite == "all" || suite == name; };
        if (want("null-vectors")) results.push_back(suite_null_vectors(ctx, d));
        if (want("kernel")) results.push_back(suite_kernel(ctx, d, std::max(d, suite == "all" ? 16 : d)));
        if (want("ev2")) results.push_back(suite_ev2(ctx, d));
        if (want("characters")) results.push_back(suite_characters(ctx));
        if (want("equivalence")) results.push_back(suite_equivalence(ctx, d));
        if (want("tau")) results.push_back(suite_tau(ctx));
        emit_suites(ctx, results, out);
        for (const auto& r : results)
            if (!r.pass()) return 1;
        return 0;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "failure: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace kdvres::cli
