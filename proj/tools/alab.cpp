// alab: command-line front end. JSON results go to stdout, diagnostics to
// stderr. Exit codes: 0 ok, 1 usage, 2 computation error, 3 polynomial file
// missing, 4 polynomial document malformed, 5 non-finite coefficient.

#include "alab/complexify.hpp"
#include "alab/io.hpp"
#include "alab/norms.hpp"
#include "alab/series.hpp"
#include "alab/theorem.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using alab::json;

enum ExitCode { ok = 0, usage = 1, computation = 2, poly_missing = 3, poly_schema = 4, poly_non_finite = 5 };

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw CLI::ValidationError(what, "not a number: '" + item + "'");
        }
        if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) {
            throw CLI::ValidationError(what, "not a number: '" + item + "'");
        }
        out.push_back(v);
    }
    if (expected != 0 && out.size() != expected) {
        throw CLI::ValidationError(what, "expected " + std::to_string(expected) + " comma-separated values");
    }
    if (out.empty()) throw CLI::ValidationError(what, "empty list");
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::trunc);
    out << text;
    if (!out) throw alab::Error("cannot write " + path);
}

struct Options {
    std::string config_path;
    int workers = alab::default_workers();
    alab::Config cfg;

    std::string poly_path;
    std::string field = "real";
    int degree = 0;
    int max_degree = 0;
    std::optional<int> starts;
    std::optional<std::uint64_t> seed;
    std::string cache;
    std::string out;
    int budget = 2000;
    int m = 1;
    std::string center = "0,0";
    std::optional<int> max_j;
    std::optional<int> max_n;
    std::optional<double> tol;
    std::string csv;
    int dirs = 8;
    int steps = 4;
    std::string point;
    std::string ts = "0.5,0.9";
    double epsilon = 0.05;
    std::string report;
};

alab::SearchOptions search_options(const Options& o)
{
    alab::SearchOptions s;
    s.workers = o.workers;
    s.budget = o.budget;
    s.ratio.real.bisect_tol = o.cfg.real_bisect_tol;
    s.ratio.complex.step_tol = o.cfg.complex_step_tol;
    return s;
}

alab::RecenterOptions recenter_options(const Options& o)
{
    alab::RecenterOptions r;
    r.max_j = o.max_j.value_or(o.cfg.max_j);
    r.max_terms = o.max_n.value_or(o.cfg.max_terms);
    r.tol = o.tol.value_or(o.cfg.tail_tol);
    return r;
}

alab::RealPoint2 parse_center(const std::string& s)
{
    const auto v = parse_list(s, 2, "--center");
    return {v[0], v[1]};
}

int starts_of(const Options& o) { return o.starts.value_or(o.cfg.starts); }
std::uint64_t seed_of(const Options& o) { return o.seed.value_or(o.cfg.seed); }
std::string cache_of(const Options& o) { return o.cache.empty() ? o.cfg.cache_path : o.cache; }

alab::CkRecord search_with_cache(const Options& o, int k, alab::ResultsCache* cache)
{
    const int starts = starts_of(o);
    const auto seed = seed_of(o);
    auto compute = [&] { return alab::ck_lower_search(k, starts, seed, search_options(o)); };
    if (cache) return cache->get_or_compute(k, starts, seed, compute);
    return compute();
}

std::unique_ptr<alab::ResultsCache> open_cache(const Options& o)
{
    const auto path = cache_of(o);
    if (path.empty()) return nullptr;
    return std::make_unique<alab::ResultsCache>(path);
}

int run(const std::string& cmd, Options& o)
{
    if (cmd == "norm" || cmd == "cnorm") {
        const auto p = alab::parse_poly_file(o.poly_path);
        const bool complex = cmd == "cnorm" || o.field == "complex";
        alab::RealNormOptions ro;
        ro.bisect_tol = o.cfg.real_bisect_tol;
        alab::ComplexNormOptions co;
        co.step_tol = o.cfg.complex_step_tol;
        emit(complex ? json(alab::complex_l1_norm(p, co)) : json(alab::real_l1_norm(p, ro)));
    } else if (cmd == "ratio") {
        const auto p = alab::parse_poly_file(o.poly_path);
        const auto so = search_options(o);
        const auto rn = alab::real_l1_norm(p, so.ratio.real);
        const auto cn = alab::complex_l1_norm(p, so.ratio.complex);
        if (rn.value == 0.0) throw alab::DomainError("ratio of the zero polynomial");
        emit(json{{"ratio", cn.value / rn.value}, {"real", rn}, {"complex", cn}});
    } else if (cmd == "ck-search") {
        auto cache = open_cache(o);
        const auto rec = search_with_cache(o, o.degree, cache.get());
        if (rec.warning) std::cerr << "warning: kth_root above sqrt(2) * 1.01 at degree " << rec.degree << '\n';
        emit(rec);
    } else if (cmd == "c-estimate") {
        auto cache = open_cache(o);
        const auto est = alab::c_estimate_with(o.max_degree, [&](int k) {
            std::cerr << "c-estimate: degree " << k << '\n';
            return search_with_cache(o, k, cache.get());
        });
        if (!o.out.empty()) write_text(o.out, alab::c_estimate_csv(est));
        if (o.cfg.format == "csv") {
            std::cout << alab::c_estimate_csv(est);
        } else {
            emit(est);
        }
    } else if (cmd == "recenter") {
        const alab::PowerSeries s(alab::parse_poly_file(o.poly_path), o.m);
        emit(alab::recenter(s, parse_center(o.center), recenter_options(o)));
    } else if (cmd == "radius") {
        const alab::PowerSeries s(alab::parse_poly_file(o.poly_path), o.m);
        const auto est = alab::radius_at(alab::recenter(s, parse_center(o.center), recenter_options(o)));
        if (!o.csv.empty()) write_text(o.csv, alab::per_j_csv(est));
        if (o.cfg.format == "csv") {
            std::cout << alab::per_j_csv(est);
        } else {
            json j = est;
            j["radius_origin"] = alab::radius_origin(s);
            emit(j);
        }
    } else if (cmd == "ra-estimate") {
        const alab::PowerSeries s(alab::parse_poly_file(o.poly_path), o.m);
        json j = alab::analyticity_radius_estimate(s, o.dirs, o.steps, recenter_options(o));
        j["radius_origin"] = alab::radius_origin(s);
        emit(j);
    } else if (cmd == "probe") {
        const alab::PowerSeries s(alab::parse_poly_file(o.poly_path), o.m);
        const auto v = parse_list(o.point, 4, "--point");
        const alab::ComplexPoint2 pt{{v[0], v[1]}, {v[2], v[3]}};
        emit(json(alab::divergence_probe(s, pt, parse_list(o.ts, 0, "--t"))));
    } else if (cmd == "theorem") {
        alab::TheoremConfig tc;
        tc.degree = o.degree;
        tc.starts = starts_of(o);
        tc.seed = seed_of(o);
        tc.epsilon = o.epsilon;
        tc.max_j = o.max_j.value_or(o.cfg.max_j);
        tc.max_terms = o.max_n.value_or(o.cfg.max_terms);
        tc.tail_tol = o.tol.value_or(o.cfg.tail_tol);
        tc.m_max = o.cfg.m_max;
        tc.tol_arg = o.cfg.arg_tol;
        tc.search = search_options(o);
        if (!o.poly_path.empty()) {
            tc.witness = alab::parse_poly_file(o.poly_path);
        } else {
            if (o.degree < 1) throw CLI::ValidationError("--degree", "required unless --poly is given");
            auto cache = open_cache(o);
            tc.record = search_with_cache(o, o.degree, cache.get());
            if (cache) {
                // running max over cached degrees <= k with the same starts and seed
                double c_hat = tc.record->kth_root;
                for (const auto& e : cache->entries()) {
                    if (e.degree <= o.degree && e.starts == tc.starts && e.seed == tc.seed) {
                        c_hat = std::max(c_hat, e.kth_root);
                    }
                }
                tc.c_hat = c_hat;
            }
        }
        const auto rep = alab::run_theorem(tc);
        const json j = rep;
        if (!o.report.empty()) write_text(o.report, j.dump(2) + "\n");
        emit(j);
    }
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sup-norms, complexification constants and radii of analyticity on l1^2"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--config", o.config_path,
                   std::string("JSON config document (default: $") + alab::config_env_var + ")");
    app.add_option("--workers", o.workers, "worker threads for multi-start searches")->check(CLI::PositiveNumber);

    auto poly_opt = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--poly", o.poly_path, "polynomial JSON file {\"degree\", \"coeffs\"}");
        if (required) opt->required();
    };
    auto series_opts = [&](CLI::App* sub) {
        poly_opt(sub, true);
        sub->add_option("--m", o.m, "multiplier m in f = sum P^(mn)")->check(CLI::PositiveNumber);
    };
    auto recenter_opts = [&](CLI::App* sub) {
        sub->add_option("--max-j", o.max_j, "largest recentred piece degree J");
        sub->add_option("--max-n", o.max_n, "term limit N (0: degree cap)");
        sub->add_option("--tol", o.tol, "relative tail tolerance");
    };
    auto search_opts = [&](CLI::App* sub) {
        sub->add_option("--starts", o.starts, "multi-start count")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "64-bit seed");
        sub->add_option("--cache", o.cache, "CkRecord cache file");
        sub->add_option("--budget", o.budget, "ratio evaluations per start")->check(CLI::PositiveNumber);
    };

    auto* norm = app.add_subcommand("norm", "sup-norm over the real or complex l1^2 ball");
    poly_opt(norm, true);
    norm->add_option("--field", o.field, "real | complex")->check(CLI::IsMember({"real", "complex"}));
    auto* cnorm = app.add_subcommand("cnorm", "sup-norm over the complex l1^2 ball");
    poly_opt(cnorm, true);
    auto* ratio = app.add_subcommand("ratio", "complexification ratio ||P~|| / ||P||");
    poly_opt(ratio, true);

    auto* ck = app.add_subcommand("ck-search", "lower-bound search for c_k");
    ck->add_option("--degree", o.degree, "degree k")->required()->check(CLI::Range(1, alab::degree_cap));
    search_opts(ck);
    auto* cest = app.add_subcommand("c-estimate", "table of c_k lower bounds for k = 1..K");
    cest->add_option("--max-degree", o.max_degree, "K")->required()->check(CLI::Range(1, alab::degree_cap));
    cest->add_option("--out", o.out, "CSV table path");
    search_opts(cest);

    auto* rec = app.add_subcommand("recenter", "recentred pieces Q_j of f = sum P^(mn)");
    series_opts(rec);
    rec->add_option("--center", o.center, "\"a1,a2\"");
    recenter_opts(rec);
    auto* rad = app.add_subcommand("radius", "radius of uniform convergence at a centre");
    series_opts(rad);
    rad->add_option("--center", o.center, "\"a1,a2\"");
    rad->add_option("--csv", o.csv, "write the per-j table as CSV");
    recenter_opts(rad);
    auto* ra = app.add_subcommand("ra-estimate", "radius of analyticity at the origin");
    series_opts(ra);
    ra->add_option("--dirs", o.dirs, "directions D")->check(CLI::Range(4, 1 << 20));
    ra->add_option("--steps", o.steps, "radial steps S")->check(CLI::Range(4, 1 << 20));
    recenter_opts(ra);
    auto* probe = app.add_subcommand("probe", "geometric partial sums along t * point");
    series_opts(probe);
    probe->add_option("--point", o.point, "\"re1,im1,re2,im2\"")->required();
    probe->add_option("--t", o.ts, "comma-separated t values in (0, 1)");

    auto* th = app.add_subcommand("theorem", "end-to-end construction and report");
    th->add_option("--degree", o.degree, "degree k")->check(CLI::Range(1, alab::degree_cap));
    th->add_option("--epsilon", o.epsilon, "epsilon slack")->check(CLI::Range(0.0, 1.0));
    th->add_option("--report", o.report, "report JSON path");
    poly_opt(th, false);
    search_opts(th);
    recenter_opts(th);

    try {
        app.parse(argc, argv);
        std::string cfg_path = o.config_path;
        if (cfg_path.empty()) {
            if (const char* env = std::getenv(alab::config_env_var)) cfg_path = env;
        }
        if (!cfg_path.empty()) o.cfg = alab::load_config(cfg_path);
        alab::validate(o.cfg);
        return run(app.get_subcommands().front()->get_name(), o);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        if (app.get_subcommands().empty()) {
            const auto rest = app.remaining();
            if (!rest.empty()) std::cerr << "unknown subcommand '" << rest.front() << "'\n";
            std::cerr << app.help();
            return usage;
        }
        app.exit(e);
        return usage;
    } catch (const alab::PolyFileError& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
        case alab::PolyFileErrorKind::missing_file: return poly_missing;
        case alab::PolyFileErrorKind::schema: return poly_schema;
        default: return poly_non_finite;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return computation;
    }
}
