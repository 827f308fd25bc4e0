#ifndef ALAB_IO_HPP
#define ALAB_IO_HPP

// JSON/CSV forms of every result type, polynomial files, the JSON config
// document and the append-only CkRecord cache.
//
// Non-finite doubles (e.g. per_j of a zero piece) are written as null and read
// back as +inf.

#include "alab/complexify.hpp"
#include "alab/norms.hpp"
#include "alab/poly.hpp"
#include "alab/series.hpp"
#include "alab/theorem.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace alab {

using json = nlohmann::json;

// ---------------------------------------------------------------- scalars

inline json number(double v)
{
    if (!std::isfinite(v)) return nullptr;
    return v;
}

inline double read_number(const json& j)
{
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

inline json to_json_value(std::complex<double> c) { return json::array({c.real(), c.imag()}); }

inline std::complex<double> complex_from_json(const json& j)
{
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline void to_json(json& j, const RealPoint2& p) { j = json::array({p.x1, p.x2}); }
inline void from_json(const json& j, RealPoint2& p)
{
    p.x1 = j.at(0).get<double>();
    p.x2 = j.at(1).get<double>();
}

inline void to_json(json& j, const ComplexPoint2& p)
{
    j = json{{"z", to_json_value(p.z)}, {"w", to_json_value(p.w)}};
}
inline void from_json(const json& j, ComplexPoint2& p)
{
    p.z = complex_from_json(j.at("z"));
    p.w = complex_from_json(j.at("w"));
}

// ---------------------------------------------------------------- polynomials

inline void to_json(json& j, const HomogeneousPoly& h)
{
    j = json{{"degree", h.degree()}, {"coeffs", std::vector<double>(h.coeffs().begin(), h.coeffs().end())}};
}

/// Why a polynomial document was rejected; each maps to its own exit code.
enum class PolyFileErrorKind { missing_file, schema, non_finite };

class PolyFileError : public std::runtime_error {
public:
    PolyFileError(PolyFileErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    PolyFileErrorKind kind() const { return kind_; }

private:
    PolyFileErrorKind kind_;
};

inline HomogeneousPoly poly_from_json(const json& doc)
{
    using K = PolyFileErrorKind;
    if (!doc.is_object() || !doc.contains("degree") || !doc.contains("coeffs")) {
        throw PolyFileError(K::schema, "polynomial document needs \"degree\" and \"coeffs\"");
    }
    const auto& deg = doc["degree"];
    const auto& arr = doc["coeffs"];
    if (!deg.is_number_integer() || deg.get<long long>() < 0) {
        throw PolyFileError(K::schema, "\"degree\" must be a non-negative integer");
    }
    if (!arr.is_array()) throw PolyFileError(K::schema, "\"coeffs\" must be an array");
    const long long d = deg.get<long long>();
    if (d > degree_cap) throw PolyFileError(K::schema, "degree exceeds the cap of " + std::to_string(degree_cap));
    if (static_cast<long long>(arr.size()) != d + 1) {
        throw PolyFileError(K::schema, "degree " + std::to_string(d) + " needs " + std::to_string(d + 1) +
                                           " coefficients, got " + std::to_string(arr.size()));
    }
    std::vector<double> c;
    c.reserve(arr.size());
    for (const auto& v : arr) {
        if (v.is_null()) throw PolyFileError(K::non_finite, "non-finite coefficient");
        if (!v.is_number()) throw PolyFileError(K::schema, "coefficients must be numbers");
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw PolyFileError(K::non_finite, "non-finite coefficient");
        c.push_back(x);
    }
    return HomogeneousPoly::from_parts(static_cast<int>(d), std::move(c));
}

inline void from_json(const json& j, HomogeneousPoly& h) { h = poly_from_json(j); }

inline HomogeneousPoly parse_poly_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw PolyFileError(PolyFileErrorKind::missing_file, "cannot open polynomial file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw PolyFileError(PolyFileErrorKind::schema, std::string("malformed JSON in ") + path.string() + ": " + e.what());
    }
    return poly_from_json(doc);
}

// ---------------------------------------------------------------- norms

inline void to_json(json& j, const NormResult& r)
{
    j = json{{"value", r.value}, {"method", to_string(r.method)}, {"residual", r.residual}};
    if (const auto* p = std::get_if<RealPoint2>(&r.witness)) {
        j["field"] = "real";
        j["witness"] = *p;
    } else {
        j["field"] = "complex";
        j["witness"] = std::get<ComplexPoint2>(r.witness);
    }
}

inline void from_json(const json& j, NormResult& r)
{
    r.value = j.at("value").get<double>();
    r.residual = j.at("residual").get<double>();
    const auto m = j.at("method").get<std::string>();
    if (m == "edge-exact") {
        r.method = NormMethod::edge_exact;
    } else if (m == "grid-polish") {
        r.method = NormMethod::grid_polish;
    } else {
        throw std::runtime_error("unknown norm method " + m);
    }
    if (j.at("field").get<std::string>() == "real") {
        r.witness = j.at("witness").get<RealPoint2>();
    } else {
        r.witness = j.at("witness").get<ComplexPoint2>();
    }
}

// ---------------------------------------------------------------- complexify

inline void to_json(json& j, const CkRecord& r)
{
    j = json{{"degree", r.degree},
             {"best_ratio", r.best_ratio},
             {"kth_root", r.kth_root},
             {"witness_coeffs", r.witness_coeffs},
             {"witness_point", r.witness_point},
             {"starts", r.starts},
             {"seed", r.seed},
             {"wall_time", r.wall_time},
             {"evaluations", r.evaluations},
             {"warning", r.warning}};
}

inline void from_json(const json& j, CkRecord& r)
{
    r.degree = j.at("degree").get<int>();
    r.best_ratio = j.at("best_ratio").get<double>();
    r.kth_root = j.at("kth_root").get<double>();
    r.witness_coeffs = j.at("witness_coeffs").get<std::vector<double>>();
    r.witness_point = j.at("witness_point").get<ComplexPoint2>();
    r.starts = j.at("starts").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.wall_time = j.at("wall_time").get<double>();
    r.evaluations = j.at("evaluations").get<long long>();
    r.warning = j.at("warning").get<bool>();
}

/// Record without its timing, the form compared for seed-determinism.
inline json deterministic_json(const CkRecord& r)
{
    json j = r;
    j.erase("wall_time");
    return j;
}

inline void to_json(json& j, const CEstimate& e)
{
    j = json{{"rows", e.rows}, {"running_max", e.running_max}};
}

inline void from_json(const json& j, CEstimate& e)
{
    e.rows = j.at("rows").get<std::vector<CkRecord>>();
    e.running_max = j.at("running_max").get<std::vector<double>>();
}

/// k,best_ratio,kth_root,starts,seed,wall_time with 17 significant digits.
inline std::string c_estimate_csv(const CEstimate& e)
{
    std::string out = "k,best_ratio,kth_root,starts,seed,wall_time\n";
    char buf[256];
    for (const auto& r : e.rows) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%d,%llu,%.17g\n", r.degree, r.best_ratio, r.kth_root,
                      r.starts, static_cast<unsigned long long>(r.seed), r.wall_time);
        out += buf;
    }
    return out;
}

// ---------------------------------------------------------------- series

inline void to_json(json& j, const RecenteredSeries& r)
{
    json pieces = json::array();
    for (const auto& q : r.pieces) pieces.push_back(q);
    json tails = json::array();
    for (double t : r.tail_bounds) tails.push_back(number(t));
    j = json{{"center", r.center}, {"pieces", pieces}, {"tail_bounds", tails},
             {"terms_used", r.terms_used}, {"converged", r.converged}};
}

inline void from_json(const json& j, RecenteredSeries& r)
{
    r.center = j.at("center").get<RealPoint2>();
    r.pieces.clear();
    for (const auto& q : j.at("pieces")) r.pieces.push_back(poly_from_json(q));
    r.tail_bounds.clear();
    for (const auto& t : j.at("tail_bounds")) r.tail_bounds.push_back(read_number(t));
    r.terms_used = j.at("terms_used").get<int>();
    r.converged = j.at("converged").get<bool>();
}

inline void to_json(json& j, const RadiusEstimate& r)
{
    json rows = json::array();
    for (const auto& s : r.per_j) rows.push_back({{"j", s.j}, {"qnorm", s.qnorm}, {"per_j", number(s.per_j)}});
    j = json{{"value", r.value}, {"j_window", {r.j_lo, r.j_hi}}, {"per_j", rows}, {"method_note", r.method_note}};
}

inline void from_json(const json& j, RadiusEstimate& r)
{
    r.value = j.at("value").get<double>();
    r.j_lo = j.at("j_window").at(0).get<int>();
    r.j_hi = j.at("j_window").at(1).get<int>();
    r.per_j.clear();
    for (const auto& s : j.at("per_j")) {
        r.per_j.push_back({s.at("j").get<int>(), s.at("qnorm").get<double>(), read_number(s.at("per_j"))});
    }
    r.method_note = j.at("method_note").get<std::string>();
}

/// j,qnorm,per_j
inline std::string per_j_csv(const RadiusEstimate& r)
{
    std::string out = "j,qnorm,per_j\n";
    char buf[128];
    for (const auto& s : r.per_j) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", s.j, s.qnorm, s.per_j);
        out += buf;
    }
    return out;
}

inline void to_json(json& j, const AnalyticityEstimate& e)
{
    json samples = json::array();
    for (const auto& s : e.samples) samples.push_back({{"center", s.center}, {"radius", s.radius}});
    j = json{{"value", e.value}, {"best_center", e.best_center}, {"samples", samples}};
}

inline void from_json(const json& j, AnalyticityEstimate& e)
{
    e.value = j.at("value").get<double>();
    e.best_center = j.at("best_center").get<RealPoint2>();
    e.samples.clear();
    for (const auto& s : j.at("samples")) {
        e.samples.push_back({s.at("center").get<RealPoint2>(), s.at("radius").get<double>()});
    }
}

inline void to_json(json& j, const ProbeSample& s)
{
    j = json{{"t", s.t}, {"partial_sum", to_json_value(s.partial_sum)}, {"closed_form", s.closed_form},
             {"terms", s.terms}};
}

inline void from_json(const json& j, ProbeSample& s)
{
    s.t = j.at("t").get<double>();
    s.partial_sum = complex_from_json(j.at("partial_sum"));
    s.closed_form = j.at("closed_form").get<double>();
    s.terms = j.at("terms").get<int>();
}

// ---------------------------------------------------------------- theorem

inline void to_json(json& j, const TheoremReport& r)
{
    j = json{{"schema", r.schema},
             {"k", r.k},
             {"m", r.m},
             {"P_coeffs", r.p_coeffs},
             {"swapped", r.swapped},
             {"ratio", r.ratio},
             {"kth_root", r.kth_root},
             {"alpha", to_json_value(r.alpha)},
             {"beta", to_json_value(r.beta)},
             {"alpha_prime", to_json_value(r.alpha_prime)},
             {"beta_prime", to_json_value(r.beta_prime)},
             {"theta", r.theta},
             {"arg_residual", r.arg_residual},
             {"m_within_tolerance", r.m_within_tolerance},
             {"m_limit", r.m_limit},
             {"phase_rotation", r.phase_rotation},
             {"probe_point", r.probe_point},
             {"probe_residual", r.probe_residual},
             {"rotation_distance", r.rotation_distance},
             {"epsilon", r.epsilon},
             {"R0_hat", r.r0_hat},
             {"center", r.center},
             {"center_clamped", r.center_clamped},
             {"R_center_hat", r.r_center_hat},
             {"RA_hat", r.ra_hat},
             {"terms_used", r.terms_used},
             {"recenter_converged", r.recenter_converged},
             {"radius", r.radius},
             {"probe", r.probe},
             {"c_hat", r.c_hat},
             {"paper_bound", r.paper_bound},
             {"chain_lhs", r.chain_lhs},
             {"chain_rhs", r.chain_rhs},
             {"chain_ok", r.chain_ok},
             {"success", r.success},
             {"searched", r.searched},
             {"starts", r.starts},
             {"seed", r.seed},
             {"max_j", r.max_j},
             {"max_terms", r.max_terms},
             {"tail_tol", r.tail_tol},
             {"m_max", r.m_max},
             {"tol_arg", r.tol_arg},
             {"notes", r.notes}};
}

inline void from_json(const json& j, TheoremReport& r)
{
    r.schema = j.at("schema").get<int>();
    if (r.schema != 1) throw std::runtime_error("unsupported report schema " + std::to_string(r.schema));
    r.k = j.at("k").get<int>();
    r.m = j.at("m").get<int>();
    r.p_coeffs = j.at("P_coeffs").get<std::vector<double>>();
    r.swapped = j.at("swapped").get<bool>();
    r.ratio = j.at("ratio").get<double>();
    r.kth_root = j.at("kth_root").get<double>();
    r.alpha = complex_from_json(j.at("alpha"));
    r.beta = complex_from_json(j.at("beta"));
    r.alpha_prime = complex_from_json(j.at("alpha_prime"));
    r.beta_prime = complex_from_json(j.at("beta_prime"));
    r.theta = j.at("theta").get<double>();
    r.arg_residual = j.at("arg_residual").get<double>();
    r.m_within_tolerance = j.at("m_within_tolerance").get<bool>();
    r.m_limit = j.at("m_limit").get<int>();
    r.phase_rotation = j.at("phase_rotation").get<double>();
    r.probe_point = j.at("probe_point").get<ComplexPoint2>();
    r.probe_residual = j.at("probe_residual").get<double>();
    r.rotation_distance = j.at("rotation_distance").get<double>();
    r.epsilon = j.at("epsilon").get<double>();
    r.r0_hat = j.at("R0_hat").get<double>();
    r.center = j.at("center").get<RealPoint2>();
    r.center_clamped = j.at("center_clamped").get<bool>();
    r.r_center_hat = j.at("R_center_hat").get<double>();
    r.ra_hat = j.at("RA_hat").get<double>();
    r.terms_used = j.at("terms_used").get<int>();
    r.recenter_converged = j.at("recenter_converged").get<bool>();
    r.radius = j.at("radius").get<RadiusEstimate>();
    r.probe = j.at("probe").get<std::vector<ProbeSample>>();
    r.c_hat = j.at("c_hat").get<double>();
    r.paper_bound = j.at("paper_bound").get<double>();
    r.chain_lhs = j.at("chain_lhs").get<double>();
    r.chain_rhs = j.at("chain_rhs").get<double>();
    r.chain_ok = j.at("chain_ok").get<bool>();
    r.success = j.at("success").get<bool>();
    r.searched = j.at("searched").get<bool>();
    r.starts = j.at("starts").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.max_j = j.at("max_j").get<int>();
    r.max_terms = j.at("max_terms").get<int>();
    r.tail_tol = j.at("tail_tol").get<double>();
    r.m_max = j.at("m_max").get<int>();
    r.tol_arg = j.at("tol_arg").get<double>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
}

/// Structural checks on a report document beyond what from_json enforces.
inline std::vector<std::string> validate_report(const TheoremReport& r)
{
    std::vector<std::string> problems;
    auto need = [&](bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    };
    need(r.schema == 1, "schema must be 1");
    need(r.k >= 1 && r.m >= 1, "k and m must be positive");
    need(static_cast<int>(r.p_coeffs.size()) == r.k + 1, "P_coeffs must have k + 1 entries");
    need(std::abs(std::abs(r.alpha) + std::abs(r.beta) - 1.0) <= 1e-9, "|alpha| + |beta| must be 1");
    need(r.alpha.imag() == 0.0 && r.alpha.real() >= 0.0, "alpha must be real and non-negative");
    need(std::abs(r.alpha) >= 0.5 - 1e-9, "|alpha| must be at least 1/2");
    need(std::abs(r.r0_hat - 1.0) <= 1e-6, "R0_hat must be 1 for a normalized base");
    need(r.ratio >= 1.0 - 1e-9, "ratio must be at least 1");
    need(r.epsilon > 0.0 && r.epsilon < 1.0, "epsilon must lie in (0, 1)");
    need(!r.success || r.ra_hat <= r.r0_hat + 1e-9, "a successful witness must not exceed R0_hat");
    return problems;
}

// ---------------------------------------------------------------- config

struct Config {
    double tail_tol = 1e-12;
    double arg_tol = 1e-4;
    double real_bisect_tol = 1e-13;
    double complex_step_tol = 1e-10;
    int max_j = 48;
    /// 0 = limited only by the degree cap
    int max_terms = 0;
    int starts = 64;
    int m_max = 512;
    std::uint64_t seed = 0;
    std::string cache_path;
    std::string format = "json";
};

/// Environment variable naming the default config document.
inline constexpr const char* config_env_var = "ALAB_CONFIG";

inline void validate(const Config& c)
{
    if (!(c.tail_tol > 0.0 && c.arg_tol > 0.0 && c.real_bisect_tol > 0.0 && c.complex_step_tol > 0.0)) {
        throw DomainError("all tolerances must be positive");
    }
    if (c.format != "json" && c.format != "csv") throw DomainError("format must be json or csv");
    if (c.max_j < 0 || c.max_terms < 0 || c.starts < 1 || c.m_max < 1) {
        throw DomainError("config counts out of range");
    }
}

inline void to_json(json& j, const Config& c)
{
    j = json{{"tail_tol", c.tail_tol},   {"arg_tol", c.arg_tol},
             {"real_bisect_tol", c.real_bisect_tol}, {"complex_step_tol", c.complex_step_tol},
             {"max_j", c.max_j},         {"max_terms", c.max_terms},
             {"starts", c.starts},       {"m_max", c.m_max},
             {"seed", c.seed},           {"cache", c.cache_path},
             {"format", c.format}};
}

/// Missing keys keep their defaults.
inline void from_json(const json& j, Config& c)
{
    auto opt = [&](const char* key, auto& field) {
        if (j.contains(key)) j.at(key).get_to(field);
    };
    opt("tail_tol", c.tail_tol);
    opt("arg_tol", c.arg_tol);
    opt("real_bisect_tol", c.real_bisect_tol);
    opt("complex_step_tol", c.complex_step_tol);
    opt("max_j", c.max_j);
    opt("max_terms", c.max_terms);
    opt("starts", c.starts);
    opt("m_max", c.m_max);
    opt("seed", c.seed);
    opt("cache", c.cache_path);
    opt("format", c.format);
    validate(c);
}

inline Config load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file " + path.string());
    return json::parse(in).get<Config>();
}

// ---------------------------------------------------------------- cache

class CacheLockError : public Error {
public:
    using Error::Error;
};

/// Append-only JSON array of CkRecord keyed by (degree, starts, seed). The
/// object holds an exclusive advisory lock on "<path>.lock" for its lifetime
/// and fails fast if another process has it.
class ResultsCache {
public:
    explicit ResultsCache(std::filesystem::path path) : path_(std::move(path))
    {
        const auto lock_path = path_.string() + ".lock";
        fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ < 0) throw CacheLockError("cannot open cache lock " + lock_path + ": " + std::strerror(errno));
        if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd_);
            fd_ = -1;
            throw CacheLockError("cache " + path_.string() + " is locked by another process");
        }
        if (std::filesystem::exists(path_)) {
            std::ifstream in(path_);
            const json doc = json::parse(in);
            if (!doc.is_array()) throw Error("cache file must hold a JSON array");
            for (const auto& e : doc) entries_.push_back(e.get<CkRecord>());
        }
    }

    ResultsCache(const ResultsCache&) = delete;
    ResultsCache& operator=(const ResultsCache&) = delete;

    ~ResultsCache()
    {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }

    std::optional<CkRecord> find(int degree, int starts, std::uint64_t seed) const
    {
        for (const auto& e : entries_) {
            if (e.degree == degree && e.starts == starts && e.seed == seed) return e;
        }
        return std::nullopt;
    }

    const std::vector<CkRecord>& entries() const { return entries_; }

    /// Appends and rewrites the file atomically (temp file + rename).
    void append(const CkRecord& rec)
    {
        if (find(rec.degree, rec.starts, rec.seed)) return;
        entries_.push_back(rec);
        const auto tmp = path_.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << json(entries_).dump(2) << '\n';
            if (!out) throw Error("cannot write cache " + tmp);
        }
        std::filesystem::rename(tmp, path_);
    }

    /// Cached record or a fresh search, which is then stored.
    template <class Compute>
    CkRecord get_or_compute(int degree, int starts, std::uint64_t seed, Compute&& compute)
    {
        if (auto hit = find(degree, starts, seed)) return *hit;
        CkRecord rec = compute();
        append(rec);
        return rec;
    }

private:
    std::filesystem::path path_;
    int fd_ = -1;
    std::vector<CkRecord> entries_;
};

} // namespace alab

#endif
