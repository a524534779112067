// mlrfun command-line tool: evaluate F, export weight curves, run the
// Laplace verifications, and map the complete-monotonicity region.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlrfun/bernstein.hpp"
#include "mlrfun/cm.hpp"
#include "mlrfun/errors.hpp"
#include "mlrfun/io.hpp"
#include "mlrfun/mlr.hpp"
#include "mlrfun/weight.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitResidual = 4;

struct FormatFlags {
    bool csv = false;
    bool json = false;
    std::string pick(const std::string& fallback) const {
        if (csv) return "csv";
        if (json) return "json";
        return fallback;
    }
};

std::filesystem::path cache_dir_from_env() {
    if (const char* e = std::getenv("MLRFUN_CACHE_DIR")) return e;
    return std::filesystem::path(".mlrfun-cache");
}

mlr::MLRParams make_params(const std::string& alpha, double beta, int n) {
    return {mlr::RationalOrder::parse(alpha), beta, n};
}

mlr::CurveArtifactRecord record_for(const mlr::MLRParams& p, const std::string& generator,
                                    const mlr::WeightProfile& prof) {
    mlr::CurveArtifactRecord rec;
    rec.generator = generator;
    rec.alpha_l = p.alpha.l();
    rec.alpha_k = p.alpha.k();
    rec.beta = p.beta;
    rec.n = p.n;
    rec.created_at = mlr::iso_timestamp_now();
    for (std::size_t i = 0; i < prof.grid.size(); ++i)
        rec.rows.push_back({prof.grid[i].first, prof.grid[i].second, prof.abs_err[i]});
    return rec;
}

void write_curve(const mlr::MLRParams& p, const mlr::WeightProfile& prof,
                 const std::filesystem::path& dir, const std::string& fmt,
                 const std::string& generator) {
    auto rec = record_for(p, generator, prof);
    auto path = dir / mlr::curve_filename(p, fmt);
    mlr::atomic_write(path, fmt == "json" ? mlr::to_json(rec) : mlr::to_csv(rec));
    std::cout << "wrote " << path.string() << " (" << rec.rows.size() << " rows)\n";
}

int cmd_eval(const std::string& alpha, double beta, int n, double x, double tol,
             bool cross_check, bool as_json) {
    auto p = make_params(alpha, beta, n);
    mlr::SeriesValue v = mlr::mlr_series(p, -x, tol);
    if (as_json) {
        nlohmann::ordered_json j;
        j["value"] = v.value;
        j["abs_error_estimate"] = v.abs_error_estimate;
        j["terms_used"] = v.terms_used;
        if (cross_check) {
            mlr::SeriesValue h = mlr::mlr_hypergeom(p, -x, tol);
            j["hypergeom_value"] = h.value;
            j["route_difference"] = std::fabs(v.value - h.value);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "F_{" << p.alpha.l() << "/" << p.alpha.k() << "," << beta << "}^(" << n
                  << ")(-" << x << ") = " << mlr::format_double(v.value)
                  << "  (err<=" << mlr::format_double(v.abs_error_estimate)
                  << ", terms=" << v.terms_used << ")\n";
        if (cross_check) {
            mlr::SeriesValue h = mlr::mlr_hypergeom(p, -x, tol);
            std::cout << "hypergeometric route    = " << mlr::format_double(h.value)
                      << "  (|diff|=" << mlr::format_double(std::fabs(v.value - h.value))
                      << ")\n";
        }
    }
    return kExitOk;
}

int cmd_weight(const std::string& alpha, double beta, int n, int grid, double y_max,
               double tol, const std::string& figure, const std::filesystem::path& out_dir,
               const std::string& fmt) {
    if (!figure.empty()) {
        struct Preset { const char* alpha; double beta; int n; double y_max; };
        std::vector<Preset> presets;
        if (figure == "00") {
            presets.push_back({"1/2", 1.0, 2, 1e9});
            presets.push_back({"1/3", 1.0, 3, 1e9});
            presets.push_back({"1/4", 1.0, 4, 1e9});
            presets.push_back({"1/5", 1.0, 5, 1e9});
        } else if (figure == "1") {
            for (double b : {0.5, 0.75, 1.0, 1.25}) presets.push_back({"3/7", b, 2, 8.0});
        } else if (figure == "2") {
            for (double b : {1.0 / 3, 2.0 / 3, 1.0, 4.0 / 3}) presets.push_back({"3/10", b, 3, 8.0});
        } else {
            throw mlr::DomainError("weight: unknown figure preset '" + figure + "'");
        }
        for (const auto& pre : presets) {
            auto p = make_params(pre.alpha, pre.beta, pre.n);
            double ym = pre.y_max;
            if (p.classification() == mlr::Classification::Critical)
                ym = mlr::radius(p);  // profile clamps just below
            auto prof = mlr::build_weight_profile(p, ym, grid, tol);
            write_curve(p, prof, out_dir, fmt, "weight");
        }
        return kExitOk;
    }
    auto p = make_params(alpha, beta, n);
    double ym = y_max;
    if (ym <= 0.0) {
        ym = (p.classification() == mlr::Classification::Critical)
                 ? mlr::radius(p)
                 : mlr::detail::weight_tail_cutoff(p, 1e-12, 2.0);
    }
    auto prof = mlr::build_weight_profile(p, ym, grid, tol);
    write_curve(p, prof, out_dir, fmt, "weight");
    return kExitOk;
}

int cmd_verify(const std::string& alpha, double beta, int n, std::vector<double> xs,
               double tol, bool standard_grid, double s_lambda) {
    struct Case { mlr::MLRParams p; double x; double residual; };
    std::vector<mlr::MLRParams> params;
    if (standard_grid) {
        params.push_back(make_params("1/2", 1.0, 2));
        params.push_back(make_params("1/2", 0.75, 2));
        params.push_back(make_params("1/3", 1.0, 2));
        params.push_back(make_params("1/4", 1.0, 2));
        params.push_back(make_params("1/3", 2.0 / 3.0, 3));
        params.push_back(make_params("3/7", 1.0, 2));
        if (xs.empty()) xs = {0.0, 0.5, 1.0, 2.0, 5.0};
    } else {
        params.push_back(make_params(alpha, beta, n));
        if (xs.empty()) xs = {1.0};
    }
    bool ok = true;
    for (const auto& p : params) {
        for (double x : xs) {
            double r = mlr::verify_bernstein(p, x, tol);
            bool pass = r <= tol;
            ok = ok && pass;
            std::cout << (pass ? "PASS" : "FAIL") << " round-trip alpha=" << p.alpha.l() << "/"
                      << p.alpha.k() << " beta=" << p.beta << " n=" << p.n << " x=" << x
                      << " residual=" << mlr::format_double(r) << "\n";
        }
        if (p.n >= 2) {
            double r = mlr::laplace_recursion_check(p, -1.0, s_lambda, tol);
            bool pass = r <= tol;
            ok = ok && pass;
            std::cout << (pass ? "PASS" : "FAIL") << " recursion  alpha=" << p.alpha.l() << "/"
                      << p.alpha.k() << " beta=" << p.beta << " n=" << p.n << " s=" << s_lambda
                      << " residual=" << mlr::format_double(r) << "\n";
        }
    }
    return ok ? kExitOk : kExitResidual;
}

int cmd_cm_scan(const std::string& alpha, double beta, int n, double y_max, int grid,
                const std::filesystem::path& out, bool as_json) {
    auto p = make_params(alpha, beta, n);
    auto rep = mlr::scan_weight_sign(p, y_max, grid);
    nlohmann::ordered_json j;
    j["schema_version"] = mlr::kSchemaVersion;
    j["generator"] = "cm-scan";
    j["params"] = {{"alpha_l", p.alpha.l()}, {"alpha_k", p.alpha.k()}, {"beta", beta}, {"n", n}};
    j["y_max_requested"] = rep.y_max_requested;
    j["y_max_scanned"] = rep.y_max_scanned;
    j["grid_size"] = rep.grid_size;
    j["min_value"] = rep.min_value;
    j["min_at"] = rep.min_at;
    j["verdict"] = mlr::to_string(rep.verdict);
    j["clamp_reason"] = rep.clamp_reason;
    auto arr = nlohmann::ordered_json::array();
    for (auto& [a, b] : rep.negative_intervals) arr.push_back({{"y_lo", a}, {"y_hi", b}});
    j["negative_intervals"] = arr;
    j["created_at"] = mlr::iso_timestamp_now();
    j["tool_version"] = mlr::kToolVersion;
    if (!out.empty()) {
        mlr::atomic_write(out, j.dump(2) + "\n");
        std::cout << "wrote " << out.string() << "\n";
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "verdict: " << mlr::to_string(rep.verdict) << " (min m = " << rep.min_value
                  << " at y = " << rep.min_at << ", scanned (0," << rep.y_max_scanned << "])\n";
        for (auto& [a, b] : rep.negative_intervals)
            std::cout << "  negative on (" << a << ", " << b << ")\n";
    }
    return kExitOk;
}

int cmd_cm_bound(int n, const std::string& alphas_csv, double beta_lo, double beta_hi,
                 double beta_tol, int grid, const std::filesystem::path& out,
                 const std::filesystem::path& cache_dir) {
    std::vector<mlr::RationalOrder> alphas;
    std::string tok;
    std::istringstream is(alphas_csv);
    while (std::getline(is, tok, ',')) alphas.push_back(mlr::RationalOrder::parse(tok));
    if (alphas.empty()) throw mlr::DomainError("cm bound: no alphas given");

    mlr::ResultCache cache(cache_dir);
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    for (const auto& a : alphas) {
        double lo = beta_lo > 0.0 ? beta_lo : a.value() + 1e-3;
        double hi = beta_hi;
        std::string key = "bound|n=" + std::to_string(n) + "|alpha=" + std::to_string(a.l()) +
                          "/" + std::to_string(a.k()) + "|lo=" + mlr::format_double(lo) +
                          "|hi=" + mlr::format_double(hi) +
                          "|tol=" + mlr::format_double(beta_tol) + "|v=" + mlr::kToolVersion;
        nlohmann::ordered_json entry;
        if (auto hit = cache.lookup(key)) {
            entry = nlohmann::json::parse(*hit);
            entry["cached"] = true;
        } else {
            auto sample = mlr::cm_bound_search(n, a, lo, hi, beta_tol, grid);
            entry["alpha"] = std::to_string(a.l()) + "/" + std::to_string(a.k());
            entry["M"] = sample.M;
            entry["certificate"] = {{"beta_neg", sample.beta_neg},
                                    {"neg_witness_y", sample.neg_witness_y},
                                    {"neg_witness_m", sample.neg_witness_m},
                                    {"beta_pos", sample.beta_pos},
                                    {"pos_min_value", sample.pos_min_value}};
            cache.store(key, entry.dump());
            entry["cached"] = false;
        }
        std::cout << "M_" << n << "(" << entry["alpha"].get<std::string>()
                  << ") = " << entry["M"].get<double>()
                  << (entry["cached"].get<bool>() ? "  [cached]" : "") << "\n";
        samples.push_back(entry);
    }
    if (!out.empty()) {
        nlohmann::ordered_json j;
        j["schema_version"] = mlr::kSchemaVersion;
        j["generator"] = "cm-bound";
        j["n"] = n;
        j["beta_tol"] = beta_tol;
        j["samples"] = samples;
        j["created_at"] = mlr::iso_timestamp_now();
        j["tool_version"] = mlr::kToolVersion;
        mlr::atomic_write(out, j.dump(2) + "\n");
        std::cout << "wrote " << out.string() << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mittag-Leffler functions of Le Roy type: evaluation, Bernstein weights, "
                 "Laplace verification, complete-monotonicity mapping"};
    app.require_subcommand(1);

    // eval
    std::string alpha = "1/2";
    double beta = 1.0, x = 1.0, tol = 1e-12;
    int n = 2;
    bool cross_check = false;
    FormatFlags eval_fmt;
    auto* eval = app.add_subcommand("eval", "Evaluate F_{alpha,beta}^{(n)}(-x)");
    eval->add_option("--alpha", alpha, "rational alpha as l/k")->required();
    eval->add_option("--beta", beta)->required();
    eval->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    eval->add_option("--x", x)->required();
    eval->add_option("--tol", tol)->check(CLI::PositiveNumber);
    eval->add_flag("--cross-check", cross_check, "also run the hypergeometric route");
    eval->add_flag("--json", eval_fmt.json, "machine-readable output");

    // weight
    std::string w_alpha = "1/2", figure;
    double w_beta = 1.0, w_ymax = -1.0, w_tol = 1e-10;
    int w_n = 2, w_grid = 400;
    std::filesystem::path w_out = ".";
    FormatFlags w_fmt;
    auto* weight = app.add_subcommand("weight", "Sample the Bernstein weight m(y) to a file");
    weight->add_option("--alpha", w_alpha);
    weight->add_option("--beta", w_beta);
    weight->add_option("--n", w_n)->check(CLI::PositiveNumber);
    weight->add_option("--grid", w_grid)->check(CLI::Range(2, 1000000));
    weight->add_option("--y-max", w_ymax);
    weight->add_option("--tol", w_tol)->check(CLI::PositiveNumber);
    weight->add_option("--figure", figure, "preset: 00, 1 or 2");
    weight->add_option("--out-dir", w_out);
    auto* wcsv = weight->add_flag("--csv", w_fmt.csv);
    auto* wjson = weight->add_flag("--json", w_fmt.json);
    wcsv->excludes(wjson);
    wjson->excludes(wcsv);

    // verify
    std::string v_alpha = "1/2";
    double v_beta = 1.0, v_tol = 1e-6, v_s = 2.0;
    int v_n = 2;
    std::vector<double> v_xs;
    bool v_standard = false;
    auto* verify = app.add_subcommand("verify", "Laplace round-trip and recursion residuals");
    verify->add_option("--alpha", v_alpha);
    verify->add_option("--beta", v_beta);
    verify->add_option("--n", v_n)->check(CLI::PositiveNumber);
    verify->add_option("--x", v_xs, "x grid");
    verify->add_option("--tol", v_tol)->check(CLI::PositiveNumber);
    verify->add_option("--s", v_s, "Laplace variable for the recursion check");
    verify->add_flag("--grid-standard", v_standard, "run the standard parameter grid");

    // cm scan / bound
    auto* cm = app.add_subcommand("cm", "Complete-monotonicity tooling");
    cm->require_subcommand(1);
    std::string s_alpha = "3/7";
    double s_beta = 0.5, s_ymax = 10.0;
    int s_n = 2, s_grid = 2000;
    std::filesystem::path s_out;
    bool s_json = false;
    auto* scan = cm->add_subcommand("scan", "Sign scan of the weight");
    scan->add_option("--alpha", s_alpha)->required();
    scan->add_option("--beta", s_beta)->required();
    scan->add_option("--n", s_n)->required()->check(CLI::PositiveNumber);
    scan->add_option("--y-max", s_ymax)->check(CLI::PositiveNumber);
    scan->add_option("--grid", s_grid)->check(CLI::Range(2, 1000000));
    scan->add_option("--out", s_out);
    scan->add_flag("--json", s_json);

    int b_n = 2;
    std::string b_alphas;
    double b_lo = -1.0, b_hi = 2.0, b_tol = 1e-2;
    int b_grid = 600;
    std::filesystem::path b_out, b_cache = cache_dir_from_env();
    auto* bound = cm->add_subcommand("bound", "Binary-search the CM boundary M_n(alpha)");
    bound->add_option("--n", b_n)->required()->check(CLI::PositiveNumber);
    bound->add_option("--alphas", b_alphas, "comma-separated l/k list")->required();
    bound->add_option("--beta-lo", b_lo, "default: l/k + 1e-3");
    bound->add_option("--beta-hi", b_hi);
    bound->add_option("--beta-tol", b_tol)->check(CLI::PositiveNumber);
    bound->add_option("--grid", b_grid)->check(CLI::Range(2, 1000000));
    bound->add_option("--out", b_out);
    bound->add_option("--cache-dir", b_cache);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed())
            return cmd_eval(alpha, beta, n, x, tol, cross_check, eval_fmt.json);
        if (weight->parsed())
            return cmd_weight(w_alpha, w_beta, w_n, w_grid, w_ymax, w_tol, figure, w_out,
                              w_fmt.pick("csv"));
        if (verify->parsed())
            return cmd_verify(v_alpha, v_beta, v_n, v_xs, v_tol, v_standard, v_s);
        if (scan->parsed())
            return cmd_cm_scan(s_alpha, s_beta, s_n, s_ymax, s_grid, s_out, s_json);
        if (bound->parsed())
            return cmd_cm_bound(b_n, b_alphas, b_lo, b_hi, b_tol, b_grid, b_out, b_cache);
    } catch (const mlr::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << " [code=convergence]\n";
        return kExitConvergence;
    } catch (const mlr::DomainError& e) {
        std::cerr << "error: " << e.what() << " [code=precondition]\n";
        return kExitUsage;
    } catch (const mlr::Error& e) {
        std::cerr << "error: " << e.what() << " [code=error]\n";
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
