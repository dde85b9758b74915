#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "taildep/estimation.hpp"
#include "taildep/families.hpp"
#include "taildep/io.hpp"
#include "taildep/measures.hpp"
#include "taildep/quadrature.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace taildep;

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("output: cannot open '" + path + "'");
    return file;
}

// Measure names may carry a comma inside their argument list (gtdc:u0,v0 and
// poly:m1,m2); those commas do not separate list entries.
std::vector<MeasureSpec> parse_measure_list(const std::string& csv) {
    std::vector<MeasureSpec> specs;
    std::string cur;
    auto flush = [&]() {
        if (!cur.empty()) specs.push_back(parse_measure(cur));
        cur.clear();
    };
    int pending_args = 0;
    for (char c : csv) {
        if (c == ',' && pending_args == 0) {
            flush();
            continue;
        }
        if (c == ':') {
            const auto head = cur;
            pending_args = (head == "gtdc" || head == "poly") ? 1 : 0;
        } else if (c == ',' && pending_args > 0) {
            --pending_args;
        }
        cur.push_back(c);
    }
    flush();
    if (specs.empty()) throw std::invalid_argument("empty measure list");
    return specs;
}

struct CommonEstimateArgs {
    std::string input;
    bool pseudo = false;
    std::size_t k = 0;
    std::size_t k_min = 0, k_max = 0;
    std::string measures = "tdc,spearman,gini,chi_bar,chi_star,lambda_bar";
    std::size_t B = 0;
    double level = 0.95;
    std::uint64_t seed = 42;
    int L = 100;
    double t_min = 0.1;
    bool rechoose_k = false;
    std::string output;
    std::string plot_prefix;
};

void add_estimate_options(CLI::App* cmd, CommonEstimateArgs& a) {
    cmd->add_option("-i,--input", a.input, "input CSV (x,y raw data, or u,v with --pseudo)")
        ->required();
    cmd->add_flag("--pseudo", a.pseudo, "input is already a pseudo sample on [0,1]^2");
    cmd->add_option("-k,--k", a.k, "tail threshold; 0 = choose by plateau finding");
    cmd->add_option("--k-min", a.k_min, "plateau search lower bound");
    cmd->add_option("--k-max", a.k_max, "plateau search upper bound");
    cmd->add_option("-m,--measures", a.measures, "comma-separated measure names");
    cmd->add_option("-B,--bootstrap", a.B, "bootstrap replications (0 = point estimates only)");
    cmd->add_option("--level", a.level, "confidence level for bootstrap intervals");
    cmd->add_option("-s,--seed", a.seed, "bootstrap seed");
    cmd->add_option("-L,--grid", a.L, "evaluation grid resolution");
    cmd->add_option("--t-min", a.t_min, "grid floor for the lambda_bar estimator");
    cmd->add_flag("--rechoose-k", a.rechoose_k, "re-run plateau selection per bootstrap replicate");
    cmd->add_option("-o,--output", a.output, "output path (default stdout)");
    cmd->add_option("--plot-prefix", a.plot_prefix, "write plot data CSVs with this path prefix");
}

void write_plot_csvs(const std::string& prefix, const PlateauResult& plateau,
                     const PseudoSample& sample, std::size_t k, int L, double t_min) {
    {
        std::ofstream f(prefix + "_plateau.csv", std::ios::binary);
        f << "k,tdc_hat\n";
        for (const auto& [kk, lam] : plateau.curve) f << kk << "," << fmt17(lam) << "\n";
    }
    const EmpiricalTDF tdf(sample, k);
    {
        std::ofstream f(prefix + "_tdf_slices.csv", std::ios::binary);
        f << "b,lam_b_binv,lam_binv_b\n";
        for (int i = 1; i <= L; ++i) {
            const double b = static_cast<double>(i) / L;
            f << fmt17(b) << "," << fmt17(tdf(b, 1.0 / b)) << "," << fmt17(tdf(1.0 / b, b))
              << "\n";
        }
    }
    {
        std::ofstream f(prefix + "_normalized.csv", std::ios::binary);
        f << "t,lam1_star,lam2_star\n";
        const int i0 = std::max(1, static_cast<int>(std::ceil(t_min * L - 1e-9)));
        for (int i = i0; i <= L; ++i) {
            const double t = static_cast<double>(i) / L;
            f << fmt17(t) << "," << fmt17(tdf(t, 1.0) / t) << "," << fmt17(tdf(1.0, t) / t)
              << "\n";
        }
    }
}

json report_to_json(const MeasureReport& r, bool with_ci) {
    json j;
    j["measure"] = r.measure;
    j["estimate"] = r.estimate;
    j["ci_low"] = with_ci ? json(r.ci_low) : json(nullptr);
    j["ci_high"] = with_ci ? json(r.ci_high) : json(nullptr);
    j["level"] = with_ci ? json(r.level) : json(nullptr);
    j["n"] = r.n;
    j["k"] = r.k;
    j["B"] = r.B;
    j["seed"] = r.seed;
    j["t_min"] = r.t_min;
    j["L"] = r.L;
    if (r.low_b) j["low_b"] = true;
    return j;
}

int cmd_sample(const std::string& family, std::size_t n, std::uint64_t seed,
               const std::string& output) {
    const FamilyModel model = parse_family(family);
    if (!model.copula) {
        throw std::invalid_argument("family '" + model.canonical +
                                    "' is analytic-only: it has a closed-form tail dependence "
                                    "function but no sampler");
    }
    const auto uv = model.copula->sample(n, seed);
    std::ofstream file;
    std::ostream& os = open_output(file, output);
    write_sample_csv(os, uv);
    std::cerr << "# sample family=" << model.canonical << " n=" << n << " seed=" << seed << "\n";
    return 0;
}

int cmd_analytic(const std::string& family, const std::string& measures, int L, double t_min,
                 const std::string& format, const std::string& output) {
    const FamilyModel model = parse_family(family);
    if (!model.tdf) {
        throw std::invalid_argument("family '" + model.canonical +
                                    "' has no closed-form tail dependence function");
    }
    const auto specs = parse_measure_list(measures);
    AnalyticOptions opts;
    opts.L = L;
    opts.t_min = t_min;
    std::ofstream file;
    std::ostream& os = open_output(file, output);
    if (format == "json") {
        json j;
        j["schema"] = 1;
        j["config"] = {{"command", "analytic"}, {"family", model.canonical},
                       {"L", L},                {"t_min", t_min},
                       {"measures", measures}};
        json rows = json::array();
        for (const auto& spec : specs) {
            rows.push_back({{"measure", spec.str()}, {"value", evaluate_measure(*model.tdf, spec, opts)}});
        }
        j["values"] = rows;
        os << j.dump(2) << "\n";
    } else {
        os << "# command=analytic family=" << model.canonical << " L=" << L << " t_min=" << t_min
           << "\n";
        os << "measure,value\n";
        for (const auto& spec : specs) {
            os << spec.str() << "," << fmt17(evaluate_measure(*model.tdf, spec, opts)) << "\n";
        }
    }
    return 0;
}

int cmd_estimate(const CommonEstimateArgs& a, const char* command) {
    const auto raw = read_xy_csv(a.input);
    PseudoSample sample =
        a.pseudo ? pseudo_from_known_margins(raw) : pseudo_observations(raw);
    if (sample.had_ties) std::cerr << "warning: ties in raw data resolved by midranks\n";

    PlateauOptions popts;
    popts.k_min = a.k_min;
    popts.k_max = a.k_max;
    PlateauResult plateau;
    std::size_t k = a.k;
    std::string k_source = "fixed";
    if (k == 0) {
        plateau = plateau_find_k(sample, popts);
        k = plateau.k_star;
        k_source = "plateau";
        if (!plateau.plateau_found) {
            std::cerr << "warning: no plateau found; falling back to k=" << k << "\n";
        }
    } else {
        plateau.k_star = k;
        plateau.plateau_found = true;
    }

    const auto specs = parse_measure_list(a.measures);
    EstimationOptions eopts;
    eopts.L = a.L;
    eopts.t_min = a.t_min;

    std::vector<MeasureReport> reports;
    const bool with_ci = a.B >= 2;
    if (with_ci) {
        BootstrapOptions bopts;
        bopts.B = a.B;
        bopts.level = a.level;
        bopts.seed = a.seed;
        bopts.rechoose_k = a.rechoose_k;
        bopts.plateau = popts;
        bopts.estimation = eopts;
        reports = bootstrap(sample, k, specs, bopts);
    } else {
        const EmpiricalTDF tdf(sample, k);
        for (const auto& spec : specs) {
            MeasureReport r;
            r.measure = spec.str();
            r.estimate = estimate_measure(tdf, spec, eopts);
            r.n = sample.n();
            r.k = k;
            r.B = 0;
            r.seed = a.seed;
            r.t_min = a.t_min;
            r.L = a.L;
            reports.push_back(r);
        }
    }

    json j;
    j["schema"] = 1;
    j["config"] = {{"command", command},
                   {"input", a.input},
                   {"pseudo", a.pseudo},
                   {"n", sample.n()},
                   {"k", k},
                   {"k_source", k_source},
                   {"plateau_found", plateau.plateau_found},
                   {"measures", a.measures},
                   {"B", a.B},
                   {"level", a.level},
                   {"seed", a.seed},
                   {"L", a.L},
                   {"t_min", a.t_min},
                   {"rechoose_k", a.rechoose_k}};
    json rows = json::array();
    for (const auto& r : reports) rows.push_back(report_to_json(r, with_ci));
    j["reports"] = rows;

    std::ofstream file;
    std::ostream& os = open_output(file, a.output);
    os << j.dump(2) << "\n";

    if (!a.plot_prefix.empty()) {
        if (plateau.curve.empty()) plateau = plateau_find_k(sample, popts);
        write_plot_csvs(a.plot_prefix, plateau, sample, k, a.L, a.t_min);
    }
    return 0;
}

int cmd_plateau(const CommonEstimateArgs& a) {
    const auto raw = read_xy_csv(a.input);
    PseudoSample sample =
        a.pseudo ? pseudo_from_known_margins(raw) : pseudo_observations(raw);
    PlateauOptions popts;
    popts.k_min = a.k_min;
    popts.k_max = a.k_max;
    const PlateauResult res = plateau_find_k(sample, popts);

    json j;
    j["schema"] = 1;
    j["config"] = {{"command", "plateau"}, {"input", a.input},   {"pseudo", a.pseudo},
                   {"n", sample.n()},      {"k_min", popts.k_min}, {"k_max", popts.k_max}};
    j["k_star"] = res.k_star;
    j["plateau_found"] = res.plateau_found;
    std::ofstream file;
    std::ostream& os = open_output(file, a.output);
    os << j.dump(2) << "\n";

    if (!a.plot_prefix.empty()) {
        std::ofstream f(a.plot_prefix + "_plateau.csv", std::ios::binary);
        f << "k,tdc_hat\n";
        for (const auto& [kk, lam] : res.curve) f << kk << "," << fmt17(lam) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tail dependence measures: sampling, analytic values, estimation"};
    app.require_subcommand(1);

    std::string family;
    std::size_t n = 1000;
    std::uint64_t seed = 42;
    std::string output;
    auto* sample_cmd = app.add_subcommand("sample", "draw copula samples as CSV");
    sample_cmd->add_option("-f,--family", family, "copula family expression")->required();
    sample_cmd->add_option("-n,--size", n, "sample size");
    sample_cmd->add_option("-s,--seed", seed, "RNG seed");
    sample_cmd->add_option("-o,--output", output, "output path (default stdout)");

    std::string an_family, an_measures = "tdc,spearman,gini,chi_bar,chi_star,lambda_bar";
    std::string an_format = "csv", an_output;
    int an_L = 100;
    double an_tmin = 1e-4;
    auto* analytic_cmd = app.add_subcommand("analytic", "closed-form measure table from the tail "
                                                        "dependence function");
    analytic_cmd->add_option("-f,--family", an_family, "family expression")->required();
    analytic_cmd->add_option("-m,--measures", an_measures, "comma-separated measure names");
    analytic_cmd->add_option("-L,--grid", an_L, "maximization grid resolution");
    analytic_cmd->add_option("--t-min", an_tmin, "grid floor for lambda_bar");
    analytic_cmd->add_option("--format", an_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    analytic_cmd->add_option("-o,--output", an_output, "output path (default stdout)");

    CommonEstimateArgs est;
    auto* estimate_cmd = app.add_subcommand("estimate", "nonparametric estimates with optional "
                                                        "bootstrap intervals");
    add_estimate_options(estimate_cmd, est);

    CommonEstimateArgs boot;
    boot.B = 100;
    auto* bootstrap_cmd = app.add_subcommand("bootstrap", "estimates with bootstrap intervals");
    add_estimate_options(bootstrap_cmd, boot);

    CommonEstimateArgs plat;
    auto* plateau_cmd = app.add_subcommand("plateau", "choose the tail threshold k");
    add_estimate_options(plateau_cmd, plat);

    try {
        app.parse(argc, argv);
        if (sample_cmd->parsed()) return cmd_sample(family, n, seed, output);
        if (analytic_cmd->parsed()) {
            return cmd_analytic(an_family, an_measures, an_L, an_tmin, an_format, an_output);
        }
        if (estimate_cmd->parsed()) return cmd_estimate(est, "estimate");
        if (bootstrap_cmd->parsed()) {
            if (boot.B < 2) throw std::invalid_argument("bootstrap: B must be >= 2");
            return cmd_estimate(boot, "bootstrap");
        }
        if (plateau_cmd->parsed()) return cmd_plateau(plat);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    } catch (const taildep::QuadratureError& e) {
        std::cerr << "error: " << e.what() << " (achieved " << e.achieved() << ")\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        std::cerr << "error: " << what << "\n";
        // I/O and parse problems are usage errors; anything else is internal
        return (what.find("cannot open") != std::string::npos ||
                what.find("parse error") != std::string::npos ||
                what.find("no data rows") != std::string::npos)
                   ? 2
                   : 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
