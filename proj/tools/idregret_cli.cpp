// Command-line front end: configuration-driven experiment runner that maps
// subcommands onto the library operations and emits machine-readable CSV or
// JSON plus a provenance sidecar.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "idregret/classify.hpp"
#include "idregret/energy.hpp"
#include "idregret/regret.hpp"
#include "idregret/suite.hpp"
#include "idregret/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace idregret;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 2;
constexpr int kExitConfig = 3;

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct RunConfig {
    std::string command;
    std::string model = "gaussian";
    double v = 1.0;
    double alpha = 1.0;
    double c = 1.0;
    double c1 = 0.5, c2 = 0.5;
    double lambda = 1.0;
    int d = 1;
    std::string prior = "uniform";
    double sigma2 = 1.0;
    double beta = 1.0;
    double r0 = 1.0;
    double theta0 = 0.0;
    double grid_lower = 0.0, grid_upper = 0.0;  // 0/0 = command default
    std::size_t grid_n = 0;
    double gen_h = 0.02;
    std::vector<double> n_list = {1, 4, 16, 64, 256};
    std::vector<double> r_list = {1e2, 1e3, 1e4};
    double r_max = 1e6;
    std::string out_path;
    std::string format = "csv";
    std::string config_file;

    std::map<std::string, std::string> echo() const {
        std::map<std::string, std::string> kv;
        kv["command"] = command;
        kv["model.family"] = model;
        kv["model.v"] = fmt12(v);
        kv["model.alpha"] = fmt12(alpha);
        kv["model.c"] = fmt12(c);
        kv["model.d"] = std::to_string(d);
        kv["prior.kind"] = prior;
        kv["prior.sigma2"] = fmt12(sigma2);
        kv["prior.beta"] = fmt12(beta);
        kv["prior.r0"] = fmt12(r0);
        kv["prior.theta0"] = fmt12(theta0);
        kv["grid.lower"] = fmt12(grid_lower);
        kv["grid.upper"] = fmt12(grid_upper);
        kv["grid.n"] = std::to_string(grid_n);
        kv["gen.h"] = fmt12(gen_h);
        kv["out.format"] = format;
        return kv;
    }
};

// flat key=value file with dotted keys; '#' starts a comment
void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::string line;
    auto parse_list = [](const std::string& text) {
        std::vector<double> out;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ':')) out.push_back(std::stod(tok));
        return out;
    };
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) continue;
        if (key == "model.family") cfg.model = value;
        else if (key == "model.v") cfg.v = std::stod(value);
        else if (key == "model.alpha") cfg.alpha = std::stod(value);
        else if (key == "model.c") cfg.c = std::stod(value);
        else if (key == "model.c1") cfg.c1 = std::stod(value);
        else if (key == "model.c2") cfg.c2 = std::stod(value);
        else if (key == "model.lambda") cfg.lambda = std::stod(value);
        else if (key == "model.d") cfg.d = std::stoi(value);
        else if (key == "prior.kind") cfg.prior = value;
        else if (key == "prior.sigma2") cfg.sigma2 = std::stod(value);
        else if (key == "prior.beta") cfg.beta = std::stod(value);
        else if (key == "prior.r0") cfg.r0 = std::stod(value);
        else if (key == "prior.theta0") cfg.theta0 = std::stod(value);
        else if (key == "grid.lower") cfg.grid_lower = std::stod(value);
        else if (key == "grid.upper") cfg.grid_upper = std::stod(value);
        else if (key == "grid.n") cfg.grid_n = std::stoul(value);
        else if (key == "gen.h") cfg.gen_h = std::stod(value);
        else if (key == "schedule.n_list") cfg.n_list = parse_list(value);
        else if (key == "schedule.R_list") cfg.r_list = parse_list(value);
        else if (key == "schedule.R_max") cfg.r_max = std::stod(value);
        else if (key == "out.path") cfg.out_path = value;
        else if (key == "out.format") cfg.format = value;
        else throw ConfigError("unknown config key " + key);
    }
}

LevyTriplet model_from(const RunConfig& cfg) {
    if (cfg.model == "gaussian") return LevyTriplet::gaussian(cfg.v, cfg.d);
    if (cfg.model == "cauchy") return LevyTriplet::cauchy(cfg.c, cfg.d);
    if (cfg.model == "stable") return LevyTriplet::stable(cfg.alpha, cfg.c, cfg.d);
    if (cfg.model == "asymmetric-stable")
        return LevyTriplet::asymmetric_stable(cfg.alpha, cfg.c1, cfg.c2);
    if (cfg.model == "poisson") return LevyTriplet::poisson(cfg.lambda);
    throw ConfigError("unknown model family " + cfg.model +
                      " (expected gaussian|cauchy|stable|asymmetric-stable|poisson)");
}

PriorSpec prior_from(const RunConfig& cfg) {
    if (cfg.prior == "uniform") return PriorSpec::uniform();
    if (cfg.prior == "gaussian")
        return cfg.sigma2 == 0.0 ? PriorSpec::point_mass(0.0)
                                 : PriorSpec::gaussian_proper(cfg.sigma2);
    if (cfg.prior == "powerlaw") return PriorSpec::power_law(cfg.beta, cfg.r0);
    if (cfg.prior == "pointmass") return PriorSpec::point_mass(cfg.theta0);
    if (cfg.prior == "student") return PriorSpec::student_like_proper(cfg.beta, cfg.r0);
    throw ConfigError("unknown prior kind " + cfg.prior +
                      " (expected uniform|gaussian|powerlaw|pointmass|student)");
}

Grid1D grid_from(const RunConfig& cfg, double default_half, std::size_t default_n) {
    const bool custom = cfg.grid_lower != 0.0 || cfg.grid_upper != 0.0;
    const double lower = custom ? cfg.grid_lower : -default_half;
    const double upper = custom ? cfg.grid_upper : default_half;
    const std::size_t n = cfg.grid_n != 0 ? cfg.grid_n : default_n;
    if (n > 65536) throw ConfigError("grid.n exceeds the 65536 budget");
    return Grid1D(lower, upper, n);
}

// rows of values with a fixed column order
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const {
        std::ostringstream os;
        for (std::size_t j = 0; j < columns.size(); ++j)
            os << columns[j] << (j + 1 < columns.size() ? "," : "");
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t j = 0; j < row.size(); ++j)
                os << row[j] << (j + 1 < row.size() ? "," : "");
            os << "\n";
        }
        return os.str();
    }
    json to_json() const {
        json arr = json::array();
        for (const auto& row : rows) {
            json obj;
            for (std::size_t j = 0; j < columns.size(); ++j) obj[columns[j]] = row[j];
            arr.push_back(obj);
        }
        return arr;
    }
};

Table run_classify(const RunConfig& cfg) {
    ModelTrait trait;
    if (cfg.model == "cauchy") trait = StableTail{1.0};
    else if (cfg.model == "stable" || cfg.model == "asymmetric-stable")
        trait = StableTail{cfg.alpha};
    else if (cfg.model == "finite-variance" || cfg.model == "gaussian" ||
             cfg.model == "poisson" || cfg.model == "laplace" || cfg.model == "vg" ||
             cfg.model == "nig" || cfg.model == "logistic")
        trait = FiniteVariance{};
    else
        throw ConfigError("classify: unsupported model " + cfg.model);
    const Verdict v = classify_admissibility(cfg.d, trait);
    Table t;
    t.columns = {"d", "trait", "recurrence", "admissibility", "rule"};
    t.rows.push_back({std::to_string(v.d), v.trait, to_string(v.recurrence),
                      to_string(v.admissibility), v.rule_fired});
    return t;
}

Table run_regret(const RunConfig& cfg) {
    const LevyTriplet model = model_from(cfg);
    const PriorSpec prior = prior_from(cfg);
    const Grid1D grid = grid_from(cfg, 120.0, 2048);
    const double value = integrated_regret(model, prior, grid);
    Table t;
    t.columns = {"model", "prior", "regret", "grid_n"};
    t.rows.push_back({cfg.model, prior.name(), fmt12(value), std::to_string(grid.n)});
    return t;
}

Table run_energy(const RunConfig& cfg) {
    const LevyTriplet model = model_from(cfg);
    const PriorSpec prior = prior_from(cfg);
    const Grid1D grid = grid_from(cfg, 120.0, 2048);
    const LevyTriplet sym = symmetrize(model);
    const MarginalDensity m = marginal_density(model, prior, grid);

    GriddedFunction mu = m.density;
    const double z = mu.trapezoid_periodic();
    for (double& val : mu.values) val /= z;
    const GriddedFunction root = sqrt_of(mu);

    const EnergyEstimate spectral = energy_spectral(sym, root);
    const EnergyEstimate finite_h =
        energy_finite_h(sym, root, {0.5, 0.25, 0.125, 0.0625, 0.03125});
    const EnergyEstimate lb = rate_function_lower_bound(sym, mu, 12);

    Table t;
    t.columns = {"model", "prior", "method", "value"};
    t.rows.push_back({cfg.model, prior.name(), "spectral", fmt12(spectral.value)});
    t.rows.push_back({cfg.model, prior.name(), "finite-h", fmt12(finite_h.value)});
    t.rows.push_back({cfg.model, prior.name(), "rate-lb", fmt12(lb.value)});
    if (sym.measure.trivial()) {
        const EnergyEstimate grad = energy_gradient_local(0.5 * sym.gaussian_variance, root);
        t.rows.push_back({cfg.model, prior.name(), "gradient", fmt12(grad.value)});
    }
    return t;
}

Table run_identity(const RunConfig& cfg) {
    const LevyTriplet model = model_from(cfg);
    const PriorSpec prior = prior_from(cfg);
    const double spread =
        cfg.model == "gaussian" ? 16.0 * std::sqrt(1.0 + cfg.sigma2) : 200.0;
    const Grid1D grid = grid_from(cfg, spread, 2048);
    const IdentityReport rep = verify_identity(model, prior, grid);
    Table t;
    t.columns = {"model", "prior",        "param",        "lhs",   "rhs_spectral",
                 "rhs_finite_h", "rhs_gradient", "ratio", "grid_n"};
    const double param = cfg.prior == "gaussian" ? cfg.sigma2
                         : cfg.prior == "powerlaw" || cfg.prior == "student" ? cfg.beta
                                                                             : 0.0;
    t.rows.push_back({cfg.model, prior.name(), fmt12(param), fmt12(rep.lhs_regret),
                      fmt12(rep.rhs_energy_spectral), fmt12(rep.rhs_energy_finite_h),
                      rep.rhs_energy_gradient ? fmt12(*rep.rhs_energy_gradient) : "",
                      fmt12(rep.ratio_spectral), std::to_string(rep.grid_n)});
    return t;
}

Table run_blyth(const RunConfig& cfg) {
    const LevyTriplet sym = symmetrize(model_from(cfg));
    const Grid1D grid = grid_from(cfg, 200.0, 2048);
    const GriddedFunction eta = default_eta(grid);
    const auto seq = blyth_sequence_energies(sym, eta, cfg.n_list, cfg.gen_h);
    Table t;
    t.columns = {"n", "energy"};
    for (const BlythPoint& p : seq) t.rows.push_back({fmt12(p.n), fmt12(p.energy)});
    return t;
}

Table run_capacity(const RunConfig& cfg) {
    const auto points =
        capacity_profile(cfg.d, cfg.alpha, ClosedExponent{cfg.beta}, cfg.r_list);
    Table t;
    t.columns = {"R", "energy", "J", "product"};
    for (const CapacityPoint& p : points)
        t.rows.push_back({fmt12(p.R), fmt12(p.energy), fmt12(p.J), fmt12(p.product)});
    return t;
}

Table run_catalog() {
    const auto rows = catalog_report();
    Table t;
    t.columns = {"distribution", "d", "trait", "recurrence", "admissibility", "rule"};
    for (const CatalogRow& row : rows)
        t.rows.push_back({row.distribution, std::to_string(row.d), row.verdict.trait,
                          to_string(row.verdict.recurrence),
                          to_string(row.verdict.admissibility), row.verdict.rule_fired});
    return t;
}

Table run_suite_cmd(bool& all_passed) {
    const auto results = suite::run_all();
    Table t;
    t.columns = {"id", "name", "passed", "detail"};
    all_passed = true;
    for (const auto& r : results) {
        all_passed = all_passed && r.passed;
        std::string detail = r.detail;
        for (char& ch : detail)
            if (ch == ',' || ch == '\n') ch = ';';
        t.rows.push_back({std::to_string(r.id), r.name, r.passed ? "pass" : "fail", detail});
        std::fprintf(stderr, "[%s] criterion %d %s\n", r.passed ? "PASS" : "FAIL", r.id,
                     r.name.c_str());
    }
    return t;
}

void write_outputs(const RunConfig& cfg, const Table& table, int exit_code,
                   double wall_seconds) {
    const std::string path =
        cfg.out_path.empty() ? cfg.command + "_result." + cfg.format : cfg.out_path;
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot write output path " + path);
        if (cfg.format == "json")
            out << table.to_json().dump(2) << "\n";
        else
            out << table.to_csv();
    }
    // provenance sidecar, always written; wall time lives here so the primary
    // payload stays bit-deterministic across runs
    json side;
    side["config"] = cfg.echo();
    side["library_version"] = version();
    side["exit_code"] = exit_code;
    side["wall_seconds"] = wall_seconds;
    side["tolerances"] = {{"density_mass", 1e-6},
                          {"kernel_row_mass", 1e-6},
                          {"balance_residual", 1e-6},
                          {"estimator_concordance", 5e-3},
                          {"identity_lhs_relative", 1e-4}};
    std::ofstream meta(path + ".meta.json", std::ios::binary);
    meta << side.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (const char* threads = std::getenv("ID_REGRET_THREADS"))
        omp_set_num_threads(std::max(1, std::atoi(threads)));
#endif

    CLI::App app{"KL predictive regret, Dirichlet energies and admissibility "
                 "classification for infinitely divisible location models"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_file;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_file, "flat key=value config file");
        sub->add_option("--model", cfg.model, "model family");
        sub->add_option("--v", cfg.v, "Gaussian variance");
        sub->add_option("--alpha", cfg.alpha, "stable tail exponent");
        sub->add_option("--c", cfg.c, "scale / intensity");
        sub->add_option("--c1", cfg.c1, "asymmetric stable positive intensity");
        sub->add_option("--c2", cfg.c2, "asymmetric stable negative intensity");
        sub->add_option("--lambda", cfg.lambda, "jump rate");
        sub->add_option("--d", cfg.d, "dimension");
        sub->add_option("--prior", cfg.prior, "prior kind");
        sub->add_option("--sigma2", cfg.sigma2, "Gaussian prior variance");
        sub->add_option("--beta", cfg.beta, "power-law tail exponent");
        sub->add_option("--r0", cfg.r0, "power-law core radius");
        sub->add_option("--theta0", cfg.theta0, "point-mass location");
        sub->add_option("--grid-lower", cfg.grid_lower, "grid lower edge");
        sub->add_option("--grid-upper", cfg.grid_upper, "grid upper edge");
        sub->add_option("--grid-n", cfg.grid_n, "grid points (power of two)");
        sub->add_option("--gen-h", cfg.gen_h, "generator time step");
        sub->add_option("--n-list", cfg.n_list, "resolvent index schedule");
        sub->add_option("--R-list", cfg.r_list, "capacity radius ladder");
        sub->add_option("--R-max", cfg.r_max, "integral test upper radius");
        sub->add_option("--out", cfg.out_path, "output path");
        sub->add_option("--format", cfg.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };
    for (const char* name :
         {"classify", "regret", "energy", "identity", "blyth", "capacity", "catalog",
          "suite"})
        add_common(app.add_subcommand(name));

    // first pass finds --config; values from the file are then overridden by
    // a second parse of the command line
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    const auto t0 = std::chrono::steady_clock::now();
    int exit_code = kExitOk;
    Table table;
    try {
        if (!config_file.empty()) {
            load_config_file(cfg, config_file);
            app.clear();
            app.parse(argc, argv);
            cfg.command = app.get_subcommands().front()->get_name();
        }

        if (cfg.command == "classify") table = run_classify(cfg);
        else if (cfg.command == "regret") table = run_regret(cfg);
        else if (cfg.command == "energy") table = run_energy(cfg);
        else if (cfg.command == "identity") table = run_identity(cfg);
        else if (cfg.command == "blyth") table = run_blyth(cfg);
        else if (cfg.command == "capacity") table = run_capacity(cfg);
        else if (cfg.command == "catalog") table = run_catalog();
        else if (cfg.command == "suite") {
            bool all_passed = false;
            table = run_suite_cmd(all_passed);
            if (!all_passed) exit_code = kExitTolerance;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        exit_code = kExitConfig;
    } catch (const Error& e) {
        std::fprintf(stderr, "tolerance failure: %s\n", e.what());
        exit_code = kExitTolerance;
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "argument error: %s\n", e.what());
        exit_code = kExitConfig;
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
        write_outputs(cfg, table, exit_code, wall);
    } catch (const Error& e) {
        std::fprintf(stderr, "output error: %s\n", e.what());
        return kExitConfig;
    }
    if (exit_code == kExitOk && cfg.command != "suite") std::cout << table.to_csv();
    return exit_code;
}
