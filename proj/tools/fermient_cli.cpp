// fermient: command-line front end. Every subcommand forwards to one library
// operation and prints JSON (or CSV/SVG for sweeps).
//
// Exit codes: 0 success, 1 numerical failure, 2 usage error.

#include "fermient/analytic.hpp"
#include "fermient/error.hpp"
#include "fermient/fcs.hpp"
#include "fermient/io.hpp"
#include "fermient/kernel.hpp"
#include "fermient/oracle.hpp"
#include "fermient/spectrum.hpp"
#include "fermient/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fermient;
using json = nlohmann::ordered_json;

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct Output {
    std::string path;
    bool bits = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--output,-o", path, "Write to this file instead of standard output");
        cmd->add_flag("--bits", bits, "Report entropies in bits instead of nats");
    }

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InvalidInput("cannot open output file '" + path + "'");
        out << text;
    }

    void write(const json& doc) const { write(doc.dump(2) + "\n"); }
};

struct ModelArgs {
    std::string model = "sine1d";
    std::string kf = "0.5pi";
    std::int64_t length = 0;
    std::int64_t n_sites = 0;
    std::int64_t n_filled = 0;

    void attach(CLI::App* cmd, bool with_length) {
        cmd->add_option("--model", model, "sine1d | square2d | ring")->capture_default_str();
        cmd->add_option("--kf", kf, "Fermi momentum; accepts a 'pi' suffix, e.g. 0.5pi")->capture_default_str();
        if (with_length) cmd->add_option("--length", length, "Region size L (interval, or L x L square)")->required();
        cmd->add_option("--n-sites", n_sites, "Ring size (model = ring)");
        cmd->add_option("--n-filled", n_filled, "Filled ring momenta (model = ring)");
    }

    [[nodiscard]] FermiSeaSpec sea() const {
        if (model == "sine1d") return SineKernel1D{io::parse_pi_multiple(kf)};
        if (model == "square2d") return SquareSea2D{io::parse_pi_multiple(kf)};
        if (model == "ring") return FiniteRing{n_sites, n_filled};
        throw InvalidInput("unknown model '" + model + "'");
    }

    [[nodiscard]] RegionSpec region() const {
        return model == "square2d" ? RegionSpec::square(length) : RegionSpec::interval(length);
    }

    [[nodiscard]] json describe() const {
        json d = {{"model", model}, {"length", length}};
        if (model == "ring") {
            d["n_sites"] = n_sites;
            d["n_filled"] = n_filled;
        } else {
            d["k_F"] = io::parse_pi_multiple(kf);
        }
        return d;
    }
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto b = item.find_first_not_of(' ');
        const auto e = item.find_last_not_of(' ');
        if (b == std::string::npos) throw InvalidInput("empty entry in list '" + text + "'");
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

json with_units(json doc, bool bits) {
    doc["units"] = bits ? "bits" : "nats";
    return doc;
}

json report_json(const EntropyReport& r, bool bits) { return io::to_json(bits ? io::in_bits(r) : r); }

json optional_entropy(const std::optional<double>& v, bool bits) {
    return v ? json(io::entropy_unit(*v, bits)) : json(nullptr);
}

// Splice "--key value" pairs from `--config FILE` in front of the first flag so
// that flags given on the command line take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string config_path;
    for (std::size_t k = 1; k < args.size(); ++k) {
        if (args[k] == "--config") {
            if (k + 1 >= args.size()) throw CLI::ArgumentMismatch("--config", 1, 0);
            config_path = args[k + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(k), args.begin() + static_cast<std::ptrdiff_t>(k) + 2);
            break;
        }
        if (args[k].rfind("--config=", 0) == 0) {
            config_path = args[k].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(k));
            break;
        }
    }
    if (config_path.empty()) return args;

    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read config file '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();

    std::vector<std::string> injected;
    for (const auto& [key, value] : io::parse_flat_config(buf.str())) {
        injected.push_back("--" + key);
        injected.push_back(value);
    }
    std::size_t first_flag = 1;
    while (first_flag < args.size() && args[first_flag].rfind('-', 0) != 0) ++first_flag;
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(first_flag), injected.begin(), injected.end());
    return args;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement, measurement and accessible entropy of free fermions"};
    app.name("fermient");
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_help_all_flag("--help-all");
    app.footer("Any subcommand also accepts --config FILE with flat 'key = value' lines; flags override it.");

    // entropy
    auto* entropy_cmd = app.add_subcommand("entropy", "Entanglement report of a Fermi-sea region");
    ModelArgs entropy_model;
    Output entropy_out;
    entropy_model.attach(entropy_cmd, true);
    entropy_out.attach(entropy_cmd);

    // fcs
    auto* fcs_cmd = app.add_subcommand("fcs", "Particle-number distribution and generating function");
    ModelArgs fcs_model;
    Output fcs_out;
    std::vector<std::string> fcs_lambdas;
    fcs_model.attach(fcs_cmd, true);
    fcs_out.attach(fcs_cmd);
    fcs_cmd->add_option("--lambda", fcs_lambdas, "Counting fields at which to report chi (pi suffix allowed)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->delimiter(',');

    // oracle-check
    auto* oracle_cmd = app.add_subcommand("oracle-check", "Brute-force check of S_res = S_A - S_m on random states");
    int oracle_modes = 8, oracle_trials = 100, oracle_generic = 50;
    std::uint64_t oracle_seed = 7;
    Output oracle_out;
    oracle_cmd->add_option("--modes", oracle_modes, "Number of fermionic modes (2..14)")->capture_default_str();
    oracle_cmd->add_option("--trials", oracle_trials, "Random Slater states")->capture_default_str();
    oracle_cmd->add_option("--generic-trials", oracle_generic, "Random non-Gaussian fixed-N states")
        ->capture_default_str();
    oracle_cmd->add_option("--seed", oracle_seed, "Random seed")->capture_default_str();
    oracle_out.attach(oracle_cmd);

    // analytic
    auto* analytic_cmd = app.add_subcommand("analytic", "Closed-form reference models");
    analytic_cmd->require_subcommand(1);
    auto* qpc_cmd = analytic_cmd->add_subcommand("qpc", "Point contact opened for a time dt");
    analytic::QpcSwitchParams qpc{1.0, 1e4};
    Output qpc_out;
    qpc_cmd->add_option("--D", qpc.transmission, "Transmission in [0,1]")->capture_default_str();
    qpc_cmd->add_option("--ratio", qpc.time_ratio, "dt / tau (> 1)")->capture_default_str();
    qpc_out.attach(qpc_cmd);

    auto* binomial_cmd = analytic_cmd->add_subcommand("binomial", "Voltage-biased point contact");
    std::int64_t binomial_n = 10;
    double binomial_d = 0.5;
    Output binomial_out;
    binomial_cmd->add_option("--N", binomial_n, "Number of attempts")->capture_default_str();
    binomial_cmd->add_option("--D", binomial_d, "Transmission in [0,1]")->capture_default_str();
    binomial_out.attach(binomial_cmd);

    auto* luttinger_cmd = analytic_cmd->add_subcommand("luttinger", "Luttinger liquid region of size L");
    double luttinger_g = 1.0, luttinger_kfl = 100.0;
    Output luttinger_out;
    luttinger_cmd->add_option("--g", luttinger_g, "Interaction parameter (> 0)")->capture_default_str();
    luttinger_cmd->add_option("--kfl", luttinger_kfl, "k_F L (>= 1)")->capture_default_str();
    luttinger_out.attach(luttinger_cmd);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "System-size sweep with scaling fits");
    ModelArgs sweep_model;
    std::string sweep_scales, sweep_quantities = "S_A,S_m,S_res,C_2,delta_S", sweep_fit = "auto",
                              sweep_format = "csv";
    Output sweep_out;
    sweep_model.attach(sweep_cmd, false);
    sweep_cmd->add_option("--scales", sweep_scales, "Comma-separated increasing sizes L (at least 3)")->required();
    sweep_cmd->add_option("--quantities", sweep_quantities, "Quantities to fit: S_A,S_m,S_res,C_2,delta_S")
        ->capture_default_str();
    sweep_cmd->add_option("--fit", sweep_fit, "auto | A_lnL | A_LlnL")->capture_default_str();
    sweep_cmd->add_option("--format", sweep_format, "csv | json | svg")->capture_default_str();
    sweep_out.attach(sweep_cmd);

    // widom
    auto* widom_cmd = app.add_subcommand("widom", "Leading-order counting statistics of a large region");
    std::string widom_lambda = "1", widom_kf = "0.5pi";
    int widom_dim = 1;
    double widom_length = 0.0;
    Output widom_out;
    widom_cmd->add_option("--lambda", widom_lambda, "Counting field, |lambda| < pi (pi suffix allowed)")
        ->capture_default_str();
    widom_cmd->add_option("--dimension", widom_dim, "1 or 2")->capture_default_str();
    widom_cmd->add_option("--kf", widom_kf, "Square Fermi sea half-width")->capture_default_str();
    widom_cmd->add_option("--length", widom_length, "Scale L for predicted mean and variance");
    widom_out.attach(widom_cmd);

    try {
        std::vector<std::string> args(argv, argv + argc);
        args = expand_config(std::move(args));
        std::vector<const char*> raw;
        for (const auto& a : args) raw.push_back(a.c_str());
        // CLI11 expects the program name at raw[0].
        app.parse(static_cast<int>(raw.size()), const_cast<char**>(raw.data()));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return kExitUsage;
    } catch (const InvalidInput& e) {
        std::cerr << "fermient: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (entropy_cmd->parsed()) {
            const auto r = report(correlation_matrix(entropy_model.sea(), entropy_model.region()));
            json doc = entropy_model.describe();
            doc["report"] = report_json(r, entropy_out.bits);
            entropy_out.write(with_units(std::move(doc), entropy_out.bits));
        } else if (fcs_cmd->parsed()) {
            const auto spectrum = occupation_spectrum(correlation_matrix(fcs_model.sea(), fcs_model.region()));
            const auto dist = charge_distribution(spectrum);
            const auto k = cumulants(spectrum);
            json doc = fcs_model.describe();
            doc["p"] = std::vector<double>(dist.probabilities().begin(), dist.probabilities().end());
            doc["C_1"] = k.mean;
            doc["C_2"] = k.variance;
            doc["S_m"] = io::entropy_unit(measurement_entropy(dist), fcs_out.bits);
            doc["delta_S"] = io::entropy_unit(gaussian_bound(k.variance), fcs_out.bits);
            auto& chi = doc["chi"] = json::array();
            for (const auto& text : fcs_lambdas) {
                const double lambda = io::parse_pi_multiple(text);
                const auto value = generating_function(spectrum, lambda);
                chi.push_back({{"lambda", lambda}, {"re", value.real()}, {"im", value.imag()}});
            }
            fcs_out.write(with_units(std::move(doc), fcs_out.bits));
        } else if (oracle_cmd->parsed()) {
            const auto res = oracle::identity_check(oracle_modes, oracle_trials, oracle_generic, oracle_seed);
            const bool ok = res.max_identity_error < 1e-9 && res.sandwich_violations == 0 &&
                            res.variance_bound_violations == 0 && res.max_spectral_error < 1e-9;
            oracle_out.write(json{{"modes", oracle_modes},
                                  {"seed", oracle_seed},
                                  {"slater_trials", res.slater_trials},
                                  {"generic_trials", res.generic_trials},
                                  {"max_identity_error", res.max_identity_error},
                                  {"max_spectral_error", res.max_spectral_error},
                                  {"sandwich_violations", res.sandwich_violations},
                                  {"variance_bound_violations", res.variance_bound_violations},
                                  {"passed", ok}});
            if (!ok) {
                std::cerr << "fermient: oracle identity check failed\n";
                return kExitNumerical;
            }
        } else if (qpc_cmd->parsed()) {
            const auto r = analytic::qpc_switch_report(qpc);
            qpc_out.write(with_units(json{{"D", qpc.transmission},
                                          {"ratio", qpc.time_ratio},
                                          {"report", report_json(r.report, qpc_out.bits)},
                                          {"gaussian_asymptote", optional_entropy(r.gaussian_asymptote, qpc_out.bits)},
                                          {"negative_mass", r.negative_mass},
                                          {"grid_points", r.grid_points}},
                                     qpc_out.bits));
        } else if (binomial_cmd->parsed()) {
            const auto r = analytic::binomial_report(binomial_n, binomial_d);
            binomial_out.write(with_units(json{{"N", binomial_n},
                                               {"D", binomial_d},
                                               {"report", report_json(r.report, binomial_out.bits)},
                                               {"asymptote", optional_entropy(r.asymptote, binomial_out.bits)}},
                                          binomial_out.bits));
        } else if (luttinger_cmd->parsed()) {
            const auto r = analytic::luttinger_report(luttinger_g, luttinger_kfl);
            luttinger_out.write(
                with_units(json{{"g", luttinger_g},
                                {"kfl", luttinger_kfl},
                                {"report", report_json(r.report, luttinger_out.bits)},
                                {"gaussian_asymptote", optional_entropy(r.gaussian_asymptote, luttinger_out.bits)}},
                           luttinger_out.bits));
        } else if (sweep_cmd->parsed()) {
            sweep::SweepConfig cfg;
            cfg.model = sweep_model.sea();
            for (const auto& s : split_list(sweep_scales)) {
                std::size_t used = 0;
                std::int64_t v = 0;
                try {
                    v = std::stoll(s, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != s.size()) throw InvalidInput("bad scale '" + s + "'");
                cfg.scales.push_back(v);
            }
            for (const auto& q : split_list(sweep_quantities)) cfg.quantities.push_back(sweep::parse_quantity(q));
            cfg.fit_model = sweep_fit == "auto"
                                ? (cfg.dimension() == 2 ? sweep::FitModel::A_LlnL : sweep::FitModel::A_lnL)
                                : sweep::parse_fit_model(sweep_fit);
            cfg.format = sweep::parse_format(sweep_format);
            if (!sweep_out.path.empty()) cfg.output = sweep_out.path;
            cfg.validate();

            auto table = sweep::run_sweep(cfg);
            std::vector<sweep::FitResult> fits;
            for (const auto q : cfg.quantities) fits.push_back(sweep::fit_scaling(table, q, cfg.fit_model));
            if (sweep_out.bits)
                for (auto& row : table) row.report = io::in_bits(row.report);
            // Fits are linear, so fitting in nats and rescaling matches fitting in bits.
            if (sweep_out.bits)
                for (auto& f : fits)
                    if (f.quantity != sweep::Quantity::C_2) {
                        f.slope = io::entropy_unit(f.slope, true);
                        f.intercept = io::entropy_unit(f.intercept, true);
                    }

            switch (cfg.format) {
            case sweep::OutputFormat::Csv: sweep_out.write(sweep::to_csv(table)); break;
            case sweep::OutputFormat::Json:
                sweep_out.write(with_units(sweep::to_json(cfg, table, fits), sweep_out.bits));
                break;
            case sweep::OutputFormat::Svg: sweep_out.write(sweep::to_svg(table, cfg.quantities)); break;
            }
            if (cfg.format != sweep::OutputFormat::Json)
                for (const auto& f : fits)
                    std::cerr << "fit " << sweep::name(f.quantity) << " ~ " << sweep::name(f.model)
                              << ": slope=" << io::format_double(f.slope)
                              << " intercept=" << io::format_double(f.intercept)
                              << " r2=" << io::format_double(f.r_squared) << " points=" << f.points << "\n";
        } else if (widom_cmd->parsed()) {
            const double lambda = io::parse_pi_multiple(widom_lambda);
            const double kf = io::parse_pi_multiple(widom_kf);
            if (widom_dim != 1 && widom_dim != 2) throw InvalidInput("--dimension must be 1 or 2");
            const analytic::Box region{std::vector<double>(static_cast<std::size_t>(widom_dim), 1.0)};
            const analytic::Box sea{std::vector<double>(static_cast<std::size_t>(widom_dim), 2.0 * kf)};
            const auto spec = analytic::widom_coefficients(region, sea);
            json doc = {{"lambda", lambda},
                        {"dimension", widom_dim},
                        {"k_F", kf},
                        {"U_quadrature", analytic::widom_u(analytic::counting_function(lambda))},
                        {"U_closed_form", analytic::WidomSpec::counting_u(lambda)},
                        {"c1", spec.c1},
                        {"c2", spec.c2}};
            if (widom_length > 1.0) {
                doc["length"] = widom_length;
                doc["predicted_mean"] = spec.predicted_mean(widom_length);
                doc["predicted_variance"] = spec.predicted_variance(widom_length);
            }
            widom_out.write(doc);
        }
    } catch (const InvalidInput& e) {
        std::cerr << "fermient: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "fermient: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
