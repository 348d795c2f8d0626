#include "fermient/sweep.hpp"

#include "fermient/error.hpp"
#include "fermient/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

namespace fermient::sweep {

namespace {

constexpr std::string_view kCsvHeader = "L,S_A,S_m,S_res,C_1,C_2,delta_S";

double design_value(std::int64_t scale, FitModel model) {
    const auto l = static_cast<double>(scale);
    return model == FitModel::A_lnL ? std::log(l) : l * std::log(l);
}

nlohmann::ordered_json model_json(const FermiSeaSpec& sea) {
    return std::visit(
        [](const auto& s) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SineKernel1D>) return {{"kind", "sine1d"}, {"k_F", s.k_fermi}};
            else if constexpr (std::is_same_v<T, SquareSea2D>) return {{"kind", "square2d"}, {"k_F", s.k_fermi}};
            else return {{"kind", "ring"}, {"n_sites", s.n_sites}, {"n_filled", s.n_filled}};
        },
        sea);
}

} // namespace

int SweepConfig::dimension() const noexcept { return std::holds_alternative<SquareSea2D>(model) ? 2 : 1; }

void SweepConfig::validate() const {
    if (scales.size() < 3) throw InvalidInput("a sweep needs at least 3 scales");
    for (std::size_t k = 0; k < scales.size(); ++k) {
        if (scales[k] <= 0) throw InvalidInput("scales must be positive");
        if (k > 0 && scales[k] <= scales[k - 1]) throw InvalidInput("scales must be strictly increasing");
    }
    if (quantities.empty()) throw InvalidInput("a sweep needs at least one quantity");

    const auto largest = static_cast<std::size_t>(scales.back());
    if (dimension() == 1 && largest > kMaxModes1d)
        throw InvalidInput("scale " + std::to_string(largest) + " exceeds the 1d budget of " +
                           std::to_string(kMaxModes1d) + " modes");
    if (dimension() == 2 && largest * largest > kMaxModes2d)
        throw InvalidInput("scale " + std::to_string(largest) + " exceeds the 2d budget of " +
                           std::to_string(kMaxModes2d) + " modes");
    if (const auto* ring = std::get_if<FiniteRing>(&model); ring && scales.back() > ring->n_sites)
        throw InvalidInput("interval longer than the ring");
}

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FERMIENT_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

RegionSpec region_for(const SweepConfig& cfg, std::int64_t scale) {
    return cfg.dimension() == 2 ? RegionSpec::square(scale) : RegionSpec::interval(scale);
}

SweepTable run_sweep(const SweepConfig& cfg) { return run_sweep(cfg, worker_count()); }

SweepTable run_sweep(const SweepConfig& cfg, unsigned workers) {
    cfg.validate();
    const std::size_t n = cfg.scales.size();
    SweepTable table(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};

    // Largest scales first so the expensive rows start early.
    const auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < n;) {
            const std::size_t row = n - 1 - k;
            try {
                const auto scale = cfg.scales[row];
                table[row] = {scale, report(correlation_matrix(cfg.model, region_for(cfg, scale)))};
            } catch (...) {
                errors[row] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::clamp(workers, 1u, static_cast<unsigned>(n));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    pool.clear();

    for (std::size_t row = 0; row < n; ++row) {
        if (!errors[row]) continue;
        const std::string where = "sweep failed at L = " + std::to_string(cfg.scales[row]) + ": ";
        try {
            std::rethrow_exception(errors[row]);
        } catch (const InvalidInput& e) {
            throw InvalidInput(where + e.what());
        } catch (const std::exception& e) {
            throw NumericalFailure(where + e.what());
        }
    }
    return table;
}

double value_of(const EntropyReport& r, Quantity q) noexcept {
    switch (q) {
    case Quantity::S_A: return r.s_a;
    case Quantity::S_m: return r.s_m;
    case Quantity::S_res: return r.s_res;
    case Quantity::C_2: return r.c2;
    case Quantity::delta_S: return r.delta_s;
    }
    return 0.0;
}

FitResult fit_scaling(const SweepTable& table, Quantity q, FitModel model, FitWindow window) {
    if (table.size() < 3) throw InvalidInput("a scaling fit needs at least 3 rows");
    SweepTable rows(table);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.scale < b.scale; });
    if (window == FitWindow::UpperHalf) {
        const std::size_t keep = std::max<std::size_t>(3, (rows.size() + 1) / 2);
        rows.erase(rows.begin(), rows.end() - static_cast<std::ptrdiff_t>(keep));
    }

    const auto n = static_cast<double>(rows.size());
    double mx = 0.0, my = 0.0;
    for (const auto& r : rows) {
        mx += design_value(r.scale, model);
        my += value_of(r.report, q);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& r : rows) {
        const double dx = design_value(r.scale, model) - mx;
        const double dy = value_of(r.report, q) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !std::isfinite(sxx)) throw NumericalFailure("degenerate design matrix in scaling fit");

    FitResult fit;
    fit.model = model;
    fit.quantity = q;
    fit.points = rows.size();
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (const auto& r : rows) {
        const double e = value_of(r.report, q) - (fit.slope * design_value(r.scale, model) + fit.intercept);
        ss_res += e * e;
    }
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

std::string to_csv(const SweepTable& table) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& row : table) {
        const auto& r = row.report;
        out += std::to_string(row.scale);
        for (const double v : {r.s_a, r.s_m, r.s_res, r.c1, r.c2, r.delta_s}) {
            out += ',';
            out += io::format_double(v);
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json to_json(const SweepConfig& cfg, const SweepTable& table, const std::vector<FitResult>& fits) {
    nlohmann::ordered_json doc;
    doc["model"] = model_json(cfg.model);
    doc["dimension"] = cfg.dimension();
    doc["scales"] = cfg.scales;
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table) {
        nlohmann::ordered_json entry = {{"L", row.scale}};
        entry.update(io::to_json(row.report));
        rows.push_back(std::move(entry));
    }
    auto& fit_list = doc["fits"] = nlohmann::ordered_json::array();
    for (const auto& f : fits) {
        fit_list.push_back({{"quantity", name(f.quantity)},
                            {"model", name(f.model)},
                            {"slope", f.slope},
                            {"intercept", f.intercept},
                            {"r_squared", f.r_squared},
                            {"points", f.points}});
    }
    return doc;
}

std::string to_svg(const SweepTable& table, const std::vector<Quantity>& quantities) {
    constexpr double width = 640, height = 400, margin = 50;
    static constexpr const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const auto& row : table) {
        const double x = std::log(static_cast<double>(row.scale));
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
        for (const auto q : quantities) {
            y_lo = std::min(y_lo, value_of(row.report, q));
            y_hi = std::max(y_hi, value_of(row.report, q));
        }
    }
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;
    const auto px = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
    const auto py = [&](double y) { return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin); };

    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    svg << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin << "\" height=\""
        << height - 2 * margin << "\" fill=\"none\" stroke=\"#000\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">ln L</text>\n";
    for (std::size_t k = 0; k < quantities.size(); ++k) {
        const char* color = colors[k % std::size(colors)];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (const auto& row : table)
            svg << px(std::log(static_cast<double>(row.scale))) << ',' << py(value_of(row.report, quantities[k])) << ' ';
        svg << "\"/>\n";
        svg << "<text x=\"" << margin + 10 << "\" y=\"" << margin + 20 + 18 * static_cast<double>(k) << "\" fill=\""
            << color << "\">" << name(quantities[k]) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string_view name(Quantity q) noexcept {
    switch (q) {
    case Quantity::S_A: return "S_A";
    case Quantity::S_m: return "S_m";
    case Quantity::S_res: return "S_res";
    case Quantity::C_2: return "C_2";
    case Quantity::delta_S: return "delta_S";
    }
    return "?";
}

std::string_view name(FitModel m) noexcept { return m == FitModel::A_lnL ? "A_lnL" : "A_LlnL"; }

Quantity parse_quantity(std::string_view text) {
    for (const auto q : {Quantity::S_A, Quantity::S_m, Quantity::S_res, Quantity::C_2, Quantity::delta_S})
        if (text == name(q)) return q;
    throw InvalidInput("unknown quantity '" + std::string(text) + "'");
}

FitModel parse_fit_model(std::string_view text) {
    if (text == "A_lnL" || text == "lnL") return FitModel::A_lnL;
    if (text == "A_LlnL" || text == "LlnL") return FitModel::A_LlnL;
    throw InvalidInput("unknown fit model '" + std::string(text) + "'");
}

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    if (text == "svg") return OutputFormat::Svg;
    throw InvalidInput("unknown output format '" + std::string(text) + "'");
}

} // namespace fermient::sweep
