#pragma once

// System-size sweeps: one EntropyReport per scale, logarithmic scaling fits, and
// deterministic CSV / JSON / SVG output.

#include "fermient/kernel.hpp"
#include "fermient/spectrum.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fermient::sweep {

enum class Quantity { S_A, S_m, S_res, C_2, delta_S };
enum class FitModel { A_lnL, A_LlnL };
enum class OutputFormat { Csv, Json, Svg };
enum class FitWindow { UpperHalf, All };

inline constexpr std::size_t kMaxModes1d = 4096;
inline constexpr std::size_t kMaxModes2d = 900;

struct SweepConfig {
    FermiSeaSpec model = SineKernel1D{1.5707963267948966};
    std::vector<std::int64_t> scales;
    std::vector<Quantity> quantities;
    FitModel fit_model = FitModel::A_lnL;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::filesystem::path> output;

    /// Throws InvalidInput on fewer than 3 scales, non-increasing scales, an
    /// empty quantity list, or a scale beyond the solver budget.
    void validate() const;
    [[nodiscard]] int dimension() const noexcept;
};

struct SweepRow {
    std::int64_t scale;
    EntropyReport report;
};

using SweepTable = std::vector<SweepRow>;

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    FitModel model = FitModel::A_lnL;
    Quantity quantity = Quantity::S_A;
    std::size_t points = 0;
};

/// Worker threads: hardware concurrency, capped by FERMIENT_THREADS when set.
[[nodiscard]] unsigned worker_count();

/// Interval of L sites (1d) or L x L square (2d).
[[nodiscard]] RegionSpec region_for(const SweepConfig& cfg, std::int64_t scale);

/// Rows in scale order regardless of which worker finished first. A failing
/// scale aborts the sweep with an error naming that scale.
[[nodiscard]] SweepTable run_sweep(const SweepConfig& cfg);
[[nodiscard]] SweepTable run_sweep(const SweepConfig& cfg, unsigned workers);

[[nodiscard]] double value_of(const EntropyReport& r, Quantity q) noexcept;

/// Ordinary least squares of the quantity against ln L or L ln L. UpperHalf keeps
/// the largest ceil(n/2) scales, but never fewer than 3.
[[nodiscard]] FitResult fit_scaling(const SweepTable& table, Quantity q, FitModel model,
                                    FitWindow window = FitWindow::UpperHalf);

[[nodiscard]] std::string to_csv(const SweepTable& table);
[[nodiscard]] nlohmann::ordered_json to_json(const SweepConfig& cfg, const SweepTable& table,
                                             const std::vector<FitResult>& fits);
[[nodiscard]] std::string to_svg(const SweepTable& table, const std::vector<Quantity>& quantities);

[[nodiscard]] std::string_view name(Quantity q) noexcept;
[[nodiscard]] std::string_view name(FitModel m) noexcept;
[[nodiscard]] Quantity parse_quantity(std::string_view text);
[[nodiscard]] FitModel parse_fit_model(std::string_view text);
[[nodiscard]] OutputFormat parse_format(std::string_view text);

} // namespace fermient::sweep
