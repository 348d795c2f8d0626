#pragma once

// Serialization and presentation helpers shared by the sweep writer and the CLI.

#include "fermient/spectrum.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fermient::io {

/// JSON object with keys S_A, C_1, C_2, S_m, S_res, delta_S and the bound flags.
[[nodiscard]] nlohmann::ordered_json to_json(const EntropyReport& r);

/// Entropy fields divided by ln 2; cumulants untouched.
[[nodiscard]] EntropyReport in_bits(EntropyReport r) noexcept;
/// Scale a single entropy value for presentation.
[[nodiscard]] double entropy_unit(double nats, bool bits) noexcept;

/// "0.5pi", "pi", "-2pi" or a plain decimal. Throws InvalidInput otherwise.
[[nodiscard]] double parse_pi_multiple(std::string_view text);

/// Flat "key = value" lines; '#' starts a comment, blank lines are skipped.
/// Keys must be non-empty and unique. Order is preserved.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> parse_flat_config(std::string_view text);

/// Shortest form that keeps 17 significant digits ("%.17g").
[[nodiscard]] std::string format_double(double v);

} // namespace fermient::io
