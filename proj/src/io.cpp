#include "fermient/io.hpp"

#include "fermient/error.hpp"

#include <charconv>
#include <cstdio>
#include <numbers>
#include <set>

namespace fermient::io {

nlohmann::ordered_json to_json(const EntropyReport& r) {
    return {
        {"S_A", r.s_a},
        {"S_m", r.s_m},
        {"S_res", r.s_res},
        {"C_1", r.c1},
        {"C_2", r.c2},
        {"delta_S", r.delta_s},
        {"bound_gaussian_ok", r.bound_gaussian_ok},
        {"bound_variance_ok", r.bound_variance_ok},
        {"negative_accessible", r.negative_accessible},
    };
}

double entropy_unit(double nats, bool bits) noexcept { return bits ? nats / std::numbers::ln2 : nats; }

EntropyReport in_bits(EntropyReport r) noexcept {
    r.s_a = entropy_unit(r.s_a, true);
    r.s_m = entropy_unit(r.s_m, true);
    r.s_res = entropy_unit(r.s_res, true);
    r.delta_s = entropy_unit(r.delta_s, true);
    return r;
}

double parse_pi_multiple(std::string_view text) {
    const auto bad = [&] { return InvalidInput("cannot parse '" + std::string(text) + "' as a number or multiple of pi"); };
    if (text.empty()) throw bad();
    double factor = 1.0;
    bool has_pi = false;
    if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
        has_pi = true;
        text.remove_suffix(2);
    }
    if (has_pi && (text.empty() || text == "+")) return std::numbers::pi;
    if (has_pi && text == "-") return -std::numbers::pi;
    if (text.empty()) throw bad();
    if (text.front() == '+') text.remove_prefix(1);
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), factor);
    if (ec != std::errc{} || end != text.data() + text.size()) throw bad();
    return has_pi ? factor * std::numbers::pi : factor;
}

std::vector<std::pair<std::string, std::string>> parse_flat_config(std::string_view text) {
    const auto trim = [](std::string_view v) {
        const auto b = v.find_first_not_of(" \t\r");
        if (b == std::string_view::npos) return std::string_view{};
        return v.substr(b, v.find_last_not_of(" \t\r") - b + 1);
    };
    std::vector<std::pair<std::string, std::string>> out;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw InvalidInput("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw InvalidInput("config line " + std::to_string(line_no) + ": empty key");
        if (!seen.emplace(key).second)
            throw InvalidInput("config line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
        out.emplace_back(key, value);
    }
    return out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace fermient::io
