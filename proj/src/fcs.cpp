#include "fermient/fcs.hpp"

#include "fermient/error.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace fermient {

namespace {

constexpr double kNegativeProbabilityTolerance = 1e-12;
constexpr double kNormalizationTolerance = 1e-10;
constexpr double kImaginaryResidueTolerance = 1e-10;

} // namespace

ChargeDistribution::ChargeDistribution(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw InvalidInput("charge distribution is empty");
    for (auto& v : p_) {
        if (!(v >= -kNegativeProbabilityTolerance && v <= 1.0 + kNormalizationTolerance))
            throw NumericalFailure("probability " + std::to_string(v) + " outside [0,1]");
        if (v < 0.0) v = 0.0;
    }
    const double total = std::accumulate(p_.begin(), p_.end(), 0.0);
    if (std::abs(total - 1.0) > kNormalizationTolerance)
        throw NumericalFailure("probabilities sum to " + std::to_string(total));
    for (auto& v : p_) v /= total;
}

double ChargeDistribution::mean() const noexcept {
    double m = 0.0;
    for (std::size_t n = 0; n < p_.size(); ++n) m += static_cast<double>(n) * p_[n];
    return m;
}

double ChargeDistribution::variance() const noexcept {
    const double m = mean();
    double v = 0.0;
    for (std::size_t n = 0; n < p_.size(); ++n) {
        const double d = static_cast<double>(n) - m;
        v += d * d * p_[n];
    }
    return v;
}

std::complex<double> generating_function(const OccupationSpectrum& s, double lambda) {
    // chi is 2 pi periodic; reduce first so that lambda and lambda + 2 pi agree.
    const double reduced = std::remainder(lambda, 2.0 * std::numbers::pi);
    const std::complex<double> step = std::polar(1.0, reduced) - 1.0;
    std::complex<double> chi = 1.0;
    for (const double nu : s.values()) chi *= 1.0 + nu * step;
    return chi;
}

ChargeDistribution charge_distribution(const OccupationSpectrum& s) {
    const std::size_t grid = s.size() + 1;
    const double dl = 2.0 * std::numbers::pi / static_cast<double>(grid);

    std::vector<std::complex<double>> chi(grid);
    for (std::size_t k = 0; k < grid; ++k) chi[k] = generating_function(s, dl * static_cast<double>(k));

    std::vector<std::complex<double>> twiddle(grid);
    for (std::size_t w = 0; w < grid; ++w) twiddle[w] = std::polar(1.0, -dl * static_cast<double>(w));

    std::vector<double> p(grid);
    for (std::size_t n = 0; n < grid; ++n) {
        std::complex<double> acc = 0.0;
        for (std::size_t k = 0; k < grid; ++k) acc += chi[k] * twiddle[(k * n) % grid];
        acc /= static_cast<double>(grid);
        if (std::abs(acc.imag()) > kImaginaryResidueTolerance)
            throw NumericalFailure("charge distribution has imaginary residue " +
                                   std::to_string(acc.imag()) + " at n = " + std::to_string(n));
        p[n] = acc.real();
    }
    return ChargeDistribution(std::move(p));
}

double shannon_entropy(std::span<const double> p) noexcept {
    double s = 0.0;
    for (const double v : p)
        if (v > 0.0) s -= v * std::log(v);
    return s;
}

double measurement_entropy(const ChargeDistribution& d) noexcept {
    return shannon_entropy(d.probabilities());
}

double gaussian_bound(double variance) {
    if (!(variance >= 0.0)) throw InvalidInput("variance must be non-negative");
    return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * (variance + 1.0 / 12.0));
}

AccessibleEntropy accessible_entropy(double s_a, double s_m) {
    const double value = s_a - s_m;
    return {value, value < -1e-9};
}

double multi_charge_bound(std::span<const double> variances) {
    if (variances.empty()) throw InvalidInput("multi_charge_bound needs at least one charge");
    double total = 0.0;
    for (const double v : variances) total += gaussian_bound(v);
    return total;
}

} // namespace fermient
