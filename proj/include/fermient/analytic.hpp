#pragma once

// Closed-form reference models for the measurement entropy in several settings.

#include "fermient/spectrum.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace fermient::analytic {

/// Two Fermi seas connected through a point contact of transmission D for a
/// time dt, with switching time tau.
struct QpcSwitchParams {
    double transmission;  ///< D in [0,1]
    double time_ratio;    ///< dt / tau > 1
};

struct QpcSwitchReport {
    EntropyReport report;
    /// 1/2 ln(2 pi e C_2); absent when C_2 = 0.
    std::optional<double> gaussian_asymptote;
    /// Total of the negative weights dropped after Fourier inversion.
    double negative_mass = 0.0;
    std::size_t grid_points = 0;
};

/// Principal-branch counting angle: sin(l*/2) = sqrt(D) sin(l/2) with l reduced to [-pi, pi].
[[nodiscard]] double qpc_counting_angle(double transmission, double lambda);
[[nodiscard]] std::complex<double> qpc_switch_chi(const QpcSwitchParams& p, double lambda);
/// Raw trapezoid-rule weights p_n on an n-point grid over [-pi, pi), ordered
/// n = -grid/2 .. grid/2 - 1. Not clipped: the principal branch has a kink at
/// lambda = +-pi when D = 1, which leaves small negative weights.
[[nodiscard]] std::vector<double> qpc_charge_weights(const QpcSwitchParams& p, std::size_t grid);
/// S = (pi^2/3) C_2 with C_2 = (D/pi^2) ln(dt/tau); S_m from trapezoid inversion of chi.
[[nodiscard]] QpcSwitchReport qpc_switch_report(const QpcSwitchParams& p);

/// Voltage-biased contact: N independent attempts, each transmitted with probability D.
struct BinomialReport {
    EntropyReport report;
    /// 1/2 ln(2 pi e D(1-D) N); absent when D is 0 or 1.
    std::optional<double> asymptote;
};

[[nodiscard]] std::vector<double> binomial_probabilities(std::int64_t attempts, double transmission);
[[nodiscard]] BinomialReport binomial_report(std::int64_t attempts, double transmission);

/// Luttinger liquid with interaction parameter g, region of k_F L = kfl.
struct LuttingerReport {
    EntropyReport report;
    /// 1/2 ln(2 pi e C_2); absent when C_2 = 0.
    std::optional<double> gaussian_asymptote;
};

[[nodiscard]] std::complex<double> luttinger_chi(double g, double kfl, double lambda);
[[nodiscard]] LuttingerReport luttinger_report(double g, double kfl);

/// Axis-aligned box by side lengths (an interval when there is one side).
struct Box {
    std::vector<double> extents;
};

/// Leading-order coefficients of Tr f(P_Gamma P_LA P_Gamma) for large L:
///   c1 f(1) L^d + c2 U(f) L^{d-1} ln L.
struct WidomSpec {
    int dimension = 1;
    double c1 = 0.0;
    double c2 = 0.0;

    /// U of the counting function, -lambda^2 / 2.
    [[nodiscard]] static double counting_u(double lambda) noexcept { return -0.5 * lambda * lambda; }
    [[nodiscard]] double predicted_mean(double scale) const;
    [[nodiscard]] double predicted_variance(double scale) const;
    [[nodiscard]] std::complex<double> predicted_log_chi(double lambda, double scale) const;
};

/// c1 = |A||Gamma| / (2 pi)^d and c2 = (2 pi)^{-(d+1)} int_{dA} int_{dGamma} |n_x . n_p|.
[[nodiscard]] WidomSpec widom_coefficients(const Box& region, const Box& sea);

/// Real part of U(f) = int_0^1 (f(t) - t f(1)) / (t (1 - t)) dt by 256-node Gauss-Legendre.
[[nodiscard]] double widom_u(const std::function<std::complex<double>(double)>& f);

/// f(t) = ln(1 + t (e^{i lambda} - 1)); |lambda| < pi.
[[nodiscard]] std::function<std::complex<double>(double)> counting_function(double lambda);

} // namespace fermient::analytic
