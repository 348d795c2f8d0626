#pragma once

#include "fermient/kernel.hpp"

#include <span>
#include <vector>

namespace fermient {

/// Eigenvalues that stray at most this far outside [0,1] are clipped; anything
/// further is rejected as an invalid correlation matrix.
inline constexpr double kSpectrumClipTolerance = 1e-10;

/// Occupation numbers nu_j in [0,1], sorted descending.
class OccupationSpectrum {
public:
    OccupationSpectrum() = default;
    /// Clips values within kSpectrumClipTolerance of [0,1] and sorts; throws on larger violations.
    explicit OccupationSpectrum(std::vector<double> values);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t j) const { return values_[j]; }

    /// Disjoint union of two spectra (the spectrum of a direct sum).
    [[nodiscard]] OccupationSpectrum merged(const OccupationSpectrum& other) const;

private:
    std::vector<double> values_;
};

struct Cumulants {
    double mean;     ///< C_1 = sum nu
    double variance; ///< C_2 = sum nu (1 - nu)
};

/// Entanglement and number-fluctuation summary of one instance. Entropies in nats.
struct EntropyReport {
    double s_a = 0.0;     ///< von Neumann entanglement entropy
    double c1 = 0.0;      ///< mean particle number in A
    double c2 = 0.0;      ///< particle number variance in A
    double s_m = 0.0;     ///< Shannon entropy of the number distribution
    double s_res = 0.0;   ///< accessible entropy s_a - s_m
    double delta_s = 0.0; ///< discrete Gaussian bound on s_m
    bool bound_gaussian_ok = false; ///< s_m <= delta_s
    bool bound_variance_ok = false; ///< s_a >= 4 ln2 c2
    bool negative_accessible = false; ///< s_res < -1e-9: inputs are inconsistent
};

[[nodiscard]] OccupationSpectrum occupation_spectrum(const CorrelationMatrix& c);

/// Binary entropy -nu ln nu - (1-nu) ln(1-nu), exactly zero at nu in {0,1}.
[[nodiscard]] double binary_entropy(double nu) noexcept;

[[nodiscard]] double entropy_from_spectrum(const OccupationSpectrum& s) noexcept;
[[nodiscard]] Cumulants cumulants(const OccupationSpectrum& s) noexcept;

/// S_A >= 4 ln 2 C_2, allowing only floating-point rounding (1e-12 relative).
[[nodiscard]] bool variance_bound_holds(double s_a, double c2) noexcept;

/// Fill every report field from the spectrum; the number distribution comes from fcs.
[[nodiscard]] EntropyReport report(const OccupationSpectrum& s);
[[nodiscard]] EntropyReport report(const CorrelationMatrix& c);

/// Report from externally known pieces (analytic models); sets delta_s and the flags.
[[nodiscard]] EntropyReport assemble_report(double s_a, double c1, double c2, double s_m);

} // namespace fermient
