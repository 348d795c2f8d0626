#pragma once

// Full counting statistics of the particle number in a region: generating
// function, exact number distribution, and the entropies derived from it.

#include "fermient/spectrum.hpp"

#include <complex>
#include <span>
#include <vector>

namespace fermient {

/// Probabilities p_n of finding n = 0..m particles in the region.
class ChargeDistribution {
public:
    /// Values in [-1e-12, 0) are clipped and the result renormalized; larger
    /// negativity or a total outside 1 +- 1e-10 is a NumericalFailure.
    explicit ChargeDistribution(std::vector<double> p);

    [[nodiscard]] std::span<const double> probabilities() const noexcept { return p_; }
    [[nodiscard]] std::size_t size() const noexcept { return p_.size(); }
    [[nodiscard]] double operator[](std::size_t n) const { return p_[n]; }

    [[nodiscard]] double mean() const noexcept;
    [[nodiscard]] double variance() const noexcept;

private:
    std::vector<double> p_;
};

/// chi(lambda) = prod_j (1 + nu_j (e^{i lambda} - 1)).
[[nodiscard]] std::complex<double> generating_function(const OccupationSpectrum& s, double lambda);

/// Exact inverse of chi on the (m+1)-point grid lambda_k = 2 pi k / (m+1).
[[nodiscard]] ChargeDistribution charge_distribution(const OccupationSpectrum& s);

/// Shannon entropy -sum p ln p of a probability vector; zero entries contribute 0.
[[nodiscard]] double shannon_entropy(std::span<const double> p) noexcept;
[[nodiscard]] double measurement_entropy(const ChargeDistribution& d) noexcept;

/// Upper bound 1/2 ln[2 pi e (C_2 + 1/12)] on the entropy of an integer variable of variance C_2.
[[nodiscard]] double gaussian_bound(double variance);

struct AccessibleEntropy {
    double value;
    bool negative; ///< value < -1e-9
};

[[nodiscard]] AccessibleEntropy accessible_entropy(double s_a, double s_m);

/// Sum of per-charge Gaussian bounds; bounds the joint measurement entropy of several charges.
[[nodiscard]] double multi_charge_bound(std::span<const double> variances);

} // namespace fermient
