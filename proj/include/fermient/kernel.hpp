#pragma once

// Ground-state correlation matrices <a^dag_j a_i> of free-fermion Fermi seas,
// restricted to a finite set of lattice sites.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

namespace fermient {

using Site = std::array<std::int64_t, 2>;

/// Set of lattice sites forming region A. In 1d only the first coordinate is used.
class RegionSpec {
public:
    RegionSpec(int dimension, std::vector<Site> sites, std::int64_t scale);

    /// Sites 0..length-1.
    static RegionSpec interval(std::int64_t length);
    /// Sites [0,side) x [0,side), row-major.
    static RegionSpec square(std::int64_t side);

    [[nodiscard]] int dimension() const noexcept { return dimension_; }
    [[nodiscard]] const std::vector<Site>& sites() const noexcept { return sites_; }
    [[nodiscard]] std::size_t size() const noexcept { return sites_.size(); }
    [[nodiscard]] std::int64_t scale() const noexcept { return scale_; }

private:
    int dimension_;
    std::vector<Site> sites_;
    std::int64_t scale_;
};

struct SineKernel1D {
    double k_fermi;
};

struct SquareSea2D {
    double k_fermi;
};

/// Tight-binding ring of n_sites with the n_filled lowest-|k| momenta occupied.
struct FiniteRing {
    std::int64_t n_sites;
    std::int64_t n_filled;
};

using FermiSeaSpec = std::variant<SineKernel1D, SquareSea2D, FiniteRing>;

/// Hermitian one-body correlation matrix of a region. Construction validates
/// hermiticity (1e-12) but not the spectrum; that is checked when it is diagonalized.
class CorrelationMatrix {
public:
    explicit CorrelationMatrix(Eigen::MatrixXcd entries);

    [[nodiscard]] Eigen::Index dim() const noexcept { return entries_.rows(); }
    [[nodiscard]] const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
    [[nodiscard]] std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const {
        return entries_(i, j);
    }
    /// True when every entry has exactly zero imaginary part.
    [[nodiscard]] bool is_real() const noexcept { return real_; }

private:
    Eigen::MatrixXcd entries_;
    bool real_;
};

inline constexpr double kHermitianTolerance = 1e-12;

/// sin(k_F r) / (pi r), with the r = 0 limit k_F / pi.
[[nodiscard]] double sine_kernel_value(double k_fermi, std::int64_t displacement);

[[nodiscard]] CorrelationMatrix sine_kernel_1d(const RegionSpec& region, double k_fermi);
[[nodiscard]] CorrelationMatrix square_sea_2d(const RegionSpec& region, double k_fermi);
[[nodiscard]] CorrelationMatrix finite_ring(std::int64_t n_sites, std::int64_t n_filled,
                                            const RegionSpec& region);

/// Ring momenta in filling order: q = 0, +1, -1, +2, -2, ... in units of 2 pi / n_sites,
/// with the zone-boundary momentum (even n_sites) last. Returns the first n_filled.
[[nodiscard]] std::vector<std::int64_t> ring_filling_order(std::int64_t n_sites,
                                                           std::int64_t n_filled);

/// Dispatch on the sea kind.
[[nodiscard]] CorrelationMatrix correlation_matrix(const FermiSeaSpec& sea, const RegionSpec& region);

} // namespace fermient
