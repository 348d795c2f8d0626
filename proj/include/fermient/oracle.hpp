#pragma once

// Brute-force many-body reference for a handful of fermionic modes.
//
// Basis convention: bit j of an index is the occupation of mode j, and
//   |b> = (a_0^dag)^{b_0} (a_1^dag)^{b_1} ... (a_{m-1}^dag)^{b_{m-1}} |0>,
// so a_j^dag and a_j pick up (-1)^{number of occupied modes below j}.
// Region A is always the low modes 0..m_A-1, which makes |b> = |b_A> (x) |b_B>
// without extra signs.

#include "fermient/fcs.hpp"
#include "fermient/kernel.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace fermient::oracle {

inline constexpr int kMaxModes = 14;
/// Largest region whose dense 2^m_A density matrix is built.
inline constexpr int kMaxRegionModes = 12;

using Amplitudes = std::vector<std::complex<double>>;
using DensityMatrix = Eigen::MatrixXcd;

class FockState {
public:
    /// Validates length 2^n_modes, unit norm (1e-12) and, if fixed_n is given,
    /// that every amplitude off the Hamming-weight shell is zero.
    FockState(int n_modes, Amplitudes amplitudes, std::optional<int> fixed_n = std::nullopt);

    [[nodiscard]] int n_modes() const noexcept { return n_modes_; }
    [[nodiscard]] const Amplitudes& amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::optional<int> fixed_n() const noexcept { return fixed_n_; }
    [[nodiscard]] std::complex<double> operator[](std::uint32_t bits) const { return amplitudes_[bits]; }

private:
    int n_modes_;
    Amplitudes amplitudes_;
    std::optional<int> fixed_n_;
};

struct SectorDecomposition {
    int fixed_n;
    std::vector<double> probabilities; ///< p_n for n = 0..m_A
    /// Entropy of the normalized block; empty where p_n vanishes.
    std::vector<std::optional<double>> sector_entropies;
};

/// Orbitals are the columns of an m x N matrix; the state is b_1^dag ... b_N^dag |0>
/// normalized, with b_k^dag = sum_j orbitals(j,k) a_j^dag.
[[nodiscard]] FockState slater_state(const Eigen::MatrixXcd& orbitals);

/// a^dag(phi) applied to an unnormalized amplitude vector over n_modes modes.
[[nodiscard]] Amplitudes apply_creation(const Amplitudes& amplitudes, int n_modes,
                                        const Eigen::VectorXcd& orbital);

/// Relabel mode j as perm[j], with the fermionic reordering sign.
[[nodiscard]] FockState permute_modes(const FockState& state, std::span<const int> perm);

/// <a_j^dag a_i> evaluated on the amplitudes.
[[nodiscard]] Eigen::MatrixXcd one_body_correlation(const FockState& state);

/// rho_A over region A = modes 0..m_A-1.
[[nodiscard]] DensityMatrix reduced_density_matrix(const FockState& state, int m_a);
/// Region given as a list of modes; must be exactly {0, ..., m_A-1}.
[[nodiscard]] DensityMatrix reduced_density_matrix(const FockState& state,
                                                   std::span<const int> region_modes);

/// -Tr rho ln rho, clipping eigenvalues below zero.
[[nodiscard]] double von_neumann_entropy(const DensityMatrix& rho);

/// Split rho_A into local particle-number blocks. Throws NumericalFailure when an
/// off-block element exceeds 1e-12 (state not number conserving).
[[nodiscard]] SectorDecomposition sector_decomposition(const DensityMatrix& rho_a, int fixed_n);

/// sum_n p_n S_n.
[[nodiscard]] double accessible_entropy_direct(const SectorDecomposition& dec);

/// P(n_A, n_B) as a (m_A+1) x (m_B+1) matrix.
[[nodiscard]] Eigen::MatrixXd joint_number_distribution(const FockState& state, int m_a);

/// Orthonormal columns drawn from the Haar measure (QR of a complex Gaussian matrix).
[[nodiscard]] Eigen::MatrixXcd random_orbitals(int n_modes, int n_particles, std::mt19937_64& rng);

/// Random amplitudes on the weight-n_particles shell; generally not a Slater determinant.
[[nodiscard]] FockState random_fixed_n_state(int n_modes, int n_particles, std::mt19937_64& rng);

/// Every entropy of one state computed both from rho_A directly and, where available,
/// from the one-body correlation spectrum.
struct OracleEntropies {
    double s_a;          ///< von Neumann entropy of rho_A
    double s_m;          ///< Shannon entropy of the sector weights
    double s_res_direct; ///< sum_n p_n S_n
    std::vector<double> probabilities;
};

[[nodiscard]] OracleEntropies oracle_entropies(const FockState& state, int m_a);

struct IdentityCheckResult {
    int slater_trials = 0;
    int generic_trials = 0;
    double max_identity_error = 0.0;  ///< max |S_res(direct) - (S_A - S_m)|
    double max_spectral_error = 0.0;  ///< Slater only: oracle vs correlation-spectrum S_A, S_m, p_n
    int sandwich_violations = 0;      ///< S_A - dS <= S_res <= S_A failures
    int variance_bound_violations = 0; ///< Slater only: S_A < 4 ln2 C_2
};

/// Random-state suite: `trials` Slater states and `generic_trials` non-Gaussian fixed-N
/// states on n_modes modes with random N and region size. Deterministic in seed.
[[nodiscard]] IdentityCheckResult identity_check(int n_modes, int trials, int generic_trials,
                                                 std::uint64_t seed);

} // namespace fermient::oracle
