#include "fermient/oracle.hpp"

#include "fermient/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace fermient::oracle {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kGramTolerance = 1e-12;
constexpr double kLeakageTolerance = 1e-12;
constexpr double kSectorWeightFloor = 1e-14;

void check_mode_count(int n_modes) {
    if (n_modes < 1 || n_modes > kMaxModes)
        throw InvalidInput("mode count must lie in [1, " + std::to_string(kMaxModes) + "], got " +
                           std::to_string(n_modes));
}

int parity_below(std::uint32_t bits, int mode) {
    return std::popcount(bits & ((std::uint32_t{1} << mode) - 1u)) & 1;
}

double sign_of(int parity) { return parity ? -1.0 : 1.0; }

double vn_entropy_of_eigenvalues(const Eigen::VectorXd& eig) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < eig.size(); ++k)
        if (eig[k] > 0.0) s -= eig[k] * std::log(eig[k]);
    return s;
}

} // namespace

FockState::FockState(int n_modes, Amplitudes amplitudes, std::optional<int> fixed_n)
    : n_modes_(n_modes), amplitudes_(std::move(amplitudes)), fixed_n_(fixed_n) {
    check_mode_count(n_modes_);
    if (amplitudes_.size() != (std::size_t{1} << n_modes_))
        throw InvalidInput("amplitude vector must have length 2^n_modes");
    double norm2 = 0.0;
    for (const auto& a : amplitudes_) norm2 += std::norm(a);
    if (std::abs(std::sqrt(norm2) - 1.0) > kNormTolerance)
        throw InvalidInput("state is not normalized (norm = " + std::to_string(std::sqrt(norm2)) + ")");
    if (fixed_n_) {
        if (*fixed_n_ < 0 || *fixed_n_ > n_modes_) throw InvalidInput("fixed_N outside [0, n_modes]");
        for (std::uint32_t b = 0; b < amplitudes_.size(); ++b)
            if (std::popcount(b) != *fixed_n_ && amplitudes_[b] != 0.0)
                throw InvalidInput("amplitude outside the fixed-N shell");
    }
}

FockState slater_state(const Eigen::MatrixXcd& orbitals) {
    const auto m = static_cast<int>(orbitals.rows());
    const auto n = static_cast<int>(orbitals.cols());
    check_mode_count(m);
    if (n > m) throw InvalidInput("more orbitals than modes");

    const double gram = n == 0 ? 1.0 : (orbitals.adjoint() * orbitals).determinant().real();
    if (!(gram >= kGramTolerance))
        throw InvalidInput("orbitals are linearly dependent (Gram determinant " + std::to_string(gram) + ")");
    const double scale = 1.0 / std::sqrt(gram);

    Amplitudes amps(std::size_t{1} << m, 0.0);
    Eigen::MatrixXcd minor(n, n);
    for (std::uint32_t b = 0; b < amps.size(); ++b) {
        if (std::popcount(b) != n) continue;
        // Rows of the occupied modes, ascending.
        int row = 0;
        for (int j = 0; j < m; ++j)
            if (b >> j & 1u) minor.row(row++) = orbitals.row(j);
        amps[b] = (n == 0 ? std::complex<double>(1.0) : minor.determinant()) * scale;
    }
    return FockState(m, std::move(amps), n);
}

Amplitudes apply_creation(const Amplitudes& amplitudes, int n_modes, const Eigen::VectorXcd& orbital) {
    check_mode_count(n_modes);
    if (orbital.size() != n_modes) throw InvalidInput("orbital length must equal the mode count");
    Amplitudes out(amplitudes.size(), 0.0);
    for (std::uint32_t b = 0; b < amplitudes.size(); ++b) {
        if (amplitudes[b] == 0.0) continue;
        for (int j = 0; j < n_modes; ++j) {
            if (b >> j & 1u) continue;
            out[b | (1u << j)] += sign_of(parity_below(b, j)) * orbital[j] * amplitudes[b];
        }
    }
    return out;
}

FockState permute_modes(const FockState& state, std::span<const int> perm) {
    const int m = state.n_modes();
    if (static_cast<int>(perm.size()) != m) throw InvalidInput("permutation length must equal the mode count");
    std::vector<int> check(perm.begin(), perm.end());
    std::sort(check.begin(), check.end());
    for (int j = 0; j < m; ++j)
        if (check[j] != j) throw InvalidInput("not a permutation of the modes");

    Amplitudes out(state.amplitudes().size(), 0.0);
    std::vector<int> targets;
    for (std::uint32_t b = 0; b < out.size(); ++b) {
        targets.clear();
        std::uint32_t image = 0;
        for (int j = 0; j < m; ++j)
            if (b >> j & 1u) {
                targets.push_back(perm[j]);
                image |= 1u << perm[j];
            }
        int inversions = 0;
        for (std::size_t x = 0; x < targets.size(); ++x)
            for (std::size_t y = x + 1; y < targets.size(); ++y) inversions += targets[x] > targets[y];
        out[image] = sign_of(inversions & 1) * state[b];
    }
    return FockState(m, std::move(out), state.fixed_n());
}

Eigen::MatrixXcd one_body_correlation(const FockState& state) {
    const int m = state.n_modes();
    const auto& amps = state.amplitudes();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(m, m);
    for (std::uint32_t b = 0; b < amps.size(); ++b) {
        if (amps[b] == 0.0) continue;
        for (int i = 0; i < m; ++i) {
            if (!(b >> i & 1u)) continue;
            const std::uint32_t removed = b & ~(1u << i);
            const double s_i = sign_of(parity_below(b, i));
            for (int j = 0; j < m; ++j) {
                if (removed >> j & 1u) continue;
                const std::uint32_t target = removed | (1u << j);
                const double s_j = sign_of(parity_below(removed, j));
                // <psi| a_j^dag a_i |psi>
                c(i, j) += std::conj(amps[target]) * s_i * s_j * amps[b];
            }
        }
    }
    return c;
}

DensityMatrix reduced_density_matrix(const FockState& state, int m_a) {
    const int m = state.n_modes();
    if (m_a < 1 || m_a >= m) throw InvalidInput("region size must lie in [1, n_modes - 1]");
    if (m_a > kMaxRegionModes)
        throw InvalidInput("region of " + std::to_string(m_a) + " modes exceeds the dense limit");
    const Eigen::Index dim_a = Eigen::Index{1} << m_a;
    const Eigen::Index dim_b = Eigen::Index{1} << (m - m_a);
    // psi(a, b) with the A index varying fastest.
    const Eigen::Map<const Eigen::MatrixXcd> psi(state.amplitudes().data(), dim_a, dim_b);
    return psi * psi.adjoint();
}

DensityMatrix reduced_density_matrix(const FockState& state, std::span<const int> region_modes) {
    std::vector<int> modes(region_modes.begin(), region_modes.end());
    std::sort(modes.begin(), modes.end());
    for (std::size_t k = 0; k < modes.size(); ++k)
        if (modes[k] != static_cast<int>(k))
            throw InvalidInput("region must be the contiguous low modes 0..m_A-1; permute the state first");
    return reduced_density_matrix(state, static_cast<int>(modes.size()));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");
    return vn_entropy_of_eigenvalues(solver.eigenvalues());
}

SectorDecomposition sector_decomposition(const DensityMatrix& rho_a, int fixed_n) {
    const Eigen::Index dim = rho_a.rows();
    if (dim != rho_a.cols() || dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim)))
        throw InvalidInput("density matrix dimension must be a power of two");
    const int m_a = std::countr_zero(static_cast<std::uint64_t>(dim));

    std::vector<std::vector<Eigen::Index>> sectors(m_a + 1);
    for (Eigen::Index b = 0; b < dim; ++b) sectors[std::popcount(static_cast<std::uint64_t>(b))].push_back(b);

    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
            if (std::popcount(static_cast<std::uint64_t>(r)) != std::popcount(static_cast<std::uint64_t>(c)) &&
                std::abs(rho_a(r, c)) > kLeakageTolerance)
                throw NumericalFailure("reduced density matrix mixes particle-number sectors: "
                                       "state is not number conserving");

    SectorDecomposition dec{fixed_n, std::vector<double>(m_a + 1, 0.0),
                            std::vector<std::optional<double>>(m_a + 1)};
    for (int n = 0; n <= m_a; ++n) {
        const auto& idx = sectors[n];
        const auto size = static_cast<Eigen::Index>(idx.size());
        Eigen::MatrixXcd block(size, size);
        for (Eigen::Index r = 0; r < size; ++r)
            for (Eigen::Index c = 0; c < size; ++c) block(r, c) = rho_a(idx[r], idx[c]);
        const double weight = block.trace().real();
        if (n > fixed_n && weight > kLeakageTolerance)
            throw NumericalFailure("weight on more particles than the global N");
        dec.probabilities[n] = std::max(weight, 0.0);
        if (weight > kSectorWeightFloor) dec.sector_entropies[n] = von_neumann_entropy(block / weight);
    }
    return dec;
}

double accessible_entropy_direct(const SectorDecomposition& dec) {
    double s = 0.0;
    for (std::size_t n = 0; n < dec.probabilities.size(); ++n)
        if (dec.sector_entropies[n]) s += dec.probabilities[n] * *dec.sector_entropies[n];
    return s;
}

Eigen::MatrixXd joint_number_distribution(const FockState& state, int m_a) {
    const int m = state.n_modes();
    if (m_a < 0 || m_a > m) throw InvalidInput("region size outside [0, n_modes]");
    Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(m_a + 1, m - m_a + 1);
    const std::uint32_t low = (1u << m_a) - 1u;
    for (std::uint32_t b = 0; b < state.amplitudes().size(); ++b)
        joint(std::popcount(b & low), std::popcount(b & ~low)) += std::norm(state[b]);
    return joint;
}

Eigen::MatrixXcd random_orbitals(int n_modes, int n_particles, std::mt19937_64& rng) {
    check_mode_count(n_modes);
    if (n_particles < 0 || n_particles > n_modes) throw InvalidInput("particle count outside [0, n_modes]");
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd z(n_modes, n_modes);
    for (Eigen::Index i = 0; i < z.rows(); ++i)
        for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = {gauss(rng), gauss(rng)};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    // Fix the phases of R's diagonal so Q is Haar distributed.
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const auto d = r(k, k);
        if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
    }
    return q.leftCols(n_particles);
}

FockState random_fixed_n_state(int n_modes, int n_particles, std::mt19937_64& rng) {
    check_mode_count(n_modes);
    if (n_particles < 0 || n_particles > n_modes) throw InvalidInput("particle count outside [0, n_modes]");
    std::normal_distribution<double> gauss;
    Amplitudes amps(std::size_t{1} << n_modes, 0.0);
    double norm2 = 0.0;
    for (std::uint32_t b = 0; b < amps.size(); ++b) {
        if (std::popcount(b) != n_particles) continue;
        amps[b] = {gauss(rng), gauss(rng)};
        norm2 += std::norm(amps[b]);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= scale;
    return FockState(n_modes, std::move(amps), n_particles);
}

OracleEntropies oracle_entropies(const FockState& state, int m_a) {
    if (!state.fixed_n()) throw InvalidInput("oracle entropies need a fixed-N state");
    const auto rho = reduced_density_matrix(state, m_a);
    const auto dec = sector_decomposition(rho, *state.fixed_n());
    return {von_neumann_entropy(rho), shannon_entropy(dec.probabilities), accessible_entropy_direct(dec),
            dec.probabilities};
}

IdentityCheckResult identity_check(int n_modes, int trials, int generic_trials, std::uint64_t seed) {
    check_mode_count(n_modes);
    if (n_modes < 2) throw InvalidInput("identity check needs at least two modes");
    if (trials < 0 || generic_trials < 0) throw InvalidInput("trial counts must be non-negative");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_n(1, n_modes - 1);
    std::uniform_int_distribution<int> pick_region(1, std::min(n_modes - 1, kMaxRegionModes));
    IdentityCheckResult out;

    const auto tally = [&](const OracleEntropies& e, double c2) {
        out.max_identity_error = std::max(out.max_identity_error, std::abs(e.s_res_direct - (e.s_a - e.s_m)));
        const double ds = gaussian_bound(c2);
        if (!(e.s_res_direct <= e.s_a + 1e-12 && e.s_res_direct >= e.s_a - ds - 1e-12)) ++out.sandwich_violations;
    };

    for (int t = 0; t < trials; ++t) {
        const int n = pick_n(rng);
        const int m_a = pick_region(rng);
        const auto orbitals = random_orbitals(n_modes, n, rng);
        const auto state = slater_state(orbitals);
        const auto e = oracle_entropies(state, m_a);

        const Eigen::MatrixXcd c_full = orbitals * orbitals.adjoint();
        const CorrelationMatrix c_a(c_full.topLeftCorner(m_a, m_a));
        const auto spec = occupation_spectrum(c_a);
        const auto rep = report(spec);
        const auto dist = charge_distribution(spec);
        double err = std::max(std::abs(rep.s_a - e.s_a), std::abs(rep.s_m - e.s_m));
        for (std::size_t k = 0; k < dist.size(); ++k) err = std::max(err, std::abs(dist[k] - e.probabilities[k]));
        out.max_spectral_error = std::max(out.max_spectral_error, err);
        if (!rep.bound_variance_ok) ++out.variance_bound_violations;
        tally(e, rep.c2);
        ++out.slater_trials;
    }
    for (int t = 0; t < generic_trials; ++t) {
        const int n = pick_n(rng);
        const int m_a = pick_region(rng);
        const auto state = random_fixed_n_state(n_modes, n, rng);
        const auto e = oracle_entropies(state, m_a);
        double mean = 0.0, second = 0.0;
        for (std::size_t k = 0; k < e.probabilities.size(); ++k) {
            mean += static_cast<double>(k) * e.probabilities[k];
            second += static_cast<double>(k * k) * e.probabilities[k];
        }
        tally(e, std::max(second - mean * mean, 0.0));
        ++out.generic_trials;
    }
    return out;
}

} // namespace fermient::oracle
