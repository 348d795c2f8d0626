#include "fermient/kernel.hpp"

#include "fermient/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace fermient {

RegionSpec::RegionSpec(int dimension, std::vector<Site> sites, std::int64_t scale)
    : dimension_(dimension), sites_(std::move(sites)), scale_(scale) {
    if (dimension_ != 1 && dimension_ != 2)
        throw InvalidInput("region dimension must be 1 or 2, got " + std::to_string(dimension_));
    if (sites_.empty()) throw InvalidInput("region has no sites");
    if (scale_ <= 0) throw InvalidInput("region scale must be positive");
    if (dimension_ == 1 &&
        std::any_of(sites_.begin(), sites_.end(), [](const Site& s) { return s[1] != 0; }))
        throw InvalidInput("1d region sites must have a zero second coordinate");
    std::set<Site> seen(sites_.begin(), sites_.end());
    if (seen.size() != sites_.size()) throw InvalidInput("region sites are not distinct");
}

RegionSpec RegionSpec::interval(std::int64_t length) {
    if (length <= 0) throw InvalidInput("interval length must be positive");
    std::vector<Site> sites;
    sites.reserve(static_cast<std::size_t>(length));
    for (std::int64_t x = 0; x < length; ++x) sites.push_back({x, 0});
    return RegionSpec(1, std::move(sites), length);
}

RegionSpec RegionSpec::square(std::int64_t side) {
    if (side <= 0) throw InvalidInput("square side must be positive");
    std::vector<Site> sites;
    sites.reserve(static_cast<std::size_t>(side * side));
    for (std::int64_t y = 0; y < side; ++y)
        for (std::int64_t x = 0; x < side; ++x) sites.push_back({x, y});
    return RegionSpec(2, std::move(sites), side);
}

CorrelationMatrix::CorrelationMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw InvalidInput("correlation matrix must be square");
    if (entries_.rows() == 0) throw InvalidInput("correlation matrix is empty");
    const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym < kHermitianTolerance))
        throw InvalidInput("correlation matrix is not Hermitian (max |C - C^dag| = " +
                           std::to_string(asym) + ")");
    real_ = entries_.imag().cwiseAbs().maxCoeff() == 0.0;
}

namespace {

void check_fermi_momentum(double k_fermi) {
    if (!(k_fermi > 0.0 && k_fermi <= std::numbers::pi))
        throw InvalidInput("k_F must lie in (0, pi], got " + std::to_string(k_fermi));
}

} // namespace

double sine_kernel_value(double k_fermi, std::int64_t displacement) {
    if (displacement == 0) return k_fermi / std::numbers::pi;
    const auto r = static_cast<double>(displacement);
    return std::sin(k_fermi * r) / (std::numbers::pi * r);
}

CorrelationMatrix sine_kernel_1d(const RegionSpec& region, double k_fermi) {
    if (region.dimension() != 1) throw InvalidInput("sine_kernel_1d needs a 1d region");
    check_fermi_momentum(k_fermi);
    const auto& sites = region.sites();
    const auto m = static_cast<Eigen::Index>(sites.size());
    Eigen::MatrixXcd c(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = sine_kernel_value(k_fermi, sites[i][0] - sites[j][0]);
            c(i, j) = v;
            c(j, i) = v;
        }
    return CorrelationMatrix(std::move(c));
}

CorrelationMatrix square_sea_2d(const RegionSpec& region, double k_fermi) {
    if (region.dimension() != 2) throw InvalidInput("square_sea_2d needs a 2d region");
    check_fermi_momentum(k_fermi);
    const auto& sites = region.sites();
    const auto m = static_cast<Eigen::Index>(sites.size());
    Eigen::MatrixXcd c(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = sine_kernel_value(k_fermi, sites[i][0] - sites[j][0]) *
                             sine_kernel_value(k_fermi, sites[i][1] - sites[j][1]);
            c(i, j) = v;
            c(j, i) = v;
        }
    return CorrelationMatrix(std::move(c));
}

std::vector<std::int64_t> ring_filling_order(std::int64_t n_sites, std::int64_t n_filled) {
    if (n_sites <= 0) throw InvalidInput("ring must have at least one site");
    if (n_filled < 0 || n_filled > n_sites)
        throw InvalidInput("n_filled must lie in [0, n_sites]");
    std::vector<std::int64_t> order;
    order.reserve(static_cast<std::size_t>(n_filled));
    if (n_filled > 0) order.push_back(0);
    // Momenta q and -q are distinct modes for 0 < q < n/2; q = n/2 is a single mode.
    for (std::int64_t q = 1; static_cast<std::int64_t>(order.size()) < n_filled; ++q) {
        order.push_back(q);
        if (static_cast<std::int64_t>(order.size()) < n_filled && 2 * q != n_sites)
            order.push_back(-q);
    }
    return order;
}

CorrelationMatrix finite_ring(std::int64_t n_sites, std::int64_t n_filled, const RegionSpec& region) {
    const auto momenta = ring_filling_order(n_sites, n_filled);
    if (region.dimension() != 1) throw InvalidInput("finite_ring needs a 1d region");
    for (const auto& s : region.sites())
        if (s[0] < 0 || s[0] >= n_sites) throw InvalidInput("region site outside the ring");

    const auto& sites = region.sites();
    const auto m = static_cast<Eigen::Index>(sites.size());
    const double inv_n = 1.0 / static_cast<double>(n_sites);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            const std::int64_t r = sites[i][0] - sites[j][0];
            std::complex<double> sum = 0.0;
            for (const auto q : momenta) {
                // Reduce q*r modulo n before forming the phase.
                const std::int64_t winding = ((q * r) % n_sites + n_sites) % n_sites;
                sum += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(winding) * inv_n);
            }
            c(i, j) = sum * inv_n;
            c(j, i) = std::conj(c(i, j));
        }
        c(i, i) = static_cast<double>(n_filled) * inv_n;
    }
    return CorrelationMatrix(std::move(c));
}

CorrelationMatrix correlation_matrix(const FermiSeaSpec& sea, const RegionSpec& region) {
    return std::visit(
        [&](const auto& s) -> CorrelationMatrix {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SineKernel1D>) return sine_kernel_1d(region, s.k_fermi);
            else if constexpr (std::is_same_v<T, SquareSea2D>) return square_sea_2d(region, s.k_fermi);
            else return finite_ring(s.n_sites, s.n_filled, region);
        },
        sea);
}

} // namespace fermient
