#include "fermient/spectrum.hpp"

#include "fermient/error.hpp"
#include "fermient/fcs.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace fermient {

OccupationSpectrum::OccupationSpectrum(std::vector<double> values) : values_(std::move(values)) {
    for (auto& v : values_) {
        if (!(v >= -kSpectrumClipTolerance && v <= 1.0 + kSpectrumClipTolerance))
            throw NumericalFailure("occupation eigenvalue " + std::to_string(v) +
                                   " outside [0,1]: invalid correlation matrix");
        v = std::clamp(v, 0.0, 1.0);
    }
    std::sort(values_.begin(), values_.end(), std::greater<>());
}

OccupationSpectrum OccupationSpectrum::merged(const OccupationSpectrum& other) const {
    std::vector<double> all(values_);
    all.insert(all.end(), other.values_.begin(), other.values_.end());
    return OccupationSpectrum(std::move(all));
}

OccupationSpectrum occupation_spectrum(const CorrelationMatrix& c) {
    Eigen::VectorXd eig;
    if (c.is_real()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c.entries().real(), Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");
        eig = solver.eigenvalues();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(c.entries(), Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");
        eig = solver.eigenvalues();
    }
    return OccupationSpectrum(std::vector<double>(eig.data(), eig.data() + eig.size()));
}

double binary_entropy(double nu) noexcept {
    if (nu <= 0.0 || nu >= 1.0) return 0.0;
    return -nu * std::log(nu) - (1.0 - nu) * std::log1p(-nu);
}

double entropy_from_spectrum(const OccupationSpectrum& s) noexcept {
    double total = 0.0;
    for (const double nu : s.values()) total += binary_entropy(nu);
    return total;
}

Cumulants cumulants(const OccupationSpectrum& s) noexcept {
    Cumulants out{0.0, 0.0};
    for (const double nu : s.values()) {
        out.mean += nu;
        out.variance += nu * (1.0 - nu);
    }
    return out;
}

bool variance_bound_holds(double s_a, double c2) noexcept {
    const double rhs = 4.0 * std::numbers::ln2 * c2;
    return s_a >= rhs - 1e-12 * std::max(1.0, rhs);
}

EntropyReport assemble_report(double s_a, double c1, double c2, double s_m) {
    EntropyReport r;
    r.s_a = s_a;
    r.c1 = c1;
    r.c2 = c2;
    r.s_m = s_m;
    const auto acc = accessible_entropy(s_a, s_m);
    r.s_res = acc.value;
    r.negative_accessible = acc.negative;
    r.delta_s = gaussian_bound(c2);
    r.bound_gaussian_ok = s_m <= r.delta_s;
    r.bound_variance_ok = variance_bound_holds(s_a, c2);
    return r;
}

EntropyReport report(const OccupationSpectrum& s) {
    const auto k = cumulants(s);
    const double s_m = measurement_entropy(charge_distribution(s));
    return assemble_report(entropy_from_spectrum(s), k.mean, k.variance, s_m);
}

EntropyReport report(const CorrelationMatrix& c) { return report(occupation_spectrum(c)); }

} // namespace fermient
