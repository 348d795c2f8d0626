#include "fermient/analytic.hpp"

#include "fermient/error.hpp"
#include "fermient/fcs.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace fermient::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;

constexpr std::size_t kInitialGrid = std::size_t{1} << 12;
constexpr std::size_t kMaxGrid = std::size_t{1} << 22;
constexpr double kGridConvergence = 1e-6;
constexpr double kProbabilityCutoff = 1e-16;

std::optional<double> gaussian_entropy(double variance) {
    if (variance <= 0.0) return std::nullopt;
    return 0.5 * std::log(kTwoPiE * variance);
}

// FFTW's planner is not re-entrant.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwDeleter {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};

struct Inversion {
    double measurement_entropy;
    double negative_mass;
};

Inversion entropy_of_weights(const std::vector<double>& weights) {
    Inversion out{0.0, 0.0};
    double positive_total = 0.0;
    for (const double w : weights) {
        if (w < 0.0) out.negative_mass -= w;
        else positive_total += w;
    }
    for (const double w : weights) {
        const double q = w / positive_total;
        if (q >= kProbabilityCutoff) out.measurement_entropy -= q * std::log(q);
    }
    return out;
}

void check_transmission(double d) {
    if (!(d >= 0.0 && d <= 1.0)) throw InvalidInput("transmission D must lie in [0,1], got " + std::to_string(d));
}

} // namespace

double qpc_counting_angle(double transmission, double lambda) {
    check_transmission(transmission);
    const double reduced = std::remainder(lambda, 2.0 * kPi);
    const double arg = std::clamp(std::sqrt(transmission) * std::sin(0.5 * reduced), -1.0, 1.0);
    return 2.0 * std::asin(arg);
}

std::complex<double> qpc_switch_chi(const QpcSwitchParams& p, double lambda) {
    if (!(p.time_ratio > 1.0)) throw InvalidInput("time ratio dt/tau must exceed 1");
    const double angle = qpc_counting_angle(p.transmission, lambda);
    return std::exp(-angle * angle * std::log(p.time_ratio) / (2.0 * kPi * kPi));
}

std::vector<double> qpc_charge_weights(const QpcSwitchParams& p, std::size_t grid) {
    if (grid < 2 || grid % 2 != 0 || grid > kMaxGrid) throw InvalidInput("grid size must be even and at most 2^22");
    std::unique_ptr<fftw_complex[], FftwDeleter> buf(fftw_alloc_complex(grid));
    if (!buf) throw NumericalFailure("FFT buffer allocation failed");

    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(grid), buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    const double step = 2.0 * kPi / static_cast<double>(grid);
    for (std::size_t k = 0; k < grid; ++k) {
        const auto chi = qpc_switch_chi(p, -kPi + step * static_cast<double>(k));
        buf[k][0] = chi.real();
        buf[k][1] = chi.imag();
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }

    // p_n = (1/N) sum_k chi(lambda_k) e^{-i lambda_k n} = (-1)^n DFT(chi)_{n mod N} / N.
    const double inv_n = 1.0 / static_cast<double>(grid);
    const auto half = static_cast<std::int64_t>(grid / 2);
    std::vector<double> weights(grid);
    for (std::int64_t n = -half; n < half; ++n) {
        const auto j = static_cast<std::size_t>((n + static_cast<std::int64_t>(grid)) % static_cast<std::int64_t>(grid));
        if (std::abs(buf[j][1]) * inv_n > 1e-10)
            throw NumericalFailure("QPC inversion left an imaginary residue at n = " + std::to_string(n));
        weights[static_cast<std::size_t>(n + half)] = ((n & 1) ? -1.0 : 1.0) * buf[j][0] * inv_n;
    }
    return weights;
}

QpcSwitchReport qpc_switch_report(const QpcSwitchParams& p) {
    check_transmission(p.transmission);
    if (!(p.time_ratio > 1.0)) throw InvalidInput("time ratio dt/tau must exceed 1");

    const double c2 = p.transmission / (kPi * kPi) * std::log(p.time_ratio);
    const double s = kPi * kPi / 3.0 * c2;

    QpcSwitchReport out;
    if (p.transmission == 0.0) {
        out.report = assemble_report(0.0, 0.0, 0.0, 0.0);
        out.grid_points = 1;
        return out;
    }

    std::size_t n = kInitialGrid;
    Inversion prev = entropy_of_weights(qpc_charge_weights(p, n));
    for (;;) {
        if (2 * n > kMaxGrid)
            throw NumericalFailure("QPC Fourier inversion did not converge within " + std::to_string(kMaxGrid) +
                                   " grid points");
        const Inversion next = entropy_of_weights(qpc_charge_weights(p, 2 * n));
        n *= 2;
        const bool converged = std::abs(next.measurement_entropy - prev.measurement_entropy) < kGridConvergence;
        prev = next;
        if (converged) break;
    }
    // Mean transferred charge is zero for the symmetric switch.
    out.report = assemble_report(s, 0.0, c2, prev.measurement_entropy);
    out.gaussian_asymptote = gaussian_entropy(c2);
    out.negative_mass = prev.negative_mass;
    out.grid_points = n;
    return out;
}

std::vector<double> binomial_probabilities(std::int64_t attempts, double transmission) {
    if (attempts < 1) throw InvalidInput("number of attempts must be at least 1");
    check_transmission(transmission);
    const auto n_total = static_cast<std::size_t>(attempts);
    std::vector<double> p(n_total + 1, 0.0);
    if (transmission == 0.0) {
        p.front() = 1.0;
        return p;
    }
    if (transmission == 1.0) {
        p.back() = 1.0;
        return p;
    }
    const double big_n = static_cast<double>(attempts);
    for (std::size_t k = 0; k <= n_total; ++k) {
        const double kk = static_cast<double>(k);
        p[k] = std::exp(std::lgamma(big_n + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(big_n - kk + 1.0) +
                        kk * std::log(transmission) + (big_n - kk) * std::log1p(-transmission));
    }
    return p;
}

BinomialReport binomial_report(std::int64_t attempts, double transmission) {
    const auto p = binomial_probabilities(attempts, transmission);
    const double big_n = static_cast<double>(attempts);
    const double d = transmission;
    BinomialReport out;
    out.report = assemble_report(big_n * binary_entropy(d), big_n * d, big_n * d * (1.0 - d), shannon_entropy(p));
    out.asymptote = gaussian_entropy(d * (1.0 - d) * big_n);
    return out;
}

std::complex<double> luttinger_chi(double g, double kfl, double lambda) {
    if (!(g > 0.0)) throw InvalidInput("Luttinger parameter g must be positive");
    if (!(kfl >= 1.0)) throw InvalidInput("k_F L must be at least 1");
    using namespace std::complex_literals;
    return std::exp(1i * lambda * kfl / kPi - g * lambda * lambda / (4.0 * kPi) * std::log(kfl));
}

LuttingerReport luttinger_report(double g, double kfl) {
    if (!(g > 0.0)) throw InvalidInput("Luttinger parameter g must be positive");
    if (!(kfl >= 1.0)) throw InvalidInput("k_F L must be at least 1");
    const double c1 = kfl / kPi;
    const double c2 = g / (2.0 * kPi) * std::log(kfl);
    // Entropy of an integer variable with Gaussian statistics, finite at C_2 = 0.
    const double s_m = gaussian_bound(c2);
    LuttingerReport out;
    out.report = assemble_report(std::log(kfl) / 3.0, c1, c2, s_m);
    out.gaussian_asymptote = gaussian_entropy(c2);
    return out;
}

double WidomSpec::predicted_mean(double scale) const { return c1 * std::pow(scale, dimension); }

double WidomSpec::predicted_variance(double scale) const {
    return c2 * std::pow(scale, dimension - 1) * std::log(scale);
}

std::complex<double> WidomSpec::predicted_log_chi(double lambda, double scale) const {
    return {counting_u(lambda) * predicted_variance(scale), lambda * predicted_mean(scale)};
}

WidomSpec widom_coefficients(const Box& region, const Box& sea) {
    const auto d = region.extents.size();
    if (d != sea.extents.size()) throw InvalidInput("region and Fermi sea dimensions differ");
    if (d != 1 && d != 2) throw InvalidInput("only 1d intervals and 2d rectangles are supported");
    for (const double e : region.extents)
        if (!(e >= 0.0)) throw InvalidInput("region extents must be non-negative");
    for (const double e : sea.extents)
        if (!(e >= 0.0)) throw InvalidInput("Fermi sea extents must be non-negative");

    WidomSpec w;
    w.dimension = static_cast<int>(d);
    double vol_a = 1.0, vol_g = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
        vol_a *= region.extents[k];
        vol_g *= sea.extents[k];
    }
    w.c1 = vol_a * vol_g / std::pow(2.0 * kPi, static_cast<double>(d));
    if (vol_a == 0.0 || vol_g == 0.0) return w;

    // Only the pair of faces normal to the same axis contributes, with |n_x . n_p| = 1.
    double boundary = 0.0;
    for (std::size_t axis = 0; axis < d; ++axis) {
        double face_a = 1.0, face_g = 1.0;
        for (std::size_t k = 0; k < d; ++k)
            if (k != axis) {
                face_a *= region.extents[k];
                face_g *= sea.extents[k];
            }
        boundary += (2.0 * face_a) * (2.0 * face_g);
    }
    w.c2 = boundary / std::pow(2.0 * kPi, static_cast<double>(d + 1));
    return w;
}

double widom_u(const std::function<std::complex<double>(double)>& f) {
    if (std::abs(f(0.0)) > 1e-12) throw InvalidInput("U(f) requires f(0) = 0");
    const std::complex<double> f1 = f(1.0);
    const auto integrand = [&](double t) { return ((f(t) - t * f1) / (t * (1.0 - t))).real(); };
    return boost::math::quadrature::gauss<double, 256>::integrate(integrand, 0.0, 1.0);
}

std::function<std::complex<double>(double)> counting_function(double lambda) {
    if (!(std::abs(lambda) < kPi))
        throw InvalidInput("counting function needs |lambda| < pi (log branch cut at lambda = pi)");
    const std::complex<double> step = std::polar(1.0, lambda) - 1.0;
    return [step](double t) { return std::log(1.0 + t * step); };
}

} // namespace fermient::analytic
