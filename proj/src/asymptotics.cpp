#include "tripencil/asymptotics.hpp"

#include <cmath>
#include <limits>

namespace tripencil {

double envelope_c0(double u) {
    if (!(u > 0.0)) throw std::domain_error("envelope_c0: diverges as u -> 0");
    if (!(u < 2.0)) throw std::domain_error("envelope_c0: domain is (0, 2)");
    const double root = std::sqrt((2.0 - u) * (2.0 + u));
    return root * std::atanh(0.5 * root);
}

std::vector<double> real_part_grid(int mm) {
    if (mm < 2) throw std::invalid_argument("real_part_grid: requires m >= 2");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(mm / 2));
    for (int k = 1; k <= mm / 2; ++k)
        grid.push_back(2.0 * std::cos(2.0 * std::numbers::pi * k / (2.0 * mm + 1.0)));
    return grid;
}

double imag_pair_estimate(int mm) {
    if (mm < 1) throw std::invalid_argument("imag_pair_estimate: m must be >= 1");
    if (mm % 2 == 0)
        throw std::domain_error("imag_pair_estimate: even m has no imaginary pair");
    return std::log(static_cast<double>(mm)) / static_cast<double>(mm);
}

double imag_bound_estimate(int mm, int nn) {
    if (mm < 2 || nn < 2) throw std::invalid_argument("imag_bound_estimate: m, n must be >= 2");
    return std::max(std::log(static_cast<double>(mm)) / mm,
                    std::log(static_cast<double>(nn)) / nn);
}

CircleParams apollonius_circle(Complex xi, double kappa) {
    if (xi == Complex(0.0, 0.0)) throw std::invalid_argument("apollonius_circle: xi != 0");
    if (!(kappa > 0.0)) throw std::invalid_argument("apollonius_circle: kappa > 0");
    if (kappa == 1.0) throw std::domain_error("apollonius_circle: kappa = 1 gives a line");
    const double kk = kappa - 1.0 / kappa;
    CircleParams out;
    out.center = (kappa * xi - 1.0 / (kappa * xi)) / kk;
    out.radius = std::abs(xi - 1.0 / xi) / std::abs(kk);
    return out;
}

namespace {

void check_cu_domain(double c, double u) {
    if (!(c > 0.0 && c < 2.0))
        throw std::domain_error("envelope: c must be in (0, 2)");
    if (!(u > 0.0 && u < 2.0 - c))
        throw std::domain_error("envelope: u must be in (0, 2-c)");
}

}  // namespace

double envelope_transfer(double c, double u, double v) {
    check_cu_domain(c, u);
    if (!(v > 0.0)) throw std::domain_error("envelope_transfer: v must be > 0");
    const double sm = std::sqrt(4.0 - (u - c) * (u - c));
    const double sp = std::sqrt(4.0 - (u + c) * (u + c));
    return std::tanh(v / (2.0 * sm)) * std::tanh(v / (2.0 * sp));
}

double envelope_c(double c, double u) {
    check_cu_domain(c, u);
    const double target = std::tan(0.5 * std::acos((u - c) / 2.0)) *
                          std::tan(0.5 * std::acos((u + c) / 2.0));
    double hi = 1.0;
    while (envelope_transfer(c, u, hi) < target) {
        hi *= 2.0;
        if (hi > 1024.0) return std::numeric_limits<double>::infinity();
    }
    double lo = 0.0;
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (envelope_transfer(c, u, mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Both forms carry a ~1e-14 relative slack at the tangency boundary: the
// trigonometric inputs themselves are rounded, so separations below that
// scale are not decidable and the closed condition (<=) wins the tie.
bool circles_intersect_metric(double theta, double phi, double s0, double t0) {
    const Complex a1{std::cos(theta), std::sin(theta) / std::tanh(2.0 * s0)};
    const double r1 = std::sin(theta) / std::sinh(2.0 * s0);
    const Complex a2{-std::cos(phi), std::sin(phi) / std::tanh(2.0 * t0)};
    const double r2 = std::sin(phi) / std::sinh(2.0 * t0);
    const double slack = 1e-14 * (std::abs(a1) + std::abs(a2) + 1.0);
    return std::abs(a1 - a2) <= r1 + r2 + slack;
}

bool circles_intersect_reduced(double theta, double phi, double s0, double t0) {
    const double rhs = std::tan(0.5 * theta) * std::tan(0.5 * phi);
    return std::tanh(s0) * std::tanh(t0) <= rhs + 1e-14 * (1.0 + rhs);
}

bool intersect_condition(double theta, double phi, double s0, double t0) {
    return circles_intersect_metric(theta, phi, s0, t0);
}

std::vector<CurveSample> sample_envelope(double c, int samples) {
    if (c < 0.0) throw std::invalid_argument("sample_envelope: c must be >= 0");
    if (c >= 2.0) throw std::domain_error("sample_envelope: no non-real spectrum for c >= 2");
    if (samples < 2) throw std::invalid_argument("sample_envelope: need at least 2 samples");
    const double trim = 1e-6;
    const double lo = trim;
    const double hi = (2.0 - c) - trim;
    std::vector<CurveSample> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double u = lo + (hi - lo) * i / (samples - 1);
        out.push_back({u, c == 0.0 ? envelope_c0(u) : envelope_c(c, u)});
    }
    return out;
}

}  // namespace tripencil
