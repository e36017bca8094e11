#include "tripencil/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tripencil {

Complex diag_entry(const PencilSpec& spec, int k, Complex lambda) {
    spec.validate();
    if (k < 1 || k > spec.size())
        throw std::out_of_range("diag_entry: k outside 1..N");
    const Complex weight = (k <= spec.m) ? spec.sigma : spec.tau;
    return Complex(spec.c, 0.0) - lambda * weight;
}

namespace {

template <typename Real>
CharPolyDerivs run_continuant(const PencilSpec& spec, Complex lambda, int order) {
    spec.validate();
    using C = std::complex<Real>;
    const auto res = detail::continuant_derivs<Real>(
        spec.m, spec.n, Real(spec.c),
        C(Real(spec.sigma.real()), Real(spec.sigma.imag())),
        C(Real(spec.tau.real()), Real(spec.tau.imag())),
        C(Real(lambda.real()), Real(lambda.imag())), order);
    CharPolyDerivs out;
    out.exponent = res.exponent;
    out.order = order;
    out.local_scale = static_cast<double>(res.local_scale);
    for (int j = 0; j <= order; ++j)
        out.mantissa[static_cast<std::size_t>(j)] =
            Complex(static_cast<double>(std::real(res.d[static_cast<std::size_t>(j)])),
                    static_cast<double>(std::imag(res.d[static_cast<std::size_t>(j)])));
    return out;
}

}  // namespace

CharPolyDerivs charpoly_derivatives(const PencilSpec& spec, Complex lambda, int order) {
    return run_continuant<double>(spec, lambda, order);
}

CharPolyDerivs charpoly_derivatives_ext(const PencilSpec& spec, Complex lambda, int order) {
    return run_continuant<long double>(spec, lambda, order);
}

CharPolyEval charpoly_eval(const PencilSpec& spec, Complex lambda) {
    const CharPolyDerivs d = charpoly_derivatives(spec, lambda, 1);
    CharPolyEval out;
    out.value = d.get(0);
    out.derivative = d.get(1);
    out.newton_ratio = (d.mantissa[1] == Complex(0.0, 0.0))
                           ? Complex(std::numeric_limits<double>::infinity(), 0.0)
                           : d.ratio(0, 1);
    return out;
}

std::vector<double> h_eigenvalues(int N, double c) {
    if (N < 1) throw std::invalid_argument("h_eigenvalues: N must be >= 1");
    std::vector<double> mu(static_cast<std::size_t>(N));
    for (int j = 1; j <= N; ++j)
        mu[static_cast<std::size_t>(j - 1)] =
            c + 2.0 * std::cos(std::numbers::pi * j / (N + 1));
    return mu;  // cos is decreasing in j, so this is already descending
}

double spectral_gap_at_zero(int N, double c) {
    if (N < 1) throw std::invalid_argument("spectral_gap_at_zero: N must be >= 1");
    double best = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= N; ++j)
        best = std::min(best, std::abs(c - 2.0 * std::cos(std::numbers::pi * j / (N + 1))));
    return best;
}

ScaledValue h_charpoly(int mm, Complex lambda) {
    if (mm < 1) throw std::invalid_argument("h_charpoly: matrix size must be >= 1");
    const auto res = detail::continuant_derivs<double>(mm, 0, 0.0, {1.0, 0.0}, {1.0, 0.0},
                                                       lambda, 0);
    return ScaledValue::normalized(res.d[0], res.exponent);
}

std::pair<Complex, ScaledValue> trace_and_det(const PencilSpec& spec) {
    spec.validate();
    const Complex trace =
        spec.c * (static_cast<double>(spec.m) / spec.sigma + static_cast<double>(spec.n) / spec.tau);
    const ScaledValue p0 = charpoly_eval(spec, {0.0, 0.0}).value;
    const ScaledValue weight_det =
        scaled_mul(scaled_pow(spec.sigma, spec.m), scaled_pow(spec.tau, spec.n));
    return {trace, scaled_div(p0, weight_det)};
}

}  // namespace tripencil
