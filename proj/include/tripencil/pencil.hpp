#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tripencil/scaled_value.hpp"

namespace tripencil {

/// Problem instance: the pencil H_{N;c} - lambda * D_{m,n;sigma,tau} with
/// tridiagonal H (diagonal c, off-diagonals 1) and diagonal D holding sigma
/// in the first m slots and tau in the remaining n.  The default weights
/// (sigma, tau) = (1, -1) give the signature matrix D_{m,n}.
struct PencilSpec {
    int m = 1;
    int n = 1;
    double c = 0.0;
    Complex sigma{1.0, 0.0};
    Complex tau{-1.0, 0.0};

    int size() const { return m + n; }

    bool default_weights() const {
        return sigma == Complex(1.0, 0.0) && tau == Complex(-1.0, 0.0);
    }

    void validate() const {
        if (m < 1 || n < 1)
            throw std::invalid_argument("PencilSpec: m and n must be >= 1");
        if (sigma == Complex(0.0, 0.0) || tau == Complex(0.0, 0.0))
            throw std::invalid_argument("PencilSpec: sigma and tau must be nonzero");
    }
};

/// k-th diagonal entry of H_{N;c} - lambda D, 1-based k.
Complex diag_entry(const PencilSpec& spec, int k, Complex lambda);

constexpr int kMaxDerivOrder = 6;

namespace detail {

/// Characteristic-polynomial continuant with derivatives.
///
/// d_k = a_k d_{k-1} - d_{k-2} with a_k = diag_entry(k, lambda) computes
/// det(H_{N;c} - lambda D) in O(N); differentiating j times (a_k is linear
/// in lambda) gives
///   d^(j)_k = a_k d^(j)_{k-1} + j a'_k d^(j-1)_{k-1} - d^(j)_{k-2}.
/// All orders are carried under one shared power-of-two exponent.  The pair
/// is renormalized whenever a mantissa magnitude leaves [2^-512, 2^512], so
/// the recurrence cannot overflow and ratios between orders are formed
/// without any exponent arithmetic.
template <typename Real>
struct ContinuantResult {
    std::array<std::complex<Real>, kMaxDerivOrder + 1> d{};
    std::int64_t exponent = 0;
    // Local residual scale at the shared exponent: the peak |d_k| over the
    // whole recurrence (the magnitude the evaluation would have without
    // cancellation), at least the magnitude entering the final step.
    Real local_scale = 0;
    int order = 0;
};

template <typename Real>
ContinuantResult<Real> continuant_derivs(int m, int n, Real c,
                                         std::complex<Real> sigma,
                                         std::complex<Real> tau,
                                         std::complex<Real> lambda, int order) {
    using C = std::complex<Real>;
    if (order < 0 || order > kMaxDerivOrder)
        throw std::invalid_argument("continuant_derivs: order out of range");
    const int N = m + n;

    std::array<C, kMaxDerivOrder + 1> prev{};  // d_{k-2}, starts at d_{-1} = 0
    std::array<C, kMaxDerivOrder + 1> cur{};   // d_{k-1}, starts at d_0 = 1
    cur[0] = C(1, 0);

    ContinuantResult<Real> out;
    out.order = order;

    const Real hi = std::ldexp(Real(1), 512);
    const Real lo = std::ldexp(Real(1), -512);

    Real peak = 1;  // |d_0|
    for (int k = 1; k <= N; ++k) {
        const C weight = (k <= m) ? sigma : tau;
        const C a = C(c, 0) - lambda * weight;
        const C ap = -weight;

        std::array<C, kMaxDerivOrder + 1> next{};
        next[0] = a * cur[0] - prev[0];
        for (int j = 1; j <= order; ++j)
            next[j] = a * cur[j] + Real(j) * ap * cur[j - 1] - prev[j];

        if (k == N)
            peak = std::max(peak, std::abs(a) * std::abs(cur[0]) + std::abs(prev[0]));

        prev = cur;
        cur = next;
        peak = std::max(peak, std::abs(cur[0]));

        Real mag = 0;
        for (int j = 0; j <= order; ++j) {
            mag = std::max(mag, std::abs(std::real(cur[j])));
            mag = std::max(mag, std::abs(std::imag(cur[j])));
            mag = std::max(mag, std::abs(std::real(prev[j])));
            mag = std::max(mag, std::abs(std::imag(prev[j])));
        }
        if (mag > hi || (mag > Real(0) && mag < lo)) {
            const int shift = std::ilogb(mag);
            for (int j = 0; j <= order; ++j) {
                cur[j] = C(std::ldexp(std::real(cur[j]), -shift),
                           std::ldexp(std::imag(cur[j]), -shift));
                prev[j] = C(std::ldexp(std::real(prev[j]), -shift),
                            std::ldexp(std::imag(prev[j]), -shift));
            }
            peak = std::ldexp(peak, -shift);
            out.exponent += shift;
        }
    }

    out.local_scale = peak;
    out.d = cur;
    return out;
}

}  // namespace detail

/// p(lambda) and derivatives p^(j), j = 0..order, under one shared
/// power-of-two exponent.
struct CharPolyDerivs {
    std::array<Complex, kMaxDerivOrder + 1> mantissa{};
    std::int64_t exponent = 0;
    int order = 0;
    double local_scale = 0;

    ScaledValue get(int j) const {
        return ScaledValue::normalized(mantissa.at(static_cast<std::size_t>(j)), exponent);
    }
    /// p^(num) / p^(den); the shared exponent cancels identically.
    Complex ratio(int num, int den) const {
        return mantissa.at(static_cast<std::size_t>(num)) /
               mantissa.at(static_cast<std::size_t>(den));
    }
    /// |p| relative to the magnitude entering the final recurrence step.
    double residual() const {
        if (local_scale == 0.0) return std::abs(mantissa[0]);
        return std::abs(mantissa[0]) / local_scale;
    }
};

/// p(lambda) = det(H_{N;c} - lambda D) with derivatives to the given order.
CharPolyDerivs charpoly_derivatives(const PencilSpec& spec, Complex lambda, int order);

/// Same evaluation carried out in 80-bit long double and rounded on return.
/// Serves as the higher-precision mode for large N and as the reference for
/// measuring double-precision evaluation noise.
CharPolyDerivs charpoly_derivatives_ext(const PencilSpec& spec, Complex lambda, int order);

struct CharPolyEval {
    ScaledValue value;       // p(lambda)
    ScaledValue derivative;  // p'(lambda)
    Complex newton_ratio;    // p/p' with exponents cancelled exactly
};

CharPolyEval charpoly_eval(const PencilSpec& spec, Complex lambda);

/// Spectrum of H_{N;c}: c + 2 cos(pi j/(N+1)), j = 1..N, descending.
std::vector<double> h_eigenvalues(int N, double c);

/// delta_{N;c} = min_j |c - 2 cos(pi j/(N+1))|, the distance from the pencil
/// spectrum to 0 guaranteed by the resolvent bound.
double spectral_gap_at_zero(int N, double c);

/// q_mm(lambda) = det(H_mm - lambda I), the free tridiagonal characteristic
/// polynomial used by the n = m+1 factorisation.
ScaledValue h_charpoly(int mm, Complex lambda);

/// (trace, det) of D^{-1} H_{N;c}: trace = c (m/sigma + n/tau) and
/// det = p(0) / (sigma^m tau^n).  For the default weights these are
/// c (m - n) and (-1)^n p(0).
std::pair<Complex, ScaledValue> trace_and_det(const PencilSpec& spec);

}  // namespace tripencil
