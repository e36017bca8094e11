#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tripencil/pencil.hpp"
#include "tripencil/rootfinder.hpp"

namespace tripencil {

struct CheckResult {
    std::string name;
    bool passed = false;
    double metric = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// passed is derived: metric <= tolerance.
CheckResult make_check(std::string name, double metric, double tolerance, std::string detail);

struct VerificationReport {
    PencilSpec spec;
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

/// Dense N x N (row-major) H_{N;c} - lambda D for the brute-force oracle.
std::vector<Complex> dense_pencil_matrix(const PencilSpec& spec, Complex lambda);

/// Dense H_{N;0} - D_{m,n;sigma,tau}; m or n may be zero here.
std::vector<Complex> dense_shifted_matrix(int m, int n, Complex sigma, Complex tau);

/// Determinant by cofactor expansion along the first row.  Exponential-cost
/// oracle, intended for N <= 8; independent of the continuant code path.
Complex cofactor_determinant(const std::vector<Complex>& a, int n);

/// Eigenvalue localisation: |lambda| < 2+|c|, closure under conjugation,
/// and (only when |c| >= 2) reality of the whole spectrum.
std::vector<CheckResult> check_localisation(const Spectrum& sp, const SolverOptions& opts = {});

/// det(H_{N;0} - D_{m,n;sigma,tau}) against the gamma/(z-1/z)(w-1/w) closed
/// form for all shapes m+n <= max_N at `trials` pseudo-random (z, w) per
/// shape (fixed seed; fully deterministic).
CheckResult check_det_identity(int max_N, int trials);

/// beta_{m,n}(z,w) = 0 and F_m(z) F_n(w) = -1 residuals at the computed
/// eigenvalues, skipping a 1e-3 margin around the degenerate points +-2+-c.
std::vector<CheckResult> check_main1(const Spectrum& sp);

/// The c = 0 structure at a single m: no real eigenvalues, scaled-envelope
/// error, real-part grid error, and the imaginary-axis pair (odd m) or its
/// absence (even m).
std::vector<CheckResult> check_c0_theorem(int mm, const SolverOptions& opts = {});

/// The 0 < c < 2 envelope bound 2m|Im| <= (1+5%) Lambda_c(|Re|) away from
/// the window edges; also records (never asserts) the |lambda +- c| < 2
/// conjecture margin in the detail field.
CheckResult check_cne0_theorem(int mm, double c, const SolverOptions& opts = {});

/// n = m+1, c = 0: all-real spectrum with multiplicities {2,...,2, 1 or 3}
/// matching the roots of q_m, cross-validated against the factorisation
/// p(lambda) = (-1)^{m+1} lambda q_m(lambda)^2.
CheckResult check_nm1_theorem(int mm, const SolverOptions& opts = {});

struct ZeroDistanceRow {
    double x = 0.0;      // c (c-sweep) or m (m-sweep)
    double d = 0.0;      // dist(spec, 0)
    double delta = 0.0;  // delta_{N;c}
    bool converged = false;
};

std::vector<ZeroDistanceRow> zero_distance_c_rows(int m, int n,
                                                  const std::vector<double>& c_grid,
                                                  const SolverOptions& opts = {});
std::vector<ZeroDistanceRow> zero_distance_m_rows(int m_from, int m_to, double c,
                                                  const SolverOptions& opts = {});

/// d >= delta - 1e-10 across a c-grid.
CheckResult check_zero_distance(int mm, int nn, const std::vector<double>& c_grid,
                                const SolverOptions& opts = {});

/// The m x 1 pencil keeps an imaginary eigenvalue at i(y - 1/y) with
/// Im > 9/20 (no decay when only one block grows).
CheckResult check_n1_lemma(int mm, const SolverOptions& opts = {});

/// Named suites: all, localisation, det-identity, main1, c0, cne0, nm1,
/// zero-distance, n1.  Throws std::invalid_argument for unknown names.
VerificationReport run_suite(const std::string& suite, int m, std::optional<int> n, double c,
                             const SolverOptions& opts = {});

std::string report_json(const VerificationReport& report);
std::string report_table(const VerificationReport& report);

}  // namespace tripencil
