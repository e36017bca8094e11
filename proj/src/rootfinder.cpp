#include "tripencil/rootfinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <tuple>

#include "tripencil/asymptotics.hpp"

namespace tripencil {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log2 of the measured double-precision evaluation noise of p^(j) at a
// point: the gap between the double and long-double continuants.  -inf
// means both paths agreed exactly (the value computes without rounding).
double noise_log2(const CharPolyDerivs& d, const CharPolyDerivs& ref, int j) {
    return scaled_diff_abs(d.get(j), ref.get(j)).log2_abs();
}

// |p^(j)| <= 2^5 * measured noise.
bool at_noise_floor(const CharPolyDerivs& d, const CharPolyDerivs& ref, int j,
                    double extra_noise_log2 = -kInf) {
    const double value = d.get(j).log2_abs();
    if (value == -kInf) return true;
    const double noise = std::max(noise_log2(d, ref, j), extra_noise_log2);
    if (noise == -kInf) return false;
    return value <= noise + 5.0;
}

// log2 of |dp^(j)/dc| * ulp(c)/2 for j = 0..k: the value uncertainty that
// the half-ulp quantisation of the shift c induces in p^(j).  Roots closer
// than this are artefacts of rounding c itself (a double root split by the
// square-root law), so they count as indistinguishable.
std::array<double, kMaxDerivOrder + 1> c_quantisation_log2(const PencilSpec& spec,
                                                           Complex lambda, int k) {
    std::array<double, kMaxDerivOrder + 1> out;
    out.fill(-kInf);
    if (spec.c == 0.0) return out;  // c = 0 is exact
    const double h = std::abs(spec.c) * 0x1p-26;
    PencilSpec bumped = spec;
    bumped.c = spec.c + h;
    const CharPolyDerivs base = charpoly_derivatives(spec, lambda, k);
    const CharPolyDerivs shifted = charpoly_derivatives(bumped, lambda, k);
    const double half_ulp_log2 = std::log2(0.25 * std::numeric_limits<double>::epsilon() *
                                           std::abs(spec.c));
    for (int j = 0; j <= k; ++j) {
        const double diff = scaled_diff_abs(base.get(j), shifted.get(j)).log2_abs();
        if (diff == -kInf) continue;
        out[static_cast<std::size_t>(j)] = diff - std::log2(h) + half_ulp_log2;
    }
    return out;
}

// Accepts lambda as a root of multiplicity k: p, p', ..., p^(k-1) must all
// sit at the noise floor (measured evaluation noise, widened by the
// c-quantisation term).  Noise is sampled at lambda and at a nearby offset;
// the value test runs at lambda only.
bool multiplicity_ok(const PencilSpec& spec, Complex lambda, int k) {
    if (k < 1 || k > kMaxDerivOrder) return false;
    const CharPolyDerivs d = charpoly_derivatives(spec, lambda, k);
    const CharPolyDerivs ref = charpoly_derivatives_ext(spec, lambda, k);
    const Complex off = lambda + (1.0 + std::abs(lambda)) * Complex(0.7e-13, 0.7e-13);
    const CharPolyDerivs d2 = charpoly_derivatives(spec, off, k);
    const CharPolyDerivs ref2 = charpoly_derivatives_ext(spec, off, k);
    const auto c_noise = c_quantisation_log2(spec, lambda, k);
    for (int j = 0; j < k; ++j) {
        const double extra =
            std::max(noise_log2(d2, ref2, j), c_noise[static_cast<std::size_t>(j)]);
        if (!at_noise_floor(d, ref, j, extra)) return false;
    }
    return true;
}

struct PolishResult {
    Complex value;
    int steps = 0;
    bool ok = false;
};

// Newton iteration on p^(k-1), which has a simple zero at a multiplicity-k
// root.  With real_lock the iterate stays on the real axis (p^(j) is exactly
// real there for the default weights).  Returns the iterate with the
// smallest |p^(k-1)| seen, so a stalled iteration still reports its best
// point; ok goes false only when the iteration wanders away or breaks down.
PolishResult polish_root(const PencilSpec& spec, Complex start, int k, bool real_lock) {
    if (k < 1 || k > kMaxDerivOrder) return {start, 0, false};
    PolishResult out{start, 0, true};
    Complex lambda = real_lock ? Complex(start.real(), 0.0) : start;
    Complex best = lambda;
    double best_log2 = kInf;
    const double wander_limit = 0.01 * (1.0 + std::abs(start));
    for (int iter = 0; iter < 40; ++iter) {
        const CharPolyDerivs d = charpoly_derivatives(spec, lambda, k);
        const double mag = d.get(k - 1).log2_abs();
        if (mag < best_log2 || iter == 0) {
            best_log2 = mag;
            best = lambda;
        }
        if (mag == -kInf) break;  // exact zero of p^(k-1)
        if (d.mantissa[static_cast<std::size_t>(k)] == Complex(0.0, 0.0)) break;
        Complex step = d.ratio(k - 1, k);
        if (real_lock) step = Complex(step.real(), 0.0);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        lambda -= step;
        ++out.steps;
        if (std::abs(lambda - start) > wander_limit) {
            out.ok = false;
            break;
        }
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(lambda))) {
            best = lambda;
            break;
        }
    }
    out.value = out.ok ? best : start;
    return out;
}

std::vector<Complex> circle_guesses(int N, double c) {
    const double radius = 0.9 * (2.0 + std::abs(c));
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / N + 0.5 / N;
        pts.push_back(radius * Complex(std::cos(angle), std::sin(angle)));
    }
    return pts;
}

std::vector<Complex> predicted_guesses(int m) {
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(2 * m));
    for (int k = 1; k <= m / 2; ++k) {
        const double u = 2.0 * std::cos(2.0 * std::numbers::pi * k / (2.0 * m + 1.0));
        const double v = envelope_c0(u) / (2.0 * m);
        pts.push_back({u, v});
        pts.push_back({u, -v});
        pts.push_back({-u, v});
        pts.push_back({-u, -v});
    }
    if (m % 2 == 1) {
        const double v = imag_pair_estimate(m);
        pts.push_back({0.0, v});
        pts.push_back({0.0, -v});
    }
    return pts;
}

Complex jitter_direction(int i, int sweep) {
    const double phase =
        2.0 * std::numbers::pi * std::fmod(0.6180339887498949 * (i + 1) + 0.1 * sweep, 1.0);
    return {std::cos(phase), std::sin(phase)};
}

}  // namespace

int Spectrum::total_multiplicity() const {
    int total = 0;
    for (const Eigenvalue& ev : eigenvalues) total += ev.algebraic_multiplicity;
    return total;
}

double Spectrum::max_abs() const {
    double best = 0.0;
    for (const Eigenvalue& ev : eigenvalues) best = std::max(best, std::abs(ev.value));
    return best;
}

double Spectrum::max_imag_abs() const {
    double best = 0.0;
    for (const Eigenvalue& ev : eigenvalues) best = std::max(best, std::abs(ev.value.imag()));
    return best;
}

std::vector<Complex> Spectrum::values_with_multiplicity() const {
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(total_multiplicity()));
    for (const Eigenvalue& ev : eigenvalues)
        for (int r = 0; r < ev.algebraic_multiplicity; ++r) out.push_back(ev.value);
    return out;
}

namespace {

// Seeds for the slots not claimed by scanned real roots: points spread over
// the band |Re| < 2-|c| at the height of the scaled envelope, where the
// non-real eigenvalues live.
std::vector<Complex> band_fill(int count, int N, double c) {
    std::vector<Complex> pts;
    if (count <= 0) return pts;
    const double ca = std::abs(c);
    const double band = std::max(2.0 - ca, 0.1) - 1e-3;
    const int columns = (count + 1) / 2;
    for (int k = 0; k < columns && static_cast<int>(pts.size()) < count; ++k) {
        // cosine-spaced columns: the eigenvalue real parts are uniform in
        // angle, so they crowd toward the band edges
        const double u = band * std::cos(std::numbers::pi * (k + 0.5) / columns);
        const double width = 2.0 - ca;
        double env = 1.0;
        if (ca == 0.0)
            env = envelope_c0(std::clamp(std::abs(u), 0.02, 2.0 - 1e-3));
        else if (width > 0.05)
            env = envelope_c(ca, std::clamp(std::abs(u), 0.02 * width, 0.99 * width));
        env = std::clamp(env, 0.5, 12.0);
        const double v = env / N;
        pts.push_back({u, v});
        if (static_cast<int>(pts.size()) < count) pts.push_back({u, -v});
    }
    return pts;
}

}  // namespace

std::vector<Complex> initial_guesses(const PencilSpec& spec, const SolverOptions& opts) {
    spec.validate();
    if (spec.m == spec.n && spec.c == 0.0 && spec.m >= 2) return predicted_guesses(spec.m);

    // Real roots found by the sign-change scan are exact seeds (they freeze
    // on the first sweep); the remaining slots cover the non-real band.
    // Starting everything on one distant circle instead costs hundreds of
    // extra sweeps once N is in the hundreds.  The scan resolution must
    // track N: real-root gaps shrink like 1/N, and every pair lost in one
    // grid cell leaves two seeds competing for one root.
    const int N = spec.size();
    SolverOptions scan_opts = opts;
    scan_opts.grid_points = std::max(opts.grid_points, 8 * N + 1);
    std::vector<double> scanned = real_axis_scan(spec, scan_opts);
    if (static_cast<int>(scanned.size()) > N) scanned.resize(static_cast<std::size_t>(N));
    std::vector<Complex> guesses;
    guesses.reserve(static_cast<std::size_t>(N));
    for (double r : scanned) guesses.push_back({r, 0.0});
    for (const Complex& fill :
         band_fill(N - static_cast<int>(scanned.size()), N, spec.c))
        guesses.push_back(fill);
    if (static_cast<int>(guesses.size()) != N)
        guesses = circle_guesses(N, spec.c);  // scan degenerate; fall back
    return guesses;
}

std::vector<Eigenvalue> classify_and_cluster(const std::vector<Complex>& raw,
                                             const PencilSpec& spec,
                                             const SolverOptions& opts) {
    spec.validate();
    const int N = spec.size();
    if (static_cast<int>(raw.size()) != N)
        throw std::invalid_argument("classify_and_cluster: expected N root approximations");

    struct Cluster {
        Complex value;
        int mult;
        int steps;
        int id;
    };
    std::vector<Cluster> clusters;
    clusters.reserve(raw.size());
    int next_id = 0;
    for (const Complex& r : raw) clusters.push_back({r, 1, 0, next_id++});

    // Validated agglomeration, nearest admissible pair first.  A refused
    // pair is remembered and never retried.  Most candidates are genuinely
    // distinct neighbours, so a cheap |p(center)| probe (wide 2^25 margin)
    // rejects them before the expensive polish.
    std::set<std::pair<int, int>> refused;
    const auto quick_reject = [&spec](Complex center) {
        const CharPolyDerivs d = charpoly_derivatives(spec, center, 0);
        const CharPolyDerivs ref = charpoly_derivatives_ext(spec, center, 0);
        const double value = d.get(0).log2_abs();
        if (value == -kInf) return false;
        const double noise =
            std::max(noise_log2(d, ref, 0), c_quantisation_log2(spec, center, 0)[0]);
        return noise == -kInf || value > noise + 25.0;
    };
    bool rescan = true;
    while (rescan) {
        rescan = false;
        std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                const Cluster& a = clusters[i];
                const Cluster& b = clusters[j];
                if (a.mult + b.mult > kMaxDerivOrder) continue;
                if (refused.count({std::min(a.id, b.id), std::max(a.id, b.id)})) continue;
                const double d = std::abs(a.value - b.value);
                const double scale = 1.0 + 0.5 * (std::abs(a.value) + std::abs(b.value));
                if (d <= opts.merge_scan_radius_rel * scale) candidates.emplace_back(d, i, j);
            }
        }
        std::sort(candidates.begin(), candidates.end(),
                  [](const auto& x, const auto& y) { return std::get<0>(x) < std::get<0>(y); });
        for (const auto& [d, i, j] : candidates) {
            Cluster& a = clusters[i];
            Cluster& b = clusters[j];
            const int k = a.mult + b.mult;
            const Complex center =
                (static_cast<double>(a.mult) * a.value + static_cast<double>(b.mult) * b.value) /
                static_cast<double>(k);
            const auto key = std::make_pair(std::min(a.id, b.id), std::max(a.id, b.id));
            if (quick_reject(center)) {
                refused.insert(key);
                continue;
            }
            const PolishResult pol = polish_root(spec, center, k, false);
            if (pol.ok && multiplicity_ok(spec, pol.value, k)) {
                a.value = pol.value;
                a.mult = k;
                a.steps += b.steps + pol.steps;
                a.id = next_id++;
                clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
                rescan = true;  // indices shifted; rebuild the candidate list
                break;
            }
            refused.insert(key);
        }
    }

    // Very large N degrades the conditioning of clustered roots near +-2+-c;
    // finish there with 80-bit evaluations.
    const bool extended = opts.extended_polish || N > 2000;

    std::vector<Eigenvalue> out;
    out.reserve(clusters.size());
    int total = 0;
    for (const Cluster& cl : clusters) {
        Eigenvalue ev;
        ev.value = cl.value;
        ev.algebraic_multiplicity = cl.mult;
        ev.newton_steps = cl.steps;

        const PolishResult pol = polish_root(spec, ev.value, cl.mult, false);
        if (pol.ok) {
            ev.value = pol.value;
            ev.newton_steps += pol.steps;
        }
        if (std::abs(ev.value.imag()) <= opts.real_threshold) {
            ev.is_real = true;
            const PolishResult rp = polish_root(spec, {ev.value.real(), 0.0}, cl.mult, true);
            ev.value = {rp.ok ? rp.value.real() : ev.value.real(), 0.0};
            ev.newton_steps += rp.steps;
        }
        if (extended) {
            for (int iter = 0; iter < 4; ++iter) {
                const CharPolyDerivs d = charpoly_derivatives_ext(spec, ev.value, cl.mult);
                if (d.mantissa[static_cast<std::size_t>(cl.mult)] == Complex(0.0, 0.0)) break;
                Complex step = d.ratio(cl.mult - 1, cl.mult);
                if (ev.is_real) step = {step.real(), 0.0};
                if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
                ev.value -= step;
                ++ev.newton_steps;
                if (std::abs(step) <= 1e-16 * (1.0 + std::abs(ev.value))) break;
            }
        }
        ev.residual = charpoly_derivatives(spec, ev.value, 0).residual();
        total += ev.algebraic_multiplicity;
        out.push_back(ev);
    }
    if (total != N)
        throw std::logic_error("classify_and_cluster: multiplicities do not sum to N");

    std::sort(out.begin(), out.end(), [](const Eigenvalue& x, const Eigenvalue& y) {
        if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
        return x.value.imag() < y.value.imag();
    });
    return out;
}

Spectrum compute_spectrum(const PencilSpec& spec, const SolverOptions& opts) {
    spec.validate();
    if (!spec.default_weights())
        throw std::invalid_argument("compute_spectrum: requires the default weights (1, -1)");
    const int N = spec.size();

    std::vector<Complex> lam = (static_cast<int>(opts.warm_start.size()) == N)
                                   ? opts.warm_start
                                   : initial_guesses(spec, opts);

    // Start points must be pairwise distinct for the Aberth repulsion term.
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(lam[i] - lam[j]) < 1e-12 * (1.0 + std::abs(lam[i])))
                lam[i] += 1e-6 * (1.0 + std::abs(lam[i])) * jitter_direction(static_cast<int>(i), 0);

    // An all-real start set is trapped on the axis (real data keeps every
    // update real), so it could never reach non-real roots.  Detach it.
    const bool all_real = std::all_of(lam.begin(), lam.end(), [](Complex v) {
        return std::abs(v.imag()) <= 1e-12 * (1.0 + std::abs(v.real()));
    });
    if (all_real)
        for (std::size_t i = 0; i < lam.size(); ++i)
            lam[i] += Complex(0.0, (i % 2 ? 1e-7 : -1e-7) * (1.0 + std::abs(lam[i])));

    std::vector<bool> frozen(static_cast<std::size_t>(N), false);
    std::vector<double> prev_corr(static_cast<std::size_t>(N), kInf);

    // Serial Gauss-Seidel sweeps: each root moves with the others already
    // updated this sweep, which roughly halves the sweep count of the
    // synchronized variant and stays fully deterministic.
    int sweeps = 0;
    bool all_frozen = false;
    while (sweeps < opts.max_iter && !all_frozen) {
        ++sweeps;
        all_frozen = true;
        for (int i = 0; i < N; ++i) {
            const std::size_t ii = static_cast<std::size_t>(i);
            if (frozen[ii]) continue;

            const CharPolyDerivs d = charpoly_derivatives(spec, lam[ii], 1);
            if (d.mantissa[0] == Complex(0.0, 0.0)) {
                frozen[ii] = true;  // exact root
                continue;
            }
            const Complex r =
                (d.mantissa[1] == Complex(0.0, 0.0)) ? Complex(kInf, 0.0) : d.ratio(0, 1);

            Complex repulsion{0.0, 0.0};
            for (int j = 0; j < N; ++j) {
                if (j == i) continue;
                const Complex gap = lam[ii] - lam[static_cast<std::size_t>(j)];
                if (gap == Complex(0.0, 0.0)) continue;
                repulsion += 1.0 / gap;
            }

            Complex w;
            if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
                w = 1e-3 * (1.0 + std::abs(lam[ii])) * jitter_direction(i, sweeps);
            } else {
                const Complex denom = 1.0 - r * repulsion;
                w = (denom == Complex(0.0, 0.0)) ? r : r / denom;
                if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = r;
            }
            lam[ii] -= w;
            const double corr = std::abs(w);

            const double rel = 1.0 + std::abs(lam[ii]);
            if (corr <= opts.tol * rel) {
                frozen[ii] = true;
            } else if (sweeps >= 6 && corr <= 1e-3 * rel && corr > 0.25 * prev_corr[ii]) {
                // Correction has stalled: accept the root if |p| is at the
                // measured evaluation-noise floor (multiple roots never pass
                // the step test).
                const CharPolyDerivs dd = charpoly_derivatives(spec, lam[ii], 0);
                const CharPolyDerivs ref = charpoly_derivatives_ext(spec, lam[ii], 0);
                if (at_noise_floor(dd, ref, 0)) frozen[ii] = true;
            }
            prev_corr[ii] = corr;
            if (!frozen[ii]) all_frozen = false;
        }
    }

    Spectrum sp;
    sp.spec = spec;
    sp.iterations = sweeps;
    sp.converged = all_frozen;
    sp.eigenvalues = classify_and_cluster(lam, spec, opts);
    return sp;
}

std::vector<double> real_axis_scan(const PencilSpec& spec, const SolverOptions& opts) {
    spec.validate();
    if (!spec.default_weights())
        throw std::invalid_argument("real_axis_scan: requires the default weights (1, -1)");
    const double radius = 2.0 + std::abs(spec.c);
    const int grid = std::max(opts.grid_points, 16);

    const auto sign_at = [&](double x) {
        return charpoly_derivatives(spec, {x, 0.0}, 0).mantissa[0].real();
    };

    std::vector<double> roots;
    double x_prev = -radius;
    double v_prev = sign_at(x_prev);
    for (int g = 1; g < grid; ++g) {
        const double x = -radius + 2.0 * radius * g / (grid - 1);
        const double v = sign_at(x);
        if (v_prev == 0.0) {
            roots.push_back(x_prev);
        } else if (v != 0.0 && v_prev * v < 0.0) {
            double lo = x_prev, hi = x, vlo = v_prev;
            for (int iter = 0; iter < 120 && (hi - lo) > 1e-15 * std::max(1.0, std::abs(hi));
                 ++iter) {
                const double mid = 0.5 * (lo + hi);
                const double vm = sign_at(mid);
                if (vm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (vlo * vm < 0.0)
                    hi = mid;
                else {
                    lo = mid;
                    vlo = vm;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x_prev = x;
        v_prev = v;
    }
    if (v_prev == 0.0) roots.push_back(x_prev);
    return roots;
}

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    const auto one_sided = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
        double worst = 0.0;
        for (const Complex& p : from) {
            double best = kInf;
            for (const Complex& q : to) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return kInf;
    return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace tripencil
