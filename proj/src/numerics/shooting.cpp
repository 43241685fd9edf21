#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "scarf/error.hpp"
#include "scarf/numerics.hpp"

namespace scarf::numerics {

namespace {

std::string format_energy(cplx e) {
    std::ostringstream os;
    os.precision(10);
    os << e.real() << (e.imag() < 0 ? "-" : "+") << std::abs(e.imag()) << "i";
    return os.str();
}

// Spacing of neighbouring levels of a sech^2 well near energy E is about 2|kappa| - 1.
double spacing_estimate(cplx e) { return std::max(2.0 * std::abs(std::sqrt(-e)), 0.05); }

void check_window(const PotentialParams& p, cplx e) {
    const double window = 4.0 * (p.v1 + p.v2_abs) + 10.0;
    const bool finite = std::isfinite(e.real()) && std::isfinite(e.imag());
    if (!finite || std::abs(e) > window || !(std::sqrt(-e).real() > 1e-9))
        throw SolverError(SolverError::Kind::DivergedOutOfWindow,
                          "shoot_eigenvalue: iterate " + format_energy(e) + " left the bound-state window");
}

struct Evaluation {
    cplx value;
    double scale;
    double normalized() const {
        return scale > 0.0 ? std::abs(value) / scale : std::numeric_limits<double>::infinity();
    }
};

struct MullerOutcome {
    cplx root;
    Evaluation at_root;
    int iterations = 0;
    bool converged = false;
};

// Muller's method on f, with a secant fallback and a step clamp tied to the level spacing.
template <class F>
MullerOutcome muller(const PotentialParams& p, F&& f, cplx guess, double delta, const ShootingOptions& opts) {
    cplx x0 = guess - delta, x1 = guess + delta, x2 = guess;
    if (!(std::sqrt(-x1).real() > 1e-9)) x1 = guess - 2.0 * delta;
    check_window(p, x0);
    check_window(p, x1);
    cplx f0 = f(x0).value;
    cplx f1 = f(x1).value;
    Evaluation e2 = f(x2);
    cplx f2 = e2.value;

    MullerOutcome res{x2, e2, 0, false};
    MullerOutcome best = res;
    double last_step = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= opts.max_iterations; ++it) {
        res.iterations = it;
        const double mag = std::max(1.0, std::abs(x2));
        if (e2.normalized() == 0.0 || (e2.normalized() < opts.tol && last_step < 1e-9 * mag)) {
            res.converged = true;
            break;
        }

        cplx dx;
        const cplx h1 = x1 - x0, h2 = x2 - x1;
        const cplx d1 = (f1 - f0) / h1, d2 = (f2 - f1) / h2;
        const cplx a = (d2 - d1) / (h2 + h1);
        const cplx b = a * h2 + d2;
        const cplx disc = std::sqrt(b * b - 4.0 * f2 * a);
        const cplx den = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
        if (std::abs(den) > 0.0 && std::isfinite(std::abs(den))) {
            dx = -2.0 * f2 / den;
        } else if (f2 != f1) {
            dx = -f2 * h2 / (f2 - f1);
        } else {
            dx = delta;
        }
        const double clamp = opts.step_clamp * spacing_estimate(x2);
        if (std::abs(dx) > clamp) dx *= clamp / std::abs(dx);

        const cplx x3 = x2 + dx;
        check_window(p, x3);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        x2 = x3;
        e2 = f(x2);
        f2 = e2.value;
        last_step = std::abs(dx);
        res.root = x2;
        res.at_root = e2;
        if (e2.normalized() < best.at_root.normalized()) best = {x2, e2, 0, false};

        if (last_step < 1e-15 * mag && e2.normalized() < 1e3 * opts.tol) {
            res.converged = true;
            break;
        }
    }
    // Near a double root the mismatch is flat down to roundoff and the step test
    // never settles; an iterate already inside the tolerance is still a root.
    if (!res.converged && best.at_root.normalized() < opts.tol) {
        best.iterations = res.iterations;
        best.converged = true;
        return best;
    }
    return res;
}

struct RootCluster {
    int count = 0;
    cplx power_sums[2]; // sum of (r - center)^k over roots inside, k = 1, 2
};

// Trapezoid rule on |E - center| = radius for (1/2 pi i) \oint (E - c)^k D'/D dE,
// with D' from the discrete Taylor coefficients of the same samples.
RootCluster count_roots(const PotentialParams& p, const Grid& grid, cplx center, double radius) {
    constexpr int K = 16;
    std::array<cplx, K> z, d;
    for (int k = 0; k < K; ++k) {
        z[k] = std::polar(radius, 2.0 * M_PI * k / K);
        check_window(p, center + z[k]);
        const Mismatch m = matching_function(p, center + z[k], grid);
        d[k] = m.value;
    }
    // Taylor coefficients b_m = a_m radius^m.
    std::array<cplx, K> coeff{};
    for (int mm = 0; mm < K; ++mm) {
        cplx acc{0.0, 0.0};
        for (int k = 0; k < K; ++k) acc += d[k] * std::polar(1.0, -2.0 * M_PI * mm * k / K);
        coeff[mm] = acc / static_cast<double>(K);
    }
    cplx s[3] = {};
    for (int k = 0; k < K; ++k) {
        const cplx u = z[k] / radius;
        cplx deriv{0.0, 0.0}, up{1.0, 0.0};
        for (int mm = 1; mm < K; ++mm) {
            deriv += static_cast<double>(mm) * coeff[mm] * up;
            up *= u;
        }
        deriv /= radius;
        const cplx w = deriv / d[k] * z[k] / static_cast<double>(K);
        s[0] += w;
        s[1] += w * z[k];
        s[2] += w * z[k] * z[k];
    }
    RootCluster out;
    const double n = std::round(s[0].real());
    if (std::abs(s[0] - n) > 0.1 || n < 0.0)
        throw SolverError(SolverError::Kind::IllConditioned, "root count did not settle");
    out.count = static_cast<int>(n);
    out.power_sums[0] = s[1];
    out.power_sums[1] = s[2];
    return out;
}

} // namespace

Mismatch matching_function(const PotentialParams& p, cplx energy, const Grid& grid) {
    grid.validate();
    const std::size_t n = grid.node_count();
    const std::size_t m = grid.match_index();
    const UniformGrid left{grid.x_min, grid.h, m + 2};
    const UniformGrid right{grid.x_min + static_cast<double>(m) * grid.h, grid.h, n - m};

    const auto psi_l = numerov_propagate(p, energy, left, Direction::LeftToRight);
    const auto psi_r = numerov_propagate(p, energy, right, Direction::RightToLeft);

    const cplx l0 = psi_l.values[m], l1 = psi_l.values[m + 1];
    const cplx r0 = psi_r.values[0], r1 = psi_r.values[1];
    const cplx dl = l1 - l0, dr = r1 - r0;
    const double scale_factor = std::exp(psi_l.log_scale + psi_r.log_scale);

    // Amplitudes combine value and slope so a node at the match point does not
    // shrink the scale (odd states at x_m = 0).
    const double q = 1.0 + std::abs(std::sqrt(-energy));
    const double amp_l = std::abs(l0) + std::abs(dl) / (grid.h * q);
    const double amp_r = std::abs(r0) + std::abs(dr) / (grid.h * q);

    Mismatch out;
    out.value = (l0 * dr - r0 * dl) * (scale_factor / grid.h);
    out.scale = amp_l * amp_r * q * scale_factor;
    return out;
}

ShootingResult shoot_eigenvalue(const PotentialParams& p, cplx guess, const Grid& grid,
                                const ShootingOptions& opts) {
    check_window(p, guess);
    auto direct = [&](cplx e) {
        const Mismatch m = matching_function(p, e, grid);
        return Evaluation{m.value, m.scale};
    };
    const MullerOutcome first = muller(p, direct, guess, 1e-3 * spacing_estimate(guess), opts);
    if (!first.converged)
        throw SolverError(SolverError::Kind::MaxIterations,
                          "shoot_eigenvalue: no convergence after " + std::to_string(opts.max_iterations) +
                              " iterations from guess " + format_energy(guess) + " (last " +
                              format_energy(first.root) + ")");

    ShootingResult res;
    res.energy = first.root;
    res.iterations = first.iterations;
    res.converged = true;
    res.mismatch = first.at_root.scale > 0.0 ? first.at_root.value / first.at_root.scale : first.at_root.value;

    // A defective double root (level crossing, coalescence) is split by the
    // discretization into two close roots, and the mismatch is flat there, so
    // Muller only resolves it to ~sqrt(roundoff). The argument principle on a
    // circle where |D| is well above roundoff counts the roots inside and gives
    // their power sums, hence the cluster mean, without that loss.
    if (opts.resolve_clusters) {
        const double radius =
            opts.cluster_radius > 0.0 ? opts.cluster_radius : 0.02 * spacing_estimate(first.root);
        const double merge = opts.merge_radius > 0.0 ? opts.merge_radius : 1e3 * grid.h * grid.h;
        try {
            const RootCluster cl = count_roots(p, grid, first.root, radius);
            if (cl.count == 2) {
                const cplx p1 = cl.power_sums[0], p2 = cl.power_sums[1];
                const cplx disc = std::sqrt(2.0 * p2 - p1 * p1); // r1 - r2
                const double split = std::abs(disc);
                res.split = split;
                if (split <= merge) {
                    res.energy = first.root + 0.5 * p1;
                    res.multiplicity = 2;
                }
            }
        } catch (const SolverError&) {
            // the circle touched an invalid energy; keep the Muller root
        }
    }
    return res;
}

WavefunctionSample shot_eigenstate(const PotentialParams& p, cplx energy, const Grid& grid) {
    grid.validate();
    const std::size_t n = grid.node_count();
    const std::size_t m = grid.match_index();
    const auto left = numerov_propagate(p, energy, {grid.x_min, grid.h, m + 2}, Direction::LeftToRight)
                          .scaled_values();
    const auto right = numerov_propagate(p, energy, {grid.x_min + static_cast<double>(m) * grid.h, grid.h, n - m},
                                         Direction::RightToLeft)
                           .scaled_values();
    // Least-squares scale of the right solution onto the left one over nodes m, m+1.
    const cplx c = (std::conj(right[0]) * left[m] + std::conj(right[1]) * left[m + 1]) /
                   (std::norm(right[0]) + std::norm(right[1]));
    WavefunctionSample out{grid.uniform(), std::vector<cplx>(n), 0.0};
    for (std::size_t i = 0; i <= m; ++i) out.values[i] = left[i];
    for (std::size_t i = m + 1; i < n; ++i) out.values[i] = c * right[i - m];
    return out;
}

std::vector<ShotLevel> shoot_levels(const PotentialParams& p, std::span<const cplx> guesses, const Grid& grid,
                                    const ShootingOptions& opts) {
    std::vector<ShotLevel> out;
    for (const cplx g : guesses) {
        const ShootingResult r = shoot_eigenvalue(p, g, grid, opts);
        auto same = std::find_if(out.begin(), out.end(), [&](const ShotLevel& l) {
            return std::abs(l.energy - r.energy) <= 1e-8 * std::max(1.0, std::abs(r.energy));
        });
        if (same != out.end()) {
            ++same->multiplicity;
        } else {
            out.push_back({r.energy, 1, r.iterations});
        }
    }
    return out;
}

std::vector<CurvePoint> trace_curve(double v1, int n, Branch branch, double v2_from, double v2_to, int steps,
                                    const Grid& grid, const ShootingOptions& opts) {
    if (steps < 2) throw std::invalid_argument("trace_curve: steps must be >= 2");
    std::vector<CurvePoint> curve;
    curve.reserve(static_cast<std::size_t>(steps));
    std::optional<cplx> previous, before_previous;
    // In the broken phase E^n_+ sits below the real axis and E^n_- above it.
    const double wanted_sign = branch == Branch::Plus ? -1.0 : 1.0;

    for (int k = 0; k < steps; ++k) {
        const double v2 = v2_from + (v2_to - v2_from) * static_cast<double>(k) / (steps - 1);
        const auto p = PotentialParams::make(v1, v2);
        CurvePoint pt;
        pt.v2 = v2;
        pt.phase = analytic::indices(p).phase;
        if (!analytic::level_exists(p, n, branch)) {
            pt.energy = {std::nan(""), std::nan("")};
            curve.push_back(pt);
            previous.reset();
            before_previous.reset();
            continue;
        }
        // Secant predictor along the curve keeps the march on its own branch
        // where two real curves cross.
        // The first two points of a run are cold-started: a single previous
        // energy carries no slope, and next to a crossing it sits on both curves.
        cplx guess = analytic::level_energy(p, n, branch);
        if (previous && before_previous) {
            const cplx predicted = 2.0 * *previous - *before_previous;
            // Not across the continuum edge: a level near threshold keeps its last value.
            if (std::sqrt(-predicted).real() >= 0.5 * std::sqrt(-*previous).real()) guess = predicted;
        }
        if (pt.phase == Phase::Broken && std::abs(guess.imag()) < 1e-6)
            guess += cplx(0.0, wanted_sign * 1e-3 * spacing_estimate(guess));
        try {
            ShootingResult r = shoot_eigenvalue(p, guess, grid, opts);
            if (pt.phase == Phase::Broken && r.energy.imag() * wanted_sign < 0.0 && std::abs(r.energy.imag()) > 1e-9) {
                const int first = r.iterations;
                r = shoot_eigenvalue(p, std::conj(r.energy), grid, opts);
                r.iterations += first;
            }
            pt.exists = true;
            pt.energy = r.energy;
            pt.iterations = r.iterations;
        } catch (const SolverError& e) {
            std::ostringstream os;
            os.precision(12);
            os << "trace_curve at V2 = " << v2 << ": " << e.what();
            throw SolverError(e.kind(), os.str());
        }
        before_previous = previous;
        previous = pt.energy;
        curve.push_back(pt);
    }
    return curve;
}

} // namespace scarf::numerics
