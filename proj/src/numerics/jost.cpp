#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scarf/error.hpp"
#include "scarf/numerics.hpp"

namespace scarf::numerics {

namespace {

constexpr cplx I{0.0, 1.0};

double abs_a(const PotentialParams& p, double e, const Grid& grid) { return std::abs(jost_a(p, {e, 0.0}, grid)); }

} // namespace

cplx jost_a(const PotentialParams& p, cplx energy, const Grid& grid) {
    if (energy == cplx{}) throw std::invalid_argument("jost_a: E = 0 is excluded");
    grid.validate();
    // Principal root with Im k >= 0, so e^{ikx} decays (or is outgoing) at +infinity.
    cplx k = std::sqrt(cplx(energy.real(), energy.imag() == 0.0 ? 0.0 : energy.imag()));
    if (k.imag() < 0.0) k = -k;

    const UniformGrid g = grid.uniform();
    const double xr = g.x_max();
    const auto psi = numerov_propagate(p, energy, g, Direction::RightToLeft,
                                       Seed::explicit_values(std::exp(I * k * xr), std::exp(I * k * (xr - g.h))));

    // psi = a e^{ikx} + b e^{-ikx} at the two leftmost nodes.
    const double x0 = g.x(0), x1 = g.x(1);
    const cplx sin_kh = std::sin(k * g.h);
    if (std::abs(sin_kh) < 1e-12)
        throw SolverError(SolverError::Kind::IllConditioned, "jost_a: free modes indistinguishable near E = 0");
    const cplx num = psi.values[0] * std::exp(-I * k * x1) - psi.values[1] * std::exp(-I * k * x0);
    const cplx a = num / (-2.0 * I * sin_kh);
    return psi.log_scale == 0.0 ? a : a * std::exp(psi.log_scale);
}

std::vector<Pole> scan_poles(const PotentialParams& p, const PoleScanOptions& opts, const Grid& grid) {
    if (opts.points < 3 || !(opts.e_min < opts.e_max))
        throw std::invalid_argument("scan_poles: need e_min < e_max and at least 3 points");
    const int n = opts.points;
    const double de = (opts.e_max - opts.e_min) / (n - 1);
    std::vector<double> es(n), vals(n);
    for (int i = 0; i < n; ++i) {
        es[i] = opts.e_min + de * i;
        vals[i] = abs_a(p, es[i], grid);
    }

    constexpr double kGolden = 0.6180339887498949;
    std::vector<Pole> poles;
    for (int i = 1; i + 1 < n; ++i) {
        if (!(vals[i] <= vals[i - 1] && vals[i] < vals[i + 1])) continue;
        double lo = es[i - 1], hi = es[i + 1];
        double c = hi - kGolden * (hi - lo), d = lo + kGolden * (hi - lo);
        double fc = abs_a(p, c, grid), fd = abs_a(p, d, grid);
        while (hi - lo > 1e-12 * std::max(1.0, std::abs(lo))) {
            if (fc < fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - kGolden * (hi - lo);
                fc = abs_a(p, c, grid);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + kGolden * (hi - lo);
                fd = abs_a(p, d, grid);
            }
        }
        const double e = 0.5 * (lo + hi);
        const double fmin = abs_a(p, e, grid);
        // A zero of a drives |a| far below the neighbouring scan values; a smooth dip does not.
        if (fmin < 1e-3 * std::min(vals[i - 1], vals[i + 1])) poles.push_back({e, fmin});
    }
    return poles;
}

WronskianReport wronskian_test(const WavefunctionSample& a, const WavefunctionSample& b) {
    const auto& ga = a.grid;
    const auto& gb = b.grid;
    if (ga.count != gb.count || ga.x_min != gb.x_min || ga.h != gb.h || a.values.size() != b.values.size())
        throw std::invalid_argument("wronskian_test: samples are on different grids");
    const std::size_t n = ga.count;
    if (n < 5) throw std::invalid_argument("wronskian_test: need at least 5 nodes");

    const auto fa = a.scaled_values();
    const auto fb = b.scaled_values();
    const double h = ga.h;
    auto deriv = [h](const std::vector<cplx>& f, std::size_t i) {
        return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    };

    std::vector<cplx> w(n);
    WronskianReport rep;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const cplx da = deriv(fa, i), db = deriv(fb, i);
        w[i] = fa[i] * db - fb[i] * da;
        rep.w_max = std::max(rep.w_max, std::abs(w[i]));
        rep.w_scale = std::max(rep.w_scale, std::abs(fa[i]) * std::abs(db) + std::abs(fb[i]) * std::abs(da));
    }
    const cplx w_mid = w[n / 2];
    for (std::size_t i = 2; i + 2 < n; ++i)
        rep.constancy = std::max(rep.constancy, std::abs(w[i] - w_mid));
    rep.constancy = std::abs(w_mid) > 0.0 ? rep.constancy / std::abs(w_mid) : std::numeric_limits<double>::infinity();

    double bmax = 0.0;
    for (const auto& v : fb) bmax = std::max(bmax, std::abs(v));
    std::vector<cplx> ratios;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(fb[i]) >= 1e-6 * bmax) ratios.push_back(fa[i] / fb[i]);
    cplx mean{};
    for (const auto& r : ratios) mean += r;
    mean /= static_cast<double>(ratios.size());
    double var = 0.0;
    for (const auto& r : ratios) var += std::norm(r - mean);
    rep.ratio_flatness = std::sqrt(var / static_cast<double>(ratios.size())) / std::abs(mean);
    return rep;
}

} // namespace scarf::numerics
