#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "scarf/analytic.hpp"
#include "scarf/cli.hpp"
#include "scarf/matrix_models.hpp"
#include "scarf/numerics.hpp"
#include "scarf/special_fn.hpp"

namespace scarf::cli {

using analytic::Branch;
using analytic::Phase;
using analytic::PotentialParams;

namespace {

Cell str(const char* s) { return std::string(s); }

numerics::Grid shooting_grid(const RunConfig& cfg) {
    numerics::Grid g;
    const double l = cfg.grid_l.value_or(15.0);
    g.x_min = -l;
    g.x_max = l;
    g.h = cfg.grid_h.value_or(1e-3);
    g.x_match = 0.0;
    g.validate();
    return g;
}

numerics::ShootingOptions shooting_options(const RunConfig& cfg) {
    numerics::ShootingOptions o;
    o.tol = cfg.tol;
    return o;
}

UniformGrid state_grid(const RunConfig& cfg) {
    const double l = cfg.grid_l.value_or(12.0);
    const double h = cfg.grid_h.value_or(0.01);
    return UniformGrid::symmetric(l, static_cast<std::size_t>(std::llround(2.0 * l / h)) + 1);
}

std::string fmt(double v, int prec = 6) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

std::string fmt(cplx v, int prec = 6) {
    std::ostringstream os;
    os.precision(prec);
    os << v.real();
    if (v.imag() != 0.0) os << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag()) << "i";
    return os.str();
}

} // namespace

void RunConfig::validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("--tol must be positive");
    if (steps && *steps < 2) throw std::invalid_argument("--steps must be at least 2");
    if (v2_from && v2_to && !(*v2_from < *v2_to)) throw std::invalid_argument("--v2-from must be below --v2-to");
    if (emin && emax && !(*emin < *emax)) throw std::invalid_argument("--emin must be below --emax");
    if (grid_l && !(*grid_l > 0.0)) throw std::invalid_argument("--grid-l must be positive");
    if (grid_h && !(*grid_h > 0.0)) throw std::invalid_argument("--grid-h must be positive");
    if (grid_l || grid_h) {
        const double l = grid_l.value_or(command == "wavefunction" ? 12.0 : 15.0);
        const double h = grid_h.value_or(command == "wavefunction" ? 0.01 : 1e-3);
        const double cells = 2.0 * l / h;
        if (std::abs(cells - std::round(cells)) > 1e-9 * cells)
            throw std::invalid_argument("--grid-h must divide the interval [-L, L] into a whole number of steps");
    }
    if (nmax < 1 || nmax > special::kMaxJacobiDegree) throw std::invalid_argument("--nmax out of range");
    if (n < 0) throw std::invalid_argument("--n must be non-negative");
}

CommandResult cmd_spectrum(const RunConfig& cfg) {
    const auto p = PotentialParams::make(cfg.v1, cfg.v2);
    const auto idx = analytic::indices(p);
    const auto levels = analytic::spectrum(p);

    CommandResult res;
    res.table.columns = {"v1", "v2", "s", "re_t", "im_t", "n", "branch", "phase", "re_e", "im_e"};
    if (cfg.numerical) {
        for (const char* c : {"re_e_num", "im_e_num", "discrepancy", "iterations"}) res.table.columns.emplace_back(c);
    }
    const auto grid = cfg.numerical ? shooting_grid(cfg) : numerics::Grid{};
    const auto opts = shooting_options(cfg);

    std::ostringstream sum;
    sum << "V1 = " << fmt(cfg.v1) << ", |V2| = " << fmt(p.v2_abs) << ": s = " << fmt(idx.s, 5)
        << ", t = " << fmt(idx.t, 5) << " (" << analytic::to_string(idx.phase) << " phase), " << levels.size()
        << " levels\n";
    double worst = 0.0;
    for (const auto& l : levels) {
        std::vector<Cell> row{cfg.v1, p.v2_abs, idx.s, idx.t.real(), idx.t.imag(), static_cast<long long>(l.n),
                              str(analytic::to_string(l.branch)), str(analytic::to_string(l.phase)),
                              l.energy.real(), l.energy.imag()};
        sum << "  E^" << l.n << "_" << (l.branch == Branch::Plus ? "+" : "-") << " = " << fmt(l.energy);
        if (cfg.numerical) {
            const auto r = numerics::shoot_eigenvalue(p, l.energy, grid, opts);
            const double d = std::abs(r.energy - l.energy);
            worst = std::max(worst, d);
            row.insert(row.end(), {r.energy.real(), r.energy.imag(), d, static_cast<long long>(r.iterations)});
            sum << "   numerical " << fmt(r.energy, 10) << "  |diff| = " << fmt(d, 3);
        }
        sum << "\n";
        res.table.add_row(std::move(row));
    }
    if (cfg.numerical) sum << "max |analytic - numerical| = " << fmt(worst, 3) << "\n";
    res.summary = sum.str();
    return res;
}

CommandResult cmd_scan(const RunConfig& cfg) {
    const double from = cfg.v2_from.value_or(0.0);
    const double to = cfg.v2_to.value_or(25.0);
    const int steps = cfg.steps.value_or(251);
    if (!(from < to)) throw std::invalid_argument("scan: need --v2-from < --v2-to");
    const auto p_hi = PotentialParams::make(cfg.v1, std::max(std::abs(from), std::abs(to)));
    // The largest branch order over the range bounds the quantum numbers.
    const auto idx_hi = analytic::indices(PotentialParams::make(cfg.v1, 0.0));
    const int n_top = static_cast<int>(std::ceil(std::max(analytic::indices(p_hi).s, idx_hi.s)));

    CommandResult res;
    res.table.columns = {"v2", "n", "branch", "re_e", "im_e", "phase", "re_t", "im_t"};
    if (cfg.numerical) {
        res.table.columns.emplace_back("re_e_num");
        res.table.columns.emplace_back("im_e_num");
    }

    // Numerical curves are traced per level first, then merged in (v2, n, branch) order.
    std::vector<std::vector<numerics::CurvePoint>> curves;
    if (cfg.numerical) {
        const auto grid = shooting_grid(cfg);
        for (int n = 0; n <= n_top; ++n)
            for (Branch b : {Branch::Plus, Branch::Minus})
                curves.push_back(numerics::trace_curve(cfg.v1, n, b, from, to, steps, grid, shooting_options(cfg)));
    }

    std::size_t rows_seen = 0;
    for (int k = 0; k < steps; ++k) {
        const double v2 = from + (to - from) * static_cast<double>(k) / (steps - 1);
        const auto p = PotentialParams::make(cfg.v1, v2);
        const auto idx = analytic::indices(p);
        for (int n = 0; n <= n_top; ++n) {
            for (Branch b : {Branch::Plus, Branch::Minus}) {
                if (!analytic::level_exists(p, n, b)) continue;
                const cplx e = analytic::level_energy(p, n, b);
                std::vector<Cell> row{v2, static_cast<long long>(n), str(analytic::to_string(b)), e.real(), e.imag(),
                                      str(analytic::to_string(idx.phase)), idx.t.real(), idx.t.imag()};
                if (cfg.numerical) {
                    const auto& pt = curves[static_cast<std::size_t>(2 * n + (b == Branch::Plus ? 0 : 1))]
                                           [static_cast<std::size_t>(k)];
                    row.emplace_back(pt.energy.real());
                    row.emplace_back(pt.energy.imag());
                }
                res.table.add_row(std::move(row));
                ++rows_seen;
            }
        }
    }

    std::ostringstream sum;
    sum << "scan V1 = " << fmt(cfg.v1) << ", V2 in [" << fmt(from) << ", " << fmt(to) << "], " << steps
        << " steps, " << rows_seen << " rows\n";
    for (const auto& ep : analytic::crossings(cfg.v1)) {
        if (ep.v2 < from || ep.v2 > to) continue;
        sum << "  " << (ep.kind == analytic::ExceptionalPoint::Kind::Crossing ? "crossing" : "coalescence")
            << " at V2 = " << fmt(ep.v2) << "\n";
    }
    res.summary = sum.str();
    return res;
}

CommandResult cmd_crossings(const RunConfig& cfg) {
    const auto eps = analytic::crossings(cfg.v1);
    CommandResult res;
    res.table.columns = {"kind", "v2", "t", "m_plus", "n_minus", "re_e", "im_e"};
    std::ostringstream sum;
    sum << "exceptional points for V1 = " << fmt(cfg.v1) << "\n";
    for (const auto& ep : eps) {
        const bool crossing = ep.kind == analytic::ExceptionalPoint::Kind::Crossing;
        const char* kind = crossing ? "crossing" : "coalescence";
        const auto p = PotentialParams::make(cfg.v1, ep.v2);
        sum << "  " << kind << " V2 = " << fmt(ep.v2, 10) << " (t = " << ep.gap << "), " << ep.pairs.size()
            << " pair(s):";
        if (ep.pairs.empty()) res.table.add_row({str(kind), ep.v2, static_cast<long long>(ep.gap), {}, {}, {}, {}});
        for (const auto& pr : ep.pairs) {
            const cplx e = analytic::level_energy(p, pr.m, Branch::Plus);
            res.table.add_row({str(kind), ep.v2, static_cast<long long>(ep.gap), static_cast<long long>(pr.m),
                               static_cast<long long>(pr.n), e.real(), e.imag()});
            sum << " E^" << pr.m << "_+ = E^" << pr.n << "_- = " << fmt(e, 4) << ";";
        }
        sum << "\n";
    }
    res.summary = sum.str();
    return res;
}

CommandResult cmd_wavefunction(const RunConfig& cfg) {
    const auto p = PotentialParams::make(cfg.v1, cfg.v2);
    const Branch b = analytic::parse_branch(cfg.branch);
    const auto grid = state_grid(cfg);
    const auto psi = analytic::sample_eigenstate(p, cfg.n, b, grid);
    const cplx e = analytic::level_energy(p, cfg.n, b);

    CommandResult res;
    res.table.columns = {"x", "re_psi", "im_psi", "abs_psi"};
    std::vector<cplx> num;
    if (cfg.numerical) {
        res.table.columns.emplace_back("re_psi_num");
        res.table.columns.emplace_back("im_psi_num");
        numerics::Grid g;
        g.x_min = grid.x_min;
        g.x_max = grid.x_max();
        g.h = grid.h;
        g.x_match = grid.x(grid.count / 2 + grid.count / 10);
        const auto shot = numerics::shoot_eigenvalue(p, e, g, shooting_options(cfg));
        num = numerics::shot_eigenstate(p, shot.energy, g).scaled_values();
        // Fix the free constant by least squares against the analytic state.
        cplx c{}, d{};
        for (std::size_t i = 0; i < num.size(); ++i) {
            c += std::conj(num[i]) * psi.values[i];
            d += std::norm(num[i]);
        }
        for (auto& v : num) v *= c / d;
    }
    for (std::size_t i = 0; i < grid.count; ++i) {
        const cplx v = psi.values[i];
        std::vector<Cell> row{grid.x(i), v.real(), v.imag(), std::abs(v)};
        if (cfg.numerical) {
            row.emplace_back(num[i].real());
            row.emplace_back(num[i].imag());
        }
        res.table.add_row(std::move(row));
    }
    std::ostringstream sum;
    sum << "psi^" << cfg.n << "_" << (b == Branch::Plus ? "+" : "-") << " at V1 = " << fmt(cfg.v1)
        << ", V2 = " << fmt(cfg.v2) << ", E = " << fmt(e) << ", " << grid.count << " points on ["
        << fmt(grid.x_min) << ", " << fmt(grid.x_max()) << "] (A = 1 normalization)\n";
    res.summary = sum.str();
    return res;
}

CommandResult cmd_poles(const RunConfig& cfg) {
    const auto p = PotentialParams::make(cfg.v1, cfg.v2);
    numerics::PoleScanOptions opts;
    opts.e_min = cfg.emin.value_or(-(cfg.v1 + 0.25 + p.v2_abs));
    opts.e_max = cfg.emax.value_or(-0.01);
    opts.points = cfg.steps.value_or(2000);
    const auto poles = numerics::scan_poles(p, opts, shooting_grid(cfg));

    CommandResult res;
    res.table.columns = {"index", "energy", "abs_a"};
    std::ostringstream sum;
    sum << poles.size() << " pole(s) of T(E) in [" << fmt(opts.e_min) << ", " << fmt(opts.e_max)
        << "] for V1 = " << fmt(cfg.v1) << ", V2 = " << fmt(cfg.v2) << ":";
    long long i = 0;
    for (const auto& pl : poles) {
        res.table.add_row({i++, pl.energy, pl.abs_a});
        sum << " " << fmt(pl.energy, 8);
    }
    sum << "\n";
    res.summary = sum.str();
    return res;
}

CommandResult cmd_matrix_demo(const RunConfig&) {
    using namespace scarf::matrix;
    CommandResult res;
    res.table.columns = {"fixture", "c", "re_eigenvalue", "im_eigenvalue", "algebraic", "geometric",
                         "verdict", "pseudo_hermitian_residual", "abs_eigvec_det"};
    std::ostringstream sum;

    auto report = [&](const std::string& name, const CMatrix& m, Cell c, Cell residual, Cell det) {
        const auto rep = diagonalizability(m);
        for (const auto& cl : rep.clusters)
            res.table.add_row({name, c, cl.eigenvalue.real(), cl.eigenvalue.imag(),
                               static_cast<long long>(cl.algebraic), static_cast<long long>(cl.geometric),
                               str(to_string(rep.verdict)), residual, det});
        return rep;
    };

    const auto r2 = report("jordan_2x2", lower_jordan2(), {}, {}, {});
    sum << "[[1,0],[1,1]]: " << to_string(r2.verdict) << ", eigenvector (" << fmt(r2.clusters[0].eigenvectors(0, 0))
        << ", " << fmt(r2.clusters[0].eigenvectors(1, 0)) << ")\n";
    const auto r3 = report("jordan_3x3", jordan3(), {}, {}, {});
    sum << "3x3 Jordan block: " << to_string(r3.verdict) << ", " << r3.eigenvector_rank << " eigenvector(s)\n";

    sum << "H = [[a+b, ic], [ic, a-b]], a = 0, b = 1, eta = diag(1,-1):\n";
    for (double c : {0.0, 0.5, 0.9, 0.99, 0.999, 1.0, 1.5}) {
        const PseudoHermitianModel model{0.0, 1.0, c};
        const auto ms = model_spectrum(model);
        const double resid = pseudo_hermiticity_residual(model.hamiltonian(), PseudoHermitianModel::metric());
        const auto rep = report("pseudo_hermitian_2x2", model.hamiltonian(), c, resid, std::abs(ms.eigenvector_determinant));
        sum << "  c = " << fmt(c) << ": E = " << fmt(ms.e1) << ", " << fmt(ms.e2)
            << "  |det[v1 v2]| = " << fmt(std::abs(ms.eigenvector_determinant), 4) << "  " << to_string(rep.verdict)
            << "\n";
    }
    res.summary = sum.str();
    return res;
}

} // namespace scarf::cli
