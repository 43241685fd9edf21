#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "scarf/analytic.hpp"
#include "scarf/cli.hpp"
#include "scarf/numerics.hpp"
#include "scarf/special_fn.hpp"

namespace scarf::cli {

using analytic::Branch;
using analytic::PotentialParams;

namespace {

struct Check {
    std::string suite;
    std::string name;
    double value;
    double threshold;
    bool pass() const { return value < threshold; }
};

std::string level_name(int n, Branch b) {
    return "E" + std::to_string(n) + (b == Branch::Plus ? "+" : "-");
}

void identity_suite(int nmax, std::vector<Check>& out) {
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> s_dist(-8.0, 8.0);
    std::uniform_real_distribution<double> radius(0.0, 2.0), angle(0.0, 2.0 * M_PI);
    std::vector<cplx> z(10);
    for (int n = 1; n <= nmax; ++n) {
        for (int j = 1; j <= n; ++j) {
            double worst = 0.0;
            for (int k = 0; k < 50; ++k) {
                const double s = s_dist(rng);
                for (auto& zz : z) zz = std::polar(radius(rng), angle(rng));
                worst = std::max(worst, special::verify_jacobi_identity(n, j, {s, 0.0}, z));
            }
            out.push_back({"identity", "n=" + std::to_string(n) + " j=" + std::to_string(j), worst, 1e-10});
        }
    }
}

void wronskian_suite(std::vector<Check>& out) {
    const numerics::Grid grid;
    {
        // Two independent solutions at a non-eigen energy.
        const auto p = PotentialParams::make(20.0, 17.0);
        const cplx e{-5.0, 0.0};
        const auto a = numerics::numerov_propagate(p, e, grid.uniform(), numerics::Direction::LeftToRight);
        const auto b = numerics::numerov_propagate(p, e, grid.uniform(), numerics::Direction::RightToLeft);
        out.push_back({"wronskian", "constancy V2=17 E=-5", numerics::wronskian_test(a, b).constancy, 1e-8});
    }
    for (const auto& [v2, m, n] : {std::tuple{19.25, 1, 0}, std::tuple{16.25, 3, 1}}) {
        // The same crossing energy approached from the Plus and the Minus level.
        const auto p = PotentialParams::make(20.0, v2);
        const auto rp = numerics::shoot_eigenvalue(p, analytic::level_energy(p, m, Branch::Plus) - 0.05, grid);
        const auto rm = numerics::shoot_eigenvalue(p, analytic::level_energy(p, n, Branch::Minus) + 0.05, grid);
        const auto sp = numerics::shot_eigenstate(p, rp.energy, grid);
        const auto sm = numerics::shot_eigenstate(p, rm.energy, grid);
        const auto rep = numerics::wronskian_test(sp, sm);
        std::ostringstream name;
        name << "crossing V2=" << v2 << " " << level_name(m, Branch::Plus) << "/" << level_name(n, Branch::Minus);
        out.push_back({"wronskian", name.str() + " ratio flatness", rep.ratio_flatness, 1e-6});
        out.push_back({"wronskian", name.str() + " |W|/scale", rep.w_max / rep.w_scale, 1e-6});
    }
}

void orthogonality_suite(std::vector<Check>& out) {
    for (double v2 : {17.0, 21.0}) {
        const auto p = PotentialParams::make(20.0, v2);
        const auto levels = analytic::spectrum(p);
        for (std::size_t i = 0; i < levels.size(); ++i) {
            for (std::size_t k = i + 1; k < levels.size(); ++k) {
                const auto& a = levels[i];
                const auto& b = levels[k];
                if (std::abs(a.energy - b.energy) < 1e-9) continue;
                const auto o = analytic::pt_orthogonality(p, a.n, a.branch, b.n, b.branch);
                std::ostringstream name;
                name << "V2=" << v2 << " " << level_name(a.n, a.branch) << "." << level_name(b.n, b.branch);
                out.push_back({"orthogonality", name.str(), std::abs(o.integral) / o.scale, 1e-6});
            }
        }
    }
}

void pt_suite(std::vector<Check>& out) {
    for (double v2 : {21.0, 25.0}) {
        const auto p = PotentialParams::make(20.0, v2);
        for (int n = 0; analytic::level_exists(p, n, Branch::Plus); ++n)
            out.push_back({"pt_flip", "V2=" + std::to_string(static_cast<int>(v2)) + " n=" + std::to_string(n),
                           analytic::pt_flip_residual(p, n), 1e-10});
    }
}

} // namespace

CommandResult cmd_verify(const RunConfig& cfg) {
    const std::string& suite = cfg.suite;
    static const std::vector<std::string> known{"all", "identity", "wronskian", "orthogonality", "pt"};
    if (std::find(known.begin(), known.end(), suite) == known.end())
        throw std::invalid_argument("verify: unknown suite '" + suite +
                                    "' (expected identity, wronskian, orthogonality, pt or all)");

    std::vector<Check> checks;
    if (suite == "all" || suite == "identity") identity_suite(cfg.nmax, checks);
    if (suite == "all" || suite == "wronskian") wronskian_suite(checks);
    if (suite == "all" || suite == "orthogonality") orthogonality_suite(checks);
    if (suite == "all" || suite == "pt") pt_suite(checks);

    CommandResult res;
    res.table.columns = {"suite", "case", "value", "threshold", "pass"};
    int failed = 0;
    double worst = 0.0;
    for (const auto& c : checks) {
        res.table.add_row({c.suite, c.name, c.value, c.threshold, static_cast<long long>(c.pass())});
        if (!c.pass()) ++failed;
        worst = std::max(worst, c.value / c.threshold);
    }
    std::ostringstream sum;
    sum << "verify " << suite << ": " << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size()
        << " checks passed (worst value/threshold = " << worst << ")\n";
    for (const auto& c : checks)
        if (!c.pass()) sum << "  FAIL " << c.suite << " " << c.name << ": " << c.value << " >= " << c.threshold << "\n";
    res.summary = sum.str();
    res.exit_code = failed ? kVerificationFailure : kOk;
    return res;
}

} // namespace scarf::cli
