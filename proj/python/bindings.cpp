#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scarf/analytic.hpp"
#include "scarf/error.hpp"
#include "scarf/matrix_models.hpp"
#include "scarf/numerics.hpp"
#include "scarf/special_fn.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace scarf;
using analytic::Branch;
using analytic::PotentialParams;

namespace {

Branch branch_arg(const std::string& b) { return analytic::parse_branch(b); }

numerics::Grid make_grid(double half_width, double h, double x_match) {
    numerics::Grid g{-half_width, half_width, h, x_match};
    g.validate();
    return g;
}

template <class T>
py::array_t<T> to_numpy(const std::vector<T>& v) {
    return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::tuple sample_to_numpy(const WavefunctionSample& s) {
    std::vector<double> x(s.grid.count);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = s.grid.x(i);
    return py::make_tuple(to_numpy(x), to_numpy(s.scaled_values()));
}

} // namespace

PYBIND11_MODULE(_scarf, m) {
    m.doc() = "Spectra, eigenstates and exceptional points of the PT-symmetric Scarf-II potential";

    py::register_exception<NonexistentLevel>(m, "NonexistentLevel", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    // special functions
    m.def("pochhammer", &special::pochhammer_ratio, py::arg("x"), py::arg("k"));
    m.def(
        "jacobi",
        [](int n, cplx a, cplx b, cplx z) { return special::jacobi_eval({a, b, n}, z); },
        py::arg("n"), py::arg("a"), py::arg("b"), py::arg("z"), "P_n^{a,b}(z) by the finite sum");
    m.def("identity_coefficient", &special::identity_coefficient, py::arg("n"), py::arg("j"), py::arg("s"));
    m.def(
        "verify_jacobi_identity",
        [](int n, int j, cplx s, std::vector<cplx> z) { return special::verify_jacobi_identity(n, j, s, z); },
        py::arg("n"), py::arg("j"), py::arg("s"), py::arg("z"));

    // closed forms
    m.def(
        "indices",
        [](double v1, double v2) {
            const auto i = analytic::indices(PotentialParams::make(v1, v2));
            return py::dict("s"_a = i.s, "t"_a = i.t, "phase"_a = analytic::to_string(i.phase));
        },
        py::arg("v1"), py::arg("v2"));
    m.def(
        "spectrum",
        [](double v1, double v2) {
            py::list out;
            for (const auto& l : analytic::spectrum(PotentialParams::make(v1, v2)))
                out.append(py::dict("n"_a = l.n, "branch"_a = analytic::to_string(l.branch), "energy"_a = l.energy,
                                    "phase"_a = analytic::to_string(l.phase)));
            return out;
        },
        py::arg("v1"), py::arg("v2"), "Discrete levels sorted by n, plus before minus");
    m.def(
        "level_energy",
        [](double v1, double v2, int n, const std::string& branch) {
            return analytic::level_energy(PotentialParams::make(v1, v2), n, branch_arg(branch));
        },
        py::arg("v1"), py::arg("v2"), py::arg("n"), py::arg("branch") = "plus");
    m.def(
        "level_exists",
        [](double v1, double v2, int n, const std::string& branch) {
            return analytic::level_exists(PotentialParams::make(v1, v2), n, branch_arg(branch));
        },
        py::arg("v1"), py::arg("v2"), py::arg("n"), py::arg("branch") = "plus");
    m.def(
        "eigenstate",
        [](double v1, double v2, int n, const std::string& branch, double half_width, std::size_t points) {
            const auto p = PotentialParams::make(v1, v2);
            return sample_to_numpy(
                analytic::sample_eigenstate(p, n, branch_arg(branch), UniformGrid::symmetric(half_width, points)));
        },
        py::arg("v1"), py::arg("v2"), py::arg("n"), py::arg("branch") = "plus", py::arg("half_width") = 12.0,
        py::arg("points") = 2401, "Returns (x, psi) with the A = 1 normalization");
    m.def(
        "crossings",
        [](double v1, int n_max) {
            py::list out;
            for (const auto& ep : analytic::crossings(v1, n_max)) {
                py::list pairs;
                for (const auto& pr : ep.pairs) pairs.append(py::make_tuple(pr.m, pr.n));
                out.append(py::dict(
                    "kind"_a = ep.kind == analytic::ExceptionalPoint::Kind::Crossing ? "crossing" : "coalescence",
                    "v2"_a = ep.v2, "gap"_a = ep.gap, "pairs"_a = pairs));
            }
            return out;
        },
        py::arg("v1"), py::arg("n_max") = 64);
    m.def("branch_onset", &analytic::branch_onset, py::arg("v1"), py::arg("n"));
    m.def(
        "crossing_dependence",
        [](double v1, double v2, int m_plus, int n_minus) {
            const auto d = analytic::crossing_dependence(PotentialParams::make(v1, v2), m_plus, n_minus);
            return py::dict("ratio"_a = d.ratio, "flatness"_a = d.flatness, "predicted"_a = d.predicted);
        },
        py::arg("v1"), py::arg("v2"), py::arg("m_plus"), py::arg("n_minus"));
    m.def(
        "pt_flip_residual",
        [](double v1, double v2, int n) { return analytic::pt_flip_residual(PotentialParams::make(v1, v2), n); },
        py::arg("v1"), py::arg("v2"), py::arg("n"));

    // numerics
    m.def(
        "shoot",
        [](double v1, double v2, cplx guess, double half_width, double h, double x_match, double tol) {
            numerics::ShootingOptions o;
            o.tol = tol;
            const auto r = numerics::shoot_eigenvalue(PotentialParams::make(v1, v2), guess,
                                                      make_grid(half_width, h, x_match), o);
            return py::dict("energy"_a = r.energy, "iterations"_a = r.iterations, "multiplicity"_a = r.multiplicity,
                            "mismatch"_a = r.mismatch);
        },
        py::arg("v1"), py::arg("v2"), py::arg("guess"), py::arg("half_width") = 15.0, py::arg("h") = 1e-3,
        py::arg("x_match") = 0.0, py::arg("tol") = 1e-12, "Shooting eigenvalue from an initial guess");
    m.def(
        "shot_eigenstate",
        [](double v1, double v2, cplx energy, double half_width, double h, double x_match) {
            return sample_to_numpy(numerics::shot_eigenstate(PotentialParams::make(v1, v2), energy,
                                                             make_grid(half_width, h, x_match)));
        },
        py::arg("v1"), py::arg("v2"), py::arg("energy"), py::arg("half_width") = 15.0, py::arg("h") = 1e-3,
        py::arg("x_match") = 0.0);
    m.def(
        "trace_curve",
        [](double v1, int n, const std::string& branch, double v2_from, double v2_to, int steps) {
            const auto curve = numerics::trace_curve(v1, n, branch_arg(branch), v2_from, v2_to, steps);
            std::vector<double> v2;
            std::vector<cplx> e;
            for (const auto& pt : curve) {
                v2.push_back(pt.v2);
                e.push_back(pt.energy);
            }
            return py::make_tuple(to_numpy(v2), to_numpy(e));
        },
        py::arg("v1"), py::arg("n"), py::arg("branch"), py::arg("v2_from"), py::arg("v2_to"), py::arg("steps"),
        "Returns (v2, energy); energy is nan where the level does not exist");
    m.def(
        "jost_a",
        [](double v1, double v2, cplx energy) { return numerics::jost_a(PotentialParams::make(v1, v2), energy); },
        py::arg("v1"), py::arg("v2"), py::arg("energy"));
    m.def(
        "scan_poles",
        [](double v1, double v2, double e_min, double e_max, int points) {
            numerics::PoleScanOptions o{e_min, e_max, points};
            std::vector<double> out;
            for (const auto& pole : numerics::scan_poles(PotentialParams::make(v1, v2), o)) out.push_back(pole.energy);
            return out;
        },
        py::arg("v1"), py::arg("v2"), py::arg("e_min") = -13.0, py::arg("e_max") = -0.01, py::arg("points") = 2000);

    // matrix models
    m.def(
        "model_spectrum",
        [](double a, double b, double c) {
            const auto s = matrix::model_spectrum({a, b, c});
            return py::dict("e1"_a = s.e1, "e2"_a = s.e2, "v1"_a = std::vector<cplx>{s.v1(0), s.v1(1)},
                            "v2"_a = std::vector<cplx>{s.v2(0), s.v2(1)}, "det"_a = s.eigenvector_determinant);
        },
        py::arg("a"), py::arg("b"), py::arg("c"));
    m.def(
        "is_defective",
        [](const std::vector<std::vector<cplx>>& rows, double tol) {
            const auto n = static_cast<Eigen::Index>(rows.size());
            matrix::CMatrix mat(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n)
                    throw std::invalid_argument("matrix must be square");
                for (Eigen::Index j = 0; j < n; ++j)
                    mat(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
            return matrix::diagonalizability(mat, tol).verdict == matrix::Verdict::Defective;
        },
        py::arg("matrix"), py::arg("tol") = 1e-10);
}
