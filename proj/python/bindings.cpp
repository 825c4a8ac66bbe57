// pybind11 module exposing the main operations of the toolkit.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>

#include "kummer/geodesics.hpp"
#include "kummer/hyperkahler.hpp"
#include "kummer/kummer_surface.hpp"
#include "kummer/ma_radial.hpp"
#include "kummer/metric.hpp"

namespace py = pybind11;
using namespace kummer;
using Eigen::Vector2cd;
using Eigen::Vector4d;

namespace {

RadialPotentialSpec make_spec(const std::string& kind, double a, double delta) {
    if (kind == "euclidean") return {PotentialKind::Euclidean, 0.0, delta, 1.0};
    if (kind == "eh") return {PotentialKind::EguchiHanson, a, delta, 1.0};
    if (kind == "glued") return {PotentialKind::Glued, a, delta, 1.0};
    throw ConfigError("kind must be one of: euclidean, eh, glued");
}

Vector2cd as_z(const std::vector<double>& x) {
    if (x.size() != 4) throw ConfigError("points are given as 4 reals (x1, y1, x2, y2)");
    return hol_components(Vector4d(x[0], x[1], x[2], x[3]));
}

std::vector<std::vector<Complex>> matrix_to_list(const Eigen::Matrix2cd& m) {
    return {{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}};
}

py::dict sigma_dict(const SigmaInvariants& s) {
    py::dict d;
    d["sII"] = s.sII;
    d["sJJ"] = s.sJJ;
    d["sKK"] = s.sKK;
    d["sIJ"] = s.sIJ;
    d["sIK"] = s.sIK;
    d["sJK"] = s.sJK;
    return d;
}

}  // namespace

PYBIND11_MODULE(_kummer, m) {
    m.doc() = "Kummer K3 patchwork geometry toolkit";

    py::register_exception<Error>(m, "KummerError");

    m.def(
        "potential_jet",
        [](const std::string& kind, double a, double delta, double u, int order) {
            Jet j = eval_potential(make_spec(kind, a, delta), u, order);
            return std::vector<double>(j.coeffs().begin(), j.coeffs().end());
        },
        py::arg("kind"), py::arg("a"), py::arg("delta"), py::arg("u"), py::arg("order") = 4,
        "Taylor coefficients of the radial potential about u");

    m.def(
        "cutoff_jet",
        [](double u, double delta, int order) {
            Jet j = eval_cutoff(u, delta, order);
            return std::vector<double>(j.coeffs().begin(), j.coeffs().end());
        },
        py::arg("u"), py::arg("delta"), py::arg("order") = 4);

    m.def(
        "metric",
        [](const std::string& kind, double a, double delta, const std::vector<double>& z) {
            RadialMetricField field(make_spec(kind, a, delta));
            return matrix_to_list(metric_at(field, as_z(z)).g);
        },
        py::arg("kind"), py::arg("a"), py::arg("delta"), py::arg("z"),
        "Hermitian metric components g_{mu nubar} at a chart point");

    m.def(
        "curvature",
        [](const std::string& kind, double a, double delta, const std::vector<double>& z) {
            RadialMetricField field(make_spec(kind, a, delta));
            CurvatureBundle c = curvature_at(field, as_z(z));
            py::dict d;
            d["kretschmann"] = c.kretschmann;
            d["scalar"] = c.scalar;
            d["ricci_max"] = c.ricci.cwiseAbs().maxCoeff();
            return d;
        },
        py::arg("kind"), py::arg("a"), py::arg("delta"), py::arg("z"));

    m.def("eh_kretschmann_closed_form", &eh_kretschmann_closed_form, py::arg("a"), py::arg("u"));

    m.def(
        "sigma_invariants",
        [](const std::string& kind, double a, double delta, const std::vector<double>& z,
           const std::vector<double>& v) {
            RadialMetricField field(make_spec(kind, a, delta));
            if (v.size() != 4) throw ConfigError("tangent vectors are 4 reals");
            SigmaInvariants s =
                sigma_invariants(field, as_z(z), Vector4d(v[0], v[1], v[2], v[3]));
            return sigma_dict(s);
        },
        py::arg("kind"), py::arg("a"), py::arg("delta"), py::arg("z"), py::arg("v"));

    m.def(
        "sectional_reconstruction",
        [](py::dict s, double alpha, double beta, double mu, double nu) {
            SigmaInvariants si;
            si.sII = s["sII"].cast<double>();
            si.sJJ = s["sJJ"].cast<double>();
            si.sKK = s["sKK"].cast<double>();
            si.sIJ = s["sIJ"].cast<double>();
            si.sIK = s["sIK"].cast<double>();
            si.sJK = s["sJK"].cast<double>();
            return sectional_reconstruction(si, alpha, beta, mu, nu);
        },
        py::arg("sigma"), py::arg("alpha"), py::arg("beta"), py::arg("mu"), py::arg("nu"));

    m.def(
        "integrate_geodesic",
        [](const std::string& kind, double a, double delta, const std::vector<double>& z,
           const std::vector<double>& v, double time, double step) {
            RadialMetricField field(make_spec(kind, a, delta));
            GeodesicState s0{as_z(z), as_z(v)};
            GeodesicPath path = integrate_geodesic(field, s0, time, step);
            py::dict d;
            const auto& e = path.back();
            d["z"] = std::vector<double>{e.z(0).real(), e.z(0).imag(), e.z(1).real(),
                                         e.z(1).imag()};
            d["v"] = std::vector<double>{e.v(0).real(), e.v(0).imag(), e.v(1).real(),
                                         e.v(1).imag()};
            d["energy_drift"] = path.energy_drift;
            d["steps"] = path.states.size();
            return d;
        },
        py::arg("kind"), py::arg("a"), py::arg("delta"), py::arg("z"), py::arg("v"),
        py::arg("time"), py::arg("step") = 1e-3);

    m.def(
        "equator_stability",
        [](double a, int n_modes) {
            BundleMetricField field(a, false, 0.01);
            double speed = 2.0 / std::sqrt(a);
            double period = std::numbers::pi * std::sqrt(a);
            GeodesicState s0{Vector2cd(0.0, 1.0), Vector2cd(0.0, Complex(0.0, speed))};
            GeodesicPath path = integrate_geodesic(field, s0, period, period / 1024);
            StabilityReport rep = second_variation_spectrum(field, path, n_modes);
            py::dict d;
            d["min_eigenvalue"] = rep.min_eigenvalue;
            d["nullity"] = rep.nullity_estimate;
            d["sup_riemann"] = rep.sup_riemann;
            d["length"] = period;
            return d;
        },
        py::arg("a"), py::arg("n_modes") = 16,
        "Second-variation spectrum of the exceptional-sphere equator");

    m.def(
        "solve_radial_ma",
        [](double f_const, double h0, double u0, double u1, int n_nodes) {
            RadialMASolution sol =
                solve_radial_ma([=](double) { return f_const; }, h0, u0, u1, n_nodes);
            py::dict d;
            d["grid"] = sol.grid;
            d["h"] = sol.h;
            d["phi"] = sol.phi;
            d["residual"] = sol.residual;
            return d;
        },
        py::arg("f_const"), py::arg("h0"), py::arg("u0"), py::arg("u1"), py::arg("n_nodes") = 257,
        "Radial Monge-Ampere solve with constant determinant data");

    m.def(
        "neck_correction",
        [](const std::vector<double>& a_grid, double delta) {
            NeckCorrectionReport rep = neck_correction_experiment(a_grid, delta);
            py::list rows;
            for (const auto& r : rep.rows) {
                py::dict d;
                d["a"] = r.a;
                d["a_model"] = r.a_model;
                d["sup_phi"] = r.sup_phi;
                d["sup_lap_phi"] = r.sup_lap_phi;
                rows.append(d);
            }
            py::dict d;
            d["rows"] = rows;
            d["slope_sup_phi"] = rep.slope_sup_phi;
            return d;
        },
        py::arg("a_grid"), py::arg("delta") = 0.5);

    m.def(
        "laplacian_identity",
        [](double a, double x) {
            RadialMetricField field(
                RadialPotentialSpec{PotentialKind::EguchiHanson, a, 0.1, 1.0});
            LaplacianIdentityReport rep =
                laplacian_riemann_identity(field, Vector2cd(Complex(x, 0.0), 0.0));
            py::dict d;
            d["lhs"] = rep.lhs;
            d["rhs_general"] = rep.rhs_general;
            d["rhs_fixed_set"] = rep.rhs_fixed_set;
            d["sigma_II"] = rep.sigma_ii;
            return d;
        },
        py::arg("a"), py::arg("x"));

    py::class_<KummerSurface>(m, "KummerSurface")
        .def(py::init([](double lattice_scale, const std::vector<double>& a, double delta) {
                 KummerSurface s;
                 s.lattice_scale = lattice_scale;
                 s.delta = delta;
                 if (a.size() == 1) {
                     s.a.fill(a[0]);
                 } else if (a.size() == 16) {
                     std::copy(a.begin(), a.end(), s.a.begin());
                 } else {
                     throw ConfigError("a must have 1 or 16 entries");
                 }
                 s.validate();
                 return s;
             }),
             py::arg("lattice_scale") = 8.0, py::arg("a") = std::vector<double>{0.05},
             py::arg("delta") = 0.1)
        .def_static("from_json", &KummerSurface::from_json_text)
        .def("to_json", &KummerSurface::to_json_text)
        .def("locate",
             [](const KummerSurface& s, const std::vector<double>& w) {
                 ChartPoint p = locate(s, as_z(w));
                 py::dict d;
                 d["chart"] = p.chart == ChartTag::Flat  ? "flat"
                              : p.chart == ChartTag::EH ? "eh"
                                                         : "bundle";
                 d["neck_index"] = p.neck_index;
                 d["coords"] = std::vector<double>{p.coords(0).real(), p.coords(0).imag(),
                                                   p.coords(1).real(), p.coords(1).imag()};
                 return d;
             })
        .def("volumes",
             [](const KummerSurface& s) {
                 VolumeReport rep = volumes_and_A(s);
                 py::dict d;
                 d["A"] = rep.a_quadrature;
                 d["A_closed_form"] = rep.a_closed_form;
                 d["neck_deficit"] =
                     std::vector<double>(rep.neck_deficit.begin(), rep.neck_deficit.end());
                 return d;
             })
        .def("isometry_count",
             [](const KummerSurface& s) { return isometry_group(s).size(); })
        .def("special_torus",
             [](const KummerSurface& s) {
                 SpecialTorusReport rep = special_torus_checks(s);
                 py::dict d;
                 d["min_u"] = rep.min_u_on_torus;
                 d["max_drift"] = rep.max_drift;
                 d["min_eigenvalue"] = rep.closed_geodesic_min_eig;
                 d["nullity"] = rep.closed_geodesic_nullity;
                 return d;
             })
        .def("homothety_residual",
             [](const KummerSurface& s, double alpha) { return homothety_check(s, alpha); },
             py::arg("alpha"));
}
