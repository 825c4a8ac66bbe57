// Batch command-line front end: every subcommand writes a reproducible
// CSV or JSON report and exits 0 on success, 1 on a failed numeric check,
// 2 on usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "kummer/geodesics.hpp"
#include "kummer/hyperkahler.hpp"
#include "kummer/kummer_surface.hpp"
#include "kummer/ma_radial.hpp"
#include "kummer/metric.hpp"
#include "kummer/quadrature.hpp"

using namespace kummer;
using Eigen::Vector2cd;
using Eigen::Vector4d;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int thread_count() {
    if (const char* env = std::getenv("KUMMER_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

template <typename Fn>
void parallel_for(int n, Fn&& fn) {
    int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            int i;
            while ((i = next.fetch_add(1)) < n) fn(i);
        });
    for (auto& t : pool) t.join();
}

struct Output {
    std::string path;    // empty = stdout
    std::string format;  // csv | json
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    nlohmann::json json_payload;

    void add_meta(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }

    void write() const {
        std::ostringstream out;
        if (format == "json") {
            nlohmann::json j;
            for (const auto& [k, v] : meta) j["meta"][k] = v;
            if (!json_payload.is_null()) j["data"] = json_payload;
            if (!rows.empty()) {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& row : rows) {
                    nlohmann::json obj;
                    for (size_t c = 0; c < columns.size(); ++c) obj[columns[c]] = row[c];
                    arr.push_back(obj);
                }
                j["rows"] = arr;
            }
            out << j.dump(2) << "\n";
        } else {
            out << "# kummer " << kVersion << "\n";
            for (const auto& [k, v] : meta) out << "# " << k << "=" << v << "\n";
            for (size_t c = 0; c < columns.size(); ++c)
                out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
            for (const auto& row : rows) {
                for (size_t c = 0; c < row.size(); ++c)
                    out << fmt(row[c]) << (c + 1 < row.size() ? "," : "\n");
            }
        }
        if (path.empty()) {
            std::cout << out.str();
        } else {
            std::ofstream f(path);
            if (!f) throw ConfigError("cannot open output file: " + path);
            f << out.str();
        }
    }
};

int fail_check(const std::string& name, const std::string& detail) {
    std::cerr << "check failed: " << name << " (" << detail << ")\n";
    return 1;
}

RadialPotentialSpec spec_from(const std::string& kind, double a, double delta) {
    if (kind == "euclidean") return {PotentialKind::Euclidean, 0.0, delta, 1.0};
    if (kind == "eh") return {PotentialKind::EguchiHanson, a, delta, 1.0};
    if (kind == "glued") return {PotentialKind::Glued, a, delta, 1.0};
    throw ConfigError("unknown potential kind: " + kind);
}

KummerSurface surface_from(const std::string& config, double lattice_scale, double a_scale,
                           double delta) {
    if (!config.empty()) return KummerSurface::from_json_file(config);
    KummerSurface s;
    s.lattice_scale = lattice_scale;
    s.delta = delta;
    s.a.fill(a_scale);
    s.validate();
    return s;
}

int run_curvature_profile(Output& out, double a, double umin, double umax, int n) {
    RadialMetricField field(RadialPotentialSpec{PotentialKind::EguchiHanson, a, 0.1, 1.0});
    out.columns = {"u", "kretschmann", "kretschmann_closed_form", "ricci_max"};
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
        double u = umin * std::pow(umax / umin, i / (n - 1.0));
        Vector2cd z(std::sqrt(u), 0.0);
        CurvatureBundle c = curvature_at(field, z);
        double closed = eh_kretschmann_closed_form(a, u);
        out.rows.push_back({u, c.kretschmann, closed, c.ricci.cwiseAbs().maxCoeff()});
        double rel = std::abs(c.kretschmann - closed) / closed;
        worst = std::max(worst, rel);
        // the metric anisotropy kappa amplifies rounding in the curvature
        // assembly by kappa^3; the gate widens accordingly at small u
        double kappa = a * a / (u * std::sqrt(a * a + u * u));
        if (rel > 1e-10 + 5e-13 * kappa * kappa * kappa) ok = false;
    }
    out.add_meta("max_relative_error", fmt(worst));
    out.add_meta("tolerance", "1e-10 plus the cubed-anisotropy rounding bound");
    out.write();
    if (!ok) return fail_check("curvature-profile", "profile deviates from 24a^4/(a^2+u^2)^3");
    return 0;
}

int run_geodesic(Output& out, const std::string& kind, double a, double delta,
                 std::vector<double> z0, std::vector<double> v0, double time, double step) {
    RadialMetricField field(spec_from(kind, a, delta));
    GeodesicState s0{hol_components(Vector4d(z0[0], z0[1], z0[2], z0[3])),
                     hol_components(Vector4d(v0[0], v0[1], v0[2], v0[3]))};
    GeodesicPath path = integrate_geodesic(field, s0, time, step);
    out.columns = {"t", "re_z1", "im_z1", "re_z2", "im_z2", "energy"};
    size_t stride = std::max<size_t>(1, path.states.size() / 2000);
    for (size_t i = 0; i < path.states.size(); i += stride) {
        const auto& s = path.states[i];
        out.rows.push_back({path.t[i], s.z(0).real(), s.z(0).imag(), s.z(1).real(),
                            s.z(1).imag(), energy_of(field, s)});
    }
    out.add_meta("energy_drift", fmt(path.energy_drift));
    out.write();
    if (path.energy_drift > 1e-9 * std::max(1.0, time))
        return fail_check("geodesic", "energy drift above 1e-9 per unit time");
    return 0;
}

int run_stability(Output& out, const std::string& which, double a, int n_modes) {
    out.columns = {"min_eigenvalue", "nullity", "sup_riemann", "dim"};
    if (which == "flat-torus") {
        KummerSurface s;
        s.a.fill(a);
        KummerMetricField field(s);
        Complex c(s.lattice_scale / 4, s.lattice_scale / 4);
        GeodesicState loop{Vector2cd(Complex(0.2, 0.1), c), Vector2cd(1.0, 0.0)};
        GeodesicPath path =
            integrate_geodesic(field, loop, s.lattice_scale, s.lattice_scale / 1024.0);
        StabilityReport rep = second_variation_spectrum(field, path, n_modes);
        out.rows.push_back({rep.min_eigenvalue, double(rep.nullity_estimate), rep.sup_riemann,
                            double(rep.dim)});
        out.add_meta("case", which);
        out.write();
        if (rep.min_eigenvalue < -1e-8 || rep.nullity_estimate < 3)
            return fail_check("stability", "flat torus geodesic must be stable with nullity >= 3");
        return 0;
    }
    if (which == "eh-equator") {
        BundleMetricField field(a, false, 0.01);
        double speed = 2.0 / std::sqrt(a);
        double period = std::numbers::pi * std::sqrt(a);
        GeodesicState s0{Vector2cd(0.0, 1.0), Vector2cd(0.0, Complex(0.0, speed))};
        GeodesicPath path = integrate_geodesic(field, s0, period, period / 1024);
        StabilityReport rep = second_variation_spectrum(field, path, n_modes);
        out.rows.push_back({rep.min_eigenvalue, double(rep.nullity_estimate), rep.sup_riemann,
                            double(rep.dim)});
        out.add_meta("case", which);
        out.write();
        if (rep.min_eigenvalue >= 0.0)
            return fail_check("stability", "the equator of the exceptional sphere must be unstable");
        return 0;
    }
    if (which == "eh-circle") {
        // closed circles in the chart (not geodesics): reports the pairing of
        // curvature along the path with the bottom of the spectrum
        RadialMetricField field(RadialPotentialSpec{PotentialKind::EguchiHanson, a, 0.1, 1.0});
        out.columns = {"radius2", "sup_riemann", "min_eigenvalue", "nullity"};
        for (double u : {0.5, 1.0, 2.0, 4.0}) {
            double r = std::sqrt(u);
            int n = 1024;
            GeodesicPath circle;
            double period = 2 * std::numbers::pi;
            for (int i = 0; i <= n; ++i) {
                double t = period * i / n;
                GeodesicState s;
                s.z = Vector2cd(Complex(r * std::cos(t), r * std::sin(t)), 0.0);
                s.v = Vector2cd(Complex(-r * std::sin(t), r * std::cos(t)), 0.0);
                circle.t.push_back(t);
                circle.states.push_back(s);
            }
            circle.energy0 = energy_of(field, circle.states.front());
            StabilityReport srep = second_variation_spectrum(field, circle, n_modes);
            out.rows.push_back(
                {u, srep.sup_riemann, srep.min_eigenvalue, double(srep.nullity_estimate)});
        }
        out.add_meta("case", which);
        out.write();
        return 0;
    }
    throw ConfigError("unknown stability case: " + which);
}

int run_sigma(Output& out, double a, int trials, unsigned seed) {
    RadialMetricField field(RadialPotentialSpec{PotentialKind::EguchiHanson, a, 0.1, 1.0});
    out.columns = {"u", "sII", "sJJ", "sKK", "sIJ", "sIK", "sJK", "trace"};
    std::vector<std::vector<double>> rows(trials);
    std::vector<double> sums(trials);
    std::mt19937 master(seed);
    std::vector<std::uint32_t> row_seeds(trials);
    for (int i = 0; i < trials; ++i) row_seeds[i] = master();
    parallel_for(trials, [&](int i) {
        std::mt19937 gen(row_seeds[i]);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        std::uniform_real_distribution<double> uu(0.2, 4.0);
        Vector2cd z(Complex(unif(gen), unif(gen)), Complex(unif(gen), unif(gen)));
        z *= std::sqrt(uu(gen) / (std::norm(z(0)) + std::norm(z(1))));
        Vector4d v(unif(gen), unif(gen), unif(gen), unif(gen));
        SigmaInvariants s = sigma_invariants(field, z, v);
        double u = std::norm(z(0)) + std::norm(z(1));
        double trace = s.sII + s.sJJ + s.sKK;
        rows[i] = {u, s.sII, s.sJJ, s.sKK, s.sIJ, s.sIK, s.sJK, trace};
        sums[i] = std::abs(trace);
    });
    out.rows = rows;
    double worst = 0.0;
    for (double v : sums) worst = std::max(worst, v);
    out.add_meta("max_abs_trace", fmt(worst));
    out.write();
    if (worst > 1e-10) return fail_check("sigma", "sigma_II + sigma_JJ + sigma_KK must vanish");
    return 0;
}

int run_identity_check(Output& out, const std::string& which, double a, int trials,
                       unsigned seed) {
    if (which == "laplacian") {
        RadialMetricField field(RadialPotentialSpec{PotentialKind::EguchiHanson, a, 0.1, 1.0});
        out.columns = {"x", "lhs", "rhs_general", "rhs_fixed_set", "rel_error"};
        double worst = 0.0;
        for (double x : {0.8, 1.0, 1.2, 1.5, 1.9}) {
            LaplacianIdentityReport rep =
                laplacian_riemann_identity(field, Vector2cd(Complex(x, 0.0), 0.0));
            double rel = std::abs(rep.lhs - rep.rhs_general) / (1.0 + std::abs(rep.lhs));
            rel = std::max(rel,
                           std::abs(rep.lhs - rep.rhs_fixed_set) / (1.0 + std::abs(rep.lhs)));
            out.rows.push_back({x, rep.lhs, rep.rhs_general, rep.rhs_fixed_set, rel});
            worst = std::max(worst, rel);
        }
        out.add_meta("max_relative_error", fmt(worst));
        out.add_meta("tolerance", "1e-5");
        out.write();
        if (worst > 1e-5) return fail_check("identity-check", "laplacian identity residual");
        return 0;
    }
    if (which == "yau") {
        RadialMetricField field(RadialPotentialSpec{PotentialKind::EguchiHanson, a, 0.1, 1.0});
        out.columns = {"trial", "norm_ma", "phi_der", "min_slack"};
        std::mt19937 gen(seed);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        double worst_res = 0.0, worst_slack = 0.0;
        for (int i = 0; i < trials; ++i) {
            double c1 = 0.004 * unif(gen), c2 = 0.004 * unif(gen);
            double w = 1.0 + std::abs(unif(gen));
            RadialTestFn fn = [=](double u0, int order) {
                Jet x = Jet::variable(1, order, 0, u0);
                return x * x * c1 + sin(x * w) * c2;
            };
            Vector2cd z(Complex(0.8 + 0.3 * std::abs(unif(gen)), 0.2 * unif(gen)),
                        Complex(0.3 * unif(gen), 0.3 * unif(gen)));
            YauResiduals res = yau_identity_residuals(field, fn, z);
            out.rows.push_back({double(i), res.norm_ma, res.phi_der, res.min_slack});
            worst_res = std::max({worst_res, res.norm_ma, res.phi_der});
            worst_slack = std::min(worst_slack, res.min_slack);
        }
        out.add_meta("max_residual", fmt(worst_res));
        out.add_meta("min_slack", fmt(worst_slack));
        out.add_meta("tolerance", "1e-9");
        out.write();
        if (worst_res > 1e-9 || worst_slack < -1e-9)
            return fail_check("identity-check", "yau identity residual or inequality slack");
        return 0;
    }
    if (which == "normma") {
        double delta = 0.5;
        NeckCorrectionRecord rec = neck_correction_single(a, delta);
        RadialPotentialSpec base{PotentialKind::Glued, a, delta, 1.0};
        RadialMASolution sol = solve_radial_ma([&](double) { return rec.a_model; }, rec.htilde0,
                                               0.5, 2.0, 161);
        out.columns = {"u", "residual"};
        double worst = 0.0;
        for (size_t i = 0; i < sol.grid.size(); i += 8) {
            double u = sol.grid[i];
            Jet hb = eval_radial_h(base, u, 1);
            double l1 = sol.h[i] / hb.value();
            double l2 = (u * rec.a_model / sol.h[i]) / hb.derivative({1});
            double lap = (l1 - 1.0) + (l2 - 1.0);
            double hess2 = (l1 - 1.0) * (l1 - 1.0) + (l2 - 1.0) * (l2 - 1.0);
            double res = std::abs(2.0 * (l1 * l2 - 1.0) - 2.0 * lap - lap * lap + hess2);
            out.rows.push_back({u, res});
            worst = std::max(worst, res);
        }
        out.add_meta("max_residual", fmt(worst));
        out.add_meta("tolerance", "1e-10");
        out.write();
        if (worst > 1e-10) return fail_check("identity-check", "determinant identity residual");
        return 0;
    }
    throw ConfigError("unknown identity check: " + which);
}

int run_kummer_volumes(Output& out, const KummerSurface& s) {
    VolumeReport rep = volumes_and_A(s);
    out.columns = {"neck", "volume", "deficit", "boundary_inner", "boundary_outer"};
    for (int i = 0; i < 16; ++i)
        out.rows.push_back({double(i), rep.neck_volume[i], rep.neck_deficit[i],
                            rep.boundary_inner[i], rep.boundary_outer[i]});
    out.add_meta("A_quadrature", fmt(rep.a_quadrature));
    out.add_meta("A_closed_form", fmt(rep.a_closed_form));
    out.add_meta("torus_volume", fmt(rep.torus_volume));
    out.add_meta("scale_ratio", fmt(rep.scale_ratio));
    out.write();
    if (std::abs(rep.a_quadrature - rep.a_closed_form) > 1e-10)
        return fail_check("kummer-volumes", "assembled A deviates from the closed form");
    return 0;
}

int run_isometries(Output& out, const KummerSurface& s, unsigned seed) {
    std::vector<IsometryElement> group = isometry_group(s);
    nlohmann::json elements = nlohmann::json::array();
    std::map<int, int> order_histogram;
    int max_order = 0;
    for (const auto& e : group) {
        int o = e.order();
        order_histogram[o] += 1;
        max_order = std::max(max_order, o);
        nlohmann::json je;
        je["swap"] = e.swap;
        je["k1"] = e.k1;
        je["k2"] = e.k2;
        je["translation_units"] = e.n;
        je["conj"] = e.conj;
        je["order"] = o;
        elements.push_back(je);
    }
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> unif(0.0, s.lattice_scale);
    std::uniform_int_distribution<size_t> pick(0, group.size() - 1);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        Vector2cd w(Complex(unif(gen), unif(gen)), Complex(unif(gen), unif(gen)));
        if (nearest_neck_u(s, w).first < 1e-3) continue;
        const IsometryElement& e = group[pick(gen)];
        worst = std::max(worst, std::abs(local_potential(s, e.apply(w, s.lattice_scale)) -
                                         local_potential(s, w)));
    }
    out.json_payload["count"] = group.size();
    out.json_payload["max_order"] = max_order;
    nlohmann::json hist;
    for (auto& [o, c] : order_histogram) hist[std::to_string(o)] = c;
    out.json_payload["order_histogram"] = hist;
    out.json_payload["max_potential_deviation"] = worst;
    out.json_payload["elements"] = elements;
    out.add_meta("count", std::to_string(group.size()));
    out.write();
    if (group.size() != 512) return fail_check("isometries", "expected 512 elements");
    if (max_order != 8) return fail_check("isometries", "maximum element order must be 8");
    if (worst > 1e-12) return fail_check("isometries", "potential invariance violated");
    return 0;
}

int run_ma_scaling(Output& out, const std::vector<double>& a_grid, double delta) {
    std::vector<NeckCorrectionRecord> recs(a_grid.size());
    parallel_for(static_cast<int>(a_grid.size()),
                 [&](int i) { recs[i] = neck_correction_single(a_grid[i], delta); });
    out.columns = {"a", "a_model", "sup_phi", "sup_lap_phi", "min_lap_phi"};
    std::vector<double> sups;
    for (const auto& r : recs) {
        out.rows.push_back({r.a, r.a_model, r.sup_phi, r.sup_lap_phi, r.min_lap_phi});
        sups.push_back(r.sup_phi);
    }
    double slope = loglog_slope(a_grid, sups);
    out.add_meta("slope_sup_phi", fmt(slope));
    out.add_meta("delta", fmt(delta));
    out.add_meta("tolerance", "2.0 +- 0.2");
    out.write();
    if (std::abs(slope - 2.0) > 0.2)
        return fail_check("ma-scaling", "sup|phi| slope outside 2.0 +- 0.2");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kummer K3 patchwork geometry toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path, format = "csv";
    unsigned seed = 42;
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", seed, "random seed for sampled checks");

    auto* prof = app.add_subcommand("curvature-profile", "Eguchi-Hanson curvature profile");
    prof->fallthrough();
    double pa = 1.0, pumin = 0.1, pumax = 10.0;
    int pn = 200;
    prof->add_option("--a", pa, "gluing scale");
    prof->add_option("--u-min", pumin, "lower end of the u range");
    prof->add_option("--u-max", pumax, "upper end of the u range");
    prof->add_option("--n", pn, "number of sample points");

    auto* geo = app.add_subcommand("geodesic", "integrate a chart geodesic");
    geo->fallthrough();
    std::string gkind = "eh";
    double ga = 0.5, gdelta = 0.1, gtime = 2.0, gstep = 1e-3;
    std::vector<double> gz = {1.0, 0.0, 0.0, 0.0}, gv = {0.0, 1.0, 0.3, 0.0};
    geo->add_option("--kind", gkind, "euclidean | eh | glued");
    geo->add_option("--a", ga, "gluing scale");
    geo->add_option("--delta", gdelta, "gluing width");
    geo->add_option("--z", gz, "initial position (x1 y1 x2 y2)")->expected(4);
    geo->add_option("--v", gv, "initial velocity (x1 y1 x2 y2)")->expected(4);
    geo->add_option("--time", gtime, "integration time");
    geo->add_option("--step", gstep, "integration step");

    auto* stab = app.add_subcommand("stability", "second variation spectra of closed paths");
    stab->fallthrough();
    std::string scase = "eh-equator";
    double sa = 0.3;
    int smodes = 24;
    stab->add_option("--case", scase, "flat-torus | eh-equator | eh-circle");
    stab->add_option("--a", sa, "gluing scale");
    stab->add_option("--n-modes", smodes, "Fourier modes per component");

    auto* sig = app.add_subcommand("sigma", "random sigma-invariant samples");
    sig->fallthrough();
    double siga = 1.0;
    int strials = 1000;
    sig->add_option("--a", siga, "gluing scale");
    sig->add_option("--trials", strials, "number of random samples");

    auto* ident = app.add_subcommand("identity-check", "pointwise identity residuals");
    ident->fallthrough();
    std::string iwhich = "yau";
    double ia = 1.0;
    int itrials = 50;
    ident->add_option("--which", iwhich, "laplacian | yau | normma");
    ident->add_option("--a", ia, "gluing scale");
    ident->add_option("--trials", itrials, "number of random perturbations");

    auto* vol = app.add_subcommand("kummer-volumes", "neck volumes and the constant A");
    vol->fallthrough();
    std::string vconfig;
    double vr = 8.0, va = 0.1, vdelta = 0.1;
    vol->add_option("--surface-config", vconfig, "surface JSON file");
    vol->add_option("--lattice-scale", vr, "lattice scale R");
    vol->add_option("--a-scale,--a", va, "common gluing scale");
    vol->add_option("--delta", vdelta, "gluing width");

    auto* iso = app.add_subcommand("isometries", "enumerate the 512 isometries");
    iso->fallthrough();
    std::string iconfig;
    double ir = 8.0, iaa = 0.05, idelta = 0.1;
    iso->add_option("--surface-config", iconfig, "surface JSON file");
    iso->add_option("--lattice-scale", ir, "lattice scale R");
    iso->add_option("--a-scale,--a", iaa, "common gluing scale");
    iso->add_option("--delta", idelta, "gluing width");

    auto* ma = app.add_subcommand("ma-scaling", "radial Monge-Ampere correction scaling");
    ma->fallthrough();
    std::string agrid = "0.02,0.05,0.1,0.2";
    double mdelta = 0.5;
    ma->add_option("--a-grid", agrid, "comma-separated gluing scales");
    ma->add_option("--delta", mdelta, "gluing width of the model annulus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Output out;
    out.path = out_path;
    out.format = format;
    out.add_meta("version", kVersion);
    out.add_meta("seed", std::to_string(seed));

    try {
        if (prof->parsed()) {
            out.add_meta("subcommand", "curvature-profile");
            out.add_meta("a", fmt(pa));
            out.add_meta("u_min", fmt(pumin));
            out.add_meta("u_max", fmt(pumax));
            return run_curvature_profile(out, pa, pumin, pumax, pn);
        }
        if (geo->parsed()) {
            out.add_meta("subcommand", "geodesic");
            out.add_meta("kind", gkind);
            out.add_meta("a", fmt(ga));
            out.add_meta("tolerance", "1e-9 per unit time");
            return run_geodesic(out, gkind, ga, gdelta, gz, gv, gtime, gstep);
        }
        if (stab->parsed()) {
            out.add_meta("subcommand", "stability");
            out.add_meta("a", fmt(sa));
            out.add_meta("n_modes", std::to_string(smodes));
            return run_stability(out, scase, sa, smodes);
        }
        if (sig->parsed()) {
            out.add_meta("subcommand", "sigma");
            out.add_meta("a", fmt(siga));
            out.add_meta("trials", std::to_string(strials));
            out.add_meta("tolerance", "1e-10");
            return run_sigma(out, siga, strials, seed);
        }
        if (ident->parsed()) {
            out.add_meta("subcommand", "identity-check");
            out.add_meta("which", iwhich);
            out.add_meta("a", fmt(ia));
            return run_identity_check(out, iwhich, ia, itrials, seed);
        }
        if (vol->parsed()) {
            out.add_meta("subcommand", "kummer-volumes");
            return run_kummer_volumes(out, surface_from(vconfig, vr, va, vdelta));
        }
        if (iso->parsed()) {
            out.add_meta("subcommand", "isometries");
            out.format = "json";
            return run_isometries(out, surface_from(iconfig, ir, iaa, idelta), seed);
        }
        if (ma->parsed()) {
            out.add_meta("subcommand", "ma-scaling");
            std::vector<double> grid;
            std::stringstream ss(agrid);
            std::string tok;
            while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
            if (grid.size() < 2) throw ConfigError("--a-grid needs at least two values");
            return run_ma_scaling(out, grid, mdelta);
        }
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
