#include "kummer/kummer_surface.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kummer/quadrature.hpp"

namespace kummer {

namespace {

using Eigen::Matrix2cd;
using Eigen::Vector2cd;
using Eigen::Vector4d;

constexpr Complex kI{0.0, 1.0};

double mod_into(double x, double period) {
    double m = std::fmod(x, period);
    if (m < 0) m += period;
    return m;
}

// centered representative in [-period/2, period/2)
double mod_centered(double x, double period) {
    double m = mod_into(x + period / 2, period);
    return m - period / 2;
}

Vector4d as_real(const Vector2cd& z) { return real_components(z); }

Vector2cd canonical_pm(const Vector2cd& z) {
    Vector4d x = as_real(z);
    for (int i = 0; i < 4; ++i) {
        if (std::abs(x(i)) > 1e-12) return x(i) > 0 ? z : Vector2cd(-z);
    }
    return z;
}

Complex unit_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return 1.0;
        case 1: return kI;
        case 2: return -1.0;
        default: return -kI;
    }
}

}  // namespace

void KummerSurface::validate() const {
    if (delta <= 0.0 || delta > 0.5)
        throw ParameterRangeError("gluing width delta must lie in (0, 1/2]");
    if (lattice_scale < 4.0 * (1.0 + 2.0 * delta))
        throw ParameterRangeError(
            "lattice scale too small: charts around half-lattice points would overlap");
    for (double ai : a)
        if (ai < 0.0) throw ParameterRangeError("gluing scales a_i must be nonnegative");
}

bool KummerSurface::equal_scales() const {
    for (double ai : a)
        if (ai != a[0]) return false;
    return true;
}

double KummerSurface::scale_ratio() const {
    double lo = a[0], hi = a[0];
    for (double ai : a) {
        lo = std::min(lo, ai);
        hi = std::max(hi, ai);
    }
    if (hi == 0.0) return 1.0;
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

Eigen::Vector2cd KummerSurface::half_point(int index) const {
    double h = lattice_scale / 2;
    return Vector2cd(Complex((index & 1) * h, ((index >> 1) & 1) * h),
                     Complex(((index >> 2) & 1) * h, ((index >> 3) & 1) * h));
}

int KummerSurface::half_index(int re1, int im1, int re2, int im2) {
    return (re1 & 1) | ((im1 & 1) << 1) | ((re2 & 1) << 2) | ((im2 & 1) << 3);
}

KummerSurface KummerSurface::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("surface config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("surface config must be a JSON object");
    for (auto& [key, value] : j.items()) {
        (void)value;
        if (key != "lattice_scale" && key != "a" && key != "delta")
            throw ConfigError("unknown surface config key: '" + key + "'");
    }
    if (!j.contains("lattice_scale") || !j["lattice_scale"].is_number())
        throw ConfigError("surface config needs a numeric 'lattice_scale'");
    if (!j.contains("delta") || !j["delta"].is_number())
        throw ConfigError("surface config needs a numeric 'delta'");
    if (!j.contains("a") || !j["a"].is_array() || j["a"].size() != 16)
        throw ConfigError("surface config needs 'a' as an array of 16 gluing scales");
    KummerSurface s;
    s.lattice_scale = j["lattice_scale"].get<double>();
    s.delta = j["delta"].get<double>();
    for (int i = 0; i < 16; ++i) {
        if (!j["a"][i].is_number()) throw ConfigError("surface config: a[i] must be numeric");
        s.a[i] = j["a"][i].get<double>();
    }
    s.validate();
    return s;
}

KummerSurface KummerSurface::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open surface config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string KummerSurface::to_json_text() const {
    nlohmann::json j;
    j["lattice_scale"] = lattice_scale;
    j["delta"] = delta;
    j["a"] = a;
    return j.dump(2);
}

std::pair<double, int> nearest_neck_u(const KummerSurface& surface, const Vector2cd& w) {
    double h = surface.lattice_scale / 2;
    Vector4d x = as_real(w);
    Vector4d local;
    int bits[4];
    for (int i = 0; i < 4; ++i) {
        double n = std::round(x(i) / h);
        local(i) = x(i) - n * h;
        bits[i] = static_cast<int>(std::llround(n)) & 1;
    }
    double u = local.squaredNorm();
    return {u, KummerSurface::half_index(bits[0], bits[1], bits[2], bits[3])};
}

ChartPoint locate(const KummerSurface& surface, const Vector2cd& w, double u_bundle) {
    surface.validate();
    double h = surface.lattice_scale / 2;
    Vector4d x = as_real(w);
    Vector4d local;
    int bits[4];
    for (int i = 0; i < 4; ++i) {
        double n = std::round(x(i) / h);
        local(i) = x(i) - n * h;
        bits[i] = static_cast<int>(std::llround(n)) & 1;
    }
    double u = local.squaredNorm();
    if (u == 0.0)
        throw OrbifoldPointError("half-lattice point: resolved only in the bundle chart");
    ChartPoint p;
    Vector2cd zloc = hol_components(local);
    if (u < surface.chart_radius2()) {
        p.chart = u < u_bundle ? ChartTag::Bundle : ChartTag::EH;
        p.neck_index = KummerSurface::half_index(bits[0], bits[1], bits[2], bits[3]);
        p.coords = canonical_pm(zloc);
        return p;
    }
    p.chart = ChartTag::Flat;
    p.neck_index = -1;
    Vector4d centered;
    for (int i = 0; i < 4; ++i) centered(i) = mod_centered(x(i), surface.lattice_scale);
    p.coords = canonical_pm(hol_components(centered));
    return p;
}

double local_potential(const KummerSurface& surface, const Vector2cd& w) {
    auto [u, index] = nearest_neck_u(surface, w);
    if (u == 0.0) throw OrbifoldPointError("potential undefined at the orbifold point");
    RadialPotentialSpec spec{PotentialKind::Glued, surface.a[index], surface.delta, 1.0};
    if (spec.a == 0.0) spec.kind = PotentialKind::Euclidean;
    return eval_potential(spec, u, 0).value();
}

std::array<CJet, 4> KummerMetricField::metric_jets(const Vector2cd& z, int order) const {
    check_point(z);
    auto [u, index] = nearest_neck_u(surface_, z);
    double euclid_beyond = 1.0 + 1.5 * surface_.delta;
    if (u >= euclid_beyond || surface_.a[index] == 0.0) {
        std::array<CJet, 4> g = {CJet::constant(4, order, 1.0), CJet::constant(4, order, 0.0),
                                 CJet::constant(4, order, 0.0), CJet::constant(4, order, 1.0)};
        return g;
    }
    double h = surface_.lattice_scale / 2;
    Vector4d x = as_real(z);
    Vector4d local;
    for (int i = 0; i < 4; ++i) local(i) = x(i) - std::round(x(i) / h) * h;
    RadialPotentialSpec spec{PotentialKind::Glued, surface_.a[index], surface_.delta, 1.0};
    RadialMetricField radial(spec);
    return radial.metric_jets(hol_components(local), order);
}

void KummerMetricField::check_point(const Vector2cd& z) const {
    double u = nearest_neck_u(surface_, z).first;
    if (u < 1e-6)
        throw ProximityError("covering coordinates degenerate near a half-lattice point");
}

bool KummerMetricField::same_point(const Vector2cd& x, const Vector2cd& y, double tol) const {
    Vector4d d = as_real(x) - as_real(y);
    for (int i = 0; i < 4; ++i) d(i) = mod_centered(d(i), surface_.lattice_scale);
    return d.cwiseAbs().maxCoeff() < tol;
}

double a_value_closed_form(double torus_volume, double a_norm2) {
    double val = 1.0 - a_norm2 * std::numbers::pi * std::numbers::pi / (2.0 * torus_volume);
    if (val <= 0.0)
        throw ParameterRangeError("A <= 0: gluing scales too large for this torus volume");
    return val;
}

VolumeReport volumes_and_A(const KummerSurface& surface) {
    surface.validate();
    VolumeReport rep;
    double pi2 = std::numbers::pi * std::numbers::pi;
    rep.torus_volume = std::pow(surface.lattice_scale, 4);
    double u0 = 1.0, u1 = 1.0 + surface.delta;
    rep.euclidean_neck_volume = pi2 / 2.0 * (u1 * u1 - u0 * u0) / 2.0;
    double a_norm2 = 0.0;
    for (int i = 0; i < 16; ++i) {
        double ai = surface.a[i];
        a_norm2 += ai * ai;
        if (ai == 0.0) {
            rep.neck_volume[i] = rep.euclidean_neck_volume;
            rep.neck_deficit[i] = 0.0;
            rep.boundary_inner[i] = u0;
            rep.boundary_outer[i] = u1;
            continue;
        }
        RadialPotentialSpec spec{PotentialKind::Glued, ai, surface.delta, 1.0};
        auto integrand = [&](double u) {
            Jet h = eval_radial_h(spec, u, 1);
            return h.value() * h.derivative({1});
        };
        rep.neck_volume[i] = pi2 / 2.0 * gauss_legendre(integrand, u0, u1, 64);
        rep.neck_deficit[i] = rep.euclidean_neck_volume - rep.neck_volume[i];
        rep.boundary_inner[i] = eval_radial_h(spec, u0, 0).value();
        rep.boundary_outer[i] = eval_radial_h(spec, u1, 0).value();
    }
    double deficit_sum = 0.0;
    for (double d : rep.neck_deficit) deficit_sum += d;
    rep.a_quadrature = 1.0 - 2.0 * deficit_sum / rep.torus_volume;
    rep.a_closed_form = a_value_closed_form(rep.torus_volume, a_norm2);
    rep.scale_ratio = surface.scale_ratio();
    if (rep.a_quadrature <= 0.0)
        throw ParameterRangeError("A <= 0: gluing scales too large for this torus volume");
    return rep;
}

// --- isometries ---------------------------------------------------------------

Matrix2cd IsometryElement::matrix() const {
    Matrix2cd d = Matrix2cd::Zero();
    d(0, 0) = unit_power(k1);
    d(1, 1) = unit_power(k2);
    if (!swap) return d;
    Matrix2cd s;
    s << 0, 1, 1, 0;
    return s * d;
}

Eigen::Vector2cd IsometryElement::translation(double lattice_scale) const {
    double h = lattice_scale / 2;
    return Vector2cd(Complex(n[0] * h, n[1] * h), Complex(n[2] * h, n[3] * h));
}

Eigen::Vector2cd IsometryElement::apply(const Vector2cd& z, double lattice_scale) const {
    Vector2cd w = conj ? Vector2cd(z.conjugate()) : z;
    return matrix() * w + translation(lattice_scale);
}

namespace {

// multiply the exact half-lattice translation (given mod 2 in units of R/2)
// by the matrix S^s D(i^k1, i^k2); mod 2 a factor of i swaps re and im
std::array<int, 4> apply_matrix_mod2(bool swap, int k1, int k2, const std::array<int, 4>& n) {
    std::array<int, 2> c1 = {n[0], n[1]}, c2 = {n[2], n[3]};
    auto rot = [](std::array<int, 2> c, int k) {
        if ((((k % 4) + 4) % 4) % 2 == 1) std::swap(c[0], c[1]);
        return c;
    };
    c1 = rot(c1, k1);
    c2 = rot(c2, k2);
    if (swap) std::swap(c1, c2);
    return {c1[0] & 1, c1[1] & 1, c2[0] & 1, c2[1] & 1};
}

}  // namespace

IsometryElement IsometryElement::compose(const IsometryElement& other) const {
    // this(other(z)) = B1 c1(B2 c2(z) + b2) + b1
    IsometryElement r;
    int q1 = other.k1, q2 = other.k2;
    if (conj) {
        q1 = -q1;
        q2 = -q2;
    }
    if (other.swap) {
        // D(k1,k2) S = S D(k2,k1), so the swap permutes this element's powers
        r.swap = !swap;
        r.k1 = ((k2 + q1) % 4 + 4) % 4;
        r.k2 = ((k1 + q2) % 4 + 4) % 4;
    } else {
        r.swap = swap;
        r.k1 = ((k1 + q1) % 4 + 4) % 4;
        r.k2 = ((k2 + q2) % 4 + 4) % 4;
    }
    // translation: B1 applied to other's translation (conjugation is the
    // identity mod the lattice), plus this translation
    std::array<int, 4> moved = apply_matrix_mod2(swap, k1, k2, other.n);
    for (int i = 0; i < 4; ++i) r.n[i] = (moved[i] + n[i]) & 1;
    r.conj = conj != other.conj;
    r.canonicalize();
    return r;
}

void IsometryElement::canonicalize() {
    k1 = ((k1 % 4) + 4) % 4;
    k2 = ((k2 % 4) + 4) % 4;
    for (int& v : n) v &= 1;
    if (k1 >= 2) {  // (B, b) ~ (-B, -b) and -b = b mod the lattice
        k1 -= 2;
        k2 = (k2 + 2) % 4;
    }
}

bool IsometryElement::is_identity() const {
    return !swap && k1 == 0 && k2 == 0 && !conj && n[0] == 0 && n[1] == 0 && n[2] == 0 &&
           n[3] == 0;
}

int IsometryElement::order(int max_order) const {
    IsometryElement acc = *this;
    for (int k = 1; k <= max_order; ++k) {
        if (acc.is_identity()) return k;
        acc = compose(acc);
    }
    throw PreconditionError("element order exceeds the search bound");
}

std::vector<IsometryElement> isometry_group(const KummerSurface& surface) {
    surface.validate();
    if (!surface.equal_scales())
        throw HypothesisError("the full isometry group requires equal gluing scales a_i");
    std::set<std::array<int, 8>> seen;
    std::vector<IsometryElement> out;
    for (int swap = 0; swap < 2; ++swap)
        for (int k1 = 0; k1 < 4; ++k1)
            for (int k2 = 0; k2 < 4; ++k2)
                for (int n = 0; n < 16; ++n)
                    for (int conj = 0; conj < 2; ++conj) {
                        IsometryElement e;
                        e.swap = swap;
                        e.k1 = k1;
                        e.k2 = k2;
                        e.n = {n & 1, (n >> 1) & 1, (n >> 2) & 1, (n >> 3) & 1};
                        e.conj = conj;
                        e.canonicalize();
                        std::array<int, 8> key = {e.swap, e.k1, e.k2, e.n[0],
                                                  e.n[1],  e.n[2], e.n[3], e.conj};
                        if (seen.insert(key).second) out.push_back(e);
                    }
    return out;
}

// --- the special torus --------------------------------------------------------

SpecialTorusReport special_torus_checks(const KummerSurface& surface) {
    surface.validate();
    if (!surface.equal_scales())
        throw HypothesisError("the special torus analysis assumes equal gluing scales");
    double r = surface.lattice_scale;
    Complex c(r / 4.0, r / 4.0);
    KummerMetricField field(surface);

    SpecialTorusReport rep;
    rep.min_u_on_torus = std::numeric_limits<double>::infinity();
    rep.max_metric_deviation = 0.0;
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> unif(0.0, r);
    for (int i = 0; i < 200; ++i) {
        // include half-lattice-aligned samples where the minimum is attained
        Vector2cd p(i < 4 ? Complex(r / 2 * (i % 2), r / 2 * (i / 2)) : Complex(unif(gen), unif(gen)), c);
        rep.min_u_on_torus = std::min(rep.min_u_on_torus, nearest_neck_u(surface, p).first);
        Matrix2cd g = metric_at(field, p).g;
        rep.max_metric_deviation =
            std::max(rep.max_metric_deviation, (g - Matrix2cd::Identity()).cwiseAbs().maxCoeff());
    }

    rep.max_drift = 0.0;
    for (int i = 0; i < 6; ++i) {
        double angle = 2 * std::numbers::pi * i / 6.0;
        Vector2cd v(std::exp(kI * angle), 0.0);
        GeodesicState s0{Vector2cd(Complex(0.3 * i, 0.1), c), v};
        GeodesicPath path = integrate_geodesic(field, s0, 10.0, 1e-2);
        for (const auto& st : path.states)
            rep.max_drift = std::max(rep.max_drift, std::abs(st.z(1) - c));
    }

    // closed geodesic along the real axis of the torus: period = lattice scale
    GeodesicState loop{Vector2cd(Complex(0.2, 0.1), c), Vector2cd(1.0, 0.0)};
    GeodesicPath path = integrate_geodesic(field, loop, r, r / 1024.0);
    StabilityReport stab = second_variation_spectrum(field, path, 16);
    rep.closed_geodesic_min_eig = stab.min_eigenvalue;
    rep.closed_geodesic_nullity = stab.nullity_estimate;

    IsometryElement f;  // (z, w) -> (z, i w + R/2)
    f.k2 = 1;
    f.n = {0, 0, 1, 0};
    rep.f_fixes_torus = 0.0;
    for (int i = 0; i < 50; ++i) {
        Vector2cd p(Complex(unif(gen), unif(gen)), c);
        Vector2cd q = f.apply(p, r);
        Vector4d d = as_real(q) - as_real(p);
        for (int k = 0; k < 4; ++k) d(k) = mod_centered(d(k), r);
        rep.f_fixes_torus = std::max(rep.f_fixes_torus, d.cwiseAbs().maxCoeff());
    }
    return rep;
}

double homothety_check(const KummerSurface& surface, double alpha, int samples, unsigned seed) {
    surface.validate();
    if (alpha <= 0.0) throw ParameterRangeError("homothety factor must be positive");
    KummerSurface scaled = surface;
    scaled.lattice_scale = alpha * surface.lattice_scale;
    for (double& ai : scaled.a) ai *= alpha * alpha;
    // the cutoff zone scales along: chi_alpha(u) = chi(u / alpha^2)
    KummerMetricField base(surface);

    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> unif(0.0, surface.lattice_scale);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        Vector2cd w(Complex(unif(gen), unif(gen)), Complex(unif(gen), unif(gen)));
        double u = nearest_neck_u(surface, w).first;
        if (u < 1e-3) continue;  // skip the orbifold floor
        Matrix2cd g1 = metric_components_at(base, w).g;
        // scaled-surface metric evaluated directly from its radial data
        auto [us, idx] = nearest_neck_u(scaled, Vector2cd(alpha * w));
        Matrix2cd g2;
        if (us >= (1.0 + 1.5 * scaled.delta) * alpha * alpha || scaled.a[idx] == 0.0) {
            g2 = Matrix2cd::Identity();
        } else {
            double hp = scaled.lattice_scale / 2;
            Vector4d x = as_real(Vector2cd(alpha * w));
            Vector4d local;
            for (int k = 0; k < 4; ++k) local(k) = x(k) - std::round(x(k) / hp) * hp;
            RadialPotentialSpec spec{PotentialKind::Glued, scaled.a[idx], scaled.delta,
                                     alpha * alpha};
            RadialMetricField radial(spec);
            g2 = metric_components_at(radial, hol_components(local)).g;
        }
        worst = std::max(worst, (g2 - g1).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace kummer
