#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "kummer/kummer_surface.hpp"

using namespace kummer;
using Eigen::Matrix2cd;
using Eigen::Vector2cd;

namespace {

KummerSurface default_surface(double a = 0.04) {
    KummerSurface s;
    s.lattice_scale = 8.0;
    s.delta = 0.1;
    s.a.fill(a);
    return s;
}

std::mt19937& rng() {
    static std::mt19937 gen(31);
    return gen;
}

Vector2cd random_cover_point(const KummerSurface& s) {
    std::uniform_real_distribution<double> unif(0.0, s.lattice_scale);
    return Vector2cd(Complex(unif(rng()), unif(rng())), Complex(unif(rng()), unif(rng())));
}

}  // namespace

TEST_CASE("surface validation enforces the chart separation bound") {
    KummerSurface s = default_surface();
    s.lattice_scale = 3.0;
    CHECK_THROWS_AS(s.validate(), ParameterRangeError);
    s = default_surface();
    s.delta = 0.7;
    CHECK_THROWS_AS(s.validate(), ParameterRangeError);
}

TEST_CASE("locate classifies flat, neck, and bundle points") {
    KummerSurface s = default_surface();
    // generic far point
    ChartPoint far = locate(s, Vector2cd(Complex(2.0, 2.0), Complex(2.0, 2.0)));
    CHECK(far.chart == ChartTag::Flat);
    // near a half-lattice point
    Vector2cd q = s.half_point(5);
    ChartPoint eh = locate(s, q + Vector2cd(0.5, 0.0));
    CHECK(eh.chart == ChartTag::EH);
    CHECK(eh.neck_index == 5);
    CHECK(std::norm(eh.coords(0)) + std::norm(eh.coords(1)) == doctest::Approx(0.25));
    // deep inside: bundle chart territory
    ChartPoint close = locate(s, q + Vector2cd(1e-4, 0.0));
    CHECK(close.chart == ChartTag::Bundle);
    CHECK_THROWS_AS(locate(s, q), OrbifoldPointError);
}

TEST_CASE("locate is invariant under the lattice and the sign quotient") {
    KummerSurface s = default_surface();
    for (int i = 0; i < 30; ++i) {
        Vector2cd w = random_cover_point(s);
        std::uniform_int_distribution<int> lat(-2, 2);
        Vector2cd gamma(Complex(lat(rng()) * s.lattice_scale, lat(rng()) * s.lattice_scale),
                        Complex(lat(rng()) * s.lattice_scale, lat(rng()) * s.lattice_scale));
        ChartPoint p1 = locate(s, w);
        ChartPoint p2 = locate(s, -w + gamma);
        CHECK(p1.chart == p2.chart);
        CHECK(p1.neck_index == p2.neck_index);
        CHECK((p1.coords - p2.coords).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("locate is idempotent on its representatives") {
    KummerSurface s = default_surface();
    for (int i = 0; i < 30; ++i) {
        Vector2cd w = random_cover_point(s);
        ChartPoint p = locate(s, w);
        Vector2cd rep = p.chart == ChartTag::Flat ? p.coords
                                                  : Vector2cd(s.half_point(p.neck_index) + p.coords);
        ChartPoint p2 = locate(s, rep);
        CHECK(p.chart == p2.chart);
        CHECK(p.neck_index == p2.neck_index);
        CHECK((p.coords - p2.coords).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("surface config round-trips through json with strict validation") {
    KummerSurface s = default_surface(0.05);
    KummerSurface t = KummerSurface::from_json_text(s.to_json_text());
    CHECK(t.lattice_scale == s.lattice_scale);
    CHECK(t.delta == s.delta);
    CHECK(t.a == s.a);

    CHECK_THROWS_AS(KummerSurface::from_json_text("not json"), ConfigError);
    CHECK_THROWS_AS(KummerSurface::from_json_text("{\"lattice_scale\": 8}"), ConfigError);
    CHECK_THROWS_AS(KummerSurface::from_json_text(
                        "{\"lattice_scale\": 8, \"delta\": 0.1, \"a\": [1, 2]}"),
                    ConfigError);
    CHECK_THROWS_AS(KummerSurface::from_json_text(
                        "{\"lattice_scale\": 8, \"delta\": 0.1, \"a\": [0.1, 0.1, 0.1, 0.1, 0.1, "
                        "0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1], \"extra\": 1}"),
                    ConfigError);
}

TEST_CASE("neck volume deficits and the normalization constant") {
    KummerSurface s = default_surface(0.0);
    VolumeReport rep0 = volumes_and_A(s);
    CHECK(rep0.a_quadrature == doctest::Approx(1.0).epsilon(1e-14));
    for (double d : rep0.neck_deficit) CHECK(std::abs(d) < 1e-14);

    s = default_surface(0.1);
    VolumeReport rep = volumes_and_A(s);
    double pi2 = std::numbers::pi * std::numbers::pi;
    double expect_deficit = pi2 * 0.01 / 4.0;
    for (int i = 0; i < 16; ++i) {
        CHECK(rep.neck_deficit[i] == doctest::Approx(expect_deficit).epsilon(1e-8));
        CHECK(rep.boundary_inner[i] == doctest::Approx(std::sqrt(1.01)).epsilon(1e-13));
        CHECK(rep.boundary_outer[i] == doctest::Approx(1.1).epsilon(1e-13));
    }
    CHECK(rep.a_quadrature == doctest::Approx(rep.a_closed_form).epsilon(1e-10));
    CHECK(rep.a_closed_form ==
          doctest::Approx(1.0 - 0.16 * pi2 / (2.0 * 4096.0)).epsilon(1e-14));
}

TEST_CASE("the scale ratio is recorded with the volume report") {
    KummerSurface s = default_surface(0.05);
    s.a[3] = 0.1;
    CHECK(volumes_and_A(s).scale_ratio == doctest::Approx(2.0));
    CHECK(default_surface(0.05).scale_ratio() == doctest::Approx(1.0));
}

TEST_CASE("A decreases strictly in every gluing scale") {
    KummerSurface s = default_surface(0.05);
    double base = volumes_and_A(s).a_quadrature;
    for (int i = 0; i < 16; i += 5) {
        KummerSurface t = s;
        t.a[i] += 0.02;
        CHECK(volumes_and_A(t).a_quadrature < base);
    }
}

TEST_CASE("the closed-form A rejects oversized gluing scales") {
    CHECK_THROWS_AS(a_value_closed_form(1.0, 1.0), ParameterRangeError);
    CHECK(a_value_closed_form(4096.0, 0.16) > 0.999);
}

TEST_CASE("isometry group has 512 elements closed under composition") {
    KummerSurface s = default_surface(0.05);
    std::vector<IsometryElement> group = isometry_group(s);
    CHECK(group.size() == 512);

    std::set<std::array<int, 8>> keys;
    auto key_of = [](const IsometryElement& e) {
        return std::array<int, 8>{e.swap, e.k1, e.k2, e.n[0], e.n[1], e.n[2], e.n[3], e.conj};
    };
    int identity_count = 0;
    for (const auto& e : group) {
        keys.insert(key_of(e));
        if (e.is_identity()) ++identity_count;
    }
    CHECK(keys.size() == 512);
    CHECK(identity_count == 1);

    bool closed = true;
    for (const auto& e1 : group) {
        for (const auto& e2 : group) {
            if (!keys.count(key_of(e1.compose(e2)))) {
                closed = false;
                break;
            }
        }
        if (!closed) break;
    }
    CHECK(closed);

    int max_order = 0;
    std::set<int> orders;
    for (const auto& e : group) {
        int o = e.order();
        orders.insert(o);
        max_order = std::max(max_order, o);
        CHECK(8 % o == 0);  // every order divides 8
    }
    CHECK(max_order == 8);

    KummerSurface bad = s;
    bad.a[3] = 0.01;
    CHECK_THROWS_AS(isometry_group(bad), HypothesisError);
}

TEST_CASE("isometries preserve the local patchwork potential") {
    KummerSurface s = default_surface(0.05);
    std::vector<IsometryElement> group = isometry_group(s);
    std::uniform_int_distribution<size_t> pick(0, group.size() - 1);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        Vector2cd w = random_cover_point(s);
        if (nearest_neck_u(s, w).first < 1e-3) continue;
        const IsometryElement& e = group[pick(rng())];
        double before = local_potential(s, w);
        double after = local_potential(s, e.apply(w, s.lattice_scale));
        worst = std::max(worst, std::abs(after - before));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("isometries permute the half-lattice points and preserve regions") {
    KummerSurface s = default_surface(0.05);
    std::vector<IsometryElement> group = isometry_group(s);
    std::uniform_int_distribution<size_t> pick(0, group.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
        const IsometryElement& e = group[pick(rng())];
        // half-lattice points map to half-lattice points
        for (int i = 0; i < 16; i += 3) {
            Vector2cd img = e.apply(s.half_point(i), s.lattice_scale);
            CHECK(nearest_neck_u(s, img).first < 1e-20);
        }
        // neck points stay in necks, flat points stay flat
        Vector2cd neck = s.half_point(7) + Vector2cd(Complex(1.02, 0.0), 0.0);
        Vector2cd flat(Complex(2.0, 1.7), Complex(1.9, 2.2));
        CHECK(locate(s, e.apply(neck, s.lattice_scale)).chart == ChartTag::EH);
        CHECK(locate(s, e.apply(flat, s.lattice_scale)).chart == ChartTag::Flat);
    }
}

TEST_CASE("the order-4 map fixing the special torus") {
    KummerSurface s = default_surface(0.05);
    IsometryElement f;
    f.k2 = 1;
    f.n = {0, 0, 1, 0};
    CHECK(f.order() == 4);
    // w = R(1+i)/4 is fixed: i w + R/2 = w
    Complex c(s.lattice_scale / 4, s.lattice_scale / 4);
    Vector2cd p(Complex(1.2, 0.7), c);
    Vector2cd img = f.apply(p, s.lattice_scale);
    CHECK(std::abs(img(0) - p(0)) < 1e-15);
    CHECK(std::abs(img(1) - p(1)) < 1e-15);
}

TEST_CASE("chart overlap: covering metric equals the chart metric") {
    KummerSurface s = default_surface(0.04);
    KummerMetricField cover(s);
    RadialPotentialSpec spec{PotentialKind::Glued, 0.04, s.delta, 1.0};
    RadialMetricField chart(spec);
    for (int i = 0; i < 20; ++i) {
        Vector2cd q = s.half_point(i % 16);
        std::uniform_real_distribution<double> uu(1.0, 1.0 + 2 * s.delta);
        std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
        double r = std::sqrt(uu(rng()));
        Vector2cd local(Complex(r * std::cos(ang(rng())), r * std::sin(ang(rng())) * 0.5), 0.0);
        local(1) = Complex(0.0, std::sqrt(std::max(0.0, r * r - std::norm(local(0)))));
        Matrix2cd g1 = metric_components_at(cover, q + local).g;
        Matrix2cd g2 = metric_components_at(chart, local).g;
        CHECK((g1 - g2).cwiseAbs().maxCoeff() < 1e-11);
        // the sign flip is an isometry of the chart with identical components
        Matrix2cd g3 = metric_components_at(chart, Vector2cd(-local)).g;
        CHECK((g2 - g3).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("special torus stays flat, geodesic, and stable") {
    KummerSurface s = default_surface(0.05);
    SpecialTorusReport rep = special_torus_checks(s);
    CHECK(rep.min_u_on_torus == doctest::Approx(8.0).epsilon(1e-10));
    CHECK(rep.min_u_on_torus > s.chart_radius2());
    CHECK(rep.max_metric_deviation < 1e-14);
    CHECK(rep.max_drift < 1e-9);
    CHECK(rep.closed_geodesic_min_eig >= -1e-8);
    CHECK(rep.closed_geodesic_nullity >= 3);
    CHECK(rep.f_fixes_torus < 1e-12);
}

TEST_CASE("homothety carries the patchwork metric across scales") {
    KummerSurface s = default_surface(0.05);
    CHECK(homothety_check(s, 1.0) < 1e-15);
    for (double alpha : {0.5, 2.0, 3.0}) CHECK(homothety_check(s, alpha) < 1e-11);
}
