#pragma once

#include <array>
#include <string>
#include <vector>

#include "kummer/geodesics.hpp"
#include "kummer/metric.hpp"

namespace kummer {

// The Kummer surface data: square lattice (R Z[i])^2, sixteen gluing scales
// a_i indexed by the half-lattice points, and the gluing width delta.
struct KummerSurface {
    double lattice_scale = 8.0;
    std::array<double, 16> a{};
    double delta = 0.1;

    void validate() const;  // R >= 4(1 + 2 delta), a_i >= 0, delta in (0, 1/2]
    double chart_radius2() const { return 1.0 + 2.0 * delta; }
    bool equal_scales() const;
    // ratio of the largest to the smallest gluing scale (infinite when some
    // a_i vanishes while others do not)
    double scale_ratio() const;

    // half-lattice representative for neck index i (bits: re1, im1, re2, im2)
    Eigen::Vector2cd half_point(int index) const;
    static int half_index(int re1, int im1, int re2, int im2);

    static KummerSurface from_json_text(const std::string& text);
    static KummerSurface from_json_file(const std::string& path);
    std::string to_json_text() const;
};

enum class ChartTag { Flat, EH, Bundle };

struct ChartPoint {
    ChartTag chart = ChartTag::Flat;
    int neck_index = -1;             // 0..15 for EH/Bundle charts
    Eigen::Vector2cd coords;         // local coordinates in the chart
};

// Reduce a covering-space point to its chart: mod Gamma, mod +-1, nearest
// half-lattice point. Points with u < u_bundle go to the Bundle chart tag.
ChartPoint locate(const KummerSurface& surface, const Eigen::Vector2cd& w,
                  double u_bundle = 1e-6);

// quotient-invariant local radial coordinate u and its neck index
std::pair<double, int> nearest_neck_u(const KummerSurface& surface, const Eigen::Vector2cd& w);

// Glued Kahler potential value relative to the nearest half-lattice point;
// invariant under every lattice isometry.
double local_potential(const KummerSurface& surface, const Eigen::Vector2cd& w);

// The patchwork metric in covering coordinates: Euclidean far from the
// half-lattice points and the glued radial metric inside each chart ball.
class KummerMetricField : public MetricField {
  public:
    explicit KummerMetricField(const KummerSurface& surface) : surface_(surface) {
        surface.validate();
    }
    std::array<CJet, 4> metric_jets(const Eigen::Vector2cd& z, int order) const override;
    void check_point(const Eigen::Vector2cd& z) const override;
    bool same_point(const Eigen::Vector2cd& x, const Eigen::Vector2cd& y,
                    double tol) const override;

  private:
    KummerSurface surface_;
};

struct VolumeReport {
    std::array<double, 16> neck_volume{};     // Vol_g(N_i)
    std::array<double, 16> neck_deficit{};    // Vol_Euc(N_i) - Vol_g(N_i)
    double euclidean_neck_volume = 0.0;       // Vol_Euc(N_i), same for all necks
    double torus_volume = 0.0;                // Vol_Euc(T) = R^4
    double a_quadrature = 0.0;                // assembled from the neck integrals
    double a_closed_form = 0.0;               // 1 - |a|^2 pi^2 / (2 R^4)
    double scale_ratio = 0.0;                 // max a_i / min a_i
    std::array<double, 16> boundary_inner{};  // u phi'(u) at u = 1
    std::array<double, 16> boundary_outer{};  // u phi'(u) at u = 1 + delta
};

VolumeReport volumes_and_A(const KummerSurface& surface);

// A from the closed form; throws ParameterRangeError when nonpositive.
double a_value_closed_form(double torus_volume, double a_norm2);

// Affine isometry of the quotient: z -> B conj^eps(z) + b with B in the
// unitary lattice-preserving group and b a half-lattice translation.
// Stored in exact integer form: B = Swap^s diag(i^k1, i^k2), b = (R/2) n.
struct IsometryElement {
    bool swap = false;
    int k1 = 0, k2 = 0;       // powers of i, mod 4
    std::array<int, 4> n{};   // translation in units of R/2, each mod 2
    bool conj = false;

    Eigen::Matrix2cd matrix() const;
    Eigen::Vector2cd translation(double lattice_scale) const;
    Eigen::Vector2cd apply(const Eigen::Vector2cd& z, double lattice_scale) const;
    IsometryElement compose(const IsometryElement& other) const;  // this after other
    void canonicalize();  // fix the (B, b) ~ (-B, -b) sign and reduce mod the lattice
    bool operator==(const IsometryElement&) const = default;
    bool is_identity() const;
    int order(int max_order = 32) const;
};

// All 512 distinct holomorphic and antiholomorphic isometries of the
// patchwork metric with equal scales; verified closed under composition.
std::vector<IsometryElement> isometry_group(const KummerSurface& surface);

struct SpecialTorusReport {
    double min_u_on_torus = 0.0;        // min squared distance to the half-lattice set
    double max_metric_deviation = 0.0;  // |g - id| on sample points of the torus
    double max_drift = 0.0;             // distance from the torus along tangent launches
    double closed_geodesic_min_eig = 0.0;
    int closed_geodesic_nullity = 0;
    double f_fixes_torus = 0.0;         // max |f(p) - p| over torus samples (mod lattice)
};

// Checks for the totally geodesic torus {w2 = R(1+i)/4}.
SpecialTorusReport special_torus_checks(const KummerSurface& surface);

// max componentwise difference between the alpha-rescaled surface metric at
// alpha z and the original metric at z over sample points.
double homothety_check(const KummerSurface& surface, double alpha, int samples = 100,
                       unsigned seed = 42);

}  // namespace kummer
