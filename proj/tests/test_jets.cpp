#include <doctest.h>

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "kummer/jet.hpp"

using namespace kummer;

namespace {

// Brute-force dense polynomial in up to 4 variables, no truncation. Serves as
// the independent oracle for jet multiplication.
struct Poly {
    std::map<std::array<int, 4>, double> terms;

    static Poly var(int i) {
        Poly p;
        std::array<int, 4> e{};
        e[i] = 1;
        p.terms[e] = 1.0;
        return p;
    }
    static Poly constant(double c) {
        Poly p;
        p.terms[{0, 0, 0, 0}] = c;
        return p;
    }
    Poly operator*(const Poly& o) const {
        Poly r;
        for (const auto& [ea, ca] : terms)
            for (const auto& [eb, cb] : o.terms) {
                std::array<int, 4> e{};
                for (int k = 0; k < 4; ++k) e[k] = ea[k] + eb[k];
                r.terms[e] += ca * cb;
            }
        return r;
    }
    Poly operator+(const Poly& o) const {
        Poly r = *this;
        for (const auto& [e, c] : o.terms) r.terms[e] += c;
        return r;
    }
    double coeff(std::array<int, 4> e) const {
        auto it = terms.find(e);
        return it == terms.end() ? 0.0 : it->second;
    }
};

Jet jet_of(const Poly& p, int nvars, int order, std::mt19937&) {
    Jet j = Jet::constant(nvars, order, 0.0);
    for (const auto& [e, c] : p.terms) {
        Jet m = Jet::constant(nvars, order, c);
        for (int v = 0; v < nvars; ++v)
            for (int k = 0; k < e[v]; ++k) m = m * Jet::variable(nvars, order, v, 0.0);
        j += m;
    }
    return j;
}

Poly random_poly(int nvars, int deg, std::mt19937& rng) {
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_int_distribution<int> pick(0, nvars - 1);
    Poly p = Poly::constant(coeff(rng));
    for (int t = 0; t < 6; ++t) {
        Poly m = Poly::constant(coeff(rng));
        int d = std::uniform_int_distribution<int>(0, deg)(rng);
        for (int k = 0; k < d; ++k) m = m * Poly::var(pick(rng));
        p = p + m;
    }
    return p;
}

// Central finite differences of a scalar function, one variable at a time,
// with one Richardson level. Good to ~1e-8 relative for smooth functions.
double fd_derivative(const std::function<double(double)>& f, double x, int order, double h) {
    auto d1 = [&](double step) {
        switch (order) {
            case 0: return f(x);
            case 1: return (f(x + step) - f(x - step)) / (2 * step);
            case 2: return (f(x + step) - 2 * f(x) + f(x - step)) / (step * step);
            case 3:
                return (f(x + 2 * step) - 2 * f(x + step) + 2 * f(x - step) - f(x - 2 * step)) /
                       (2 * step * step * step);
            case 4:
                return (f(x + 2 * step) - 4 * f(x + step) + 6 * f(x) - 4 * f(x - step) +
                        f(x - 2 * step)) /
                       (step * step * step * step);
            default: return 0.0;
        }
    };
    if (order == 0) return f(x);
    double coarse = d1(h), fine = d1(h / 2);
    return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

TEST_CASE("multiplying (1+eps) by itself matches the square identity") {
    Jet one_eps = Jet::variable(1, 2, 0, 1.0);
    Jet sq = one_eps * one_eps;
    CHECK(sq.coeff({0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sq.coeff({1}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sq.coeff({2}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("reciprocal of (1+eps) is the geometric series") {
    Jet one_eps = Jet::variable(1, 2, 0, 1.0);
    Jet inv = Jet::constant(1, 2, 1.0) / one_eps;
    CHECK(inv.coeff({0}) == doctest::Approx(1.0));
    CHECK(inv.coeff({1}) == doctest::Approx(-1.0));
    CHECK(inv.coeff({2}) == doctest::Approx(1.0));
}

TEST_CASE("division by a zero-constant jet raises") {
    Jet z = Jet::variable(2, 3, 0, 0.0);
    Jet one = Jet::constant(2, 3, 1.0);
    CHECK_THROWS_AS(one / z, SingularJetError);
}

TEST_CASE("jet multiplication matches the dense polynomial oracle") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        int nvars = 1 + trial % 4;
        int order = 3 + trial % 3;
        Poly pa = random_poly(nvars, 3, rng);
        Poly pb = random_poly(nvars, 3, rng);
        Poly prod = pa * pb;
        Jet ja = jet_of(pa, nvars, order, rng);
        Jet jb = jet_of(pb, nvars, order, rng);
        Jet jp = ja * jb;
        const auto& table = detail::index_table(nvars);
        for (int i = 0; i < detail::coeff_count(nvars, order); ++i) {
            std::array<int, 4> e{};
            int deg = 0;
            for (int k = 0; k < 4; ++k) {
                e[k] = table.exps[i][k];
                deg += e[k];
            }
            if (deg > order) continue;
            CHECK(jp.coeffs()[i] == doctest::Approx(prod.coeff(e)).epsilon(1e-13));
        }
    }
}

TEST_CASE("jet arithmetic is associative and distributive to roundoff") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> val(0.5, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        int nvars = 1 + trial % 4;
        Jet a = jet_of(random_poly(nvars, 2, rng), nvars, 4, rng) + val(rng);
        Jet b = jet_of(random_poly(nvars, 2, rng), nvars, 4, rng) + val(rng);
        Jet c = jet_of(random_poly(nvars, 2, rng), nvars, 4, rng) + val(rng);
        Jet lhs = (a * b) * c;
        Jet rhs = a * (b * c);
        Jet dist_l = a * (b + c);
        Jet dist_r = a * b + a * c;
        for (size_t i = 0; i < lhs.coeffs().size(); ++i) {
            CHECK(lhs.coeffs()[i] == doctest::Approx(rhs.coeffs()[i]).epsilon(1e-13));
            CHECK(dist_l.coeffs()[i] == doctest::Approx(dist_r.coeffs()[i]).epsilon(1e-13));
        }
    }
}

TEST_CASE("sqrt jet has the 1/(2 sqrt) first derivative") {
    Jet a = Jet::variable(1, 1, 0, 4.0);
    Jet s = sqrt(a);
    CHECK(s.coeff({0}) == doctest::Approx(2.0));
    CHECK(s.coeff({1}) == doctest::Approx(0.25));
}

TEST_CASE("arsinh jet about zero reproduces the odd series") {
    Jet a = Jet::variable(1, 3, 0, 0.0);
    Jet s = asinh(a);
    CHECK(s.coeff({0}) == doctest::Approx(0.0));
    CHECK(s.coeff({1}) == doctest::Approx(1.0));
    CHECK(s.coeff({2}) == doctest::Approx(0.0));
    CHECK(s.coeff({3}) == doctest::Approx(-1.0 / 6.0));
}

TEST_CASE("elementary jets match finite differences through order 4") {
    struct Case {
        std::function<Jet(const Jet&)> jf;
        std::function<double(double)> f;
        double x0;
    };
    std::vector<Case> cases = {
        {[](const Jet& j) { return sqrt(j); }, [](double x) { return std::sqrt(x); }, 1.7},
        {[](const Jet& j) { return log(j); }, [](double x) { return std::log(x); }, 0.9},
        {[](const Jet& j) { return exp(j); }, [](double x) { return std::exp(x); }, 0.3},
        {[](const Jet& j) { return asinh(j); }, [](double x) { return std::asinh(x); }, 0.6},
        {[](const Jet& j) { return sin(j); }, [](double x) { return std::sin(x); }, 1.1},
        {[](const Jet& j) { return cos(j); }, [](double x) { return std::cos(x); }, 0.4},
    };
    for (const auto& c : cases) {
        Jet j = c.jf(Jet::variable(1, 4, 0, c.x0));
        for (int k = 1; k <= 4; ++k) {
            double fd = fd_derivative(c.f, c.x0, k, 1e-2);
            double fact = 1.0;
            for (int m = 2; m <= k; ++m) fact *= m;
            double jet_val = j.coeff({k}) * fact;
            CHECK(jet_val == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("sixth order jets of composite functions match nested lower-order jets") {
    // d^6/dx^6 of f(x) = exp(sin(x)) / sqrt(1+x^2), cross-checked by squaring:
    // evaluate the order-6 jet of f and the order-3 jet of the order-3-jet value
    // path at shifted points, comparing the Taylor identity
    // f(x0+h) ~ sum c_k h^k to the directly evaluated function.
    auto eval = [](double x) {
        return std::exp(std::sin(x)) / std::sqrt(1.0 + x * x);
    };
    double x0 = 0.7;
    Jet x = Jet::variable(1, 6, 0, x0);
    Jet f = exp(sin(x)) / sqrt(1.0 + x * x);
    for (double h : {1e-2, -2e-2, 3.3e-2}) {
        double taylor = 0.0, hp = 1.0;
        for (int k = 0; k <= 6; ++k) {
            taylor += f.coeff({k}) * hp;
            hp *= h;
        }
        CHECK(taylor == doctest::Approx(eval(x0 + h)).epsilon(1e-11));
    }
}

TEST_CASE("domain violations raise domain errors") {
    Jet neg = Jet::variable(1, 2, 0, -1.0);
    CHECK_THROWS_AS(sqrt(neg), JetDomainError);
    CHECK_THROWS_AS(log(neg), JetDomainError);
    Jet zero = Jet::variable(1, 2, 0, 0.0);
    CHECK_THROWS_AS(log(zero), JetDomainError);
}

TEST_CASE("operations on finite inputs stay finite") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Jet a = jet_of(random_poly(3, 2, rng), 3, 5, rng) + 2.5;
        Jet b = jet_of(random_poly(3, 2, rng), 3, 5, rng) + 3.0;
        CHECK((a * b).is_finite());
        CHECK((a / b).is_finite());
        CHECK(sqrt(a * a + 1.0).is_finite());
        CHECK(exp(sin(a)).is_finite());
    }
}

TEST_CASE("partial derivatives shift multi-indices with the right factors") {
    // f = x^2 y + 3 y^3 over 2 vars: df/dy = x^2 + 9y^2
    Jet x = Jet::variable(2, 3, 0, 0.0);
    Jet y = Jet::variable(2, 3, 1, 0.0);
    Jet f = x * x * y + 3.0 * (y * y * y);
    Jet fy = f.partial(1);
    CHECK(fy.coeff({2, 0}) == doctest::Approx(1.0));
    CHECK(fy.coeff({0, 2}) == doctest::Approx(9.0));
    CHECK(fy.coeff({0, 0}) == doctest::Approx(0.0));
}

TEST_CASE("holomorphic partials pick out the Wirtinger combination") {
    using namespace std::complex_literals;
    // f(z) = |z1|^2 z2-real-part style test: f = x1^2 + y1^2 (u of the first coord)
    Jet x1 = Jet::variable(4, 3, 0, 0.4);
    Jet y1 = Jet::variable(4, 3, 1, -0.2);
    CJet u = complexify(x1 * x1 + y1 * y1);
    CJet du = hol_partial(u, 0);   // d/dz1 |z1|^2 = conj(z1)
    CJet dbu = antihol_partial(u, 0);
    CHECK(std::abs(du.value() - (0.4 + 0.2i)) < 1e-15);
    CHECK(std::abs(dbu.value() - (0.4 - 0.2i)) < 1e-15);
    // mixed second derivative d/dz1 d/dz1bar |z1|^2 = 1
    CHECK(std::abs(hol_partial(antihol_partial(u, 0), 0).value() - 1.0) < 1e-15);
}

TEST_CASE("dispatch wrappers cover the operation enums") {
    Jet a = Jet::variable(1, 2, 0, 2.0);
    Jet b = Jet::constant(1, 2, 3.0);
    CHECK(jet_arithmetic(a, b, JetOp::Add).value() == doctest::Approx(5.0));
    CHECK(jet_arithmetic(a, b, JetOp::Sub).value() == doctest::Approx(-1.0));
    CHECK(jet_arithmetic(a, b, JetOp::Mul).value() == doctest::Approx(6.0));
    CHECK(jet_arithmetic(a, b, JetOp::Div).value() == doctest::Approx(2.0 / 3.0));
    CHECK(jet_elementary(a, JetFn::Sqrt).value() == doctest::Approx(std::sqrt(2.0)));
    CHECK(jet_elementary(a, JetFn::Arsinh).value() == doctest::Approx(std::asinh(2.0)));
}
