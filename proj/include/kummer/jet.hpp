#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "kummer/errors.hpp"

namespace kummer {

inline constexpr int kMaxJetVars = 4;
inline constexpr int kMaxJetOrder = 6;

namespace detail {

using Exponents = std::array<std::uint8_t, kMaxJetVars>;

// Multi-indices of total degree <= kMaxJetOrder in graded lexicographic order.
// Jets of order p use the leading count_through_order[p] entries, so one table
// per variable count serves every order.
struct IndexTable {
    int nvars = 0;
    std::vector<Exponents> exps;
    std::array<int, kMaxJetOrder + 1> count_through_order{};
    std::vector<int> position_by_key;  // packed base-(kMaxJetOrder+1) exponents -> index

    int position(const Exponents& e) const;
};

const IndexTable& index_table(int nvars);

int coeff_count(int nvars, int order);

}  // namespace detail

// Truncated multivariate Taylor expansion: up to 4 real variables, order <= 6.
// Coefficients are Taylor coefficients (derivative / multi-factorial) in graded
// lexicographic order. The scalar is double for field values and
// std::complex<double> for holomorphic-derivative bookkeeping.
template <typename S>
class JetT {
  public:
    JetT() : JetT(1, 0) {}
    JetT(int nvars, int order);

    static JetT constant(int nvars, int order, S value);
    // value + eps_var: the coordinate function x_var expanded about `value`.
    static JetT variable(int nvars, int order, int var, S value);

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    S value() const { return c_[0]; }

    std::span<const S> coeffs() const { return c_; }
    std::span<S> coeffs() { return c_; }

    // Taylor coefficient for the given exponent tuple (trailing zeros implied).
    S coeff(std::initializer_list<int> exps) const;
    // Partial derivative value d^|e| f / dx^e at the expansion point.
    S derivative(std::initializer_list<int> exps) const;

    // d/dx_var as a jet of order-1 (order 0 stays order 0 with zero content).
    JetT partial(int var) const;

    // Same coefficients viewed at a lower truncation order.
    JetT truncated(int order) const;

    bool is_finite() const;

    JetT& operator+=(const JetT& rhs);
    JetT& operator-=(const JetT& rhs);
    JetT& operator*=(const JetT& rhs) { *this = *this * rhs; return *this; }
    JetT& operator/=(const JetT& rhs) { *this = *this / rhs; return *this; }
    JetT& operator+=(S rhs) { c_[0] += rhs; return *this; }
    JetT& operator-=(S rhs) { c_[0] -= rhs; return *this; }
    JetT& operator*=(S rhs);
    JetT& operator/=(S rhs);

    friend JetT operator+(JetT lhs, const JetT& rhs) { return lhs += rhs; }
    friend JetT operator-(JetT lhs, const JetT& rhs) { return lhs -= rhs; }
    friend JetT operator+(JetT lhs, S rhs) { return lhs += rhs; }
    friend JetT operator+(S lhs, JetT rhs) { return rhs += lhs; }
    friend JetT operator-(JetT lhs, S rhs) { return lhs -= rhs; }
    friend JetT operator-(S lhs, const JetT& rhs) { return (-rhs) += lhs; }
    friend JetT operator*(JetT lhs, S rhs) { return lhs *= rhs; }
    friend JetT operator*(S lhs, JetT rhs) { return rhs *= lhs; }
    friend JetT operator/(JetT lhs, S rhs) { return lhs /= rhs; }
    friend JetT operator/(S lhs, const JetT& rhs) { return constant(rhs.nvars_, rhs.order_, lhs) / rhs; }

    JetT operator-() const;

    friend JetT operator*(const JetT& a, const JetT& b) { return mul(a, b); }
    friend JetT operator/(const JetT& a, const JetT& b) { return div(a, b); }

  private:
    static JetT mul(const JetT& a, const JetT& b);
    static JetT div(const JetT& a, const JetT& b);
    static void check_compatible(const JetT& a, const JetT& b);

    int nvars_;
    int order_;
    std::vector<S> c_;
};

using Jet = JetT<double>;
using CJet = JetT<std::complex<double>>;

// Truncated composition f(a) from the univariate Taylor coefficients of f about
// a.value(); series[k] is the k-th coefficient, series.size() >= order+1.
template <typename S>
JetT<S> compose_series(std::span<const S> series, const JetT<S>& a);

// Elementary functions on real jets. Domain checks throw JetDomainError.
Jet sqrt(const Jet& a);
Jet log(const Jet& a);
Jet exp(const Jet& a);
Jet asinh(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);

enum class JetOp { Add, Sub, Mul, Div };
enum class JetFn { Sqrt, Ln, Exp, Arsinh, Sin, Cos };

Jet jet_arithmetic(const Jet& a, const Jet& b, JetOp op);
Jet jet_elementary(const Jet& a, JetFn fn);

// Chart helpers. A 4-variable jet is understood over the real coordinates
// (Re z1, Im z1, Re z2, Im z2) of a complex chart.
CJet complexify(const Jet& a);
Jet real_part(const CJet& a);
Jet imag_part(const CJet& a);
CJet conj(const CJet& a);
// (d/dx_mu - i d/dy_mu)/2 and (d/dx_mu + i d/dy_mu)/2, mu in {0, 1}.
CJet hol_partial(const CJet& f, int mu);
CJet antihol_partial(const CJet& f, int mu);

}  // namespace kummer
