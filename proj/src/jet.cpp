#include "kummer/jet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kummer {
namespace detail {

namespace {

constexpr int kKeyBase = kMaxJetOrder + 1;

int pack_key(const Exponents& e, int nvars) {
    int key = 0;
    for (int i = nvars - 1; i >= 0; --i) key = key * kKeyBase + e[i];
    return key;
}

IndexTable build_table(int nvars) {
    IndexTable t;
    t.nvars = nvars;
    // enumerate by total degree, lexicographic within each degree
    for (int deg = 0; deg <= kMaxJetOrder; ++deg) {
        Exponents e{};
        // iterate all tuples with sum == deg
        // odometer over nvars slots
        std::vector<int> v(nvars, 0);
        v[0] = deg;
        while (true) {
            Exponents ex{};
            for (int i = 0; i < nvars; ++i) ex[i] = static_cast<std::uint8_t>(v[i]);
            t.exps.push_back(ex);
            // next composition of deg into nvars parts, colex-style
            int i = 0;
            while (i < nvars - 1 && v[i] == 0) ++i;
            if (i == nvars - 1) break;
            int head = v[i];
            v[i] = 0;
            v[i + 1] += 1;
            v[0] = head - 1;
        }
        (void)e;
        t.count_through_order[deg] = static_cast<int>(t.exps.size());
    }
    int key_span = 1;
    for (int i = 0; i < nvars; ++i) key_span *= kKeyBase;
    t.position_by_key.assign(key_span, -1);
    for (int i = 0; i < static_cast<int>(t.exps.size()); ++i)
        t.position_by_key[pack_key(t.exps[i], nvars)] = i;
    return t;
}

}  // namespace

int IndexTable::position(const Exponents& e) const {
    return position_by_key[pack_key(e, nvars)];
}

const IndexTable& index_table(int nvars) {
    static const std::array<IndexTable, kMaxJetVars> tables = {
        build_table(1), build_table(2), build_table(3), build_table(4)};
    return tables[nvars - 1];
}

int coeff_count(int nvars, int order) {
    return index_table(nvars).count_through_order[order];
}

}  // namespace detail

template <typename S>
JetT<S>::JetT(int nvars, int order) : nvars_(nvars), order_(order) {
    if (nvars < 1 || nvars > kMaxJetVars)
        throw CapabilityError("jet variable count must be in 1..4");
    if (order < 0 || order > kMaxJetOrder)
        throw CapabilityError("jet order must be in 0..6");
    c_.assign(detail::coeff_count(nvars, order), S{});
}

template <typename S>
JetT<S> JetT<S>::constant(int nvars, int order, S value) {
    JetT j(nvars, order);
    j.c_[0] = value;
    return j;
}

template <typename S>
JetT<S> JetT<S>::variable(int nvars, int order, int var, S value) {
    JetT j(nvars, order);
    j.c_[0] = value;
    if (order >= 1) j.c_[1 + var] = S{1};
    return j;
}

template <typename S>
S JetT<S>::coeff(std::initializer_list<int> exps) const {
    detail::Exponents e{};
    int i = 0, deg = 0;
    for (int x : exps) {
        e[i++] = static_cast<std::uint8_t>(x);
        deg += x;
    }
    if (i > nvars_ || deg > order_) return S{};
    int pos = detail::index_table(nvars_).position(e);
    return pos >= 0 ? c_[pos] : S{};
}

template <typename S>
S JetT<S>::derivative(std::initializer_list<int> exps) const {
    double fact = 1.0;
    for (int x : exps)
        for (int k = 2; k <= x; ++k) fact *= k;
    return coeff(exps) * S(fact);
}

template <typename S>
JetT<S> JetT<S>::partial(int var) const {
    JetT out(nvars_, std::max(order_ - 1, 0));
    const auto& table = detail::index_table(nvars_);
    int n = static_cast<int>(c_.size());
    for (int i = 0; i < n; ++i) {
        detail::Exponents e = table.exps[i];
        if (e[var] == 0) continue;
        double m = e[var];
        e[var] -= 1;
        int deg = std::accumulate(e.begin(), e.end(), 0);
        if (deg > out.order_) continue;
        out.c_[table.position(e)] += c_[i] * S(m);
    }
    return out;
}

template <typename S>
JetT<S> JetT<S>::truncated(int order) const {
    JetT out(nvars_, order);
    int n = std::min(out.c_.size(), c_.size());
    std::copy_n(c_.begin(), n, out.c_.begin());
    return out;
}

template <typename S>
bool JetT<S>::is_finite() const {
    for (const S& v : c_) {
        if constexpr (std::is_same_v<S, double>) {
            if (!std::isfinite(v)) return false;
        } else {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        }
    }
    return true;
}

template <typename S>
void JetT<S>::check_compatible(const JetT& a, const JetT& b) {
    if (a.nvars_ != b.nvars_ || a.order_ != b.order_)
        throw CapabilityError("jet operands must share variable count and order");
}

template <typename S>
JetT<S>& JetT<S>::operator+=(const JetT& rhs) {
    check_compatible(*this, rhs);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
}

template <typename S>
JetT<S>& JetT<S>::operator-=(const JetT& rhs) {
    check_compatible(*this, rhs);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
    return *this;
}

template <typename S>
JetT<S>& JetT<S>::operator*=(S rhs) {
    for (S& v : c_) v *= rhs;
    return *this;
}

template <typename S>
JetT<S>& JetT<S>::operator/=(S rhs) {
    for (S& v : c_) v /= rhs;
    return *this;
}

template <typename S>
JetT<S> JetT<S>::operator-() const {
    JetT out = *this;
    for (S& v : out.c_) v = -v;
    return out;
}

template <typename S>
JetT<S> JetT<S>::mul(const JetT& a, const JetT& b) {
    check_compatible(a, b);
    const auto& table = detail::index_table(a.nvars_);
    JetT out(a.nvars_, a.order_);
    int n = static_cast<int>(a.c_.size());
    for (int i = 0; i < n; ++i) {
        if (a.c_[i] == S{}) continue;
        const auto& ei = table.exps[i];
        int degi = std::accumulate(ei.begin(), ei.end(), 0);
        for (int j = 0; j < n; ++j) {
            if (b.c_[j] == S{}) continue;
            const auto& ej = table.exps[j];
            int degj = std::accumulate(ej.begin(), ej.end(), 0);
            if (degi + degj > a.order_) continue;
            detail::Exponents e{};
            for (int k = 0; k < a.nvars_; ++k) e[k] = static_cast<std::uint8_t>(ei[k] + ej[k]);
            out.c_[table.position(e)] += a.c_[i] * b.c_[j];
        }
    }
    return out;
}

template <typename S>
JetT<S> JetT<S>::div(const JetT& a, const JetT& b) {
    check_compatible(a, b);
    S b0 = b.value();
    if (b0 == S{}) throw SingularJetError("division by a jet with zero constant term");
    // 1/x about b0: coefficients (-1)^k / b0^(k+1)
    std::vector<S> series(static_cast<size_t>(a.order_) + 1);
    S p = S(1.0) / b0;
    for (int k = 0; k <= a.order_; ++k) {
        series[k] = (k % 2 == 0) ? p : -p;
        p /= b0;
    }
    return mul(a, compose_series<S>(series, b));
}

template class JetT<double>;
template class JetT<std::complex<double>>;

template <typename S>
JetT<S> compose_series(std::span<const S> series, const JetT<S>& a) {
    if (series.size() < static_cast<size_t>(a.order()) + 1)
        throw CapabilityError("composition needs series coefficients through the jet order");
    JetT<S> hat = a;
    hat.coeffs()[0] = S{};
    JetT<S> r = JetT<S>::constant(a.nvars(), a.order(), series[a.order()]);
    for (int k = a.order() - 1; k >= 0; --k) {
        r = r * hat;
        r += series[k];
    }
    return r;
}

template Jet compose_series<double>(std::span<const double>, const Jet&);
template CJet compose_series<std::complex<double>>(std::span<const std::complex<double>>, const CJet&);

namespace {

Jet compose_real(const Jet& a, std::span<const double> series) {
    return compose_series<double>(series, a);
}

}  // namespace

Jet sqrt(const Jet& a) {
    double x0 = a.value();
    if (x0 <= 0.0) throw JetDomainError("sqrt of a jet with nonpositive constant term");
    std::vector<double> c(static_cast<size_t>(a.order()) + 1);
    c[0] = std::sqrt(x0);
    for (int k = 1; k <= a.order(); ++k) c[k] = c[k - 1] * (1.5 - k) / (k * x0);
    return compose_real(a, c);
}

Jet log(const Jet& a) {
    double x0 = a.value();
    if (x0 <= 0.0) throw JetDomainError("log of a jet with nonpositive constant term");
    std::vector<double> c(static_cast<size_t>(a.order()) + 1);
    c[0] = std::log(x0);
    double p = 1.0;
    for (int k = 1; k <= a.order(); ++k) {
        p /= x0;
        c[k] = (k % 2 == 1 ? p : -p) / k;
    }
    return compose_real(a, c);
}

Jet exp(const Jet& a) {
    double e0 = std::exp(a.value());
    std::vector<double> c(static_cast<size_t>(a.order()) + 1);
    c[0] = e0;
    for (int k = 1; k <= a.order(); ++k) c[k] = c[k - 1] / k;
    return compose_real(a, c);
}

Jet asinh(const Jet& a) {
    // c_k for k >= 1 from the derivative (1+x^2)^(-1/2), expanded with jets.
    double x0 = a.value();
    int n = a.order();
    std::vector<double> c(static_cast<size_t>(n) + 1);
    c[0] = std::asinh(x0);
    if (n >= 1) {
        Jet x = Jet::variable(1, std::max(n - 1, 0), 0, x0);
        Jet g = Jet::constant(1, x.order(), 1.0) / sqrt(1.0 + x * x);
        for (int k = 1; k <= n; ++k) c[k] = g.coeffs()[k - 1] / k;
    }
    return compose_real(a, c);
}

Jet sin(const Jet& a) {
    double s = std::sin(a.value()), co = std::cos(a.value());
    std::vector<double> c(static_cast<size_t>(a.order()) + 1);
    double cycle[4] = {s, co, -s, -co};
    double fact = 1.0;
    for (int k = 0; k <= a.order(); ++k) {
        if (k > 0) fact *= k;
        c[k] = cycle[k % 4] / fact;
    }
    return compose_real(a, c);
}

Jet cos(const Jet& a) {
    double s = std::sin(a.value()), co = std::cos(a.value());
    std::vector<double> c(static_cast<size_t>(a.order()) + 1);
    double cycle[4] = {co, -s, -co, s};
    double fact = 1.0;
    for (int k = 0; k <= a.order(); ++k) {
        if (k > 0) fact *= k;
        c[k] = cycle[k % 4] / fact;
    }
    return compose_real(a, c);
}

Jet jet_arithmetic(const Jet& a, const Jet& b, JetOp op) {
    switch (op) {
        case JetOp::Add: return a + b;
        case JetOp::Sub: return a - b;
        case JetOp::Mul: return a * b;
        case JetOp::Div: return a / b;
    }
    throw CapabilityError("unknown jet operation");
}

Jet jet_elementary(const Jet& a, JetFn fn) {
    switch (fn) {
        case JetFn::Sqrt: return sqrt(a);
        case JetFn::Ln: return log(a);
        case JetFn::Exp: return exp(a);
        case JetFn::Arsinh: return asinh(a);
        case JetFn::Sin: return sin(a);
        case JetFn::Cos: return cos(a);
    }
    throw CapabilityError("unknown elementary function");
}

CJet complexify(const Jet& a) {
    CJet out(a.nvars(), a.order());
    auto src = a.coeffs();
    auto dst = out.coeffs();
    for (size_t i = 0; i < src.size(); ++i) dst[i] = src[i];
    return out;
}

Jet real_part(const CJet& a) {
    Jet out(a.nvars(), a.order());
    auto src = a.coeffs();
    auto dst = out.coeffs();
    for (size_t i = 0; i < src.size(); ++i) dst[i] = src[i].real();
    return out;
}

Jet imag_part(const CJet& a) {
    Jet out(a.nvars(), a.order());
    auto src = a.coeffs();
    auto dst = out.coeffs();
    for (size_t i = 0; i < src.size(); ++i) dst[i] = src[i].imag();
    return out;
}

CJet conj(const CJet& a) {
    CJet out(a.nvars(), a.order());
    auto src = a.coeffs();
    auto dst = out.coeffs();
    for (size_t i = 0; i < src.size(); ++i) dst[i] = std::conj(src[i]);
    return out;
}

CJet hol_partial(const CJet& f, int mu) {
    using namespace std::complex_literals;
    CJet dx = f.partial(2 * mu);
    CJet dy = f.partial(2 * mu + 1);
    return (dx - dy * (1.0i)) * 0.5;
}

CJet antihol_partial(const CJet& f, int mu) {
    using namespace std::complex_literals;
    CJet dx = f.partial(2 * mu);
    CJet dy = f.partial(2 * mu + 1);
    return (dx + dy * (1.0i)) * 0.5;
}

}  // namespace kummer
