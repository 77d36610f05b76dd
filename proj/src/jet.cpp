#include "formlab/jet.hpp"

#include <algorithm>
#include <cmath>

namespace formlab {

namespace {

constexpr std::array<double, kMaxJetOrder + 1> kFactorial = [] {
    std::array<double, kMaxJetOrder + 1> f{};
    f[0] = 1.0;
    for (int n = 1; n <= kMaxJetOrder; ++n) f[n] = f[n - 1] * n;
    return f;
}();

} // namespace

void Jet2::check_order(int order) {
    if (order < 0 || order > kMaxJetOrder)
        throw JetOrderError("jet order " + std::to_string(order) +
                            " outside [0, " + std::to_string(kMaxJetOrder) + "]");
}

Jet2 Jet2::constant(double value, int order) {
    check_order(order);
    Jet2 r;
    r.order_ = order;
    r.c_[0] = value;
    return r;
}

Jet2 Jet2::variable(Var which, double value, int order) {
    check_order(order);
    Jet2 r;
    r.order_ = order;
    r.c_[0] = value;
    if (order >= 1) r.c_[which == Var::U ? index(1, 0) : index(0, 1)] = 1.0;
    return r;
}

double Jet2::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > order_)
        throw JetOrderError("coefficient (" + std::to_string(i) + "," +
                            std::to_string(j) + ") beyond jet order " +
                            std::to_string(order_));
    return c_[index(i, j)];
}

double Jet2::partial(int i, int j) const {
    return coeff(i, j) * kFactorial[i] * kFactorial[j];
}

Jet2 Jet2::truncated(int new_order) const {
    check_order(new_order);
    if (new_order > order_)
        throw JetOrderError("cannot extend a jet from order " +
                            std::to_string(order_) + " to " +
                            std::to_string(new_order));
    Jet2 r;
    r.order_ = new_order;
    for (int i = 0; i <= new_order; ++i)
        for (int j = 0; j <= new_order - i; ++j)
            r.c_[index(i, j)] = c_[index(i, j)];
    return r;
}

Jet2 Jet2::derivative(Var which) const {
    if (order_ < 1)
        throw JetOrderError("cannot differentiate an order-0 jet");
    Jet2 r;
    r.order_ = order_ - 1;
    for (int i = 0; i <= r.order_; ++i)
        for (int j = 0; j <= r.order_ - i; ++j)
            r.c_[index(i, j)] = (which == Var::U)
                                    ? (i + 1) * c_[index(i + 1, j)]
                                    : (j + 1) * c_[index(i, j + 1)];
    return r;
}

Jet2 Jet2::operator-() const {
    Jet2 r = *this;
    for (int i = 0; i <= order_; ++i)
        for (int j = 0; j <= order_ - i; ++j) r.c_[index(i, j)] = -c_[index(i, j)];
    return r;
}

Jet2& Jet2::operator+=(const Jet2& rhs) {
    *this = *this + rhs;
    return *this;
}

Jet2& Jet2::operator-=(const Jet2& rhs) {
    *this = *this - rhs;
    return *this;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.order_ = std::min(a.order_, b.order_);
    for (int i = 0; i <= r.order_; ++i)
        for (int j = 0; j <= r.order_ - i; ++j)
            r.c_[Jet2::index(i, j)] = a.c_[Jet2::index(i, j)] + b.c_[Jet2::index(i, j)];
    return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.order_ = std::min(a.order_, b.order_);
    for (int i = 0; i <= r.order_; ++i)
        for (int j = 0; j <= r.order_ - i; ++j)
            r.c_[Jet2::index(i, j)] = a.c_[Jet2::index(i, j)] - b.c_[Jet2::index(i, j)];
    return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.order_ = std::min(a.order_, b.order_);
    for (int i = 0; i <= r.order_; ++i)
        for (int j = 0; j <= r.order_ - i; ++j) {
            double acc = 0.0;
            for (int p = 0; p <= i; ++p)
                for (int q = 0; q <= j; ++q)
                    acc += a.c_[Jet2::index(p, q)] * b.c_[Jet2::index(i - p, j - q)];
            r.c_[Jet2::index(i, j)] = acc;
        }
    return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
    const double b0 = b.c_[0];
    if (b0 == 0.0)
        throw SingularJetError("division by a jet with zero constant term");
    Jet2 r;
    r.order_ = std::min(a.order_, b.order_);
    // Triangular solve of r * b = a in ascending total degree.
    for (int d = 0; d <= r.order_; ++d)
        for (int i = 0; i <= d; ++i) {
            const int j = d - i;
            double acc = a.c_[Jet2::index(i, j)];
            for (int p = 0; p <= i; ++p)
                for (int q = 0; q <= j; ++q) {
                    if (p == i && q == j) continue;
                    acc -= r.c_[Jet2::index(p, q)] * b.c_[Jet2::index(i - p, j - q)];
                }
            r.c_[Jet2::index(i, j)] = acc / b0;
        }
    return r;
}

Jet2 operator+(const Jet2& a, double s) {
    Jet2 r = a;
    r.c_[0] += s;
    return r;
}
Jet2 operator+(double s, const Jet2& a) { return a + s; }
Jet2 operator-(const Jet2& a, double s) { return a + (-s); }
Jet2 operator-(double s, const Jet2& a) { return (-a) + s; }

Jet2 operator*(const Jet2& a, double s) {
    Jet2 r = a;
    for (int i = 0; i <= r.order_; ++i)
        for (int j = 0; j <= r.order_ - i; ++j) r.c_[Jet2::index(i, j)] *= s;
    return r;
}
Jet2 operator*(double s, const Jet2& a) { return a * s; }
Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }
Jet2 operator/(double s, const Jet2& a) { return recip(a) * s; }

Jet2 Jet2::compose(const double* d, int n) const {
    Jet2 h = *this;
    h.c_[0] = 0.0;
    Jet2 r = Jet2::constant(d[n], order_);
    for (int k = n - 1; k >= 0; --k) {
        r = r * h;
        r.c_[0] += d[k];
    }
    return r;
}

namespace {

using Coeffs = std::array<double, kMaxJetOrder + 1>;

// Univariate Taylor coefficients d[k] = f^(k)(a)/k! for each elementary
// function, generated by the standard recurrences.

void sin_cos_coeffs(double a, int n, Coeffs& s, Coeffs& c) {
    s[0] = std::sin(a);
    c[0] = std::cos(a);
    for (int k = 0; k < n; ++k) {
        s[k + 1] = c[k] / (k + 1);
        c[k + 1] = -s[k] / (k + 1);
    }
}

void sinh_cosh_coeffs(double a, int n, Coeffs& s, Coeffs& c) {
    s[0] = std::sinh(a);
    c[0] = std::cosh(a);
    for (int k = 0; k < n; ++k) {
        s[k + 1] = c[k] / (k + 1);
        c[k + 1] = s[k] / (k + 1);
    }
}

} // namespace

Jet2 sin(const Jet2& a) {
    Coeffs s, c;
    sin_cos_coeffs(a.value(), a.order(), s, c);
    return a.compose(s.data(), a.order());
}

Jet2 cos(const Jet2& a) {
    Coeffs s, c;
    sin_cos_coeffs(a.value(), a.order(), s, c);
    return a.compose(c.data(), a.order());
}

Jet2 sinh(const Jet2& a) {
    Coeffs s, c;
    sinh_cosh_coeffs(a.value(), a.order(), s, c);
    return a.compose(s.data(), a.order());
}

Jet2 cosh(const Jet2& a) {
    Coeffs s, c;
    sinh_cosh_coeffs(a.value(), a.order(), s, c);
    return a.compose(c.data(), a.order());
}

Jet2 exp(const Jet2& a) {
    Coeffs d;
    d[0] = std::exp(a.value());
    for (int k = 0; k < a.order(); ++k) d[k + 1] = d[k] / (k + 1);
    return a.compose(d.data(), a.order());
}

Jet2 log(const Jet2& a) {
    const double v = a.value();
    if (!(v > 0.0)) throw SingularJetError("log of a jet with non-positive constant term");
    Coeffs d;
    d[0] = std::log(v);
    if (a.order() >= 1) d[1] = 1.0 / v;
    for (int k = 1; k < a.order(); ++k) d[k + 1] = -d[k] * k / (v * (k + 1));
    return a.compose(d.data(), a.order());
}

Jet2 sqrt(const Jet2& a) {
    const double v = a.value();
    if (!(v > 0.0)) throw SingularJetError("sqrt of a jet with non-positive constant term");
    Coeffs d;
    d[0] = std::sqrt(v);
    for (int k = 0; k < a.order(); ++k) d[k + 1] = d[k] * (0.5 - k) / ((k + 1) * v);
    return a.compose(d.data(), a.order());
}

Jet2 recip(const Jet2& a) {
    const double v = a.value();
    if (v == 0.0) throw SingularJetError("reciprocal of a jet with zero constant term");
    Coeffs d;
    d[0] = 1.0 / v;
    for (int k = 0; k < a.order(); ++k) d[k + 1] = -d[k] / v;
    return a.compose(d.data(), a.order());
}

Jet2 asinh(const Jet2& a) {
    const double v = a.value();
    // Series of (1 + (v + t)^2)^(-1/2) from 2 q r' + q' r = 0 with
    // q(t) = (1 + v^2) + 2vt + t^2, then integrate termwise.
    const double q0 = 1.0 + v * v, q1 = 2.0 * v, q2 = 1.0;
    Coeffs r{};
    r[0] = 1.0 / std::sqrt(q0);
    for (int k = 0; k < a.order(); ++k) {
        double num = (2 * k + 1) * q1 * r[k];
        if (k >= 1) num += 2.0 * k * q2 * r[k - 1];
        r[k + 1] = -num / (2.0 * q0 * (k + 1));
    }
    Coeffs d;
    d[0] = std::asinh(v);
    for (int k = 0; k < a.order(); ++k) d[k + 1] = r[k] / (k + 1);
    return a.compose(d.data(), a.order());
}

Jet2 atan(const Jet2& a) {
    const double v = a.value();
    // Series of 1 / (1 + (v + t)^2) via r * q = 1, then integrate.
    const double q0 = 1.0 + v * v, q1 = 2.0 * v, q2 = 1.0;
    Coeffs r{};
    r[0] = 1.0 / q0;
    for (int k = 1; k <= a.order(); ++k) {
        double num = q1 * r[k - 1];
        if (k >= 2) num += q2 * r[k - 2];
        r[k] = -num / q0;
    }
    Coeffs d;
    d[0] = std::atan(v);
    for (int k = 0; k < a.order(); ++k) d[k + 1] = r[k] / (k + 1);
    return a.compose(d.data(), a.order());
}

namespace {

struct Stencil {
    int n;
    std::array<int, 5> offset;
    std::array<double, 5> weight; // divided by h^order by the caller
};

Stencil central_stencil(int order) {
    switch (order) {
        case 0: return {1, {0}, {1.0}};
        case 1: return {2, {-1, 1}, {-0.5, 0.5}};
        case 2: return {3, {-1, 0, 1}, {1.0, -2.0, 1.0}};
        case 3: return {4, {-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}};
        case 4: return {5, {-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}};
        default: throw JetOrderError("finite-difference stencil order beyond 4");
    }
}

double fd_once(const std::function<double(double, double)>& f, double u,
               double v, int i, int j, double h) {
    const Stencil su = central_stencil(i);
    const Stencil sv = central_stencil(j);
    double acc = 0.0;
    for (int a = 0; a < su.n; ++a)
        for (int b = 0; b < sv.n; ++b)
            acc += su.weight[a] * sv.weight[b] *
                   f(u + su.offset[a] * h, v + sv.offset[b] * h);
    return acc / std::pow(h, i + j);
}

} // namespace

double fd_oracle(const std::function<double(double, double)>& f, double u,
                 double v, int i, int j, double h) {
    if (i < 0 || j < 0 || i > 4 || j > 4 || i + j > 4)
        throw JetOrderError("fd_oracle supports derivative orders up to 4");
    const int total = i + j;
    // Third and fourth differences divide by h^3, h^4; tiny steps fall
    // below the roundoff floor, so widen them to the optimum for double
    // precision.
    if (total == 3) h = std::max(h, 5e-3);
    if (total == 4) h = std::max(h, 2e-3);
    const double d1 = fd_once(f, u, v, i, j, h);
    if (total == 3) {
        // One Richardson step: both evaluations have O(h^2) error.
        const double d2 = fd_once(f, u, v, i, j, 2.0 * h);
        return (4.0 * d1 - d2) / 3.0;
    }
    return d1;
}

} // namespace formlab
