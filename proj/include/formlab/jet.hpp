#pragma once

#include <array>
#include <cstddef>
#include <functional>

#include "formlab/errors.hpp"

namespace formlab {

/// Hard cap on the total degree a jet can carry. Iterating the
/// third-form Laplacian r times on a coordinate field consumes surface
/// jets of order 2r+1, so order 10 covers r <= 4 with one to spare for
/// offset surfaces.
inline constexpr int kMaxJetOrder = 10;

enum class Var { U, V };

/// Truncated bivariate Taylor expansion of a scalar in (u, v).
///
/// coeff(i, j) stores d^{i+j} f / du^i dv^j divided by i! j! at the
/// expansion point. Storage is a dense triangle over i + j <= order;
/// arithmetic never reads or writes past the order, so truncation is
/// silent. Binary operations on jets of different orders truncate to
/// the smaller order.
class Jet2 {
public:
    Jet2() : order_(0) { c_.fill(0.0); }

    /// Jet of a constant: all derivative coefficients zero.
    static Jet2 constant(double value, int order);

    /// Jet of the coordinate u or v itself: value plus unit linear term.
    static Jet2 variable(Var which, double value, int order);

    int order() const { return order_; }

    /// Point value (the (0,0) coefficient).
    double value() const { return c_[0]; }

    /// Raw Taylor coefficient, i.e. the partial divided by i! j!.
    double coeff(int i, int j) const;

    /// The partial derivative d^{i+j} f / du^i dv^j: coeff * i! * j!.
    double partial(int i, int j) const;

    /// Copy truncated to a lower (or equal) order.
    Jet2 truncated(int new_order) const;

    /// Jet of the partial derivative with respect to u or v; drops one
    /// order.
    Jet2 derivative(Var which) const;

    Jet2 operator-() const;
    Jet2& operator+=(const Jet2& rhs);
    Jet2& operator-=(const Jet2& rhs);

    friend Jet2 operator+(const Jet2& a, const Jet2& b);
    friend Jet2 operator-(const Jet2& a, const Jet2& b);
    friend Jet2 operator*(const Jet2& a, const Jet2& b);
    friend Jet2 operator/(const Jet2& a, const Jet2& b);

    friend Jet2 operator+(const Jet2& a, double s);
    friend Jet2 operator+(double s, const Jet2& a);
    friend Jet2 operator-(const Jet2& a, double s);
    friend Jet2 operator-(double s, const Jet2& a);
    friend Jet2 operator*(const Jet2& a, double s);
    friend Jet2 operator*(double s, const Jet2& a);
    friend Jet2 operator/(const Jet2& a, double s);
    friend Jet2 operator/(double s, const Jet2& a);

    /// Evaluate sum_n d[n] * h^n with h = this minus its constant term.
    /// The workhorse behind the elementary functions; d holds the
    /// univariate Taylor coefficients of the outer function at value().
    Jet2 compose(const double* d, int n) const;

private:
    static int index(int i, int j) { return i * (2 * kMaxJetOrder + 3 - i) / 2 + j; }
    static void check_order(int order);

    int order_;
    std::array<double, (kMaxJetOrder + 1) * (kMaxJetOrder + 2) / 2> c_;
};

Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 sinh(const Jet2& a);
Jet2 cosh(const Jet2& a);
Jet2 exp(const Jet2& a);
Jet2 log(const Jet2& a);
Jet2 sqrt(const Jet2& a);
Jet2 recip(const Jet2& a);
Jet2 asinh(const Jet2& a);
Jet2 atan(const Jet2& a);

/// Central finite-difference estimate of d^{i+j} f / du^i dv^j at
/// (u, v) with step h. Supports i + j <= 4; applies one Richardson
/// refinement for total order 3. Accuracy degrades with order but the
/// estimate never traps.
double fd_oracle(const std::function<double(double, double)>& f, double u,
                 double v, int i, int j, double h = 1e-4);

} // namespace formlab
