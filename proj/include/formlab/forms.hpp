#pragma once

#include "formlab/surface.hpp"

namespace formlab {

enum class FormKind { I, II, III };

/// Symmetric 2x2 matrix of jets; a21 == a12 by construction.
struct FormMatrix2 {
    Jet2 a11, a12, a22;

    Jet2 det() const { return a11 * a22 - a12 * a12; }
};

/// Componentwise derivative of a jet 3-vector; drops one order.
Vec3Jet dvec(const Vec3Jet& x, Var which);

Jet2 dot(const Vec3Jet& a, const Vec3Jet& b);
Vec3Jet cross(const Vec3Jet& a, const Vec3Jet& b);

/// Coefficient matrices of the three fundamental forms as jets:
/// g_ij = <x_i, x_j>, b_ij = <x_ij, n>, e_ij = <n_i, n_j>.
/// Order budget: order + 2 <= 10 for I and II, order + 3 <= 10 for III.
FormMatrix2 fundamental_form(const SurfacePatch& s, FormKind which, double u,
                             double v, int order);

/// Unit normal x_u x x_v / |x_u x x_v| as jets of the requested order.
/// Fails with a degenerate-point error when |x_u x x_v| < 1e-12.
Vec3Jet gauss_map(const SurfacePatch& s, double u, double v, int order);

/// Normal jets straight from coordinate jets; one order below x.
Vec3Jet unit_normal_jets(const Vec3Jet& x);

/// Pointwise curvature data. k1 >= k2 are the roots of
/// k^2 - 2 H k + K = 0; R = 2H/K is the sum of the principal radii of
/// curvature and w = -<n, x> the support function.
struct CurvatureBundle {
    double H = 0.0, K = 0.0;
    double k1 = 0.0, k2 = 0.0;
    double R = 0.0, w = 0.0;
    Vec3 n{0.0, 0.0, 0.0};
};

/// Fails with a flat-point error when |K| < 1e-10 and a degenerate-form
/// error when det(g_ij) < 1e-14.
CurvatureBundle curvature_bundle(const SurfacePatch& s, double u, double v);

} // namespace formlab
