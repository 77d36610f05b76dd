#pragma once

#include <optional>

#include "formlab/forms.hpp"
#include "formlab/report.hpp"
#include "formlab/sweep.hpp"

namespace formlab {

/// Scalar quantity on a patch, evaluated as jets. cost is the extra
/// surface-jet order the field consumes on top of the requested order;
/// it makes over-deep Laplacian towers fail loudly up front instead of
/// truncating silently.
struct ScalarField {
    int cost = 0;
    std::function<Jet2(double, double, int)> eval;
};

/// Ambient-coordinate triple of scalar fields.
struct VectorField {
    std::array<ScalarField, 3> comp;
};

ScalarField constant_field(double c);
ScalarField coordinate_field(const SurfacePatch& s, int c);
VectorField position_field(const SurfacePatch& s);
VectorField normal_vector_field(const SurfacePatch& s);

/// Support function w = -<n, x>.
ScalarField support_function_field(const SurfacePatch& s);

/// Sum of the principal radii of curvature R = 2H/K as a field.
ScalarField radii_sum_field(const SurfacePatch& s);

/// First Beltrami differential parameter a^{ij} f_i g_j of the chosen
/// form at a point.
double beltrami_first(const SurfacePatch& s, FormKind J, const ScalarField& f,
                      const ScalarField& g, double u, double v);

/// Beltrami-Laplace operator of the chosen form in divergence form,
///   -(1/W) d_i (W a^{ij} d_j f),  W = sqrt(|det a|),
/// returned as a jet so results compose. The sign follows the
/// convention that makes the Gauss map an eigenfunction with
/// eigenvalue +2.
Jet2 laplacian(const SurfacePatch& s, FormKind J, const ScalarField& f,
               double u, double v, int order);

/// The Laplacian as a field, for building towers.
ScalarField laplacian_field(const SurfacePatch& s, FormKind J, const ScalarField& f);

/// Third-form intrinsic gradient e^{ij} f_i n_j in ambient
/// coordinates, pushed through the spherical frame {n_u, n_v} that the
/// third form is the metric of.
Vec3 grad_third(const SurfacePatch& s, const ScalarField& f, double u, double v);

/// r-fold componentwise Laplacian of a vector field at a point; r = 0
/// evaluates the field itself.
Vec3 iterate_laplacian(const SurfacePatch& s, FormKind J, const VectorField& F,
                       int r, double u, double v);

/// Eigenvalue of the position vector for surfaces known a priori to
/// have one (round spheres and minimal surfaces); keyed on the builtin
/// name's head.
std::optional<double> known_type1_eigenvalue(const std::string& surface_name);

struct IdentityReport {
    std::string surface;
    std::vector<IdentityRow> rows;
    bool all_pass = false;
};

/// Checks the closed-form identities over a grid: the position-vector
/// relation Delta x = grad R - R n, the Gauss-map eigenrelation
/// Delta n = 2 n, the support-function relation -Delta w + 2 w = R,
/// and, for surfaces with a known position eigenvalue lambda, the
/// eigenfunction relations Delta w = (2 - lambda) w and
/// Delta R = (2 - lambda) R.
IdentityReport identity_suite(const SurfacePatch& s, const Grid& grid,
                              double tol = 1e-7,
                              ExecMode mode = ExecMode::parallel);

} // namespace formlab
