#pragma once

#include <array>
#include <functional>
#include <string>

#include "formlab/beltrami.hpp"
#include "formlab/jet.hpp"
#include "formlab/surface.hpp"

namespace formlab {

/// Unit-speed profile curve u -> (f(u), g(u)) of a revolution surface.
/// f is the distance from the axis and stays positive on the trimmed
/// domain; g is the height. eval returns the pair as jets in u with all
/// v coefficients zero.
struct Profile {
    std::string name;
    double u_min = 0.0, u_max = 1.0;
    double singular_margin = 0.0;
    std::function<std::array<Jet2, 2>(double, int)> eval;

    double u_lo() const { return u_min + singular_margin * (u_max - u_min); }
    double u_hi() const { return u_max - singular_margin * (u_max - u_min); }
};

/// Tangent direction of the profile: f' = cos(phi), g' = sin(phi), and
/// kappa = phi' is the signed profile curvature.
struct TurningAngle {
    double phi = 0.0;
    double kappa = 0.0;
};

/// Arc-length circle of radius r; revolves to the sphere patch.
Profile circle_profile(double r);

/// Arc-length catenary with waist a; revolves to the catenoid patch.
Profile catenary_profile(double a);

/// Tube circle of radius 1 about a center at distance a > 1.
Profile torus_profile(double a);

/// Arc-length reparametrized offset of the catenary at signed distance
/// mu along the surface normal; revolves to the parallel surface of the
/// catenoid. Requires |mu| < a so the curve stays regular and off the
/// axis.
Profile offset_catenary_profile(double a, double mu);

/// Builds a profile from its turning angle: f = f0 + integral of
/// cos(phi) and g = integral of sin(phi) from u0. Values come from
/// adaptive quadrature cached on a dense grid; jets reuse the phi jets
/// directly, so derivatives carry no interpolation error. phi(u, order)
/// must return phi as a jet in u. Rejects profiles that reach f <= 0 or
/// degenerate to a cylinder (f' identically 0) or plane (g' identically
/// 0).
Profile profile_from_phi(const std::function<Jet2(double, int)>& phi, double f0,
                         double u0, double u_min, double u_max,
                         const std::string& name = "phi-profile");

/// Jet-lifting view of a profile's own turning angle, suitable for
/// feeding back into profile_from_phi. The branch-tracking table is
/// built once and shared by the returned callable.
std::function<Jet2(double, int)> profile_phi_fn(const Profile& p);

/// Parses a profile spec:
///   circle:r=<real> | catenary:a=<real> | torus:a=<real> | phi:<expr>
/// phi expressions use the grammar in expr.hpp and get f0 = 1, u0 = 0,
/// domain [-1, 1].
Profile parse_profile(const std::string& spec);

/// Validates the profile (unit speed to 1e-8, f > 0, neither cylinder
/// nor plane) and revolves it about the z axis; v runs over [0, 2 pi).
SurfacePatch profile_to_patch(const Profile& p);

/// Turning angle at u, continued as a single continuous branch from the
/// low end of the trimmed domain, plus the curvature kappa = phi' read
/// off the profile jets.
TurningAngle turning_angle_of(const Profile& p, double u);

/// phi as a jet in u: the value is the unwrapped branch, higher
/// coefficients integrate the kappa jet.
Jet2 turning_angle_jet(const Profile& p, double u, int order);

/// The scalar data every closed form in this module is built from.
struct RevolutionComponents {
    double g11 = 0.0, g22 = 0.0; // first form diagonal
    double e11 = 0.0, e22 = 0.0; // third form diagonal, kappa^2 and sin^2(phi)
    double R = 0.0;              // principal radii sum 1/kappa + f/sin(phi)
    double Rprime = 0.0;         // dR/du
};
RevolutionComponents closed_form_components(const Profile& p, double u);

/// Unit normal of the revolution patch in closed form:
/// (-g' cos v, -g' sin v, f').
Vec3 closed_form_normal(const Profile& p, double u, double v);

/// Third-form Beltrami operator specialized to revolution patches:
///   -(1/kappa^2) d_uu - (1/g'^2) d_vv
///   + [(g' kappa' - kappa g'') / (kappa^3 g')] d_u
/// applied to the field's jets. Agrees with the generic tensor operator
/// on every revolution patch.
Jet2 laplacian_III_revolution(const Profile& p, const ScalarField& f, double u,
                              double v, int order);

/// Laplacians of the three coordinate functions written in the
/// turning-angle data (phi', phi'', sin phi, cos phi, f).
Vec3 coordinate_laplacians_angle_form(const Profile& p, double u, double v);

/// The same Laplacians written in the radii data (R, R').
Vec3 coordinate_laplacians_radii_form(const Profile& p, double u, double v);

enum class RevolutionCase { CaseI_minimal, CaseII_constantR, nonconstant_R };

const char* to_string(RevolutionCase c);

struct RevolutionVerdict {
    RevolutionCase kind = RevolutionCase::nonconstant_R;
    double mean_R = 0.0;
    double max_deviation = 0.0; // max |R - mean| over the samples
    double eq_residual = 0.0;   // constant-R only: max |lap(x) + R n| on a grid
};

/// Samples R across the trimmed domain and sorts the profile into
/// minimal (R identically 0), constant nonzero R, or nonconstant R.
/// tol is relative to max(1, |mean R|). For constant nonzero R the
/// verdict also records how well the coordinate Laplacians reproduce
/// -R times the normal.
RevolutionVerdict classify_revolution(const Profile& p, int samples = 64,
                                      double tol = 1e-6);

} // namespace formlab
