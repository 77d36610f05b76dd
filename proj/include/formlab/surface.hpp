#pragma once

#include <array>
#include <functional>
#include <string>

#include "formlab/jet.hpp"

namespace formlab {

using Vec3 = std::array<double, 3>;
using Vec3Jet = std::array<Jet2, 3>;

struct Domain {
    double u_min = 0.0, u_max = 1.0;
    double v_min = 0.0, v_max = 1.0;
};

/// Parametric patch with analytic jets.
///
/// eval(u, v, order) returns the coordinate jets centered at (u, v).
/// singular_margin is the fraction of the u-range trimmed at each end
/// before sampling; eval rejects points outside the trimmed range with
/// a singular-domain error.
struct SurfacePatch {
    std::string name;
    Domain domain;
    double singular_margin = 0.0;
    std::function<Vec3Jet(double, double, int)> eval;

    double u_lo() const { return domain.u_min + singular_margin * (domain.u_max - domain.u_min); }
    double u_hi() const { return domain.u_max - singular_margin * (domain.u_max - domain.u_min); }
    bool contains(double u, double v) const {
        return u >= u_lo() && u <= u_hi() && v >= domain.v_min && v <= domain.v_max;
    }
};

struct Grid {
    int nu = 15;
    int nv = 15;
};

/// Cell-centered sample (i, j) of the trimmed domain; every point is a
/// strict interior point, so grids never touch the margins.
std::array<double, 2> grid_point(const SurfacePatch& s, const Grid& g, int i, int j);

/// Round-circle profile of radius r, parametrized by arc length.
SurfacePatch make_sphere(double r);

/// Catenoid with waist radius a, arc-length catenary profile.
SurfacePatch make_catenoid(double a);

/// Torus with tube radius 1 and center radius a > 1; the u-domain
/// excludes the circles where the Gauss curvature vanishes.
SurfacePatch make_torus(double a);

/// Enneper's minimal surface on (-1, 1) x (-1, 1).
SurfacePatch make_enneper();

/// Offset patch x + mu n sharing the base domain. Fails with a
/// focal-degeneracy error when 1 - 2 mu H + mu^2 K comes within 1e-8 of
/// zero anywhere on a validation grid.
SurfacePatch make_parallel(const SurfacePatch& base, double mu);

/// Surface of revolution built from a named profile (implemented with
/// the profile machinery; see turning-angle docs for the name list).
SurfacePatch revolution_surface(const std::string& profile_name);

/// Parses a surface spec string. Grammar:
///   sphere:r=<real> | catenoid:a=<real> | torus:a=<real> | enneper
///   | parallel:base=<spec>,mu=<real> | revolution:profile=<name>
/// The parallel base spec may itself be any spec; the split happens at
/// the last ",mu=".
SurfacePatch parse_surface(const std::string& spec);

} // namespace formlab
