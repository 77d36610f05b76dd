#include <cmath>
#include <vector>

#include <doctest.h>

#include "formlab/forms.hpp"
#include "formlab/parallel.hpp"
#include "formlab/surface.hpp"

using namespace formlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

double coord_at(const SurfacePatch& s, int c, double u, double v) {
    return s.eval(u, v, 0)[c].value();
}

double normal_at(const SurfacePatch& s, int c, double u, double v) {
    return gauss_map(s, u, v, 0)[c].value();
}

/// Menagerie the property tests sweep over. Offsets of the catenoid
/// stand in for the offset family.
std::vector<SurfacePatch> menagerie() {
    return {make_sphere(1.0), make_catenoid(1.0), make_enneper(),
            make_parallel(make_catenoid(1.0), 0.25), make_torus(2.0)};
}

const IdentityRow& row_by_id(const ParallelReport& rep, const std::string& id) {
    for (const IdentityRow& r : rep.rows)
        if (r.identity_id == id) return r;
    throw std::runtime_error("missing row " + id);
}

} // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("builtin domains and margins") {
    const SurfacePatch sph = make_sphere(1.0);
    CHECK(sph.name == "sphere:r=1");
    CHECK(sph.u_lo() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(sph.u_hi() == doctest::Approx(kPi - 0.2).epsilon(1e-12));

    const SurfacePatch tor = make_torus(2.0);
    CHECK(tor.u_lo() == doctest::Approx(-1.3).epsilon(1e-12));
    CHECK(tor.u_hi() == doctest::Approx(1.3).epsilon(1e-12));

    const SurfacePatch cat = make_catenoid(1.0);
    CHECK(cat.u_lo() == -2.0);
    CHECK(cat.u_hi() == 2.0);

    CHECK_THROWS_AS(make_torus(1.0), InvalidParameterError);
    CHECK_THROWS_AS(make_torus(0.5), InvalidParameterError);
    CHECK_THROWS_AS(make_sphere(-1.0), InvalidParameterError);
    CHECK_THROWS_AS(make_sphere(0.0), InvalidParameterError);
    CHECK_THROWS_AS(make_catenoid(0.0), InvalidParameterError);

    CHECK_THROWS_AS(sph.eval(0.1, 1.0, 2), SingularDomainError);
    CHECK_THROWS_AS(tor.eval(1.45, 1.0, 0), SingularDomainError);
    CHECK_NOTHROW(tor.eval(1.25, 1.0, 0));
    CHECK_THROWS_AS(cat.eval(0.0, 0.0, 11), JetOrderError);
}

TEST_CASE("surface spec strings round trip") {
    CHECK(parse_surface("sphere:r=1").name == "sphere:r=1");
    CHECK(parse_surface("catenoid:a=1").name == "catenoid:a=1");
    CHECK(parse_surface("torus:a=2").name == "torus:a=2");
    CHECK(parse_surface("enneper").name == "enneper");
    CHECK(parse_surface("parallel:base=catenoid:a=1,mu=0.25").name ==
          "parallel:base=catenoid:a=1,mu=0.25");
    const SurfacePatch nested =
        parse_surface("parallel:base=parallel:base=catenoid:a=1,mu=0.1,mu=0.2");
    CHECK(nested.name == "parallel:base=parallel:base=catenoid:a=1,mu=0.1,mu=0.2");

    CHECK_THROWS_AS(parse_surface("sphere"), SpecParseError);
    CHECK_THROWS_AS(parse_surface("sphere:r="), SpecParseError);
    CHECK_THROWS_AS(parse_surface("sphere:x=1"), SpecParseError);
    CHECK_THROWS_AS(parse_surface("frobnicate"), SpecParseError);
    CHECK_THROWS_AS(parse_surface("enneper:a=1"), SpecParseError);
    CHECK_THROWS_AS(parse_surface("parallel:base=sphere:r=1"), SpecParseError);
    CHECK_THROWS_AS(parse_surface("torus:a=0.5"), InvalidParameterError);
}

TEST_CASE("profiles are unit speed") {
    // g11 = f'^2 + g'^2 for a revolution patch, so arc-length profiles
    // pin it to 1.
    for (const char* spec : {"sphere:r=1", "sphere:r=2", "catenoid:a=1",
                             "catenoid:a=0.7", "torus:a=2", "torus:a=3"}) {
        const SurfacePatch s = parse_surface(spec);
        const Grid g{7, 3};
        for (int i = 0; i < g.nu; ++i) {
            const auto p = grid_point(s, g, i, 1);
            const FormMatrix2 I = fundamental_form(s, FormKind::I, p[0], p[1], 0);
            CHECK(I.a11.value() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("forms match finite differences of the coordinates") {
    // fd first: the oracle differentiates only raw coordinate and
    // normal evaluations, independently of the jet plumbing under test.
    const SurfacePatch s = make_torus(2.0);
    const double u = 0.3, v = 0.7;

    double fd_x[3][2], fd_xx[3][3], fd_n[3][2];
    for (int c = 0; c < 3; ++c) {
        auto coord = [&, c](double uu, double vv) { return coord_at(s, c, uu, vv); };
        auto nrm = [&, c](double uu, double vv) { return normal_at(s, c, uu, vv); };
        fd_x[c][0] = fd_oracle(coord, u, v, 1, 0);
        fd_x[c][1] = fd_oracle(coord, u, v, 0, 1);
        fd_xx[c][0] = fd_oracle(coord, u, v, 2, 0);
        fd_xx[c][1] = fd_oracle(coord, u, v, 1, 1);
        fd_xx[c][2] = fd_oracle(coord, u, v, 0, 2);
        fd_n[c][0] = fd_oracle(nrm, u, v, 1, 0);
        fd_n[c][1] = fd_oracle(nrm, u, v, 0, 1);
    }
    const Vec3Jet n0 = gauss_map(s, u, v, 0);
    double fd_g[3] = {0, 0, 0}, fd_b[3] = {0, 0, 0}, fd_e[3] = {0, 0, 0};
    for (int c = 0; c < 3; ++c) {
        fd_g[0] += fd_x[c][0] * fd_x[c][0];
        fd_g[1] += fd_x[c][0] * fd_x[c][1];
        fd_g[2] += fd_x[c][1] * fd_x[c][1];
        fd_b[0] += fd_xx[c][0] * n0[c].value();
        fd_b[1] += fd_xx[c][1] * n0[c].value();
        fd_b[2] += fd_xx[c][2] * n0[c].value();
        fd_e[0] += fd_n[c][0] * fd_n[c][0];
        fd_e[1] += fd_n[c][0] * fd_n[c][1];
        fd_e[2] += fd_n[c][1] * fd_n[c][1];
    }

    const FormMatrix2 I = fundamental_form(s, FormKind::I, u, v, 0);
    const FormMatrix2 II = fundamental_form(s, FormKind::II, u, v, 0);
    const FormMatrix2 III = fundamental_form(s, FormKind::III, u, v, 0);
    CHECK(I.a11.value() == doctest::Approx(fd_g[0]).epsilon(1e-6));
    CHECK(I.a12.value() == doctest::Approx(fd_g[1]).epsilon(1e-6));
    CHECK(I.a22.value() == doctest::Approx(fd_g[2]).epsilon(1e-6));
    CHECK(II.a11.value() == doctest::Approx(fd_b[0]).epsilon(1e-6));
    CHECK(II.a12.value() - fd_b[1] == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(II.a22.value() == doctest::Approx(fd_b[2]).epsilon(1e-6));
    CHECK(III.a11.value() == doctest::Approx(fd_e[0]).epsilon(1e-6));
    CHECK(III.a12.value() - fd_e[1] == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(III.a22.value() == doctest::Approx(fd_e[2]).epsilon(1e-6));
}

TEST_CASE("closed-form components on the unit sphere") {
    const SurfacePatch s = make_sphere(1.0);
    const double u = 0.9, v = 2.1;

    const FormMatrix2 I = fundamental_form(s, FormKind::I, u, v, 0);
    CHECK(I.a11.value() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(I.a12.value() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(I.a22.value() == doctest::Approx(std::sin(u) * std::sin(u)).epsilon(1e-12));

    // n = -x, so the third form equals the first.
    const FormMatrix2 III = fundamental_form(s, FormKind::III, u, v, 0);
    CHECK(std::fabs(III.a11.value() - I.a11.value()) < 1e-10);
    CHECK(std::fabs(III.a12.value() - I.a12.value()) < 1e-10);
    CHECK(std::fabs(III.a22.value() - I.a22.value()) < 1e-10);

    const Vec3Jet n = gauss_map(s, u, v, 0);
    const Vec3Jet x = s.eval(u, v, 0);
    for (int c = 0; c < 3; ++c)
        CHECK(n[c].value() == doctest::Approx(-x[c].value()).epsilon(1e-12));
}

TEST_CASE("third-form components of revolution patches") {
    // e11 = f''^2 + g''^2 and e22 = g'^2, both computable from the
    // profile by hand.
    struct Probe {
        SurfacePatch s;
        double e11, e22;
        double u;
    };
    const double ut = 0.8, uc = 0.5;
    const double fpp_t = -std::cos(ut), gpp_t = -std::sin(ut), gp_t = std::cos(ut);
    // catenoid(1): f'' = 1/(1+u^2)^{3/2}, g' = 1/sqrt(1+u^2),
    // g'' = -u/(1+u^2)^{3/2}
    const double w2 = 1.0 + uc * uc;
    const double fpp_c = 1.0 / std::pow(w2, 1.5), gpp_c = -uc / std::pow(w2, 1.5);
    const double gp_c = 1.0 / std::sqrt(w2);
    std::vector<Probe> probes = {
        {make_torus(2.0), fpp_t * fpp_t + gpp_t * gpp_t, gp_t * gp_t, ut},
        {make_catenoid(1.0), fpp_c * fpp_c + gpp_c * gpp_c, gp_c * gp_c, uc},
    };
    for (const Probe& p : probes) {
        const FormMatrix2 III = fundamental_form(p.s, FormKind::III, p.u, 1.1, 0);
        CHECK(III.a11.value() == doctest::Approx(p.e11).epsilon(1e-10));
        CHECK(std::fabs(III.a12.value()) < 1e-12);
        CHECK(III.a22.value() == doctest::Approx(p.e22).epsilon(1e-10));
    }
}

TEST_CASE("gauss map is a unit normal") {
    for (const SurfacePatch& s : menagerie()) {
        const Grid g{5, 5};
        for (int i = 0; i < g.nu; ++i)
            for (int j = 0; j < g.nv; ++j) {
                const auto p = grid_point(s, g, i, j);
                const Vec3Jet n = gauss_map(s, p[0], p[1], 1);
                const Vec3Jet x = s.eval(p[0], p[1], 2);
                const Vec3Jet xu = dvec(x, Var::U);
                const Vec3Jet xv = dvec(x, Var::V);
                CHECK(std::fabs(dot(n, n).value() - 1.0) < 1e-12);
                CHECK(std::fabs(dot(n, xu).value()) < 1e-12);
                CHECK(std::fabs(dot(n, xv).value()) < 1e-12);
            }
    }
}

TEST_CASE("gauss map of the torus at the outer equator") {
    // phi = u + pi/2 there, so n = (-cos u cos v, -cos u sin v, -sin u)
    // reduces to a horizontal inward normal at u = 0.
    const SurfacePatch s = make_torus(2.0);
    for (double v : {0.4, 2.0, 5.5}) {
        const Vec3Jet n = gauss_map(s, 0.0, v, 0);
        CHECK(n[0].value() == doctest::Approx(-std::cos(v)).epsilon(1e-12));
        CHECK(n[1].value() == doctest::Approx(-std::sin(v)).epsilon(1e-12));
        CHECK(std::fabs(n[2].value()) < 1e-12);
    }
}

TEST_CASE("degenerate patches are rejected") {
    SurfacePatch line;
    line.name = "collapsed";
    line.domain = {0.0, 1.0, 0.0, 1.0};
    line.eval = [](double u, double v, int order) {
        Jet2 u0 = Jet2::variable(Var::U, u, order);
        (void)v;
        return Vec3Jet{u0, u0, Jet2::constant(0.0, order)};
    };
    CHECK_THROWS_AS(gauss_map(line, 0.5, 0.5, 0), DegeneratePointError);
    CHECK_THROWS_AS(gauss_map(make_sphere(1.0), 0.5, 0.5, 10), JetOrderError);
    CHECK_THROWS_AS(
        fundamental_form(make_sphere(1.0), FormKind::III, 0.5, 0.5, 8),
        JetOrderError);
    CHECK_THROWS_AS(fundamental_form(make_sphere(1.0), FormKind::I, 0.5, 0.5, 9),
                    JetOrderError);

    SurfacePatch plane;
    plane.name = "plane";
    plane.domain = {0.0, 1.0, 0.0, 1.0};
    plane.eval = [](double u, double v, int order) {
        return Vec3Jet{Jet2::variable(Var::U, u, order),
                       Jet2::variable(Var::V, v, order),
                       Jet2::constant(0.0, order)};
    };
    CHECK_THROWS_AS(curvature_bundle(plane, 0.5, 0.5), FlatPointError);
}

TEST_CASE("curvature bundles of the builtins") {
    const SurfacePatch sph = make_sphere(1.0);
    const CurvatureBundle cs = curvature_bundle(sph, 1.1, 0.3);
    CHECK(cs.H == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(cs.K == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(cs.R == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(cs.w == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(cs.k1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(cs.k2 == doctest::Approx(1.0).epsilon(1e-10));

    const CurvatureBundle c2 = curvature_bundle(make_sphere(2.0), 2.2, 0.3);
    CHECK(c2.H == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(c2.K == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(c2.R == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(c2.w == doctest::Approx(2.0).epsilon(1e-10));

    // K = cos u / (a + cos u) for the torus profile.
    const SurfacePatch tor = make_torus(2.0);
    CHECK(curvature_bundle(tor, 0.0, 1.0).K == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(curvature_bundle(tor, 0.5, 1.0).K ==
          doctest::Approx(std::cos(0.5) / (2.0 + std::cos(0.5))).epsilon(1e-10));

    // K = -1/(1+u^2)^2 for the catenoid; H and R vanish.
    const SurfacePatch cat = make_catenoid(1.0);
    for (double u : {-1.5, 0.1, 1.0}) {
        const CurvatureBundle cb = curvature_bundle(cat, u, 2.0);
        CHECK(std::fabs(cb.H) < 1e-10);
        CHECK(std::fabs(cb.R) < 1e-9);
        const double k = -1.0 / ((1.0 + u * u) * (1.0 + u * u));
        CHECK(cb.K == doctest::Approx(k).epsilon(1e-10));
    }
}

TEST_CASE("principal curvatures solve the characteristic quadratic") {
    for (const SurfacePatch& s : menagerie()) {
        const Grid g{5, 5};
        for (int i = 0; i < g.nu; ++i)
            for (int j = 0; j < g.nv; ++j) {
                const auto p = grid_point(s, g, i, j);
                const CurvatureBundle cb = curvature_bundle(s, p[0], p[1]);
                CHECK(cb.k1 >= cb.k2);
                CHECK(cb.k1 + cb.k2 == doctest::Approx(2.0 * cb.H).epsilon(1e-10));
                CHECK(cb.k1 * cb.k2 == doctest::Approx(cb.K).epsilon(1e-10));
            }
    }
}

TEST_CASE("third form from the curvature relation") {
    // III = 2H II - K I componentwise, a cross-check of e_ij against
    // the other two forms.
    for (const SurfacePatch& s : menagerie()) {
        const Grid g{6, 6};
        for (int i = 0; i < g.nu; ++i)
            for (int j = 0; j < g.nv; ++j) {
                const auto p = grid_point(s, g, i, j);
                const FormMatrix2 I = fundamental_form(s, FormKind::I, p[0], p[1], 0);
                const FormMatrix2 II = fundamental_form(s, FormKind::II, p[0], p[1], 0);
                const FormMatrix2 III = fundamental_form(s, FormKind::III, p[0], p[1], 0);
                const CurvatureBundle cb = curvature_bundle(s, p[0], p[1]);
                CHECK(std::fabs(III.a11.value() -
                                (2.0 * cb.H * II.a11.value() - cb.K * I.a11.value())) < 1e-9);
                CHECK(std::fabs(III.a12.value() -
                                (2.0 * cb.H * II.a12.value() - cb.K * I.a12.value())) < 1e-9);
                CHECK(std::fabs(III.a22.value() -
                                (2.0 * cb.H * II.a22.value() - cb.K * I.a22.value())) < 1e-9);
                CHECK(I.det().value() > 0.0);
                CHECK(III.det().value() > 0.0);
            }
    }
}

TEST_CASE("offset by zero is the identity") {
    const SurfacePatch base = make_catenoid(1.0);
    const SurfacePatch off = make_parallel(base, 0.0);
    CHECK(off.name == "parallel:base=catenoid:a=1,mu=0");
    const Vec3Jet a = base.eval(0.4, 1.2, 5);
    const Vec3Jet b = off.eval(0.4, 1.2, 5);
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i <= 5; ++i)
            for (int j = 0; i + j <= 5; ++j)
                CHECK(a[c].coeff(i, j) == b[c].coeff(i, j));
}

TEST_CASE("offset surfaces transform curvature") {
    const SurfacePatch base = make_catenoid(1.0);
    const SurfacePatch off = make_parallel(base, 0.5);
    const Grid g{15, 15};
    for (int i = 0; i < g.nu; ++i)
        for (int j = 0; j < g.nv; ++j) {
            const auto p = grid_point(base, g, i, j);
            const CurvatureBundle cb = curvature_bundle(base, p[0], p[1]);
            const CurvatureBundle co = curvature_bundle(off, p[0], p[1]);
            const double density = 1.0 - 2.0 * 0.5 * cb.H + 0.25 * cb.K;
            CHECK(std::fabs(co.K - cb.K / density) < 1e-9);
            // Minimal base, so the offset radii sum is the constant -2 mu.
            CHECK(co.R == doctest::Approx(-1.0).epsilon(1e-8));
        }

    const CurvatureBundle sphere_off =
        curvature_bundle(make_parallel(make_sphere(1.0), 0.3), 1.3, 0.4);
    CHECK(sphere_off.K == doctest::Approx(1.0 / 0.49).epsilon(1e-10));

    CHECK_THROWS_AS(make_parallel(make_sphere(1.0), 1.0), FocalDegeneracyError);
}

TEST_CASE("offset invariant report") {
    const ParallelReport rep =
        parallel_invariant_check(make_catenoid(1.0), 0.5, Grid{15, 15});
    CHECK(rep.all_pass);
    CHECK(rep.surface == "parallel:base=catenoid:a=1,mu=0.5");
    for (const IdentityRow& r : rep.rows) {
        CHECK(r.grid == "15x15");
        if (r.gating) CHECK(r.pass);
    }

    // The curvature transformations predict R* = R - 2 mu; the printed
    // variant R* = R - mu misses by mu.
    const IdentityRow& good = row_by_id(rep, "rstar_eq_R_minus_2mu");
    const IdentityRow& printed = row_by_id(rep, "rstar_eq_R_minus_mu_printed");
    CHECK(good.pass);
    CHECK(good.gating == false);
    CHECK(printed.pass == false);
    CHECK(printed.max_error == doctest::Approx(0.5).epsilon(1e-6));

    const ParallelReport sph = parallel_invariant_check(make_sphere(1.0), 0.3, Grid{9, 9});
    CHECK(sph.all_pass);
    CHECK(row_by_id(sph, "rstar_eq_R_minus_2mu").pass);
    CHECK(row_by_id(sph, "rstar_eq_R_minus_mu_printed").max_error ==
          doctest::Approx(0.3).epsilon(1e-6));

    const ParallelReport zero = parallel_invariant_check(make_enneper(), 0.0, Grid{7, 7});
    for (const IdentityRow& r : zero.rows) CHECK(r.max_error < 1e-12);

    const ParallelReport enn = parallel_invariant_check(make_enneper(), 0.1, Grid{9, 9});
    CHECK(enn.all_pass);
}

TEST_SUITE_END();
