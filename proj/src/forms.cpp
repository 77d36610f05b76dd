#include "formlab/forms.hpp"

#include <cmath>

namespace formlab {

Vec3Jet dvec(const Vec3Jet& x, Var which) {
    return {x[0].derivative(which), x[1].derivative(which), x[2].derivative(which)};
}

Jet2 dot(const Vec3Jet& a, const Vec3Jet& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3Jet cross(const Vec3Jet& a, const Vec3Jet& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

Vec3Jet unit_normal_jets(const Vec3Jet& x) {
    const Vec3Jet xu = dvec(x, Var::U);
    const Vec3Jet xv = dvec(x, Var::V);
    const Vec3Jet c = cross(xu, xv);
    const Jet2 len2 = dot(c, c);
    if (std::sqrt(len2.value()) < 1e-12)
        throw DegeneratePointError("surface is not regular at the requested point");
    const Jet2 len = sqrt(len2);
    return {c[0] / len, c[1] / len, c[2] / len};
}

Vec3Jet gauss_map(const SurfacePatch& s, double u, double v, int order) {
    if (order + 1 > kMaxJetOrder)
        throw JetOrderError("gauss_map needs one order of headroom");
    return unit_normal_jets(s.eval(u, v, order + 1));
}

FormMatrix2 fundamental_form(const SurfacePatch& s, FormKind which, double u,
                             double v, int order) {
    const int budget = which == FormKind::III ? 3 : 2;
    if (order + budget > kMaxJetOrder)
        throw JetOrderError("fundamental form exceeds the jet order budget");

    switch (which) {
    case FormKind::I: {
        const Vec3Jet x = s.eval(u, v, order + 1);
        const Vec3Jet xu = dvec(x, Var::U);
        const Vec3Jet xv = dvec(x, Var::V);
        return {dot(xu, xu), dot(xu, xv), dot(xv, xv)};
    }
    case FormKind::II: {
        const Vec3Jet x = s.eval(u, v, order + 2);
        const Vec3Jet xu = dvec(x, Var::U);
        const Vec3Jet xv = dvec(x, Var::V);
        const Vec3Jet n = unit_normal_jets(x);
        return {dot(dvec(xu, Var::U), n), dot(dvec(xu, Var::V), n),
                dot(dvec(xv, Var::V), n)};
    }
    case FormKind::III: {
        const Vec3Jet n = unit_normal_jets(s.eval(u, v, order + 2));
        const Vec3Jet nu = dvec(n, Var::U);
        const Vec3Jet nv = dvec(n, Var::V);
        return {dot(nu, nu), dot(nu, nv), dot(nv, nv)};
    }
    }
    throw InvalidParameterError("unreachable form kind");
}

CurvatureBundle curvature_bundle(const SurfacePatch& s, double u, double v) {
    const Vec3Jet x = s.eval(u, v, 2);
    const Vec3Jet xu = dvec(x, Var::U);
    const Vec3Jet xv = dvec(x, Var::V);
    const Vec3Jet n = unit_normal_jets(x);

    const double g11 = dot(xu, xu).value();
    const double g12 = dot(xu, xv).value();
    const double g22 = dot(xv, xv).value();
    const double det_g = g11 * g22 - g12 * g12;
    if (det_g < 1e-14)
        throw DegenerateFormError("first fundamental form is degenerate");

    const double b11 = dot(dvec(xu, Var::U), n).value();
    const double b12 = dot(dvec(xu, Var::V), n).value();
    const double b22 = dot(dvec(xv, Var::V), n).value();

    CurvatureBundle out;
    out.H = (g22 * b11 - 2.0 * g12 * b12 + g11 * b22) / (2.0 * det_g);
    out.K = (b11 * b22 - b12 * b12) / det_g;
    if (std::fabs(out.K) < 1e-10)
        throw FlatPointError("Gauss curvature vanishes at the requested point");
    out.R = 2.0 * out.H / out.K;
    out.n = {n[0].value(), n[1].value(), n[2].value()};
    out.w = -(out.n[0] * x[0].value() + out.n[1] * x[1].value() + out.n[2] * x[2].value());
    const double disc = std::sqrt(std::fmax(out.H * out.H - out.K, 0.0));
    out.k1 = out.H + disc;
    out.k2 = out.H - disc;
    return out;
}

} // namespace formlab
