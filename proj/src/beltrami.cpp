#include "formlab/beltrami.hpp"

#include <cmath>

namespace formlab {

ScalarField constant_field(double c) {
    return {0, [c](double, double, int order) { return Jet2::constant(c, order); }};
}

ScalarField coordinate_field(const SurfacePatch& s, int c) {
    return {0, [s, c](double u, double v, int order) { return s.eval(u, v, order)[c]; }};
}

VectorField position_field(const SurfacePatch& s) {
    return {{coordinate_field(s, 0), coordinate_field(s, 1), coordinate_field(s, 2)}};
}

VectorField normal_vector_field(const SurfacePatch& s) {
    VectorField F;
    for (int c = 0; c < 3; ++c)
        F.comp[c] = {1, [s, c](double u, double v, int order) {
                         return gauss_map(s, u, v, order)[c];
                     }};
    return F;
}

ScalarField support_function_field(const SurfacePatch& s) {
    return {1, [s](double u, double v, int order) {
                const Vec3Jet x = s.eval(u, v, order + 1);
                const Vec3Jet n = unit_normal_jets(x);
                return -dot(n, x);
            }};
}

ScalarField radii_sum_field(const SurfacePatch& s) {
    return {2, [s](double u, double v, int order) {
                const Vec3Jet x = s.eval(u, v, order + 2);
                const Vec3Jet xu = dvec(x, Var::U);
                const Vec3Jet xv = dvec(x, Var::V);
                const Vec3Jet n = unit_normal_jets(x);
                const Jet2 g11 = dot(xu, xu), g12 = dot(xu, xv), g22 = dot(xv, xv);
                const Jet2 b11 = dot(dvec(xu, Var::U), n);
                const Jet2 b12 = dot(dvec(xu, Var::V), n);
                const Jet2 b22 = dot(dvec(xv, Var::V), n);
                const Jet2 det_g = g11 * g22 - g12 * g12;
                if (det_g.value() < 1e-14)
                    throw DegenerateFormError("first fundamental form is degenerate");
                const Jet2 det_b = b11 * b22 - b12 * b12;
                if (std::fabs(det_b.value() / det_g.value()) < 1e-10)
                    throw FlatPointError("Gauss curvature vanishes at the requested point");
                // R = 2H/K = (g22 b11 - 2 g12 b12 + g11 b22) / det b.
                return (g22 * b11 - 2.0 * g12 * b12 + g11 * b22) / det_b;
            }};
}

namespace {

struct InverseForm {
    Jet2 i11, i12, i22;
    Jet2 det;
};

InverseForm invert(const FormMatrix2& a) {
    const Jet2 d = a.det();
    if (std::fabs(d.value()) < 1e-14)
        throw DegenerateFormError("form matrix is singular at the requested point");
    return {a.a22 / d, -a.a12 / d, a.a11 / d, d};
}

} // namespace

double beltrami_first(const SurfacePatch& s, FormKind J, const ScalarField& f,
                      const ScalarField& g, double u, double v) {
    const InverseForm inv = invert(fundamental_form(s, J, u, v, 0));
    const Jet2 F = f.eval(u, v, 1);
    const Jet2 G = g.eval(u, v, 1);
    const double fu = F.partial(1, 0), fv = F.partial(0, 1);
    const double gu = G.partial(1, 0), gv = G.partial(0, 1);
    return inv.i11.value() * fu * gu + inv.i12.value() * (fu * gv + fv * gu) +
           inv.i22.value() * fv * gv;
}

Jet2 laplacian(const SurfacePatch& s, FormKind J, const ScalarField& f,
               double u, double v, int order) {
    if (order + 2 + f.cost > kMaxJetOrder || order + 3 > kMaxJetOrder)
        throw JetOrderError("Laplacian exceeds the jet order budget");
    const InverseForm inv = invert(fundamental_form(s, J, u, v, order + 1));
    // W = sqrt(|det a|); the second form is indefinite where K < 0.
    const Jet2 W = sqrt(inv.det.value() < 0.0 ? -inv.det : inv.det);
    const Jet2 F = f.eval(u, v, order + 2);
    const Jet2 fu = F.derivative(Var::U);
    const Jet2 fv = F.derivative(Var::V);
    const Jet2 flux_u = W * (inv.i11 * fu + inv.i12 * fv);
    const Jet2 flux_v = W * (inv.i12 * fu + inv.i22 * fv);
    return -(flux_u.derivative(Var::U) + flux_v.derivative(Var::V)) / W;
}

ScalarField laplacian_field(const SurfacePatch& s, FormKind J, const ScalarField& f) {
    ScalarField out;
    out.cost = std::max(f.cost + 2, 3);
    out.eval = [s, J, f](double u, double v, int order) {
        return laplacian(s, J, f, u, v, order);
    };
    return out;
}

Vec3 grad_third(const SurfacePatch& s, const ScalarField& f, double u, double v) {
    const InverseForm inv = invert(fundamental_form(s, FormKind::III, u, v, 0));
    const Jet2 F = f.eval(u, v, 1);
    const double fu = F.partial(1, 0), fv = F.partial(0, 1);
    // The third form is the metric of the spherical image, so its
    // gradient pushes through the frame {n_u, n_v}. Pushing through
    // {x_u, x_v} instead breaks the position-vector relation wherever R
    // is nonconstant.
    const Vec3Jet n = gauss_map(s, u, v, 1);
    const double cu = inv.i11.value() * fu + inv.i12.value() * fv;
    const double cv = inv.i12.value() * fu + inv.i22.value() * fv;
    Vec3 out;
    for (int c = 0; c < 3; ++c)
        out[c] = cu * n[c].partial(1, 0) + cv * n[c].partial(0, 1);
    return out;
}

Vec3 iterate_laplacian(const SurfacePatch& s, FormKind J, const VectorField& F,
                       int r, double u, double v) {
    if (r < 0 || r > 4)
        throw JetOrderError("iterated Laplacian depth must be between 0 and 4");
    Vec3 out;
    for (int c = 0; c < 3; ++c) {
        ScalarField f = F.comp[c];
        for (int k = 0; k < r; ++k) f = laplacian_field(s, J, f);
        out[c] = f.eval(u, v, 0).value();
    }
    return out;
}

std::optional<double> known_type1_eigenvalue(const std::string& surface_name) {
    const std::string head = surface_name.substr(0, surface_name.find(':'));
    if (head == "sphere") return 2.0;
    if (head == "catenoid" || head == "enneper") return 0.0; // minimal: null type
    return std::nullopt;
}

IdentityReport identity_suite(const SurfacePatch& s, const Grid& grid, double tol,
                              ExecMode mode) {
    const std::optional<double> lambda = known_type1_eigenvalue(s.name);
    const int n_rows = lambda ? 5 : 3;
    const int total = grid.nu * grid.nv;
    std::vector<std::array<double, 5>> errs(total);

    const VectorField xf = position_field(s);
    const VectorField nf = normal_vector_field(s);
    const ScalarField wf = support_function_field(s);
    const ScalarField Rf = radii_sum_field(s);

    for_each_index(total, mode, [&](int idx) {
        const auto p = grid_point(s, grid, idx / grid.nv, idx % grid.nv);
        const double u = p[0], v = p[1];
        std::array<double, 5>& e = errs[idx];

        const Vec3 lap_x = iterate_laplacian(s, FormKind::III, xf, 1, u, v);
        const Vec3 lap_n = iterate_laplacian(s, FormKind::III, nf, 1, u, v);
        const Vec3 grad_R = grad_third(s, Rf, u, v);
        const Vec3Jet nj = gauss_map(s, u, v, 0);
        const double R = Rf.eval(u, v, 0).value();
        const double w = wf.eval(u, v, 0).value();
        const double lap_w = laplacian(s, FormKind::III, wf, u, v, 0).value();
        const double lap_R = laplacian(s, FormKind::III, Rf, u, v, 0).value();

        e[0] = e[1] = 0.0;
        for (int c = 0; c < 3; ++c) {
            const double nc = nj[c].value();
            e[0] = std::fmax(e[0], std::fabs(lap_x[c] - (grad_R[c] - R * nc)));
            e[1] = std::fmax(e[1], std::fabs(lap_n[c] - 2.0 * nc));
        }
        e[2] = std::fabs(-lap_w + 2.0 * w - R);
        if (lambda) {
            e[3] = std::fabs(lap_w - (2.0 - *lambda) * w);
            e[4] = std::fabs(lap_R - (2.0 - *lambda) * R);
        } else {
            e[3] = e[4] = 0.0;
        }
    });

    static const char* kIds[5] = {"position_vector_relation", "gauss_map_eigenfunction",
                                  "support_function_relation", "support_eigenfunction",
                                  "radii_sum_eigenfunction"};
    IdentityReport rep;
    rep.surface = s.name;
    rep.all_pass = true;
    const std::string gtag = std::to_string(grid.nu) + "x" + std::to_string(grid.nv);
    for (int r = 0; r < n_rows; ++r) {
        IdentityRow row;
        row.surface = s.name;
        row.identity_id = kIds[r];
        row.grid = gtag;
        row.tol = tol;
        for (int idx = 0; idx < total; ++idx)
            row.max_error = std::fmax(row.max_error, errs[idx][r]);
        row.pass = row.max_error <= row.tol;
        if (!row.pass) rep.all_pass = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace formlab
