#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "formlab/beltrami.hpp"
#include "formlab/forms.hpp"

namespace formlab::testing {

/// Laplacian ingredients in index notation: metric values a[i][j],
/// metric derivatives da[i][j][d] = d_d a_ij, and the field partials
/// f1, f2, f11, f12, f22. Evaluates the covariant form
///   -a^{ij} (f_ij - Gamma^k_ij f_k)
/// with Christoffel symbols of the metric a.
inline double covariant_laplacian(const std::array<std::array<double, 2>, 2>& a,
                                  const std::array<std::array<std::array<double, 2>, 2>, 2>& da,
                                  double f1, double f2, double f11, double f12,
                                  double f22) {
    const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    std::array<std::array<double, 2>, 2> inv;
    inv[0][0] = a[1][1] / det;
    inv[0][1] = -a[0][1] / det;
    inv[1][0] = -a[1][0] / det;
    inv[1][1] = a[0][0] / det;

    double gamma[2][2][2]; // gamma[k][i][j]
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double acc = 0.0;
                for (int l = 0; l < 2; ++l)
                    acc += inv[k][l] * (da[j][l][i] + da[i][l][j] - da[i][j][l]);
                gamma[k][i][j] = 0.5 * acc;
            }

    const double fd1[2] = {f1, f2};
    const double fd2[2][2] = {{f11, f12}, {f12, f22}};
    double lap = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double cov = fd2[i][j];
            for (int k = 0; k < 2; ++k) cov -= gamma[k][i][j] * fd1[k];
            lap += inv[i][j] * cov;
        }
    return -lap;
}

/// Covariant-form Laplacian with all ingredients read off jets. An
/// independent reading of the operator: no divergence, no W.
inline double covariant_laplacian_jets(const SurfacePatch& s, FormKind J,
                                       const ScalarField& f, double u, double v) {
    const FormMatrix2 m = fundamental_form(s, J, u, v, 1);
    const Jet2* comp[2][2] = {{&m.a11, &m.a12}, {&m.a12, &m.a22}};
    std::array<std::array<double, 2>, 2> a;
    std::array<std::array<std::array<double, 2>, 2>, 2> da;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            a[i][j] = comp[i][j]->value();
            da[i][j][0] = comp[i][j]->partial(1, 0);
            da[i][j][1] = comp[i][j]->partial(0, 1);
        }
    const Jet2 F = f.eval(u, v, 2);
    return covariant_laplacian(a, da, F.partial(1, 0), F.partial(0, 1),
                               F.partial(2, 0), F.partial(1, 1), F.partial(0, 2));
}

/// Covariant-form Laplacian with every derivative taken by central
/// finite differences of point values, bypassing jets entirely.
inline double covariant_laplacian_fd(const SurfacePatch& s, FormKind J,
                                     const ScalarField& f, double u, double v) {
    auto form_comp = [&](int i, int j) {
        return std::function<double(double, double)>([&s, J, i, j](double uu, double vv) {
            const FormMatrix2 m = fundamental_form(s, J, uu, vv, 0);
            if (i == 0 && j == 0) return m.a11.value();
            if (i == 1 && j == 1) return m.a22.value();
            return m.a12.value();
        });
    };
    std::array<std::array<double, 2>, 2> a;
    std::array<std::array<std::array<double, 2>, 2>, 2> da;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            auto fij = form_comp(i, j);
            a[i][j] = fij(u, v);
            da[i][j][0] = fd_oracle(fij, u, v, 1, 0);
            da[i][j][1] = fd_oracle(fij, u, v, 0, 1);
        }
    auto fv = [&f](double uu, double vv) { return f.eval(uu, vv, 0).value(); };
    return covariant_laplacian(a, da, fd_oracle(fv, u, v, 1, 0), fd_oracle(fv, u, v, 0, 1),
                               fd_oracle(fv, u, v, 2, 0), fd_oracle(fv, u, v, 1, 1),
                               fd_oracle(fv, u, v, 0, 2));
}

} // namespace formlab::testing
