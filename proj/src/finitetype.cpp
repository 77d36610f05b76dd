#include "formlab/finitetype.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "formlab/errors.hpp"
#include "formlab/report.hpp"

namespace formlab {

namespace {

constexpr double kEigenImagTol = 1e-6;
constexpr double kNullEigenTol = 1e-5;
constexpr double kConstTermTol = 1e-10;
constexpr double kCoordPassTol = 1e-6;
constexpr double kRadiiConstTol = 1e-6;

// Detection sample (i, j): stratified like a cell-centered grid but
// with golden-section offsets inside each stratum. A cell-centered
// grid is reflection symmetric, and on a surface whose iterates are
// even in u that halves the effective sample classes, leaving enough
// freedom for a spurious annihilator to interpolate them exactly. The
// offsets keep coverage and determinism while breaking every such
// symmetry.
std::array<double, 2> detect_point(const SurfacePatch& s, const Grid& g, int i, int j) {
    constexpr double kGolden = 0.6180339887498949;
    const auto offset = [](int idx) {
        const double t = (idx + 1) * kGolden;
        return t - std::floor(t);
    };
    const double fu = (i + offset(i)) / g.nu;
    const double fv = (j + offset(j)) / g.nv;
    return {s.u_lo() + fu * (s.u_hi() - s.u_lo()),
            s.domain.v_min + fv * (s.domain.v_max - s.domain.v_min)};
}

// Stacks values[j] into one 3N-vector, component-major per row.
Eigen::VectorXd stack_column(const IterateTable& t, int j) {
    const int n = static_cast<int>(t.points.size());
    Eigen::VectorXd col(3 * n);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c) col(3 * i + c) = t.values[j][i][c];
    return col;
}

struct FitResult {
    std::vector<double> coeffs;
    Vec3 b{0.0, 0.0, 0.0};
    double residual = 0.0;
    bool rank_deficient = false;
};

// Least squares for lap^k x + c_1 lap^{k-1} x + ... + c_k x + b = 0.
// Columns are rescaled to unit max-abs before the solve; the residual
// is normalized by the largest iterate-column norm so a vanishing top
// iterate (null type) still yields a small relative residual.
FitResult fit_order(const IterateTable& t, int k) {
    const int n = static_cast<int>(t.points.size());
    const int rows = 3 * n;
    const int cols = k + 3;

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    for (int j = 1; j <= k; ++j) A.col(j - 1) = stack_column(t, k - j);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c) A(3 * i + c, k + c) = 1.0;
    Eigen::VectorXd rhs = -stack_column(t, k);

    Eigen::VectorXd scale(cols);
    for (int j = 0; j < cols; ++j) {
        const double m = A.col(j).cwiseAbs().maxCoeff();
        scale(j) = m > 0.0 ? m : 1.0;
        A.col(j) /= scale(j);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::VectorXd z = qr.solve(rhs);

    double norm_scale = 0.0;
    for (int j = 0; j <= k; ++j)
        norm_scale = std::max(norm_scale, stack_column(t, j).norm());

    FitResult out;
    out.rank_deficient = qr.rank() < cols;
    out.residual = (A * z - rhs).norm() / std::max(norm_scale, 1e-30);
    out.coeffs.resize(k);
    for (int j = 0; j < k; ++j) out.coeffs[j] = z(j) / scale(j);
    for (int c = 0; c < 3; ++c) out.b[c] = z(k + c) / scale(k + c);
    return out;
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
    const int k = static_cast<int>(coeffs.size());
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i + 1 < k; ++i) comp(i + 1, i) = 1.0;
    for (int i = 0; i < k; ++i) comp(i, k - 1) = -coeffs[k - 1 - i];

    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<std::complex<double>> roots(k);
    for (int i = 0; i < k; ++i) {
        std::complex<double> z = es.eigenvalues()(i);
        if (std::abs(z.imag()) < kEigenImagTol) z = {z.real(), 0.0};
        roots[i] = z;
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

std::string json_vec3(const Vec3& v) {
    std::ostringstream os;
    os << '[' << real_str(v[0]) << ',' << real_str(v[1]) << ',' << real_str(v[2]) << ']';
    return os.str();
}

} // namespace

IterateTable sample_iterates(const SurfacePatch& s, int k_max, const Grid& grid,
                             ExecMode mode) {
    if (k_max < 1 || k_max > 4)
        throw InvalidParameterError("sample_iterates: k_max must lie in [1, 4]");
    if (grid.nu < 3 || grid.nv < 3)
        throw InvalidParameterError("sample_iterates: grid must be at least 3x3");

    IterateTable t;
    t.k_max = k_max;
    const int n = grid.nu * grid.nv;
    t.points.resize(n);
    t.values.assign(k_max + 1, std::vector<Vec3>(n));
    for (int i = 0; i < n; ++i)
        t.points[i] = detect_point(s, grid, i / grid.nv, i % grid.nv);

    const VectorField pos = position_field(s);
    for_each_index(n, mode, [&](int i) {
        const auto [u, v] = t.points[i];
        for (int r = 0; r <= k_max; ++r)
            t.values[r][i] = iterate_laplacian(s, FormKind::III, pos, r, u, v);
    });

    for (int r = 0; r <= k_max; ++r)
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < 3; ++c)
                if (!std::isfinite(t.values[r][i][c]))
                    throw DegeneratePointError("sample_iterates: non-finite iterate at (" +
                                               real_str(t.points[i][0]) + ", " +
                                               real_str(t.points[i][1]) + ")");
    return t;
}

TypeReport minimal_annihilator(const IterateTable& t, int k_max, double tau) {
    if (k_max < 1 || k_max > t.k_max)
        throw InvalidParameterError("minimal_annihilator: k_max must lie in [1, table k_max]");
    const int n = static_cast<int>(t.points.size());
    if (n < k_max + 4)
        throw InvalidParameterError("minimal_annihilator: need at least k_max + 4 samples");
    if (!(tau > 0.0)) throw InvalidParameterError("minimal_annihilator: tau must be positive");

    TypeReport rep;
    std::vector<FitResult> fits;
    fits.reserve(k_max);
    int accepted = 0;
    for (int k = 1; k <= k_max; ++k) {
        fits.push_back(fit_order(t, k));
        rep.all_residuals.push_back(fits.back().residual);
        if (accepted == 0 && fits.back().residual < tau) accepted = k;
    }

    if (accepted == 0) {
        rep.residual = rep.all_residuals.back();
        rep.ill_conditioned = fits.back().rank_deficient;
        rep.verdict = "not_finite_type_up_to_kmax";
        return rep;
    }

    const FitResult& fit = fits[accepted - 1];
    rep.k = accepted;
    rep.coeffs = fit.coeffs;
    rep.residual = fit.residual;
    rep.ill_conditioned = fit.rank_deficient;

    const double ck = fit.coeffs.back();
    if (std::abs(ck) > kConstTermTol) {
        rep.translation_identifiable = true;
        for (int c = 0; c < 3; ++c) rep.x0[c] = -fit.b[c] / ck;
    }

    rep.eigenvalues = polynomial_roots(fit.coeffs);
    double min_mag = std::abs(rep.eigenvalues.front());
    for (const auto& z : rep.eigenvalues) min_mag = std::min(min_mag, std::abs(z));
    rep.null_type = min_mag < kNullEigenTol;

    if (rep.k == 2 && rep.null_type &&
        std::abs(rep.eigenvalues[0]) + std::abs(rep.eigenvalues[1] - 2.0) < 2.0 * kNullEigenTol) {
        rep.verdict = "null_type2_parallel_minimal";
    } else if (rep.null_type) {
        rep.verdict = "null_type" + std::to_string(rep.k);
    } else {
        rep.verdict = "type" + std::to_string(rep.k);
    }
    return rep;
}

CoordTypeReport coordinate_type(const IterateTable& t) {
    if (t.k_max < 1)
        throw InvalidParameterError("coordinate_type: table must hold first iterates");
    const int n = static_cast<int>(t.points.size());
    if (n < 7) throw InvalidParameterError("coordinate_type: need at least 7 samples");

    Eigen::MatrixXd X(n, 3), Y(n, 3);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c) {
            X(i, c) = t.values[0][i][c];
            Y(i, c) = t.values[1][i][c];
        }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    Eigen::MatrixXd At = qr.solve(Y); // X * At ~ Y, so At is A transposed

    CoordTypeReport rep;
    rep.ill_conditioned = qr.rank() < 3;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) rep.A[r][c] = At(c, r);
    const double denom = std::max({X.norm(), Y.norm(), 1e-30});
    rep.residual = (X * At - Y).norm() / denom;
    rep.pass = rep.residual < kCoordPassTol;
    return rep;
}

bool sigma_check(const std::vector<double>& eigenvalues,
                 const std::vector<double>& coeffs) {
    if (eigenvalues.size() != coeffs.size() || coeffs.empty()) return false;

    // Expand prod (t - lambda_i); poly[d] is the coefficient of t^{k-d}.
    std::vector<double> poly{1.0};
    for (double lam : eigenvalues) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + 1] -= lam * poly[i];
        }
        poly = std::move(next);
    }

    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const double want = poly[i + 1];
        const double got = coeffs[i];
        const double scale = std::max({1.0, std::abs(want), std::abs(got)});
        if (std::abs(want - got) > 1e-6 * scale) return false;
    }
    return true;
}

RadiiStats sample_radii_stats(const SurfacePatch& s, const Grid& grid) {
    if (grid.nu < 2 || grid.nv < 1)
        throw InvalidParameterError("sample_radii_stats: grid too small");
    const ScalarField radii = radii_sum_field(s);

    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(grid.nu) * grid.nv);
    for (int i = 0; i < grid.nu; ++i)
        for (int j = 0; j < grid.nv; ++j) {
            const auto [u, v] = detect_point(s, grid, i, j);
            vals.push_back(radii.eval(u, v, 0).value());
        }

    RadiiStats st;
    for (double x : vals) st.mean += x;
    st.mean /= static_cast<double>(vals.size());
    for (double x : vals) st.max_dev = std::max(st.max_dev, std::abs(x - st.mean));
    return st;
}

std::string classify(const TypeReport& tr, const CoordTypeReport& cr,
                     const RadiiStats& rs) {
    const bool radii_zero = std::abs(rs.mean) < kRadiiConstTol && rs.max_dev < kRadiiConstTol;
    const bool radii_const = rs.max_dev < kRadiiConstTol * std::max(1.0, std::abs(rs.mean));

    if (tr.k == 0) return radii_const ? "inconclusive" : "infinite_type_suspected";
    if (radii_zero)
        return (tr.k == 1 && tr.null_type && cr.pass) ? "minimal_null1" : "inconclusive";
    if (radii_const) {
        if (tr.k == 1 && !tr.null_type && tr.translation_identifiable) return "sphere_type1";
        if (tr.verdict == "null_type2_parallel_minimal") return "parallel_minimal_null2";
    }
    return "inconclusive";
}

std::string type_report_json(const TypeReport& r) {
    std::ostringstream os;
    os << "{\"k\":" << r.k << ",\"coeffs\":[";
    for (std::size_t i = 0; i < r.coeffs.size(); ++i)
        os << (i ? "," : "") << real_str(r.coeffs[i]);
    os << "],\"x0\":" << json_vec3(r.x0)
       << ",\"translation_identifiable\":" << (r.translation_identifiable ? "true" : "false")
       << ",\"eigenvalues\":[";
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
        os << (i ? "," : "") << "{\"re\":" << real_str(r.eigenvalues[i].real())
           << ",\"im\":" << real_str(r.eigenvalues[i].imag()) << '}';
    os << "],\"residual\":" << real_str(r.residual) << ",\"all_residuals\":[";
    for (std::size_t i = 0; i < r.all_residuals.size(); ++i)
        os << (i ? "," : "") << real_str(r.all_residuals[i]);
    os << "],\"null_type\":" << (r.null_type ? "true" : "false")
       << ",\"ill_conditioned\":" << (r.ill_conditioned ? "true" : "false")
       << ",\"verdict\":\"" << json_escape(r.verdict) << "\"}";
    return os.str();
}

std::string coord_report_json(const CoordTypeReport& r) {
    std::ostringstream os;
    os << "{\"A\":[";
    for (int i = 0; i < 3; ++i) {
        os << (i ? "," : "") << '[';
        for (int j = 0; j < 3; ++j) os << (j ? "," : "") << real_str(r.A[i][j]);
        os << ']';
    }
    os << "],\"residual\":" << real_str(r.residual)
       << ",\"pass\":" << (r.pass ? "true" : "false")
       << ",\"ill_conditioned\":" << (r.ill_conditioned ? "true" : "false") << '}';
    return os.str();
}

} // namespace formlab
