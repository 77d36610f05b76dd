#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "formlab/beltrami.hpp"
#include "formlab/surface.hpp"
#include "formlab/sweep.hpp"

namespace formlab {

/// Sampled iterated third-form Laplacians of the position vector.
/// values[k][row] holds the k-fold Laplacian at points[row]; k = 0 is
/// the position itself.
struct IterateTable {
    std::vector<std::array<double, 2>> points;
    std::vector<std::vector<Vec3>> values;
    int k_max = 0;
};

/// Fills the table over a deterministic interior point set; k_max must
/// lie in [1, 4]. The points are stratified like grid cells but offset
/// asymmetrically so that no reflection symmetry of the surface can
/// collapse distinct samples onto each other. Assembly is parallel
/// over points with deterministic slot writes.
IterateTable sample_iterates(const SurfacePatch& s, int k_max,
                             const Grid& grid = Grid{5, 5},
                             ExecMode mode = ExecMode::parallel);

/// Result of the minimal-annihilator fit.
///
/// The fitted model is lap^k x + c_1 lap^{k-1} x + ... + c_k x + b = 0
/// over all samples; when |c_k| > 1e-10 the affine term corresponds to
/// the translation x0 = -b / c_k, otherwise the translation cannot be
/// identified (the constant-term eigenvalue is zero) and
/// translation_identifiable stays false.
struct TypeReport {
    int k = 0;                    // accepted order, 0 when nothing fits
    std::vector<double> coeffs;   // c_1 .. c_k of the accepted monic fit
    Vec3 x0{0.0, 0.0, 0.0};
    bool translation_identifiable = false;
    std::vector<std::complex<double>> eigenvalues; // roots, sorted by (re, im)
    double residual = 0.0;        // relative residual of the accepted fit
    std::vector<double> all_residuals; // fit residuals for k = 1..k_max
    bool null_type = false;       // some |eigenvalue| < 1e-5
    bool ill_conditioned = false; // rank-deficient least-squares system
    std::string verdict;
};

/// Fits monic annihilating polynomials of ascending degree and accepts
/// the smallest degree whose relative residual clears tau. Residuals
/// are normalized by the largest iterate-column norm so null types
/// (vanishing top iterate) stay detectable; columns are rescaled before
/// the solve to control conditioning. Eigenvalues come from the
/// companion matrix; roots with |Im| < 1e-6 are reported real.
TypeReport minimal_annihilator(const IterateTable& t, int k_max, double tau = 1e-6);

/// Least-squares fit of the linear model lap x = A x.
struct CoordTypeReport {
    std::array<std::array<double, 3>, 3> A{};
    double residual = 0.0;
    bool pass = false;
    bool ill_conditioned = false;
};

CoordTypeReport coordinate_type(const IterateTable& t);

/// Verifies that the fitted coefficients are the elementary symmetric
/// functions of the eigenvalues with alternating sign, within 1e-6
/// relative.
bool sigma_check(const std::vector<double>& eigenvalues,
                 const std::vector<double>& coeffs);

/// Constancy statistics of the principal radii sum over a grid.
struct RadiiStats {
    double mean = 0.0;
    double max_dev = 0.0;
};

RadiiStats sample_radii_stats(const SurfacePatch& s, const Grid& grid = Grid{5, 5});

///// Final label from the three reports:
///   R identically 0 + null type 1 + linear
///     coordinate relation holds              -> minimal_null1
///   R constant nonzero + type 1, c_k nonzero -> sphere_type1
///   R constant nonzero + null type 2 with
///     the nonzero eigenvalue at 2            -> parallel_minimal_null2
///   nonconstant R + no annihilator           -> infinite_type_suspected
///   anything contradictory                   -> inconclusive
std::string classify(const TypeReport& tr, const CoordTypeReport& cr,
                     const RadiiStats& rs);

/// JSON with fixed field names: k, coeffs, x0, eigenvalues
/// ([{re, im}]), residual, null_type, verdict, plus the two warning
/// flags.
std::string type_report_json(const TypeReport& r);

/// JSON with fields A (row-major 3x3), residual, pass, ill_conditioned.
std::string coord_report_json(const CoordTypeReport& r);

} // namespace formlab
