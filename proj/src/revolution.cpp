#include "formlab/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <utility>
#include <vector>

#include "formlab/expr.hpp"
#include "formlab/report.hpp"

namespace formlab {

namespace {

constexpr int kUnwrapSteps = 1024; // step is under 1e-3 of the domain
constexpr int kQuadNodes = 1024;
constexpr double kDivGuard = 1e-12;
constexpr double kUnitSpeedTol = 1e-8;

std::array<Jet2, 2> eval_profile(const Profile& p, double u, int order) {
    if (order < 0 || order > kMaxJetOrder)
        throw JetOrderError("profile jets available to order 10");
    if (!(u >= p.u_lo() && u <= p.u_hi()))
        throw SingularDomainError("point outside the sampled domain of " + p.name);
    return p.eval(u, order);
}

double wrap_to_pi(double d) {
    while (d > M_PI) d -= 2.0 * M_PI;
    while (d < -M_PI) d += 2.0 * M_PI;
    return d;
}

double principal_angle(const Profile& p, double u) {
    const auto fg = p.eval(u, 1);
    return std::atan2(fg[1].coeff(1, 0), fg[0].coeff(1, 0));
}

/// Continuous branch of atan2(g', f') over the trimmed domain. Node
/// values accumulate wrapped increments; between nodes the offset from
/// the nearest node is wrapped the same way, so values are exact
/// wherever the branch is resolved at all.
struct UnwrapTable {
    double lo = 0.0, step = 0.0;
    std::vector<double> phi;

    static UnwrapTable build(const Profile& p) {
        UnwrapTable t;
        t.lo = p.u_lo();
        t.step = (p.u_hi() - t.lo) / kUnwrapSteps;
        t.phi.resize(kUnwrapSteps + 1);
        double prev = 0.0;
        for (int i = 0; i <= kUnwrapSteps; ++i) {
            const double raw = principal_angle(p, t.lo + i * t.step);
            if (i == 0) {
                t.phi[0] = raw;
            } else {
                const double d = wrap_to_pi(raw - prev);
                if (std::abs(d) > M_PI / 2.0)
                    throw UnwrapError("tangent direction of " + p.name +
                                      " jumps between adjacent samples near u = " +
                                      real_str(t.lo + i * t.step));
                t.phi[i] = t.phi[i - 1] + d;
            }
            prev = raw;
        }
        return t;
    }

    double at(const Profile& p, double u) const {
        int i = static_cast<int>(std::lround((u - lo) / step));
        i = std::clamp(i, 0, kUnwrapSteps);
        const double d = wrap_to_pi(principal_angle(p, u) - phi[i]);
        if (std::abs(d) > M_PI / 2.0)
            throw UnwrapError("tangent direction of " + p.name +
                              " jumps between adjacent samples near u = " + real_str(u));
        return phi[i] + d;
    }
};

/// Univariate antiderivative in u: given the jet of the derivative,
/// assembles the jet whose value at the expansion point is `value`.
Jet2 integrate_u(double value, const Jet2& deriv, double u, int order) {
    Jet2 acc = Jet2::constant(value, order);
    if (order == 0) return acc;
    const Jet2 t = Jet2::variable(Var::U, u, order) - u;
    Jet2 pw = t;
    for (int k = 1; k <= order; ++k) {
        acc += pw * (deriv.coeff(k - 1, 0) / k);
        if (k < order) pw = pw * t;
    }
    return acc;
}

Jet2 phi_jet_from(const UnwrapTable& table, const Profile& p, double u, int order) {
    const double phi0 = table.at(p, u);
    if (order == 0) return Jet2::constant(phi0, 0);
    const auto fg = p.eval(u, order + 1);
    const Jet2 fu = fg[0].derivative(Var::U);
    const Jet2 gu = fg[1].derivative(Var::U);
    const Jet2 kap = fu * gu.derivative(Var::U) - fu.derivative(Var::U) * gu;
    return integrate_u(phi0, kap, u, order);
}

double adaptive_simpson(const std::function<double(double)>& h, double a, double fa,
                        double m, double fm, double b, double fb, double whole,
                        double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = h(lm), frm = h(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(h, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(h, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& h, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = h(a), fm = h(m), fb = h(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(h, a, fa, m, fm, b, fb, whole, tol, 28);
}

double parse_profile_real(const std::string& text, const std::string& what) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double val = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(val))
        throw SpecParseError("bad " + what + " value '" + text + "'");
    return val;
}

std::string expect_profile_key(const std::string& args, const std::string& key,
                               const std::string& spec) {
    if (args.compare(0, key.size(), key) != 0)
        throw SpecParseError("expected '" + key + "...' in '" + spec + "'");
    return args.substr(key.size());
}

} // namespace

Profile circle_profile(double r) {
    if (!(r > 0.0)) throw InvalidParameterError("circle radius must be positive");
    Profile p;
    p.name = "circle:r=" + real_str(r);
    p.u_min = 0.0;
    p.u_max = M_PI * r;
    p.singular_margin = 0.2 / M_PI;
    p.eval = [r](double u, int order) {
        const Jet2 t = Jet2::variable(Var::U, u, order) / r;
        return std::array<Jet2, 2>{r * sin(t), -r * cos(t)};
    };
    return p;
}

Profile catenary_profile(double a) {
    if (!(a > 0.0)) throw InvalidParameterError("catenary waist must be positive");
    Profile p;
    p.name = "catenary:a=" + real_str(a);
    p.u_min = -2.0 * a;
    p.u_max = 2.0 * a;
    p.eval = [a](double u, int order) {
        const Jet2 u0 = Jet2::variable(Var::U, u, order);
        return std::array<Jet2, 2>{sqrt(u0 * u0 + a * a), a * asinh(u0 / a)};
    };
    return p;
}

Profile torus_profile(double a) {
    if (!(a > 1.0)) throw InvalidParameterError("torus needs center radius a > 1");
    Profile p;
    p.name = "torus:a=" + real_str(a);
    p.u_min = -M_PI / 2.0;
    p.u_max = M_PI / 2.0;
    p.singular_margin = (M_PI / 2.0 - 1.3) / M_PI;
    p.eval = [a](double u, int order) {
        const Jet2 u0 = Jet2::variable(Var::U, u, order);
        return std::array<Jet2, 2>{a + cos(u0), sin(u0)};
    };
    return p;
}

Profile offset_catenary_profile(double a, double mu) {
    if (!(a > 0.0)) throw InvalidParameterError("catenary waist must be positive");
    if (!(std::abs(mu) < a))
        throw InvalidParameterError("offset magnitude must stay below the waist radius");
    Profile p;
    p.name = "offset-catenary:a=" + real_str(a) + ",mu=" + real_str(mu);
    // Arc length of the offset curve: s(u) = u + mu atan(u/a), strictly
    // increasing for |mu| < a.
    p.u_min = -2.0 * a - mu * std::atan(2.0);
    p.u_max = 2.0 * a + mu * std::atan(2.0);
    p.eval = [a, mu](double s, int order) {
        double u = s;
        for (int it = 0; it < 60; ++it) {
            const double step =
                (u + mu * std::atan(u / a) - s) / (1.0 + mu * a / (u * u + a * a));
            u -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(u))) break;
        }
        Jet2 U = Jet2::variable(Var::U, u, order);
        if (order > 0) {
            // Series Newton for the inverse reparametrization; each pass
            // doubles the number of correct coefficients.
            const Jet2 S = Jet2::variable(Var::U, s, order);
            for (int it = 0; it < 5; ++it)
                U = U - (U + mu * atan(U / a) - S) / (1.0 + (mu * a) * recip(U * U + a * a));
        }
        const Jet2 w = sqrt(U * U + a * a);
        return std::array<Jet2, 2>{w - (mu * a) * recip(w),
                                   a * asinh(U / a) + mu * (U / w)};
    };
    return p;
}

Profile profile_from_phi(const std::function<Jet2(double, int)>& phi, double f0,
                         double u0, double u_min, double u_max,
                         const std::string& name) {
    if (!phi) throw InvalidParameterError("profile needs a turning-angle function");
    if (!(u_max > u_min)) throw InvalidParameterError("profile domain is empty");
    if (!(u0 >= u_min && u0 <= u_max))
        throw InvalidParameterError("anchor point outside the profile domain");

    const auto cos_phi = [phi](double t) { return std::cos(phi(t, 0).value()); };
    const auto sin_phi = [phi](double t) { return std::sin(phi(t, 0).value()); };

    struct Cache {
        double lo = 0.0, step = 0.0;
        std::vector<double> f, g;
    };
    auto cache = std::make_shared<Cache>();
    cache->lo = u_min;
    cache->step = (u_max - u_min) / (kQuadNodes - 1);
    cache->f.resize(kQuadNodes);
    cache->g.resize(kQuadNodes);

    // Anchor the cumulative integrals at u0 and extend node by node in
    // both directions; per-segment tolerance keeps the accumulated
    // error far below the profile tolerances.
    const double seg_tol = 1e-13;
    const int j0 = std::clamp(
        static_cast<int>(std::floor((u0 - u_min) / cache->step)), 0, kQuadNodes - 1);
    const double uj0 = cache->lo + j0 * cache->step;
    cache->f[j0] = f0 - integrate(cos_phi, uj0, u0, seg_tol);
    cache->g[j0] = -integrate(sin_phi, uj0, u0, seg_tol);
    for (int i = j0 + 1; i < kQuadNodes; ++i) {
        const double a = cache->lo + (i - 1) * cache->step;
        cache->f[i] = cache->f[i - 1] + integrate(cos_phi, a, a + cache->step, seg_tol);
        cache->g[i] = cache->g[i - 1] + integrate(sin_phi, a, a + cache->step, seg_tol);
    }
    for (int i = j0 - 1; i >= 0; --i) {
        const double a = cache->lo + i * cache->step;
        cache->f[i] = cache->f[i + 1] - integrate(cos_phi, a, a + cache->step, seg_tol);
        cache->g[i] = cache->g[i + 1] - integrate(sin_phi, a, a + cache->step, seg_tol);
    }

    double max_cos = 0.0, max_sin = 0.0;
    for (int i = 0; i < kQuadNodes; ++i) {
        const double u = cache->lo + i * cache->step;
        if (cache->f[i] <= kDivGuard)
            throw InvalidProfileError("profile " + name + " reaches f <= 0 at u = " +
                                      real_str(u));
        max_cos = std::max(max_cos, std::abs(cos_phi(u)));
        max_sin = std::max(max_sin, std::abs(sin_phi(u)));
    }
    if (max_cos < kDivGuard)
        throw InvalidProfileError("profile " + name + " is a cylinder (f' vanishes identically)");
    if (max_sin < kDivGuard)
        throw InvalidProfileError("profile " + name + " is a plane (g' vanishes identically)");

    Profile p;
    p.name = name;
    p.u_min = u_min;
    p.u_max = u_max;
    p.eval = [phi, cache, cos_phi, sin_phi](double u, int order) {
        int i = static_cast<int>(std::lround((u - cache->lo) / cache->step));
        i = std::clamp(i, 0, kQuadNodes - 1);
        const double ui = cache->lo + i * cache->step;
        const double fval = cache->f[i] + integrate(cos_phi, ui, u, 1e-13);
        const double gval = cache->g[i] + integrate(sin_phi, ui, u, 1e-13);
        if (order == 0)
            return std::array<Jet2, 2>{Jet2::constant(fval, 0), Jet2::constant(gval, 0)};
        const Jet2 ph = phi(u, order - 1);
        return std::array<Jet2, 2>{integrate_u(fval, cos(ph), u, order),
                                   integrate_u(gval, sin(ph), u, order)};
    };
    return p;
}

std::function<Jet2(double, int)> profile_phi_fn(const Profile& p) {
    auto table = std::make_shared<UnwrapTable>(UnwrapTable::build(p));
    return [table, p](double u, int order) { return phi_jet_from(*table, p, u, order); };
}

Profile parse_profile(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (head == "circle")
        return circle_profile(parse_profile_real(expect_profile_key(args, "r=", spec), "radius"));
    if (head == "catenary")
        return catenary_profile(parse_profile_real(expect_profile_key(args, "a=", spec), "waist"));
    if (head == "torus")
        return torus_profile(parse_profile_real(expect_profile_key(args, "a=", spec), "center radius"));
    if (head == "phi") {
        if (args.empty()) throw SpecParseError("phi profile needs an expression");
        return profile_from_phi(compile_expr(args), 1.0, 0.0, -1.0, 1.0, spec);
    }
    throw SpecParseError("unknown profile '" + spec + "'");
}

SurfacePatch profile_to_patch(const Profile& p) {
    if (!p.eval) throw InvalidParameterError("profile has no evaluator");
    if (!(p.u_max > p.u_min)) throw InvalidParameterError("profile domain is empty");

    const int kSamples = 64;
    double max_fp = 0.0, max_gp = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double u = p.u_lo() + (i + 0.5) / kSamples * (p.u_hi() - p.u_lo());
        const auto fg = p.eval(u, 1);
        const double fp = fg[0].coeff(1, 0), gp = fg[1].coeff(1, 0);
        if (!(fg[0].value() > 0.0))
            throw InvalidProfileError("profile " + p.name + " has f <= 0 at u = " + real_str(u));
        if (std::abs(fp * fp + gp * gp - 1.0) > kUnitSpeedTol)
            throw InvalidProfileError("profile " + p.name + " is not unit speed at u = " +
                                      real_str(u));
        max_fp = std::max(max_fp, std::abs(fp));
        max_gp = std::max(max_gp, std::abs(gp));
    }
    if (max_fp < kDivGuard)
        throw InvalidProfileError("profile " + p.name + " is a cylinder (f' vanishes identically)");
    if (max_gp < kDivGuard)
        throw InvalidProfileError("profile " + p.name + " is a plane (g' vanishes identically)");

    SurfacePatch s;
    s.name = p.name;
    s.domain = Domain{p.u_min, p.u_max, 0.0, 2.0 * M_PI};
    s.singular_margin = p.singular_margin;
    const SurfacePatch gate = s; // copy carries the bounds into the closure
    auto profile_eval = p.eval;
    s.eval = [gate, profile_eval](double u, double v, int order) {
        if (order < 0 || order > kMaxJetOrder)
            throw JetOrderError("patch jets available to order 10");
        if (!gate.contains(u, v))
            throw SingularDomainError("point outside the sampled domain of " + gate.name);
        const auto fg = profile_eval(u, order);
        const Jet2 v0 = Jet2::variable(Var::V, v, order);
        return Vec3Jet{fg[0] * cos(v0), fg[0] * sin(v0), fg[1]};
    };
    return s;
}

TurningAngle turning_angle_of(const Profile& p, double u) {
    if (!(u >= p.u_lo() && u <= p.u_hi()))
        throw SingularDomainError("point outside the sampled domain of " + p.name);
    const UnwrapTable table = UnwrapTable::build(p);
    const auto fg = p.eval(u, 2);
    const double fp = fg[0].partial(1, 0), fpp = fg[0].partial(2, 0);
    const double gp = fg[1].partial(1, 0), gpp = fg[1].partial(2, 0);
    return TurningAngle{table.at(p, u), fp * gpp - fpp * gp};
}

Jet2 turning_angle_jet(const Profile& p, double u, int order) {
    if (order < 0 || order > kMaxJetOrder)
        throw JetOrderError("profile jets available to order 10");
    if (!(u >= p.u_lo() && u <= p.u_hi()))
        throw SingularDomainError("point outside the sampled domain of " + p.name);
    const UnwrapTable table = UnwrapTable::build(p);
    return phi_jet_from(table, p, u, order);
}

RevolutionComponents closed_form_components(const Profile& p, double u) {
    const auto fg = eval_profile(p, u, 3);
    const double f = fg[0].value();
    const double fp = fg[0].partial(1, 0), fpp = fg[0].partial(2, 0), fppp = fg[0].partial(3, 0);
    const double gp = fg[1].partial(1, 0), gpp = fg[1].partial(2, 0), gppp = fg[1].partial(3, 0);
    const double kap = fp * gpp - fpp * gp;
    if (std::abs(kap) < kDivGuard || std::abs(gp) < kDivGuard)
        throw FlatPointError("curvature data degenerate at u = " + real_str(u) + " on " + p.name);
    RevolutionComponents c;
    c.g11 = fp * fp + gp * gp;
    c.g22 = f * f;
    c.e11 = fpp * fpp + gpp * gpp;
    c.e22 = gp * gp;
    c.R = 1.0 / kap + f / gp;
    const double kapp = fp * gppp - fppp * gp;
    c.Rprime = -kapp / (kap * kap) + (fp * gp - f * gpp) / (gp * gp);
    return c;
}

Vec3 closed_form_normal(const Profile& p, double u, double v) {
    const auto fg = eval_profile(p, u, 1);
    const double fp = fg[0].coeff(1, 0), gp = fg[1].coeff(1, 0);
    return Vec3{-gp * std::cos(v), -gp * std::sin(v), fp};
}

Jet2 laplacian_III_revolution(const Profile& p, const ScalarField& f, double u,
                              double v, int order) {
    if (!f.eval) throw InvalidParameterError("field has no evaluator");
    if (order < 0 || order + 3 > kMaxJetOrder || order + 2 + f.cost > kMaxJetOrder)
        throw JetOrderError("revolution Laplacian exceeds the jet order budget");
    const auto fg = eval_profile(p, u, order + 3);
    const Jet2 fu = fg[0].derivative(Var::U);
    const Jet2 gu = fg[1].derivative(Var::U);
    const Jet2 fuu = fu.derivative(Var::U);
    const Jet2 guu = gu.derivative(Var::U);
    const Jet2 kap = fu * guu - fuu * gu;
    if (std::abs(kap.value()) < kDivGuard || std::abs(gu.value()) < kDivGuard)
        throw FlatPointError("third form degenerates at u = " + real_str(u) + " on " + p.name);
    const Jet2 kapp = kap.derivative(Var::U);
    const Jet2 F = f.eval(u, v, order + 2);
    const Jet2 Fu = F.derivative(Var::U);
    const Jet2 Fuu = Fu.derivative(Var::U);
    const Jet2 Fvv = F.derivative(Var::V).derivative(Var::V);
    const Jet2 coeff_u = (gu * kapp - kap * guu) / (kap * kap * kap * gu);
    return -(Fuu / (kap * kap)) - Fvv / (gu * gu) + coeff_u * Fu;
}

Vec3 coordinate_laplacians_angle_form(const Profile& p, double u, double v) {
    const auto fg = eval_profile(p, u, 3);
    const double f = fg[0].value();
    const double fp = fg[0].partial(1, 0), fpp = fg[0].partial(2, 0), fppp = fg[0].partial(3, 0);
    const double gp = fg[1].partial(1, 0), gpp = fg[1].partial(2, 0), gppp = fg[1].partial(3, 0);
    const double kap = fp * gpp - fpp * gp;   // phi'
    const double kapp = fp * gppp - fppp * gp; // phi''
    if (std::abs(kap) < kDivGuard || std::abs(gp) < kDivGuard)
        throw FlatPointError("curvature data degenerate at u = " + real_str(u) + " on " + p.name);
    // cos phi = f', sin phi = g' by unit speed
    const double radial = kapp * fp / (kap * kap * kap) + 2.0 * gp / kap -
                          1.0 / (kap * gp) + f / (gp * gp);
    const double axial = kapp * gp / (kap * kap * kap) - 2.0 * fp / kap;
    return Vec3{radial * std::cos(v), radial * std::sin(v), axial};
}

Vec3 coordinate_laplacians_radii_form(const Profile& p, double u, double v) {
    const RevolutionComponents c = closed_form_components(p, u);
    const auto fg = eval_profile(p, u, 2);
    const double fp = fg[0].partial(1, 0), gp = fg[1].partial(1, 0);
    const double kap = fp * fg[1].partial(2, 0) - fg[0].partial(2, 0) * gp;
    const double radial = c.R * gp - c.Rprime * fp / kap;
    const double axial = -c.R * fp - c.Rprime * gp / kap;
    return Vec3{radial * std::cos(v), radial * std::sin(v), axial};
}

const char* to_string(RevolutionCase c) {
    switch (c) {
    case RevolutionCase::CaseI_minimal: return "CaseI_minimal";
    case RevolutionCase::CaseII_constantR: return "CaseII_constantR";
    case RevolutionCase::nonconstant_R: return "nonconstant_R";
    }
    return "unknown";
}

RevolutionVerdict classify_revolution(const Profile& p, int samples, double tol) {
    if (samples < 2) throw InvalidParameterError("classification needs at least two samples");
    if (!(tol > 0.0)) throw InvalidParameterError("classification tolerance must be positive");

    std::vector<double> rs(samples);
    double mean = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double u = p.u_lo() + (i + 0.5) / samples * (p.u_hi() - p.u_lo());
        rs[i] = closed_form_components(p, u).R;
        mean += rs[i];
    }
    mean /= samples;
    double maxdev = 0.0, maxabs = 0.0;
    for (const double r : rs) {
        maxdev = std::max(maxdev, std::abs(r - mean));
        maxabs = std::max(maxabs, std::abs(r));
    }

    RevolutionVerdict verdict;
    verdict.mean_R = mean;
    verdict.max_deviation = maxdev;
    const double scale = std::max(1.0, std::abs(mean));
    if (maxabs < tol * scale) {
        verdict.kind = RevolutionCase::CaseI_minimal;
        return verdict;
    }
    if (maxdev < tol * scale) {
        verdict.kind = RevolutionCase::CaseII_constantR;
        // Constant R forces the coordinate Laplacians onto -R n; record
        // the worst pointwise failure of that relation.
        const SurfacePatch s = profile_to_patch(p);
        const std::array<ScalarField, 3> coords{coordinate_field(s, 0), coordinate_field(s, 1),
                                                coordinate_field(s, 2)};
        const int nu = 17, nv = 9;
        double resid = 0.0;
        for (int i = 0; i < nu; ++i) {
            const double u = p.u_lo() + (i + 0.5) / nu * (p.u_hi() - p.u_lo());
            const double R = closed_form_components(p, u).R;
            for (int j = 0; j < nv; ++j) {
                const double v = (j + 0.5) / nv * 2.0 * M_PI;
                const Vec3 n = closed_form_normal(p, u, v);
                for (int c = 0; c < 3; ++c) {
                    const double lap = laplacian_III_revolution(p, coords[c], u, v, 0).value();
                    resid = std::max(resid, std::abs(lap + R * n[c]));
                }
            }
        }
        verdict.eq_residual = resid;
        return verdict;
    }
    verdict.kind = RevolutionCase::nonconstant_R;
    return verdict;
}

SurfacePatch revolution_surface(const std::string& profile_name) {
    return profile_to_patch(parse_profile(profile_name));
}

} // namespace formlab
