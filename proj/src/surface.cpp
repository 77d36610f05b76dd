#include "formlab/surface.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "formlab/report.hpp"

namespace formlab {

namespace {

/// Wraps a raw evaluator with the domain/margin gate shared by all
/// builtins.
SurfacePatch make_patch(std::string name, Domain dom, double margin,
                        std::function<Vec3Jet(double, double, int)> raw) {
    SurfacePatch s;
    s.name = std::move(name);
    s.domain = dom;
    s.singular_margin = margin;
    SurfacePatch gate = s; // copy carries the bounds into the closure
    s.eval = [gate, raw = std::move(raw)](double u, double v, int order) {
        if (order < 0 || order > kMaxJetOrder)
            throw JetOrderError("patch jets available to order 10");
        if (!gate.contains(u, v))
            throw SingularDomainError("point outside the sampled domain of " + gate.name);
        return raw(u, v, order);
    };
    return s;
}

/// Rotates the profile (f(u), g(u)) about the z axis.
Vec3Jet revolve(const Jet2& f, const Jet2& g, const Jet2& v0) {
    return {f * cos(v0), f * sin(v0), g};
}

} // namespace

std::array<double, 2> grid_point(const SurfacePatch& s, const Grid& g, int i, int j) {
    if (g.nu <= 0 || g.nv <= 0 || i < 0 || i >= g.nu || j < 0 || j >= g.nv)
        throw InvalidParameterError("grid index out of range");
    const double du = (s.u_hi() - s.u_lo()) / g.nu;
    const double dv = (s.domain.v_max - s.domain.v_min) / g.nv;
    return {s.u_lo() + (i + 0.5) * du, s.domain.v_min + (j + 0.5) * dv};
}

SurfacePatch make_sphere(double r) {
    if (!(r > 0.0)) throw InvalidParameterError("sphere radius must be positive");
    // Arc-length circle profile; the margin keeps the poles (f = 0) out
    // of the sampled set.
    Domain dom{0.0, M_PI * r, 0.0, 2.0 * M_PI};
    return make_patch("sphere:r=" + real_str(r), dom, 0.2 / M_PI,
                      [r](double u, double v, int order) {
                          Jet2 u0 = Jet2::variable(Var::U, u, order);
                          Jet2 v0 = Jet2::variable(Var::V, v, order);
                          Jet2 t = u0 / r;
                          return revolve(r * sin(t), -r * cos(t), v0);
                      });
}

SurfacePatch make_catenoid(double a) {
    if (!(a > 0.0)) throw InvalidParameterError("catenoid waist must be positive");
    Domain dom{-2.0 * a, 2.0 * a, 0.0, 2.0 * M_PI};
    return make_patch("catenoid:a=" + real_str(a), dom, 0.0,
                      [a](double u, double v, int order) {
                          Jet2 u0 = Jet2::variable(Var::U, u, order);
                          Jet2 v0 = Jet2::variable(Var::V, v, order);
                          Jet2 f = sqrt(u0 * u0 + a * a);
                          Jet2 g = a * asinh(u0 / a);
                          return revolve(f, g, v0);
                      });
}

SurfacePatch make_torus(double a) {
    if (!(a > 1.0)) throw InvalidParameterError("torus needs center radius a > 1");
    // K = cos u / (a + cos u) vanishes at u = +-pi/2; the margin trims
    // the sampled range to (-1.3, 1.3) for the pi-wide domain.
    Domain dom{-M_PI / 2.0, M_PI / 2.0, 0.0, 2.0 * M_PI};
    return make_patch("torus:a=" + real_str(a), dom, (M_PI / 2.0 - 1.3) / M_PI,
                      [a](double u, double v, int order) {
                          Jet2 u0 = Jet2::variable(Var::U, u, order);
                          Jet2 v0 = Jet2::variable(Var::V, v, order);
                          return revolve(a + cos(u0), sin(u0), v0);
                      });
}

SurfacePatch make_enneper() {
    Domain dom{-1.0, 1.0, -1.0, 1.0};
    return make_patch("enneper", dom, 0.0, [](double u, double v, int order) {
        Jet2 u0 = Jet2::variable(Var::U, u, order);
        Jet2 v0 = Jet2::variable(Var::V, v, order);
        Jet2 uu = u0 * u0, vv = v0 * v0;
        return Vec3Jet{u0 - uu * u0 / 3.0 + u0 * vv,
                       v0 - vv * v0 / 3.0 + v0 * uu,
                       uu - vv};
    });
}

namespace {

double parse_real(const std::string& text, const std::string& what) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double val = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(val))
        throw SpecParseError("bad " + what + " value '" + text + "'");
    return val;
}

std::string expect_key(const std::string& args, const std::string& key,
                       const std::string& spec) {
    if (args.compare(0, key.size(), key) != 0)
        throw SpecParseError("expected '" + key + "...' in '" + spec + "'");
    return args.substr(key.size());
}

} // namespace

SurfacePatch parse_surface(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (head == "enneper") {
        if (!args.empty()) throw SpecParseError("enneper takes no parameters");
        return make_enneper();
    }
    if (head == "sphere")
        return make_sphere(parse_real(expect_key(args, "r=", spec), "radius"));
    if (head == "catenoid")
        return make_catenoid(parse_real(expect_key(args, "a=", spec), "waist"));
    if (head == "torus")
        return make_torus(parse_real(expect_key(args, "a=", spec), "center radius"));
    if (head == "revolution")
        return revolution_surface(expect_key(args, "profile=", spec));
    if (head == "parallel") {
        // The base spec may itself contain commas, so split at the last
        // ",mu=". Nested parallels keep working: the outermost mu is
        // rightmost.
        const std::string inner = expect_key(args, "base=", spec);
        const auto cut = inner.rfind(",mu=");
        if (cut == std::string::npos)
            throw SpecParseError("parallel spec needs ',mu=<real>' in '" + spec + "'");
        const SurfacePatch base = parse_surface(inner.substr(0, cut));
        return make_parallel(base, parse_real(inner.substr(cut + 4), "offset"));
    }
    throw SpecParseError("unknown surface '" + spec + "'");
}

} // namespace formlab
