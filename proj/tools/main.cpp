#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "formlab/beltrami.hpp"
#include "formlab/errors.hpp"
#include "formlab/finitetype.hpp"
#include "formlab/report.hpp"
#include "formlab/surface.hpp"

namespace {

using namespace formlab;

struct Options {
    std::string spec;
    std::string grid_text;
    std::string u_range_text;
    double tol = 0.0; // 0 means unset, resolved per command
    int kmax = 4;
    unsigned long long seed = 12345;
    std::string json_path;
    std::string csv_path;
    std::string expect;
    std::string golden_path;
};

Grid parse_grid(const std::string& text) {
    const auto sep = text.find('x');
    std::size_t a = 0, b = 0;
    Grid g;
    try {
        if (sep == std::string::npos) throw std::invalid_argument(text);
        g.nu = std::stoi(text.substr(0, sep), &a);
        g.nv = std::stoi(text.substr(sep + 1), &b);
    } catch (const std::exception&) {
        throw InvalidParameterError("grid must look like NxM: " + text);
    }
    if (a != sep || b != text.size() - sep - 1 || g.nu < 3 || g.nv < 3)
        throw InvalidParameterError("grid must be at least 3x3: " + text);
    return g;
}

std::pair<double, double> parse_u_range(const std::string& text) {
    const auto sep = text.find(':');
    std::size_t a = 0, b = 0;
    double lo = 0.0, hi = 0.0;
    try {
        if (sep == std::string::npos) throw std::invalid_argument(text);
        lo = std::stod(text.substr(0, sep), &a);
        hi = std::stod(text.substr(sep + 1), &b);
    } catch (const std::exception&) {
        throw InvalidParameterError("u-range must look like a:b: " + text);
    }
    if (a != sep || b != text.size() - sep - 1 || !(lo < hi))
        throw InvalidParameterError("u-range needs a < b: " + text);
    return {lo, hi};
}

// Narrows the sampled u-window. The eval gate of the original patch
// still applies, so a window reaching into the singular margin fails
// as a degenerate-domain error rather than sampling bad geometry.
SurfacePatch load_surface(const Options& opt) {
    SurfacePatch s = parse_surface(opt.spec);
    if (!opt.u_range_text.empty()) {
        const auto [lo, hi] = parse_u_range(opt.u_range_text);
        s.domain.u_min = lo;
        s.domain.u_max = hi;
        s.singular_margin = 0.0;
    }
    return s;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path);
}

std::string eigen_list(const std::vector<std::complex<double>>& es) {
    std::string out = "[";
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (i) out += ';';
        out += real_str(es[i].real());
        if (es[i].imag() != 0.0)
            out += (es[i].imag() > 0 ? "+" : "-") + real_str(std::abs(es[i].imag())) + "i";
    }
    return out + "]";
}

using Mat3 = std::array<std::array<double, 3>, 3>;

// Uniform random rotation from a normalized quaternion.
Mat3 random_rotation(unsigned long long seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double q[4];
    double norm = 0.0;
    for (double& c : q) {
        c = normal(gen);
        norm += c * c;
    }
    norm = std::sqrt(norm);
    for (double& c : q) c /= norm;
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
             {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
             {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

SurfacePatch rotate_patch(const SurfacePatch& base, const Mat3& q) {
    SurfacePatch out = base;
    out.eval = [ev = base.eval, q](double u, double v, int order) {
        Vec3Jet p = ev(u, v, order);
        Vec3Jet r;
        for (int i = 0; i < 3; ++i)
            r[i] = q[i][0] * p[0] + q[i][1] * p[1] + q[i][2] * p[2];
        return r;
    };
    return out;
}

bool same_spectrum(const TypeReport& a, const TypeReport& b) {
    if (a.verdict != b.verdict || a.k != b.k) return false;
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i)
        if (std::abs(a.eigenvalues[i] - b.eigenvalues[i]) > 1e-5) return false;
    return true;
}

Grid resolve_grid(const Options& opt, int fallback) {
    return opt.grid_text.empty() ? Grid{fallback, fallback} : parse_grid(opt.grid_text);
}

double resolve_tol(const Options& opt, double fallback) {
    return opt.tol > 0.0 ? opt.tol : fallback;
}

std::string classification_row(const SurfacePatch& s, const Grid& grid, int kmax,
                               double tau) {
    const IterateTable t = sample_iterates(s, kmax, grid);
    const TypeReport tr = minimal_annihilator(t, kmax, tau);
    const CoordTypeReport cr = coordinate_type(t);
    const std::string label = classify(tr, cr, sample_radii_stats(s, grid));
    return csv_field(s.name) + "," + label + "," + std::to_string(tr.k) + "," +
           eigen_list(tr.eigenvalues) + "," + real_str(tr.residual) + "," +
           real_str(cr.residual);
}

int run_verify(const Options& opt) {
    const SurfacePatch s = load_surface(opt);
    const IdentityReport rep = identity_suite(s, resolve_grid(opt, 15), resolve_tol(opt, 1e-7));
    for (const IdentityRow& row : rep.rows)
        std::printf("%-24s max_error=%-18s tol=%-10s %s%s\n", row.identity_id.c_str(),
                    real_str(row.max_error).c_str(), real_str(row.tol).c_str(),
                    row.pass ? "pass" : "FAIL", row.gating ? "" : " (diagnostic)");
    std::printf("verify %s: %s\n", s.name.c_str(), rep.all_pass ? "PASS" : "FAIL");
    if (!opt.json_path.empty()) write_file(opt.json_path, rows_to_json(rep.rows) + "\n");
    if (!opt.csv_path.empty()) write_file(opt.csv_path, rows_to_csv(rep.rows));
    return rep.all_pass ? 0 : 1;
}

int run_detect(const Options& opt) {
    const SurfacePatch s = load_surface(opt);
    const Grid grid = resolve_grid(opt, 5);
    const double tau = resolve_tol(opt, 1e-6);
    const TypeReport rep = minimal_annihilator(sample_iterates(s, opt.kmax, grid),
                                               opt.kmax, tau);

    // an ambient rotation must not change the detected spectrum
    const SurfacePatch rotated = rotate_patch(s, random_rotation(opt.seed));
    const TypeReport rotated_rep =
        minimal_annihilator(sample_iterates(rotated, opt.kmax, grid), opt.kmax, tau);
    const bool rotation_ok = same_spectrum(rep, rotated_rep);

    std::printf("surface: %s\n", s.name.c_str());
    std::printf("verdict: %s\n", rep.verdict.c_str());
    std::printf("k: %d residual: %s\n", rep.k, real_str(rep.residual).c_str());
    std::printf("eigenvalues: %s\n", eigen_list(rep.eigenvalues).c_str());
    if (rep.translation_identifiable)
        std::printf("x0: [%s;%s;%s]\n", real_str(rep.x0[0]).c_str(),
                    real_str(rep.x0[1]).c_str(), real_str(rep.x0[2]).c_str());
    std::printf("rotation_check: %s (seed %llu)\n", rotation_ok ? "pass" : "FAIL", opt.seed);
    if (rep.ill_conditioned) std::printf("warning: ill_conditioned fit\n");

    if (!opt.json_path.empty()) write_file(opt.json_path, type_report_json(rep) + "\n");
    if (!opt.csv_path.empty())
        write_file(opt.csv_path,
                   "surface,verdict,k,eigenvalues,residual,coord_residual\n" +
                       classification_row(s, grid, opt.kmax, tau) + "\n");
    if (!rotation_ok) return 1;
    if (!opt.expect.empty() && opt.expect != rep.verdict) {
        std::fprintf(stderr, "expected verdict %s, got %s\n", opt.expect.c_str(),
                     rep.verdict.c_str());
        return 1;
    }
    return 0;
}

int run_coordtype(const Options& opt) {
    const SurfacePatch s = load_surface(opt);
    const Grid grid = resolve_grid(opt, 5);
    const CoordTypeReport rep = coordinate_type(sample_iterates(s, 1, grid));

    std::printf("surface: %s\n", s.name.c_str());
    for (int i = 0; i < 3; ++i)
        std::printf("A[%d]: [%s;%s;%s]\n", i, real_str(rep.A[i][0]).c_str(),
                    real_str(rep.A[i][1]).c_str(), real_str(rep.A[i][2]).c_str());
    std::printf("residual: %s\n", real_str(rep.residual).c_str());
    std::printf("coordtype %s: %s\n", s.name.c_str(), rep.pass ? "pass" : "fail");
    if (rep.ill_conditioned) std::printf("warning: ill_conditioned fit\n");

    if (!opt.json_path.empty()) write_file(opt.json_path, coord_report_json(rep) + "\n");
    if (!opt.csv_path.empty())
        write_file(opt.csv_path,
                   "surface,verdict,k,eigenvalues,residual,coord_residual\n" +
                       classification_row(s, grid, opt.kmax, resolve_tol(opt, 1e-6)) + "\n");
    if (!opt.expect.empty()) return opt.expect == (rep.pass ? "pass" : "fail") ? 0 : 1;
    return rep.pass ? 0 : 1;
}

int run_classify(const Options& opt) {
    const SurfacePatch s = load_surface(opt);
    const Grid grid = resolve_grid(opt, 5);
    const double tau = resolve_tol(opt, 1e-6);
    const IterateTable t = sample_iterates(s, opt.kmax, grid);
    const TypeReport tr = minimal_annihilator(t, opt.kmax, tau);
    const CoordTypeReport cr = coordinate_type(t);
    const RadiiStats rs = sample_radii_stats(s, grid);
    const std::string label = classify(tr, cr, rs);

    std::printf("surface: %s\n", s.name.c_str());
    std::printf("label: %s\n", label.c_str());
    std::printf("type_verdict: %s k: %d residual: %s\n", tr.verdict.c_str(), tr.k,
                real_str(tr.residual).c_str());
    std::printf("eigenvalues: %s\n", eigen_list(tr.eigenvalues).c_str());
    std::printf("coord_residual: %s coord_pass: %s\n", real_str(cr.residual).c_str(),
                cr.pass ? "true" : "false");
    std::printf("radii mean: %s max_dev: %s\n", real_str(rs.mean).c_str(),
                real_str(rs.max_dev).c_str());

    if (!opt.json_path.empty()) {
        std::ostringstream os;
        os << "{\"surface\":\"" << json_escape(s.name) << "\",\"label\":\""
           << json_escape(label) << "\",\"type\":" << type_report_json(tr)
           << ",\"coordinate\":" << coord_report_json(cr) << ",\"radii\":{\"mean\":"
           << real_str(rs.mean) << ",\"max_dev\":" << real_str(rs.max_dev) << "}}\n";
        write_file(opt.json_path, os.str());
    }
    if (!opt.csv_path.empty())
        write_file(opt.csv_path,
                   "surface,verdict,k,eigenvalues,residual,coord_residual\n" +
                       csv_field(s.name) + "," + label + "," + std::to_string(tr.k) + "," +
                       eigen_list(tr.eigenvalues) + "," + real_str(tr.residual) + "," +
                       real_str(cr.residual) + "\n");
    if (!opt.expect.empty() && opt.expect != label) {
        std::fprintf(stderr, "expected label %s, got %s\n", opt.expect.c_str(), label.c_str());
        return 1;
    }
    return 0;
}

int run_table(const Options& opt) {
    static const char* kMenagerie[] = {
        "sphere:r=1",
        "catenoid:a=1",
        "enneper",
        "parallel:base=catenoid:a=1,mu=0.25",
        "parallel:base=catenoid:a=1,mu=0.5",
        "torus:a=2",
    };
    const Grid grid = resolve_grid(opt, 5);
    const double tau = resolve_tol(opt, 1e-6);

    std::string csv = "surface,verdict,k,eigenvalues,residual,coord_residual\n";
    for (const char* spec : kMenagerie)
        csv += classification_row(parse_surface(spec), grid, opt.kmax, tau) + "\n";

    std::fputs(csv.c_str(), stdout);
    if (!opt.csv_path.empty()) write_file(opt.csv_path, csv);

    if (!opt.golden_path.empty()) {
        std::ifstream in(opt.golden_path, std::ios::binary);
        if (!in) {
            std::fprintf(stderr, "cannot read golden file %s\n", opt.golden_path.c_str());
            return 64;
        }
        std::ostringstream want;
        want << in.rdbuf();
        if (want.str() != csv) {
            std::istringstream got_lines(csv), want_lines(want.str());
            std::string got_line, want_line;
            int line = 0;
            while (true) {
                ++line;
                const bool g = static_cast<bool>(std::getline(got_lines, got_line));
                const bool w = static_cast<bool>(std::getline(want_lines, want_line));
                if (!g && !w) break;
                if (got_line != want_line || g != w) {
                    std::fprintf(stderr, "golden mismatch at line %d\n  want: %s\n  got:  %s\n",
                                 line, w ? want_line.c_str() : "<eof>",
                                 g ? got_line.c_str() : "<eof>");
                    return 1;
                }
            }
            std::fprintf(stderr, "golden mismatch: files differ\n");
            return 1;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"third-fundamental-form Laplacian toolkit"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&](CLI::App* cmd, bool wants_spec) {
        if (wants_spec) cmd->add_option("spec", opt.spec, "surface spec")->required();
        cmd->add_option("--grid", opt.grid_text, "sampling grid NxM");
        cmd->add_option("--tol", opt.tol, "tolerance")->check(CLI::PositiveNumber);
        cmd->add_option("--json", opt.json_path, "write JSON report here");
        cmd->add_option("--csv", opt.csv_path, "write CSV report here");
        return cmd;
    };
    const auto add_detection = [&](CLI::App* cmd) {
        cmd->add_option("--kmax", opt.kmax, "maximum annihilator order")
            ->check(CLI::Range(1, 4));
        cmd->add_option("--expect", opt.expect, "fail unless the verdict matches");
        return cmd;
    };

    CLI::App* verify = add_common(app.add_subcommand("verify", "check closed-form identities"), true);
    verify->add_option("--u-range", opt.u_range_text, "override sampled u-window a:b");

    CLI::App* detect = add_detection(add_common(
        app.add_subcommand("detect", "fit the minimal annihilating polynomial"), true));
    detect->add_option("--u-range", opt.u_range_text, "override sampled u-window a:b");
    detect->add_option("--seed", opt.seed, "seed for the rotation invariance check");

    CLI::App* coordtype = add_common(
        app.add_subcommand("coordtype", "fit the linear coordinate model"), true);
    coordtype->add_option("--u-range", opt.u_range_text, "override sampled u-window a:b");
    coordtype->add_option("--expect", opt.expect, "fail unless pass/fail matches");

    CLI::App* classify_cmd = add_detection(add_common(
        app.add_subcommand("classify", "combine detectors into a label"), true));
    classify_cmd->add_option("--u-range", opt.u_range_text, "override sampled u-window a:b");

    CLI::App* table = add_common(
        app.add_subcommand("table", "classify the builtin menagerie"), false);
    table->add_option("golden", opt.golden_path, "golden CSV to compare against");
    table->add_option("--kmax", opt.kmax, "maximum annihilator order")->check(CLI::Range(1, 4));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (app.got_subcommand(verify)) return run_verify(opt);
        if (app.got_subcommand(detect)) return run_detect(opt);
        if (app.got_subcommand(coordtype)) return run_coordtype(opt);
        if (app.got_subcommand(classify_cmd)) return run_classify(opt);
        return run_table(opt);
    } catch (const formlab::SpecParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 64;
    } catch (const formlab::InvalidParameterError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 64;
    } catch (const formlab::JetOrderError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 64;
    } catch (const formlab::Error& e) {
        std::fprintf(stderr, "degenerate input: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 70;
    }
}
