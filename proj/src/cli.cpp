#include "extremal/cli.hpp"

#include <charconv>
#include <chrono>
#include <cctype>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "extremal/evaluate.hpp"
#include "extremal/grid.hpp"
#include "extremal/io.hpp"
#include "extremal/polytope.hpp"
#include "extremal/supports.hpp"

namespace extremal::cli {

namespace {

double parse_number(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError("bad number '" + std::string(s) + "'");
    }
    return v;
}

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> vals;
    std::string cur;
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) vals.push_back(parse_number(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) vals.push_back(parse_number(cur));
    return vals;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ss;
    ss << "generated " << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

void print_vector(std::ostream& out, const Vector& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << format_double(v[i]);
}

int cmd_validate(const std::string& file, const Tolerances& tol, std::ostream& out) {
    const PolytopeH k = load_polytope(file, tol);
    out << "dim: " << k.dim() << '\n';
    out << "facets: " << k.facet_count() << '\n';
    out << "vertices: " << k.vertices().size() << '\n';
    for (const auto& v : k.vertices()) {
        out << "  ";
        print_vector(out, v);
        out << '\n';
    }
    out << "interior: ";
    print_vector(out, k.interior());
    out << '\n';
    out << "radius: " << format_double(k.chebyshev_radius()) << '\n';
    return kOk;
}

int cmd_supports(const std::string& file, const Tolerances& tol, std::ostream& out) {
    const PolytopeH k = load_polytope(file, tol);
    const SupportSet set = enumerate_supports(k);
    out << supports_to_json(set).dump(2) << '\n';
    return kOk;
}

int cmd_eval(const std::string& file, const std::vector<std::string>& points,
             const std::string& points_file, bool diagnostics, const Tolerances& tol,
             std::ostream& out) {
    const PolytopeH k = load_polytope(file, tol);
    std::vector<ComplexVector> zs;
    for (const auto& p : points) zs.push_back(parse_point(p));
    if (!points_file.empty()) {
        std::ifstream in(points_file);
        if (!in) throw IoError("cannot open " + points_file);
        std::string line;
        while (std::getline(in, line)) {
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            zs.push_back(parse_point(line));
        }
    }
    if (zs.empty()) throw ParseError("no points given (use --point or --points-file)");
    for (const auto& z : zs) {
        if (z.size() != k.dim()) {
            throw DimensionMismatch("point has " + std::to_string(z.size()) + " complex coordinates, polytope has dim " +
                                    std::to_string(k.dim()));
        }
    }
    const Evaluator ev(enumerate_supports(k));
    // evaluate everything before printing so errors leave no partial output
    std::ostringstream buf;
    for (const auto& z : zs) {
        const EvalResult r = ev.evaluate(z, diagnostics);
        buf << format_double(r.value) << ' ' << r.argmax;
        if (r.per_support) {
            for (double v : *r.per_support) buf << ' ' << format_double(v);
        }
        buf << '\n';
    }
    out << buf.str();
    return kOk;
}

struct GridOptions {
    std::string plane = "re1,re2";
    std::string bounds;
    std::size_t resolution = 0;
    std::string out;
    std::string format = "csv";
    std::size_t jobs = 1;
    bool reproducible = false;
};

int cmd_grid(const std::string& file, const GridOptions& opt, const Tolerances& tol) {
    const PolytopeH k = load_polytope(file, tol);
    GridSpec grid;
    grid.dim = k.dim();
    try {
        parse_plane(opt.plane, grid);
    } catch (const std::invalid_argument& e) {
        throw DimensionMismatch(e.what());
    }
    const std::vector<double> b = parse_list(opt.bounds);
    if (b.size() != 4) throw ParseError("--bounds needs four numbers umin,umax,vmin,vmax");
    grid.u_min = b[0];
    grid.u_max = b[1];
    grid.v_min = b[2];
    grid.v_max = b[3];
    grid.resolution = opt.resolution;
    try {
        grid.check();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }

    const Evaluator ev(enumerate_supports(k));
    const std::vector<GridSample> samples = evaluate_grid(ev, grid, opt.jobs);
    const std::string stamp = opt.reproducible ? std::string{} : utc_timestamp();

    const std::filesystem::path target(opt.out);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot write " + tmp.string());
        if (opt.format == "json") write_grid_json(os, grid, samples, stamp);
        else write_grid_csv(os, samples, stamp);
        os.flush();
        if (!os) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at " + target.string());
    }
    return kOk;
}

int exit_code_for(ValidationCode code) {
    switch (code) {
        case ValidationCode::Unbounded: return kUnbounded;
        case ValidationCode::NotFullDimensional: return kNotFullDimensional;
        case ValidationCode::RedundantHalfspace: return kRedundant;
        case ValidationCode::Empty: return kEmpty;
        case ValidationCode::ZeroNormal:
        case ValidationCode::Degenerate:
        case ValidationCode::TooLarge: return kInvalidInput;
    }
    return kInvalidInput;
}

}  // namespace

Tolerances tolerances_from_env() {
    const char* env = std::getenv("EXTREMAL_TOL");
    if (!env || !*env) return {};
    Tolerances t = Tolerances::uniform(parse_number(env));
    t.check();
    return t;
}

ComplexVector parse_point(std::string_view text) {
    const std::vector<double> vals = parse_list(text);
    if (vals.empty() || vals.size() % 2 != 0) {
        throw DimensionMismatch("a point needs an even, nonzero count of reals (re,im pairs)");
    }
    ComplexVector z(vals.size() / 2);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = {vals[2 * i], vals[2 * i + 1]};
    return z;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"extremal functions of convex polytopes"};
    app.require_subcommand(1);
    std::optional<double> tol_override;
    app.add_option("--tol", tol_override, "tolerance for rank, positivity and containment tests");

    std::string file;
    auto* validate_cmd = app.add_subcommand("validate", "check a polytope file and print its vertices");
    validate_cmd->add_option("file", file, "polytope JSON")->required();

    auto* supports_cmd = app.add_subcommand("supports", "list supporting simplices and strips as JSON");
    supports_cmd->add_option("file", file, "polytope JSON")->required();

    std::vector<std::string> points;
    std::string points_file;
    bool diagnostics = false;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate V_K at complex points");
    eval_cmd->add_option("file", file, "polytope JSON")->required();
    eval_cmd->add_option("--point", points, "re1,im1,re2,im2,...")->take_all();
    eval_cmd->add_option("--points-file", points_file, "one point per line");
    eval_cmd->add_flag("--diagnostics", diagnostics, "append the value of every support");

    GridOptions gopt;
    auto* grid_cmd = app.add_subcommand("grid", "sweep V_K over a 2-D slice");
    grid_cmd->add_option("file", file, "polytope JSON")->required();
    grid_cmd->add_option("--plane", gopt.plane, "u,v[:fixed...], e.g. re1,re2 or re1,im1:0.5,0");
    grid_cmd->add_option("--bounds", gopt.bounds, "umin,umax,vmin,vmax")->required();
    grid_cmd->add_option("--resolution", gopt.resolution, "samples per axis")->required();
    grid_cmd->add_option("--out", gopt.out, "output file")->required();
    grid_cmd->add_option("--format", gopt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    grid_cmd->add_option("--jobs", gopt.jobs, "worker threads")->check(CLI::PositiveNumber);
    grid_cmd->add_flag("--reproducible", gopt.reproducible, "omit the timestamp header");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        Tolerances tol = tol_override ? Tolerances::uniform(*tol_override) : tolerances_from_env();
        tol.check();
        if (*validate_cmd) return cmd_validate(file, tol, out);
        if (*supports_cmd) return cmd_supports(file, tol, out);
        if (*eval_cmd) return cmd_eval(file, points, points_file, diagnostics, tol, out);
        if (*grid_cmd) return cmd_grid(file, gopt, tol);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const ValidationError& e) {
        err << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const NoCover& e) {
        err << "NoCover: " << e.what() << '\n';
        return kNoCover;
    } catch (const DimensionMismatch& e) {
        err << "DimensionMismatch: " << e.what() << '\n';
        return kDimensionMismatch;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kIo;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace extremal::cli
