#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "viviani/document.hpp"
#include "viviani/duality.hpp"
#include "viviani/errors.hpp"
#include "viviani/fermat.hpp"
#include "viviani/format.hpp"
#include "viviani/hyperplane.hpp"
#include "viviani/polytope.hpp"
#include "viviani/sampling.hpp"
#include "viviani/svg.hpp"

namespace viviani::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNotViviani = 1;
inline constexpr int kInputError = 2;
inline constexpr int kPreconditionError = 3;

namespace detail {

// Raised for unreadable files and malformed flag values; maps to exit 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline ConfigDocument load(const std::string& path, std::ostream& err) {
    ConfigDocument doc = parse_document(read_file(path));
    for (const auto& w : doc.warnings) err << "warning: " << path << ": " << w << "\n";
    return doc;
}

inline std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InputError(flag + ": '" + item + "' is not a number");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size() || !std::isfinite(v)) throw InputError(flag + ": '" + item + "' is not a number");
        out.push_back(v);
    }
    if (out.empty()) throw InputError(flag + ": expected comma-separated numbers");
    return out;
}

// Planes of a planes document, or the outward edge planes of a polygon document.
inline HyperplaneSet planes_of(const ConfigDocument& doc) {
    if (const auto* planes = std::get_if<HyperplaneSet>(&doc.content)) return *planes;
    if (const auto* poly = std::get_if<PolygonVertices>(&doc.content)) {
        return polygon_to_hyperplanes(ConvexPolygon(poly->vertices));
    }
    throw Error(ErrorCode::WrongDocumentKind, "expected a 'planes' or 'polygon' document, got 'points'");
}

inline const PointSet& points_of(const ConfigDocument& doc) {
    if (const auto* pts = std::get_if<PointSet>(&doc.content)) return *pts;
    throw Error(ErrorCode::WrongDocumentKind, "expected a 'points' document");
}

inline nlohmann::ordered_json vector_json(const VectorN& v) {
    auto a = nlohmann::ordered_json::array();
    for (double c : v) a.push_back(c);
    return a;
}

inline nlohmann::ordered_json median_json(const MedianResult& m) {
    nlohmann::ordered_json j;
    j["point"] = vector_json(m.point);
    j["objective"] = m.objective;
    j["status"] = std::string(to_string(m.status));
    if (m.anchor_index) j["anchor_index"] = *m.anchor_index;
    j["residual"] = m.residual;
    j["iterations"] = m.iterations;
    j["converged"] = m.converged;
    return j;
}

inline int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::SchemaError:
    case ErrorCode::NormTolerance:
        return kInputError;
    default:
        return kPreconditionError;
    }
}

}  // namespace detail

// Runs one CLI invocation. `args` excludes the program name. Results go to
// `out`, diagnostics to `err`. Exit codes: 0 success (or Viviani for
// `check`), 1 not Viviani, 2 malformed input, 3 dimension or precondition
// violation.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail;

    CLI::App app{"Oriented hyperplane sets, signed-distance sums and Fermat points", "viviani"};
    app.require_subcommand(1);

    std::string file;
    std::string point_text;
    double tol = kDefaultVivianiTolerance;

    auto* check = app.add_subcommand("check", "Report the defect, gradient and Viviani verdict");
    check->add_option("file", file, "planes or polygon document")->required();
    check->add_option("--tol", tol, "tolerance on the defect")->capture_default_str();

    auto* value = app.add_subcommand("value", "Evaluate the signed-distance sum at a point");
    value->add_option("file", file, "planes or polygon document")->required();
    value->add_option("--point", point_text, "x,y,...")->required();

    MedianOptions median_opts;
    auto* median = app.add_subcommand("median", "Geometric median (Fermat point) of a point set");
    median->add_option("file", file, "points document")->required();
    median->add_option("--tol", median_opts.tol, "step-length tolerance")->capture_default_str();
    median->add_option("--max-iter", median_opts.max_iter, "iteration cap")->capture_default_str();

    auto* dualize = app.add_subcommand("dualize", "Viviani planes through the points, normal to the Fermat spokes");
    dualize->add_option("file", file, "points document")->required();
    dualize->add_option("--at", point_text, "use this certified Fermat point instead of solving");

    auto* project = app.add_subcommand("project", "Project a point onto every plane and re-solve the median");
    project->add_option("file", file, "planes or polygon document")->required();
    project->add_option("--point", point_text, "x,y,...")->required();
    project->add_option("--tol", tol, "Viviani tolerance")->capture_default_str();

    std::string kind;
    std::string param;
    auto* generate = app.add_subcommand("generate", "Emit an example document");
    generate->add_option("kind", kind, "equiangular | platonic | example5")
        ->required()
        ->check(CLI::IsMember({"equiangular", "platonic", "example5"}));
    generate->add_option("param", param,
                         "side lengths a,b,c,... | tetrahedron|cube|octahedron|dodecahedron|icosahedron | t")
        ->required();

    std::size_t count = 100;
    std::uint64_t seed = 0;
    std::string box_text = "-1,1";
    auto* sample = app.add_subcommand("sample", "Evaluate v at seeded random points of a box");
    sample->add_option("file", file, "planes or polygon document")->required();
    sample->add_option("--count", count, "number of points")->capture_default_str();
    sample->add_option("--seed", seed, "SplitMix64 seed")->capture_default_str();
    sample->add_option("--box", box_text, "lo,hi")->capture_default_str();

    std::string out_path;
    auto* plot = app.add_subcommand("plot", "Draw a 2-D document as SVG");
    plot->add_option("file", file, "any 2-D document")->required();
    plot->add_option("--out", out_path, "output SVG path")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (check->parsed()) {
            const HyperplaneSet set = planes_of(load(file, err));
            const double defect = viviani_defect(set);
            const bool viviani = is_viviani(set, tol);
            out << "planes: " << set.size() << "\n"
                << "dimension: " << set.dim() << "\n"
                << "defect: " << format_double(defect) << "\n"
                << "gradient: " << format_vector(viviani_gradient(set)) << "\n"
                << "viviani: " << (viviani ? "yes" : "no") << "\n";
            return viviani ? kOk : kNotViviani;
        }
        if (value->parsed()) {
            const HyperplaneSet set = planes_of(load(file, err));
            const VectorN p(parse_list(point_text, "--point"));
            out << "v: " << format_double(viviani_value(p, set)) << "\n";
            return kOk;
        }
        if (median->parsed()) {
            const ConfigDocument doc = load(file, err);
            out << median_json(geometric_median(points_of(doc), median_opts)).dump(2) << "\n";
            return kOk;
        }
        if (dualize->parsed()) {
            const ConfigDocument doc = load(file, err);
            const PointSet& pts = points_of(doc);
            std::map<std::string, std::string> meta;
            VectorN at = VectorN::zero(pts.dim());
            if (!point_text.empty()) {
                at = VectorN(parse_list(point_text, "--at"));
                meta["fermat_source"] = "given";
            } else {
                const MedianResult m = geometric_median(pts);
                if (m.status != MedianStatus::InteriorOptimum) {
                    err << "error: the Fermat point is not distinct from the input points (status "
                        << to_string(m.status) << ")\n";
                    return kPreconditionError;
                }
                at = m.point;
                meta["fermat_source"] = "solved";
            }
            if (at.dim() != pts.dim()) throw Error(ErrorCode::DimensionMismatch, "--at dimension");
            const HyperplaneSet set = fermat_to_viviani(pts, at);
            meta["fermat_point"] = format_vector(at);
            meta["defect"] = format_double(viviani_defect(set));
            out << serialize_document(make_document(set, std::move(meta)));
            return kOk;
        }
        if (project->parsed()) {
            const HyperplaneSet set = planes_of(load(file, err));
            const VectorN p(parse_list(point_text, "--point"));
            const PointSet feet = viviani_to_fermat(set, p, tol);
            const MedianResult m = geometric_median(feet);
            std::map<std::string, std::string> meta;
            meta["source_point"] = format_vector(p);
            meta["median_point"] = format_vector(m.point);
            meta["median_status"] = std::string(to_string(m.status));
            meta["recovery_error"] = format_double(m.point.distance(p));
            out << serialize_document(make_document(feet, std::move(meta)));
            return kOk;
        }
        if (generate->parsed()) {
            std::map<std::string, std::string> meta{{"generator", kind}, {"parameter", param}};
            if (kind == "equiangular") {
                const ConvexPolygon g = make_equiangular_polygon(parse_list(param, "sides"));
                out << serialize_document(
                    make_document(PolygonVertices{{g.vertices().begin(), g.vertices().end()}}, std::move(meta)));
            } else if (kind == "platonic") {
                out << serialize_document(make_document(platonic_solid_normals(param), std::move(meta)));
            } else {
                const auto t = parse_list(param, "t");
                if (t.size() != 1) throw InputError("t: expected a single number");
                out << serialize_document(make_document(example5_tetrahedron(t.front()), std::move(meta)));
            }
            return kOk;
        }
        if (sample->parsed()) {
            const HyperplaneSet set = planes_of(load(file, err));
            const auto box = parse_list(box_text, "--box");
            if (box.size() != 2) throw InputError("--box: expected lo,hi");
            const SampleStats s = sample_viviani_value(set, count, seed, box[0], box[1]);
            out << "count: " << s.count << "\n"
                << "min: " << format_double(s.min) << "\n"
                << "max: " << format_double(s.max) << "\n"
                << "spread: " << format_double(s.spread) << "\n";
            return kOk;
        }
        if (plot->parsed()) {
            const std::string svg = render_svg(load(file, err));
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw InputError("cannot write '" + out_path + "'");
            f << svg;
            out << "wrote " << out_path << "\n";
            return kOk;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    return kInputError;
}

}  // namespace viviani::cli
