// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace viviani;
using vtest::Generator;

namespace {

// Failure detail for the current criterion; the first message is kept.
struct Tally {
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            if (failures == 0) first = what;
            ++failures;
        }
    }
};

std::string fixture(const std::string& name) { return std::string(VIVIANI_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ConfigDocument load(const std::string& name) { return parse_document(slurp(fixture(name))); }

HyperplaneSet planes_of(const ConfigDocument& doc) {
    if (doc.has_polygon()) return polygon_to_hyperplanes(ConvexPolygon(std::get<PolygonVertices>(doc.content).vertices));
    return std::get<HyperplaneSet>(doc.content);
}

std::string num(double x) {
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

bool affinely_independent(const std::vector<VectorN>& pts) {
    const auto n = static_cast<Eigen::Index>(pts.front().dim());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            m(i, j) = pts[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(i)] - pts[0][static_cast<std::size_t>(i)];
        }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(n - 1) > 1e-3 * svd.singularValues()(0);
}

std::vector<VectorN> random_points(Generator& gen, std::size_t dim, std::size_t k, double lo, double hi) {
    std::vector<VectorN> v;
    for (std::size_t i = 0; i < k; ++i) v.push_back(gen.point(dim, lo, hi));
    return v;
}

// 1. Zero normal sum makes v constant.
void constant_when_balanced(Tally& t) {
    Generator gen(1001);
    const std::size_t dims[] = {2, 3, 5};
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = dims[trial % 3];
        const std::size_t k = gen.integer(2, 10);
        const auto normals = gen.balanced_normals(n, k);
        std::vector<OrientedHyperplane> planes;
        for (const auto& nrm : normals) planes.emplace_back(nrm, gen.uniform(-5, 5));
        const HyperplaneSet set(planes);
        t.expect(viviani_defect(set) <= 1e-12, "repair left defect " + num(viviani_defect(set)));
        std::vector<VectorN> pts;
        do {
            pts = random_points(gen, n, n + 1, -10, 10);
        } while (!affinely_independent(pts));
        const double v0 = viviani_value(pts[0], set);
        for (const auto& p : pts) {
            const double v = viviani_value(p, set);
            t.expect(std::abs(v - v0) <= 1e-9 * (1.0 + std::abs(v0)),
                     "trial " + std::to_string(trial) + ": v varies by " + num(v - v0));
        }
    }
}

// 2. A unit step along the level-set direction lowers v by the defect.
void gradient_is_minus_normal_sum(Tally& t) {
    Generator gen(1002);
    const std::size_t dims[] = {2, 3, 5};
    int done = 0;
    while (done < 500) {
        const std::size_t n = dims[done % 3];
        const std::size_t k = gen.integer(1, 10);
        std::vector<OrientedHyperplane> planes;
        for (std::size_t i = 0; i < k; ++i) planes.emplace_back(gen.unit(n), gen.uniform(-5, 5));
        const HyperplaneSet set(planes);
        const double delta = viviani_defect(set);
        if (delta < 0.1) continue;
        ++done;
        const auto u = level_set_direction(set);
        t.expect(u.has_value(), "no level-set direction at defect " + num(delta));
        if (!u) continue;
        const VectorN p = gen.point(n, -5, 5);
        const double change = viviani_value(p + *u, set) - viviani_value(p, set);
        t.expect(std::abs(change + delta) <= 1e-10, "change " + num(change) + " vs defect " + num(delta));
    }
}

// 3. Triangles: Viviani iff equilateral.
void triangles(Tally& t) {
    Generator gen(1003);
    for (int i = 0; i < 1000; ++i) {
        const bool equilateral = i < 500;
        const ConvexPolygon g(equilateral ? gen.equilateral_triangle() : gen.generic_triangle());
        const bool viviani = is_viviani_polygon(g, 1e-6);
        t.expect(viviani == equilateral, "triangle " + std::to_string(i) + " misclassified");
        t.expect(viviani == (classify_triangle(g, 1e-6) == TriangleClass::Equilateral),
                 "triangle " + std::to_string(i) + ": side-length classifier disagrees");
    }
}

// 4. Quadrilaterals: Viviani iff parallelogram.
void quadrilaterals(Tally& t) {
    Generator gen(1004);
    for (int i = 0; i < 1000; ++i) {
        const bool parallelogram = i < 500;
        const ConvexPolygon g(parallelogram ? gen.parallelogram() : gen.convex_quadrilateral());
        const bool viviani = is_viviani_polygon(g, 1e-6);
        t.expect(viviani == parallelogram, "quadrilateral " + std::to_string(i) + " misclassified");
        t.expect(viviani == (classify_quadrilateral(g, 1e-6) == QuadrilateralClass::Parallelogram),
                 "quadrilateral " + std::to_string(i) + ": edge-vector classifier disagrees");
    }
}

// 5. Equiangular polygons.
void equiangular(Tally& t) {
    Generator gen(1005);
    for (int i = 0; i < 50; ++i) {
        const std::size_t k = 3 + static_cast<std::size_t>(i) % 10;
        const ConvexPolygon g = make_equiangular_polygon(gen.equiangular_sides(k));
        const double d = viviani_defect(polygon_to_hyperplanes(g));
        t.expect(d <= 1e-9, "k=" + std::to_string(k) + " defect " + num(d));
    }
}

// 6. Platonic solids, normals cross-checked against the dual solid's vertices.
void platonic(Tally& t) {
    for (int s = 0; s < 5; ++s) {
        const auto solid = static_cast<PlatonicSolid>(s);
        const HyperplaneSet faces = platonic_solid_normals(solid);
        const std::string name(to_string(solid));
        t.expect(faces.size() == face_count(solid), name + ": face count");
        for (const auto& f : faces) {
            t.expect(std::abs(f.normal().norm() - 1.0) <= 1e-12, name + ": non-unit normal");
        }
        t.expect(viviani_defect(faces) <= 1e-12, name + ": defect " + num(viviani_defect(faces)));
        for (const auto& e : vtest::oracle::dual_face_normals(s)) {
            const VectorN ev{e[0], e[1], e[2]};
            bool found = false;
            for (const auto& f : faces) found = found || max_abs_diff(f.normal(), ev) <= 1e-12;
            t.expect(found, name + ": missing dual-vertex normal");
        }
    }
}

// 7. The one-parameter tetrahedron family.
void example5(Tally& t) {
    constexpr double pi = std::numbers::pi;
    for (int i = 0; i < 100; ++i) {
        const double tt = 0.01 + (pi - 0.02) * (static_cast<double>(i) + 0.5) / 100.0;
        const HyperplaneSet s = example5_tetrahedron(tt);
        t.expect(s.size() == 4, "four planes");
        for (const auto& p : s) {
            t.expect(std::abs(p.normal().norm() - 1.0) <= 1e-12, "t=" + num(tt) + ": non-unit normal");
        }
        t.expect(viviani_defect(s) <= 1e-12, "t=" + num(tt) + ": defect " + num(viviani_defect(s)));
    }
    const HyperplaneSet half = example5_tetrahedron(pi / 2);
    const double r = std::sqrt(2.0) / 2.0;
    const std::vector<VectorN> expected = {VectorN{r, 0.5, 0.5}, VectorN{-r, 0.5, 0.5}, VectorN{0.0, -1.0, 0.0},
                                           VectorN{0.0, 0.0, -1.0}};
    for (std::size_t i = 0; i < 4; ++i) {
        t.expect(max_abs_diff(half[i].normal(), expected[i]) <= 1e-12, "t=pi/2 normal " + std::to_string(i));
    }
}

// 8. Median against the grid oracle, and monotone descent.
void median_oracle(Tally& t, std::vector<std::pair<PointSet, MedianResult>>& interior) {
    Generator gen(1008);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = gen.integer(3, 8);
        const PointSet pts(random_points(gen, 2, k, -1, 1));
        double last = INFINITY;
        bool monotone = true;
        const MedianResult m = geometric_median(pts, {}, [&](std::size_t, const VectorN&, double f) {
            // non-increasing up to a few ulps of rounding at the fixed point
            monotone = monotone && f <= last * (1.0 + 1e-15);
            last = f;
        });
        std::vector<vtest::oracle::Point2> raw;
        for (const auto& p : pts) raw.push_back({p[0], p[1]});
        const auto grid = vtest::oracle::grid_median(raw, 5e-3, 5);
        t.expect(m.objective <= grid.objective + 1e-6,
                 "trial " + std::to_string(trial) + ": objective " + num(m.objective) + " vs grid " + num(grid.objective));
        t.expect(monotone, "trial " + std::to_string(trial) + ": objective increased");
        if (m.status == MedianStatus::InteriorOptimum) interior.emplace_back(pts, m);
    }
}

// 9. Interior optima carry a vanishing direction sum.
void certificate(Tally& t, std::vector<std::pair<PointSet, MedianResult>>& interior) {
    Generator gen(1009);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = gen.integer(2, 6);
        const PointSet pts(random_points(gen, n, gen.integer(3, 15), -10, 10));
        const MedianResult m = geometric_median(pts);
        if (m.status == MedianStatus::InteriorOptimum) interior.emplace_back(pts, m);
    }
    t.expect(interior.size() >= 200, "too few interior optima: " + std::to_string(interior.size()));
    for (const auto& [pts, m] : interior) {
        const double k = static_cast<double>(pts.size());
        const double r = direction_sum_at(m.point, pts).norm();
        t.expect(r <= k * 1e-8, "direction sum " + num(r) + " at k=" + std::to_string(pts.size()));
    }
}

// 10. Fermat point <-> Viviani set.
void round_trip(Tally& t) {
    Generator gen(1010);
    int done = 0;
    while (done < 100) {
        const std::size_t n = gen.integer(2, 4);
        const std::size_t k = gen.integer(3, 10);
        const PointSet pts(random_points(gen, n, k, -5, 5));
        const MedianResult m = geometric_median(pts);
        if (m.status != MedianStatus::InteriorOptimum) continue;
        ++done;
        const double kd = static_cast<double>(k);
        const HyperplaneSet set = fermat_to_viviani(pts, m.point);
        t.expect(viviani_defect(set) <= kd * 1e-6, "defect " + num(viviani_defect(set)));
        const PointSet feet = viviani_to_fermat(set, m.point, kd * 1e-6);
        double worst = 0.0;
        for (std::size_t i = 0; i < k; ++i) worst = std::max(worst, feet[i].distance(pts[i]));
        t.expect(worst <= 1e-8, "projection off by " + num(worst));
        const MedianResult again = geometric_median(feet);
        t.expect(again.point.distance(m.point) <= 1e-6, "re-solved median off by " + num(again.point.distance(m.point)));
        const double fp = total_distance(m.point, feet);
        for (int j = 0; j < 50; ++j) {
            VectorN q = m.point + gen.uniform(1e-4, 3.0) * gen.unit(n);
            if (j % 5 == 0) q = feet[static_cast<std::size_t>(j / 5) % k];
            t.expect(fp < total_distance(q, feet) + 1e-12, "challenger beats the Fermat point");
        }
    }
}

// 11. Regular polygons: constant unsigned distance sum inside, larger outside.
void regular_polygons(Tally& t) {
    Generator gen(1011);
    for (std::size_t k = 3; k <= 12; ++k) {
        const RegularPolygon g =
            make_regular_polygon(k, gen.point(2, -5, 5), gen.uniform(0.5, 5.0), gen.uniform(0, 2 * std::numbers::pi));
        const HyperplaneSet edges = polygon_to_hyperplanes(g.polygon());
        const double constant = static_cast<double>(k) * g.apothem();
        for (int i = 0; i < 20; ++i) {
            // inside the inscribed circle
            const VectorN p = g.center + gen.uniform(0.0, 0.999) * g.apothem() * gen.unit(2);
            const double s = unsigned_distance_sum(p, edges);
            t.expect(std::abs(s - constant) <= 1e-9, "k=" + std::to_string(k) + ": interior sum off by " + num(s - constant));
        }
        for (int i = 0; i < 20; ++i) {
            // beyond some edge: past the apothem along that edge's normal, or past the circumcircle
            const VectorN p = i % 2 == 0
                                  ? g.center + gen.uniform(1.001, 3.0) * g.apothem() * edges[gen.integer(0, k - 1)].normal()
                                  : g.center + gen.uniform(1.001, 3.0) * g.circumradius * gen.unit(2);
            const double s = unsigned_distance_sum(p, edges);
            t.expect(s > constant, "k=" + std::to_string(k) + ": exterior sum " + num(s) + " <= " + num(constant));
        }
    }
}

// 12. Points on the spokes of a regular polygon have the center as Fermat point.
void spokes(Tally& t) {
    Generator gen(1012);
    for (int i = 0; i < 100; ++i) {
        const std::size_t k = gen.integer(3, 12);
        const RegularPolygon g =
            make_regular_polygon(k, gen.point(2, -5, 5), gen.uniform(0.5, 5.0), gen.uniform(0, 2 * std::numbers::pi));
        std::vector<VectorN> b;
        for (const auto& v : g.vertices) b.push_back(g.center + gen.uniform(0.05, 1.0) * (v - g.center));
        const MedianResult m = geometric_median(PointSet(b));
        t.expect(m.point.distance(g.center) <= 1e-6 * g.circumradius,
                 "k=" + std::to_string(k) + ": median off center by " + num(m.point.distance(g.center)));
        t.expect(spoke_points_median_check(g, b), "spoke check rejected k=" + std::to_string(k));
    }
}

// 13. Closed-form constants from the shipped fixtures.
void constants(Tally& t) {
    Generator gen(1013);
    const struct {
        const char* file;
        double value;
    } cases[] = {{"cube.json", 3.0}, {"equilateral_triangle.json", std::sqrt(3.0)}, {"example5.json", 4.0}};
    for (const auto& c : cases) {
        const HyperplaneSet set = planes_of(load(c.file));
        for (int i = 0; i < 10; ++i) {
            const double v = viviani_value(gen.point(set.dim(), -10, 10), set);
            t.expect(std::abs(v - c.value) <= 1e-9, std::string(c.file) + ": v = " + num(v));
        }
    }
}

struct Process {
    int code;
    std::string out;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

Process run_cli(const std::string& args) {
    const std::string cmd = quote(VIVIANI_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// 14. The CLI end to end: exit codes and byte-identical repeat runs.
void cli(Tally& t) {
    const auto dir = std::filesystem::temp_directory_path() / "viviani_acceptance";
    std::filesystem::create_directories(dir);
    const std::string svg_a = (dir / "a.svg").string(), svg_b = (dir / "b.svg").string();
    const struct {
        std::string args;
        int code;
    } cases[] = {
        {"check " + quote(fixture("pentagon.json")), 0},
        {"check " + quote(fixture("shifted_pentagon_lines.json")), 0},
        {"check " + quote(fixture("right_triangle.json")), 1},
        {"sample " + quote(fixture("cube.json")) + " --count 100 --seed 7", 0},
        {"sample " + quote(fixture("right_triangle.json")) + " --count 100 --seed 3 --box 0,4", 0},
        {"median " + quote(fixture("square_corners.json")), 0},
        {"median " + quote(fixture("obtuse_points.json")), 0},
        {"dualize " + quote(fixture("triangle_points.json")), 0},
        {"dualize " + quote(fixture("obtuse_points.json")), 3},
        {"project " + quote(fixture("equilateral_triangle.json")) + " --point 0.1,0.2", 0},
        {"project " + quote(fixture("right_triangle.json")) + " --point 1,1", 3},
        {"generate equiangular 2,1,2,1", 0},
        {"generate platonic dodecahedron", 0},
        {"generate example5 1", 0},
        {"generate equiangular 1,1,2", 3},
        {"value " + quote(fixture("cube.json")) + " --point 1,2", 3},
        {"check " + quote(fixture("triangle_points.json")), 3},
        {"check " + quote((dir / "missing.json").string()), 2},
        {"frobnicate", 2},
    };
    for (const auto& c : cases) {
        const Process a = run_cli(c.args), b = run_cli(c.args);
        t.expect(a.code == c.code, c.args + ": exit " + std::to_string(a.code) + ", expected " + std::to_string(c.code));
        t.expect(a.code == b.code && a.out == b.out, c.args + ": output differs between runs");
        if (c.code == 0) t.expect(!a.out.empty(), c.args + ": no output");
    }

    // documented values from the example invocations
    const Process cube = run_cli("sample " + quote(fixture("cube.json")) + " --count 100 --seed 7");
    t.expect(cube.out.find("min: 3\n") != std::string::npos && cube.out.find("max: 3\n") != std::string::npos,
             "sample cube: min/max not 3");
    const Process pent = run_cli("check " + quote(fixture("pentagon.json")));
    const auto at = pent.out.find("defect: ");
    t.expect(at != std::string::npos && std::stod(pent.out.substr(at + 8)) <= 1e-12, "check pentagon: defect");
    const Process sq = run_cli("median " + quote(fixture("square_corners.json")));
    try {
        const auto j = nlohmann::json::parse(sq.out);
        t.expect(std::hypot(j["point"][0].get<double>(), j["point"][1].get<double>()) <= 1e-12 &&
                     std::abs(j["objective"].get<double>() - 4.0 * std::sqrt(2.0)) <= 1e-12,
                 "median square_corners: not (0,0) with objective 4*sqrt2");
    } catch (const std::exception& e) {
        t.expect(false, std::string("median output is not JSON: ") + e.what());
    }

    for (const char* f : {"pentagon.json", "shifted_pentagon_lines.json", "triangle_points.json"}) {
        std::filesystem::remove(svg_a);
        std::filesystem::remove(svg_b);
        const Process a = run_cli("plot " + quote(fixture(f)) + " --out " + quote(svg_a));
        const Process b = run_cli("plot " + quote(fixture(f)) + " --out " + quote(svg_b));
        t.expect(a.code == 0 && b.code == 0, std::string("plot ") + f + ": exit code");
        const std::string sa = slurp(svg_a);
        t.expect(!sa.empty() && sa == slurp(svg_b), std::string("plot ") + f + ": SVG differs between runs");
    }
    t.expect(run_cli("plot " + quote(fixture("cube.json")) + " --out " + quote(svg_a)).code == 3, "plot 3-D: exit code");
}

}  // namespace

int main() {
    std::vector<std::pair<PointSet, MedianResult>> interior;
    const std::vector<std::pair<std::string, std::function<void(Tally&)>>> criteria = {
        {"v is constant for 500 random balanced hyperplane sets", constant_when_balanced},
        {"unit step along the level-set direction changes v by -defect (500 sets)", gradient_is_minus_normal_sum},
        {"triangles: Viviani iff equilateral (1000 cases)", triangles},
        {"quadrilaterals: Viviani iff parallelogram (1000 cases)", quadrilaterals},
        {"equiangular polygons k=3..12 have defect <= 1e-9 (50 cases)", equiangular},
        {"Platonic solids: unit normals, defect <= 1e-12", platonic},
        {"tetrahedron family: unit normals, defect <= 1e-12, t=pi/2 normals", example5},
        {"median <= grid oracle + 1e-6, non-increasing objective (200 cases)",
         [&](Tally& t) { median_oracle(t, interior); }},
        {"interior optima: |direction sum| <= k*1e-8", [&](Tally& t) { certificate(t, interior); }},
        {"Fermat/Viviani round trip and challenger inequality (100 cases)", round_trip},
        {"regular polygons: interior sum = k*apothem, exterior sum larger", regular_polygons},
        {"spoke points: median at the center within 1e-6*R (100 cases)", spokes},
        {"fixture constants: cube 3, triangle sqrt3, tetrahedron 4", constants},
        {"CLI end to end: exit codes and byte-identical output", cli},
    };

    const auto start = std::chrono::steady_clock::now();
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Tally t;
        try {
            criteria[i].second(t);
        } catch (const std::exception& e) {
            t.expect(false, std::string("exception: ") + e.what());
        }
        const bool ok = t.failures == 0 && t.checks > 0;
        failed += ok ? 0 : 1;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first << " (" << t.checks
                  << " checks";
        if (!ok) std::cout << ", " << t.failures << " failed; first: " << t.first;
        std::cout << ")\n";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << " in "
              << std::fixed << std::setprecision(2) << seconds << " s\n";
    return failed == 0 ? 0 : 1;
}
