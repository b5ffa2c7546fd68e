// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <string>

#include "altnu/boxcomplex.hpp"
#include "altnu/shelling.hpp"
#include "altnu/sweep.hpp"
#include "altnu/table1.hpp"
#include "oracle.hpp"

using namespace altnu;

namespace {

// Wall-clock limits in seconds.
constexpr double kTable1Limit = 600, kIsoLimit = 300, kVDLimit = 300;

int failures = 0;
std::map<int, std::string> lines;  // printed in criterion order at the end

void report(int id, const char* name, bool ok, const std::string& detail) {
    if (!ok) ++failures;
    char head[64];
    std::snprintf(head, sizeof head, "[%s] %2d %-22s ", ok ? "PASS" : "FAIL", id, name);
    lines[id] = head + detail;
    std::fprintf(stderr, "%s\n", lines[id].c_str());
}

double since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string secs(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f s", s);
    return buf;
}

std::string secs(double s, double limit) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " (limit %.0f s)", limit);
    return secs(s) + buf;
}

void table1() {
    const auto t = std::chrono::steady_clock::now();
    Table1Options opt;
    opt.slow = true;
    std::size_t rows = 0, bad = 0;
    for (const auto& r : compute_table1(opt)) {
        ++rows;
        if (r.skipped || r.gf2 != r.golden || r.shelling != r.golden) ++bad;
    }
    const double s = since(t);
    report(1, "table1", bad == 0 && s <= kTable1Limit,
           std::to_string(rows) + " rows, " + std::to_string(bad) + " mismatches, " + secs(s, kTable1Limit));
}

void vertex_decomposability() {
    const auto t = std::chrono::steady_clock::now();
    std::size_t shapes = 0, bad = 0, explored = 0;
    for (int boxes = 1; boxes <= 12; ++boxes)
        for (const auto& u : oracle::unimodal(boxes)) {
            ++shapes;
            const Shape sh(u);
            auto hint = vertex_insertion_order(sh);
            std::reverse(hint.begin(), hint.end());
            const VDResult r = is_vertex_decomposable(box_complex(sh), hint);
            explored += r.explored;
            if (!r.decomposable || !replay_certificate(*r.certificate)) ++bad;
        }
    const double s = since(t);
    report(3, "vertex-decomposable", bad == 0 && s <= kVDLimit,
           std::to_string(shapes) + " shapes, " + std::to_string(bad) + " failures, " + std::to_string(explored) +
               " nodes explored, " + secs(s, kVDLimit));
}

void sweep() {
    SweepOptions o;
    o.max_north = 5;
    o.max_run = 3;
    const SweepReport r = run_sweep(o);
    const std::string scope = std::to_string(r.lattices) + " lattices, " + std::to_string(r.elements) + " elements";
    report(2, "isomorphism", r.iso_failures == 0 && r.iso_seconds <= kIsoLimit,
           scope + ", " + std::to_string(r.iso_failures) + " failures, " + secs(r.iso_seconds, kIsoLimit));
    report(4, "euler-reciprocity", r.euler_failures == 0, std::to_string(r.euler_failures) + " failures");
    report(5, "narayana-f-vector", r.narayana_failures == 0, std::to_string(r.narayana_failures) + " failures");
    report(6, "f-vector-invariance", r.fvector_failures == 0, std::to_string(r.fvector_failures) + " failures");
    report(8, "homology-cross-check", r.homology_failures == 0,
           std::to_string(r.shapes) + " complexes, " + std::to_string(r.homology_failures) + " failures, " +
               secs(r.homology_seconds));
    report(9, "perspective-lambda", r.lambda_failures == 0,
           std::to_string(r.covers) + " covers (" + std::to_string(r.explicit_lattices) +
               " lattices also by filters), " + std::to_string(r.lambda_failures) + " failures");
    for (const auto& m : r.messages) lines[2] += "\n       " + m;
}

void top_spheres() {
    std::size_t cases = 0, bad = 0;
    std::string detail;
    for (int m = 2; m <= 4; ++m)
        for (int n = 2; n <= 5; ++n) {
            const NEPath nu = uniform_path(m, n);
            const std::uint64_t fc = fuss_catalan(m, n), paths = count_nu_dyck(shrunken_path(nu));
            std::map<std::vector<int>, std::size_t> by_shape;
            std::set<std::size_t> counts;
            for (const auto& d : all_deltas(nu)) {
                const Shape sh = shape_from(nu, d);
                auto [it, fresh] = by_shape.emplace(sh.u, 0);
                if (fresh) {
                    const ShellingOrder so = shelling_order(sh);
                    for (int j : homology_facets(so)) it->second += face_size(so.facets[j]) == n - 1;
                }
                counts.insert(it->second);
            }
            ++cases;
            const bool ok = counts.size() == 1 && *counts.begin() == fc && paths == fc;
            if (!ok) {
                ++bad;
                detail += " m=" + std::to_string(m) + ",n=" + std::to_string(n);
            }
        }
    report(7, "top-homology-spheres", bad == 0,
           std::to_string(cases) + " (m,n), all delta, " + std::to_string(bad) + " failures" + detail);
}

void goldens() {
    std::string miss;
    const Shape ex({6, 6, 7, 8, 8, 9, 10, 10, 10, 10, 10, 8, 5, 5, 4});
    const LinkSplit sp = link_split(ex, {6, 10});
    if (sp.u_plus != std::vector<int>{5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 4} || sp.u_minus != std::vector<int>{4, 2})
        miss += " split";
    if (deletion_shape(ex) != std::vector<int>{6, 6, 7, 8, 8, 9, 9, 9, 9, 9, 8, 5, 5, 4}) miss += " deletion";
    const Shape s = shape_from(NEPath({3, 4, 2, 1}), {1, 2, 0});
    if (boxes_of(facet_from_a({2, 4, 3}, s), s) != std::vector<Box>{{1, 3}, {2, 4}, {3, 5}}) miss += " a-facet";
    if (!find_isomorphism(box_complex(Shape({3, 2, 1})), box_complex(Shape({1, 3, 2})))) miss += " iso";
    report(10, "worked-examples", miss.empty(), miss.empty() ? "split, deletion, a-facet, isomorphism" : "wrong:" + miss);
}

}  // namespace

int main() {
    table1();
    vertex_decomposability();
    top_spheres();
    goldens();
    sweep();
    for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
    std::printf("%s\n", failures ? "ACCEPTANCE FAILED" : "all criteria pass");
    return failures ? 1 : 0;
}
