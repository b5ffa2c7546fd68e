#include <doctest.h>

#include <optional>
#include <set>
#include <stdexcept>

#include "altnu/boxcomplex.hpp"
#include "altnu/error.hpp"
#include "altnu/shelling.hpp"
#include "altnu/sweep.hpp"
#include "oracle.hpp"

using namespace altnu;

namespace {

// Ridge purity straight from the definition: the maximal faces of
// F_j ∩ (F_0 ∪ ... ∪ F_{j-1}) all have |F_j| - 1 vertices.
bool oracle_shelling(const std::vector<Face>& order) {
    for (std::size_t j = 1; j < order.size(); ++j) {
        std::vector<Face> meets;
        for (std::size_t k = 0; k < j; ++k) meets.push_back(order[j] & order[k]);
        for (Face a : meets) {
            bool maximal = true;
            for (Face b : meets) maximal = maximal && !(a != b && is_subset(a, b));
            if (maximal && face_size(a) != face_size(order[j]) - 1) return false;
        }
    }
    return true;
}

// a-sequence realisation by the compatibility predicate alone.
std::vector<Box> oracle_facet(const std::vector<int>& a, const std::vector<int>& u) {
    const int rows = *std::max_element(u.begin(), u.end());
    std::vector<Box> chosen;
    for (int i = 0; i < rows; ++i) {
        const int r = rows - i;
        std::vector<Box> cand;
        for (int c = 1; c <= static_cast<int>(u.size()); ++c) {
            if (u[c - 1] < r) continue;
            bool ok = true;
            for (Box b : chosen) ok = ok && !oracle::box_incompatible({r, c}, b, u);
            if (ok) cand.push_back({r, c});
        }
        if (a[i]) chosen.push_back(cand.at(a[i] - 1));
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

int top_size(const ShellingOrder& so) {
    int top = 0;
    for (Face f : so.facets) top = std::max(top, face_size(f));
    return top;
}

std::set<Face> top_homology(const ShellingOrder& so) {
    std::set<Face> out;
    const int top = top_size(so);
    for (int j : homology_facets(so))
        if (face_size(so.facets[j]) == top) out.insert(so.facets[j]);
    return out;
}

std::vector<Box> sorted_boxes(Face f, const Shape& s) {
    auto b = boxes_of(f, s);
    std::sort(b.begin(), b.end());
    return b;
}

}  // namespace

TEST_SUITE_BEGIN("shelling");

TEST_CASE("labels") {
    for (int l : label_boxes(Shape({1, 1, 1}))) CHECK(l == 1);
    for (int t = 1; t <= 10; ++t)
        for (const auto& u : oracle::unimodal(t)) {
            Shape s(u);
            auto dec = decomposing_vertices(s);
            const int n = static_cast<int>(dec.q.size());
            auto lab = label_boxes(s);
            for (int i = 1; i <= n; ++i) CHECK(lab[s.id(dec.q[i - 1])] == i);
            for (int v = 0; v < s.box_count(); ++v) {
                REQUIRE((lab[v] >= 1 && lab[v] <= n));
                const Box b = s.box(v), q = dec.q[lab[v] - 1];
                CHECK((b.r == q.r || b.c == q.c));
            }
        }
    // class sizes depend on nu only
    for (int n = 1; n <= 3; ++n)
        for (const NEPath& nu : all_paths(n, 3, true)) {
            std::vector<int> ref;
            for (const auto& d : all_deltas(nu)) {
                std::vector<int> cls(n + 1, 0);
                for (int l : label_boxes(shape_from(nu, d))) ++cls[l];
                if (ref.empty()) ref = cls;
                CHECK(cls == ref);
            }
        }
}

TEST_CASE("shellings are valid in both modes") {
    auto small = shelling_order(Shape({1, 2, 1}));
    CHECK(small.facets.size() == 3);  // {(1,1),(2,2)}, {(1,3),(2,2)}, {(1,2)}
    CHECK(oracle_shelling(small.facets));

    for (int t = 1; t <= 10; ++t)
        for (const auto& u : oracle::unimodal(t)) {
            Shape s(u);
            CAPTURE(to_string(u));
            const auto cx = box_complex(s);
            std::vector<Face> facets = cx.facets();
            std::sort(facets.begin(), facets.end());
            const auto gf2 = betti_gf2(cx);
            for (auto mode : {ShellingMode::Refined, ShellingMode::Plain}) {
                auto so = shelling_order(s, mode);
                CHECK(so.facets.front() == face_of(decomposing_vertices(s).q, s));
                CHECK(oracle_shelling(so.facets));
                CHECK(is_valid_shelling(so.facets));
                auto sorted = so.facets;
                std::sort(sorted.begin(), sorted.end());
                CHECK(sorted == facets);
                CHECK(betti_via_shelling(so) == gf2);
                if (so.facets.size() > 1 && face_size(so.facets[1]) > 1)
                    CHECK(face_size(so.restriction[1]) < face_size(so.facets[1]));
                for (int j : homology_facets(so)) CHECK(so.restriction[j] == so.facets[j]);
            }
        }
}

TEST_CASE("size rearrangement") {
    for (int t = 1; t <= 8; ++t)
        for (const auto& u : oracle::unimodal(t)) {
            auto so = shelling_order(Shape(u), ShellingMode::Refined, true);
            for (std::size_t j = 1; j < so.facets.size(); ++j)
                CHECK(face_size(so.facets[j - 1]) >= face_size(so.facets[j]));
            CHECK(oracle_shelling(so.facets));
        }
}

TEST_CASE("restriction sets and validation") {
    // two triangles sharing an edge, then a third meeting them in two points
    std::vector<Face> order{0b00111, 0b01110, 0b11001};
    CHECK_FALSE(is_valid_shelling(order));
    CHECK_FALSE(oracle_shelling(order));
    std::string why;
    CHECK_FALSE(is_valid_shelling({0b011, 0b001}, &why));
    CHECK(why.find("nested") != std::string::npos);
    auto r = restriction_sets({0b011, 0b110, 0b101});
    CHECK(r == std::vector<Face>{0, 0b100, 0b101});
    CHECK(betti_via_shelling({0b011, 0b110, 0b101}) == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("Betti numbers of uniform paths") {
    auto tam23 = shape_from(uniform_path(2, 3), {2, 2, 2});
    CHECK(betti_via_shelling(shelling_order(tam23)) == std::vector<std::int64_t>{2, 1});
    auto dyck44 = shape_from(uniform_path(4, 4), {0, 0, 0, 0});
    CHECK(betti_via_shelling(shelling_order(dyck44)) == std::vector<std::int64_t>{2, 13, 55});
}

TEST_CASE("a-sequences") {
    const NEPath nu({3, 4, 2, 1});
    const Shape s = shape_from(nu, {1, 2, 0});
    const Face f = facet_from_a({2, 4, 3}, s);
    const std::vector<Box> expect{{1, 3}, {2, 4}, {3, 5}};
    CHECK(oracle_facet({2, 4, 3}, s.u) == expect);
    CHECK(sorted_boxes(f, s) == expect);
    CHECK(a_sequence(f, s) == std::vector<int>{2, 4, 3});
    CHECK(top_homology(shelling_order(s)).count(f) == 1);

    for (int t = 1; t <= 9; ++t)
        for (const auto& u : oracle::unimodal(t)) {
            Shape sh(u);
            const auto cx = box_complex(sh);
            for (Face g : cx.facets()) {
                auto a = a_sequence(g, sh);
                CHECK(facet_from_a(a, sh) == g);
                CHECK(oracle_facet(a, u) == sorted_boxes(g, sh));
            }
            // all ones: in every row the leftmost box compatible with those below;
            // unrealizable exactly when some row has no such box or the result is not maximal
            std::vector<int> ones(sh.rows(), 1);
            std::optional<std::vector<Box>> mine, ref;
            try {
                mine = sorted_boxes(facet_from_a(ones, sh), sh);
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::UnrealizableSequence);
            }
            try {
                ref = oracle_facet(ones, u);
            } catch (const std::out_of_range&) {
            }
            bool maximal = ref.has_value();
            if (ref)
                for (Box b : oracle::boxes(u)) {
                    bool free = std::find(ref->begin(), ref->end(), b) == ref->end();
                    for (Box c : *ref) free = free && !oracle::box_incompatible(b, c, u);
                    maximal = maximal && !free;
                }
            CHECK(mine.has_value() == maximal);
            if (mine) CHECK(*mine == *ref);
        }
    CHECK_THROWS_AS(facet_from_a({2, 4}, s), Error);
    try {
        facet_from_a({2, 40, 3}, s);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnrealizableSequence);
    }
}

TEST_CASE("H is a bijection onto the top homology facets") {
    for (int m = 2; m <= 4; ++m)
        for (int n = 2; n <= 4; ++n) {
            const NEPath nu = uniform_path(m, n);
            const Shape s = shape_from(nu, IncrementVector(n, 0));
            auto so = shelling_order(s);
            std::set<Face> hom;
            for (int j : homology_facets(so))
                if (face_size(so.facets[j]) == n - 1) hom.insert(so.facets[j]);
            const auto paths = enumerate_nu_dyck(shrunken_path(nu));
            std::set<Face> image;
            for (const auto& p : paths) image.insert(h_map(p, nu));
            CAPTURE(m);
            CAPTURE(n);
            CHECK(image.size() == paths.size());
            CHECK(image == hom);
            CHECK(paths.size() == fuss_catalan(m, n));
        }
    // (NE^2)^n: a single top sphere
    CHECK(enumerate_nu_dyck(shrunken_path(uniform_path(2, 5))).size() == 1);
    CHECK_THROWS_AS(h_map(NEPath({0, 1}), NEPath({0, 1})), Error);
    CHECK_THROWS_AS(h_map(NEPath({0, 0, 0}), NEPath({1, 2, 2})), Error);
}

TEST_CASE("phi across increment vectors") {
    const NEPath nu({3, 4, 2, 1});
    const Shape s0 = shape_from(nu, {0, 0, 0}), s1 = shape_from(nu, {1, 2, 0}), s2 = shape_from(nu, {4, 2, 0});
    const auto h0 = top_homology(shelling_order(s0)), h1 = top_homology(shelling_order(s1)),
               h2 = top_homology(shelling_order(s2));
    CHECK(h0.size() == 16);
    const Face f = facet_from_a({2, 4, 3}, s1);
    CHECK(h0.count(phi_map(f, s1, s0)) == 1);
    CHECK(h2.count(phi_map(f, s1, s2)) == 1);
    CHECK(phi_map(f, s1, s1) == f);
    for (const auto* pair : {&h0, &h2}) {
        std::set<Face> image;
        const Shape& to = pair == &h0 ? s0 : s2;
        for (Face g : h1) image.insert(phi_map(g, s1, to));
        CHECK(image == *pair);
    }

    // top facets biject and top homology counts agree; lower Betti numbers may not
    for (int n = 2; n <= 3; ++n)
        for (const NEPath& v : all_paths(n, 3, true)) {
            bool inner = true;
            for (int i = 1; i < n; ++i) inner = inner && v.runs[i] >= 2;
            if (!inner) continue;
            const auto ds = all_deltas(v);
            const Shape from = shape_from(v, ds.front());
            const auto so = shelling_order(from);
            const int top = top_size(so);
            const auto hom = top_homology(so);
            for (const auto& d : ds) {
                const Shape to = shape_from(v, d);
                const auto st = shelling_order(to);
                std::set<Face> image, himage;
                std::size_t ntop = 0;
                for (Face g : st.facets) ntop += face_size(g) == top;
                for (Face g : so.facets)
                    if (face_size(g) == top) image.insert(phi_map(g, from, to));
                for (Face g : hom) himage.insert(phi_map(g, from, to));
                CHECK(image.size() == ntop);
                CHECK(himage == top_homology(st));
            }
        }
    CHECK_THROWS_AS(phi_map(0, shape_from(NEPath({0, 1, 3}), {0, 0}), shape_from(NEPath({0, 1, 3}), {1, 0})), Error);
}

TEST_CASE("shelling output") {
    const Shape s({1, 2, 1});
    auto so = shelling_order(s);
    const auto csv = shelling_to_csv(so, s);
    CHECK(csv.rfind("position,size,a_sequence,restriction_size,homology\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    const auto js = shelling_to_json(so, s);
    CHECK(js.find("\"schema\":1") != std::string::npos);
    CHECK(js.find("\"mode\":\"refined\"") != std::string::npos);
    CHECK(shelling_to_json(shelling_order(s), s) == js);
}

TEST_SUITE_END();
