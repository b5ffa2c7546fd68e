#include <doctest.h>

#include <random>

#include "altnu/boxcomplex.hpp"
#include "altnu/complex.hpp"
#include "altnu/error.hpp"
#include "altnu/shelling.hpp"
#include "oracle.hpp"

using namespace altnu;

namespace {

SimplicialComplex simplex(int k) { return SimplicialComplex(k, {(Face{1} << k) - 1}); }

SimplicialComplex triangle_boundary() { return SimplicialComplex(3, {0b011, 0b101, 0b110}); }

SimplicialComplex random_complex(std::mt19937& rng, int vertices, int facets, int max_size) {
    std::vector<Face> gens;
    for (int i = 0; i < facets; ++i) {
        Face f = 0;
        const int size = 1 + static_cast<int>(rng() % max_size);
        while (face_size(f) < size) f |= Face{1} << (rng() % vertices);
        gens.push_back(f);
    }
    return SimplicialComplex(vertices, gens);
}

}  // namespace

TEST_SUITE_BEGIN("complex");

TEST_CASE("faces and f-vectors") {
    CHECK(f_vector(simplex(3)) == std::vector<std::int64_t>{3, 3, 1});
    CHECK(simplex(3).face_count() == 8);
    CHECK(simplex(3).dimension() == 2);
    CHECK(SimplicialComplex(4, {0b0011, 0b0001, 0b0111}).facets() == std::vector<Face>{0b0111});
    CHECK(maximal_faces({0b1, 0b11, 0b100, 0b11}) == std::vector<Face>{0b11, 0b100});
    SimplicialComplex empty_face(0, {0});
    CHECK(empty_face.dimension() == -1);
    CHECK(empty_face.face_count() == 1);
    SimplicialComplex none;
    CHECK(none.is_void());
    CHECK(none.face_count() == 0);
    CHECK_THROWS_AS(SimplicialComplex(2, {0b100}), Error);
    CHECK_THROWS_AS(SimplicialComplex(65, {}), Error);
    CHECK(face_of({0, 2}) == 0b101);
    CHECK(face_vertices(0b1010) == std::vector<int>{1, 3});
}

TEST_CASE("euler characteristic") {
    SimplicialComplex point(1, {1});
    CHECK(euler(point) == 1);
    CHECK(euler_reduced(point) == 0);
    CHECK(euler(triangle_boundary()) == 0);
    // staircase shapes of Tam_4 (delta = nu) and Dyck_4 (delta = 0)
    auto tam = box_complex(shape_from(uniform_path(1, 4), {1, 1, 1, 1}));
    auto dyck = box_complex(shape_from(uniform_path(1, 4), {0, 0, 0, 0}));
    CHECK(f_vector(tam) == std::vector<std::int64_t>{6, 6, 1});
    CHECK(f_vector(dyck) == std::vector<std::int64_t>{6, 6, 1});
    CHECK(euler(tam) == 1);
    CHECK(euler(dyck) == 1);
}

TEST_CASE("link, deletion, join, induced") {
    auto l = link(triangle_boundary(), 0b001);
    CHECK(l.facets() == std::vector<Face>{0b010, 0b100});
    auto del = deletion(simplex(3), 0b001);
    CHECK(del.facets() == std::vector<Face>{0b110});
    auto tet = join(SimplicialComplex(2, {0b11}), SimplicialComplex(2, {0b11}));
    CHECK(tet.facets() == std::vector<Face>{0b1111});
    CHECK(tet.ground_size() == 4);
    auto ind = induced(triangle_boundary(), 0b011);
    CHECK(ind.facets() == std::vector<Face>{0b011});
    CHECK(link(simplex(3), 0b111).facets() == std::vector<Face>{0});
    CHECK_THROWS_AS(link(triangle_boundary(), 0b111), Error);

    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
        auto d = random_complex(rng, 8, 1 + rng() % 6, 4);
        auto check_antichain = [](const SimplicialComplex& c) {
            for (Face a : c.facets())
                for (Face b : c.facets())
                    if (a != b) CHECK_FALSE(is_subset(a, b));
        };
        for (int v : face_vertices(d.vertex_set())) {
            const Face f = Face{1} << v;
            auto lk = link(d, f);
            auto dl = deletion(d, f);
            check_antichain(lk);
            check_antichain(dl);
            for (Face g : d.faces()) {
                CHECK(lk.contains(g) == (!(g & f) && d.contains(g | f)));
                CHECK(dl.contains(g) == !(g & f));
            }
        }
    }
}

TEST_CASE("vertex decomposability") {
    auto r = is_vertex_decomposable(simplex(4));
    CHECK(r.decomposable);
    CHECK(r.certificate->vertex == -1);
    auto two = SimplicialComplex(2, {0b01, 0b10});
    CHECK(is_vertex_decomposable(two).decomposable);
    // two disjoint edges are not even shellable
    CHECK_FALSE(is_vertex_decomposable(SimplicialComplex(4, {0b0011, 0b1100})).decomposable);
    CHECK(is_vertex_decomposable(triangle_boundary()).decomposable);

    auto a = box_complex(Shape({2, 3, 1}));
    auto b = triangle_boundary();
    auto ra = is_vertex_decomposable(a), rb = is_vertex_decomposable(b);
    REQUIRE((ra.decomposable && rb.decomposable));
    auto rj = is_vertex_decomposable(join(a, b));
    REQUIRE(rj.decomposable);
    std::string why;
    CHECK(replay_certificate(*rj.certificate, &why));
    auto order = shelling_from_certificate(*rj.certificate);
    CHECK(order.size() == join(a, b).facets().size());
    CHECK(is_valid_shelling(order));
}

TEST_CASE("a forged certificate fails replay") {
    auto d = triangle_boundary();
    auto r = is_vertex_decomposable(d);
    REQUIRE(r.decomposable);
    auto bad = std::make_shared<VDNode>(*r.certificate);
    bad->facets = {0b111};
    CHECK_FALSE(replay_certificate(*bad));
}

TEST_CASE("betti numbers") {
    CHECK(betti_gf2(triangle_boundary()) == std::vector<std::int64_t>{1, 1});
    CHECK(betti_gf2(simplex(3)) == std::vector<std::int64_t>{1});
    CHECK(betti_gf2(SimplicialComplex(2, {0b01, 0b10})) == std::vector<std::int64_t>{2});
    CHECK(betti_gf2(SimplicialComplex(0, {0})) == std::vector<std::int64_t>{0});
    auto dyck4 = box_complex(shape_from(uniform_path(1, 4), {0, 0, 0, 0}));
    CHECK(betti_gf2(dyck4) == std::vector<std::int64_t>{2, 1});
    auto tam34 = box_complex(shape_from(uniform_path(3, 4), {3, 3, 3, 3}));
    CHECK(betti_gf2(tam34) == std::vector<std::int64_t>{1, 8, 14});
    CHECK(betti_rational(tam34) == std::vector<std::int64_t>{1, 8, 14});
    // RP^2 (6 vertices): GF(2) sees H_1 and H_2, the rationals do not
    SimplicialComplex rp2(6, {face_of({0, 1, 2}), face_of({0, 2, 3}), face_of({0, 3, 4}), face_of({0, 4, 5}),
                              face_of({0, 1, 5}), face_of({1, 2, 4}), face_of({2, 3, 5}), face_of({1, 3, 4}),
                              face_of({2, 4, 5}), face_of({1, 3, 5})});
    CHECK(betti_gf2(rp2) == std::vector<std::int64_t>{1, 1, 1});
    CHECK(betti_rational(rp2) == std::vector<std::int64_t>{1});
}

TEST_CASE("homology against a dense oracle") {
    std::mt19937 rng(3);
    for (int t = 0; t < 150; ++t) {
        auto d = random_complex(rng, 9, 1 + rng() % 9, 5);
        auto ref = oracle::reduced_betti(d.faces());
        auto got = reduced_betti_gf2(d);
        ref.resize(std::max(ref.size(), got.size()), 0);
        got.resize(ref.size(), 0);
        CHECK(got == ref);
        auto b = betti_gf2(d);
        std::int64_t alt = 0;
        for (std::size_t k = 0; k < b.size(); ++k) alt += (k % 2 ? -1 : 1) * b[k];
        CHECK(alt == euler(d));
    }
}

TEST_CASE("isomorphism search") {
    auto a = box_complex(Shape({3, 2, 1}));
    auto b = box_complex(Shape({1, 3, 2}));
    auto iso = find_isomorphism(a, b);
    REQUIRE(iso);
    for (Face f : a.facets()) {
        Face g = 0;
        for (int v : face_vertices(f)) g |= Face{1} << (*iso)[v];
        CHECK(b.contains(g));
    }
    CHECK_FALSE(find_isomorphism(a, box_complex(Shape({2, 2, 2}))));
}

TEST_CASE("text formats") {
    auto d = triangle_boundary();
    CHECK(complex_to_facet_list(d) == "0 1\n0 2\n1 2\n");
    auto js = complex_to_json(d);
    CHECK(js.find("\"schema\":1") != std::string::npos);
    CHECK(js.find("\"facets\"") != std::string::npos);
}

TEST_SUITE_END();
