#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace altnu {

// Faces are bit masks over a ground set of at most 64 vertices.
using Face = std::uint64_t;

inline int face_size(Face f) { return __builtin_popcountll(f); }
inline bool is_subset(Face a, Face b) { return (a & ~b) == 0; }
std::vector<int> face_vertices(Face f);
Face face_of(const std::vector<int>& vs);

// Keeps the inclusion-maximal members, sorted by (size desc, value asc).
std::vector<Face> maximal_faces(std::vector<Face> faces);

class SimplicialComplex {
public:
    static constexpr int kMaxVertices = 64;

    SimplicialComplex() = default;  // the void complex (no faces)
    SimplicialComplex(int ground, std::vector<Face> generators);

    int ground_size() const { return ground_; }
    const std::vector<Face>& facets() const { return facets_; }
    bool is_void() const { return facets_.empty(); }
    bool contains(Face f) const;
    int dimension() const;  // -1 for {emptyset}
    Face vertex_set() const;
    // All faces including the empty face, ordered by size, then value.
    std::vector<Face> faces() const;
    std::size_t face_count() const;

    std::vector<std::string> names;  // optional vertex names

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.facets_ == b.facets_;
    }

private:
    int ground_ = 0;
    std::vector<Face> facets_;
};

std::vector<std::int64_t> f_vector(const SimplicialComplex& d);  // (f_0, ..., f_dim)
std::int64_t euler(const SimplicialComplex& d);
std::int64_t euler_reduced(const SimplicialComplex& d);

SimplicialComplex link(const SimplicialComplex& d, Face f);
SimplicialComplex deletion(const SimplicialComplex& d, Face f);
SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b);  // b shifted past a
SimplicialComplex induced(const SimplicialComplex& d, Face vertices);

struct VDNode {
    std::vector<Face> facets;
    int vertex = -1;  // -1: simplex leaf
    std::shared_ptr<const VDNode> link, deletion;
};

struct VDResult {
    bool decomposable = false;
    std::shared_ptr<const VDNode> certificate;
    std::size_t explored = 0;
};

// Hinted vertices are tried first (in the given order), then the rest by index.
VDResult is_vertex_decomposable(const SimplicialComplex& d, const std::vector<int>& hint = {},
                                std::size_t budget = 50000000);
// Re-derives link and deletion at every node and checks both conditions.
bool replay_certificate(const VDNode& node, std::string* why = nullptr);
// Shelling read off a certificate: shell(deletion), then v * shell(link).
std::vector<Face> shelling_from_certificate(const VDNode& node);

// Reduced Betti numbers over GF(2), index k+1 holds dimension k (k >= -1).
std::vector<std::int64_t> reduced_betti_gf2(const SimplicialComplex& d);
std::vector<std::int64_t> reduced_betti_rational(const SimplicialComplex& d);
// (beta_0, ..., beta_top) with beta_0 the number of components, trailing zeros dropped.
std::vector<std::int64_t> betti_from_reduced(const std::vector<std::int64_t>& reduced);
std::vector<std::int64_t> betti_gf2(const SimplicialComplex& d);
std::vector<std::int64_t> betti_rational(const SimplicialComplex& d);

// Vertex bijection (indexed by vertices of a; -1 for unused) mapping facets
// onto facets, if one exists.
std::optional<std::vector<int>> find_isomorphism(const SimplicialComplex& a, const SimplicialComplex& b);

std::string complex_to_facet_list(const SimplicialComplex& d);
std::string complex_to_json(const SimplicialComplex& d);

}  // namespace altnu
