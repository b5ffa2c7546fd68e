#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "altnu/complex.hpp"
#include "altnu/lattice.hpp"
#include "altnu/paths.hpp"
#include "altnu/trees.hpp"

namespace altnu {

// Vertex i of a box complex is the box with shape id i.
bool boxes_incompatible(Box a, Box b, const Shape& shape);
// Same predicate for an arbitrary finite set of cells (e.g. a transposed shape).
bool cells_incompatible(Box a, Box b, const std::vector<Box>& cells);

// compat[i] = boxes compatible with box i (excluding i). Needs <= 64 boxes.
std::vector<std::uint64_t> compatibility_masks(const Shape& shape);
std::vector<std::uint64_t> compatibility_masks(const std::vector<Box>& cells);

SimplicialComplex box_complex(const Shape& shape);
SimplicialComplex box_complex(const std::vector<Box>& cells);
// Cells with u_i boxes in row i, left-aligned.
std::vector<Box> transposed_cells(const std::vector<int>& u);
std::vector<Box> shape_cells(const std::vector<int>& u);

// Calls f(face) for every face of the flag complex given by compat masks,
// including the empty face.
void for_each_clique(const std::vector<std::uint64_t>& compat, const std::function<void(Face)>& f);

Face face_of(const std::vector<Box>& boxes, const Shape& shape);
std::vector<Box> boxes_of(Face f, const Shape& shape);

struct LinkSplit {
    std::vector<int> u_plus, u_minus;
    std::vector<Box> plus_to_u;   // indexed by shape id in F_{u+}
    std::vector<Box> minus_to_u;  // indexed by shape id in F_{u-}
    int i_star = 0;
    // link(b) equals join(Delta_{u+}, Delta_{u-}) through the embeddings.
    bool exact = false;
};

LinkSplit link_split(const Shape& shape, Box b);

struct Decomposition {
    std::vector<Box> q;                 // q_1, ..., q_n
    std::vector<std::vector<Box>> v;    // v[i]: boxes sharing a row or column with q_{i+1}, q excluded
    std::vector<int> label;             // by shape id, 1-based
};

// q_1 is the rightmost bottom box; each next q is the rightmost box in the
// next row up compatible with all q's below. Rows without one are skipped.
Decomposition decomposing_vertices(const Shape& shape);
std::vector<Box> q_boxes(const Shape& shape);

// Shape of the complex left after deleting v_1..v_k of q_1 (q_1 becomes a cone point).
std::vector<int> deletion_shape(const Shape& shape);

// The alternative nu-Tamari lattice as an explicit lattice of trees.
struct AltTamari {
    Region region;
    std::vector<DeltaNuTree> trees;   // element i
    FiniteLattice lattice;
    std::vector<int> cover_box;       // shape id labelling lattice.covers()[k]
    std::vector<int> ji_box;          // shape id of join-irreducible index j

    int box_label(int x, int y) const;
};

AltTamari build_alt_tamari(const NEPath& nu, const IncrementVector& delta, std::size_t max_elements = 20000);

// Boxes of a canonical join representation (given as lattice elements).
std::vector<Box> tau(const AltTamari& t, const std::vector<int>& face);
// Placement rule; needs a shape carrying (nu, delta).
DeltaNuTree theta(const Shape& shape, const std::vector<Box>& boxes);

std::string render_ascii(const Shape& shape, const std::vector<Box>& marked = {});
std::string shape_to_json(const Shape& shape, const std::vector<Box>& marked = {});

}  // namespace altnu
