#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "altnu/paths.hpp"

namespace altnu {

struct Point {
    int x = 0;
    int y = 0;
    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

// Lattice points L_{delta,nu}: row y (0..n) holds x in [L(y), R(y)], where R
// follows the check path and L the hat path. Box row y (0..n-1) holds the
// unit boxes with lower-left corner (c, y), c in [L(y), R(y)).
class Region {
public:
    Region(const NEPath& nu, const IncrementVector& delta);

    const NEPath& nu() const { return nu_; }
    const IncrementVector& delta() const { return delta_; }
    int n() const { return nu_.n(); }
    int width() const { return W_; }
    int left(int y) const { return L_[y]; }
    int right(int y) const { return R_[y]; }

    bool contains(Point p) const;
    std::vector<Point> points() const;  // by x, then y
    int stride() const { return W_ + 1; }
    int index(Point p) const { return p.y * (W_ + 1) + p.x; }
    Point point(int idx) const { return {idx % (W_ + 1), idx / (W_ + 1)}; }
    int index_capacity() const { return (nu_.n() + 1) * (W_ + 1); }

    // nu-check incompatibility: p strictly SW or NE of q and the bounding
    // rectangle lies inside F_{nu-check}, i.e. its lower-right corner is
    // weakly left of the check path.
    bool incompatible(Point p, Point q) const;

    // Boxes: lattice box (c, y) <-> shape box (row n - y, column c - L(n-1) + 1).
    const Shape& shape() const { return shape_; }
    bool has_box(int c, int y) const { return y >= 0 && y < nu_.n() && L_[y] <= c && c < R_[y]; }
    Box shape_box(int c, int y) const;
    std::pair<int, int> lattice_box(Box b) const;  // (c, y)
    int box_id(int c, int y) const { return shape_.id(shape_box(c, y)); }

private:
    NEPath nu_;
    IncrementVector delta_;
    int W_ = 0;
    std::vector<int> L_, R_;
    Shape shape_;
};

// A (delta,nu)-tree: a maximal set of pairwise compatible points, kept sorted.
struct DeltaNuTree {
    std::vector<Point> nodes;
    friend bool operator==(const DeltaNuTree&, const DeltaNuTree&) = default;
    friend auto operator<=>(const DeltaNuTree&, const DeltaNuTree&) = default;
};

struct RotationWitness {
    Point p, q, q2, r;   // q is replaced by q2; p north (right rot.) / west, r east / south
    int box = -1;        // shape id of the bottom-right box of the rectangle
};

bool nu_check_incompatible(Point p, Point q, const Region& reg);
bool is_tree(const DeltaNuTree& t, const Region& reg);

std::vector<DeltaNuTree> enumerate_trees(const Region& reg, std::size_t cap = 1000000);
std::vector<std::pair<DeltaNuTree, RotationWitness>> right_rotations(const DeltaNuTree& t, const Region& reg);
std::vector<std::pair<DeltaNuTree, RotationWitness>> left_rotations(const DeltaNuTree& t, const Region& reg);

DeltaNuTree bottom_tree(const Region& reg);
// theta: the tree whose down-cover labels are exactly the given boxes.
DeltaNuTree theta(const Region& reg, const std::vector<Box>& boxes);
// Join-irreducible tree attached to a box.
DeltaNuTree join_irreducible_tree_for_box(const Region& reg, Box b);

// Binary-tree structure: parent = next node north, else next node west.
struct TreeStructure {
    std::vector<int> parent, left, right;  // left = child below, right = child to the east
    int root = -1;
};
TreeStructure tree_structure(const DeltaNuTree& t);

std::vector<int> bracket_vector(const DeltaNuTree& t, const Region& reg);
std::vector<int> meet_by_brackets(const std::vector<int>& a, const std::vector<int>& b);

// Label of the cover t < t2 (checked to be a right rotation).
int perspective_label(const DeltaNuTree& t, const DeltaNuTree& t2, const Region& reg);

std::string tree_to_json(const DeltaNuTree& t, const Region& reg);
std::string tree_to_dot(const DeltaNuTree& t);

}  // namespace altnu
