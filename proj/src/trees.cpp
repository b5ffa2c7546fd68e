#include "altnu/trees.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "altnu/error.hpp"
#include "altnu/tree_engine.hpp"

namespace altnu {

using Engine = TreeEngine<4>;

Region::Region(const NEPath& nu, const IncrementVector& delta) : nu_(nu), delta_(delta) {
    validate_delta(nu, delta);
    const int n = nu.n();
    W_ = nu.width();
    L_.assign(n + 1, 0);
    R_.assign(n + 1, 0);
    int sl = 0, sd = 0;
    for (int y = n; y >= 0; --y) {
        if (y < n) {
            sl += nu.runs[y + 1] - delta[y];
            sd += delta[y];
        }
        L_[y] = sl;
        R_[y] = W_ - sd;
    }
    shape_ = shape_from(nu, delta);
}

bool Region::contains(Point p) const {
    return p.y >= 0 && p.y <= n() && p.x >= L_[p.y] && p.x <= R_[p.y];
}

std::vector<Point> Region::points() const {
    std::vector<Point> pts;
    for (int x = 0; x <= W_; ++x)
        for (int y = 0; y <= n(); ++y)
            if (contains({x, y})) pts.push_back({x, y});
    return pts;
}

bool Region::incompatible(Point p, Point q) const {
    if (!contains(p) || !contains(q))
        throw Error(ErrorKind::PointOutsideRegion, "point not in L_{delta,nu}");
    const bool sw_ne = (p.x < q.x && p.y < q.y) || (p.x > q.x && p.y > q.y);
    if (!sw_ne) return false;
    return std::max(p.x, q.x) <= R_[std::min(p.y, q.y)];
}

Box Region::shape_box(int c, int y) const {
    if (!has_box(c, y))
        throw Error(ErrorKind::BoxOutOfShape, "lattice box (" + std::to_string(c) + "," + std::to_string(y) + ")");
    return Box{n() - y, c - L_[n() - 1] + 1};
}

std::pair<int, int> Region::lattice_box(Box b) const {
    if (!shape_.contains(b)) throw Error(ErrorKind::BoxOutOfShape, "box not in shape");
    return {b.c - 1 + L_[n() - 1], n() - b.r};
}

namespace {

Engine::Mask to_mask(const DeltaNuTree& t, const Region& reg) {
    Engine::Mask m;
    for (Point p : t.nodes) {
        if (!reg.contains(p)) throw Error(ErrorKind::PointOutsideRegion, "tree node outside region");
        m.set(reg.index(p));
    }
    return m;
}

DeltaNuTree from_mask(const Engine::Mask& m, const Region& reg) {
    DeltaNuTree t;
    for (int i = m.first(); i >= 0; i = m.next(i + 1)) t.nodes.push_back(reg.point(i));
    std::sort(t.nodes.begin(), t.nodes.end());
    return t;
}

void require_fit(const Region& reg) {
    if (!Engine::fits(reg))
        throw Error(ErrorKind::SizeLimit, "region has more than " + std::to_string(Engine::Mask::capacity()) + " grid cells");
}

}  // namespace

bool nu_check_incompatible(Point p, Point q, const Region& reg) { return reg.incompatible(p, q); }

bool is_tree(const DeltaNuTree& t, const Region& reg) {
    require_fit(reg);
    Engine e(reg);
    for (Point p : t.nodes)
        if (!reg.contains(p)) return false;
    return e.is_tree(to_mask(t, reg));
}

std::vector<DeltaNuTree> enumerate_trees(const Region& reg, std::size_t cap) {
    require_fit(reg);
    Engine e(reg);
    std::vector<DeltaNuTree> out;
    e.for_each_tree([&](const Engine::Mask& m) {
        if (out.size() >= cap) throw Error(ErrorKind::SizeLimit, "more than " + std::to_string(cap) + " trees");
        out.push_back(from_mask(m, reg));
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<DeltaNuTree, RotationWitness>> right_rotations(const DeltaNuTree& t, const Region& reg) {
    require_fit(reg);
    Engine e(reg);
    std::vector<std::pair<DeltaNuTree, RotationWitness>> out;
    e.up_rotations(to_mask(t, reg), [&](const Engine::Mask& t2, int box, int q, int q2, int p, int r) {
        out.push_back({from_mask(t2, reg), RotationWitness{reg.point(p), reg.point(q), reg.point(q2), reg.point(r), box}});
    });
    return out;
}

std::vector<std::pair<DeltaNuTree, RotationWitness>> left_rotations(const DeltaNuTree& t, const Region& reg) {
    require_fit(reg);
    Engine e(reg);
    std::vector<std::pair<DeltaNuTree, RotationWitness>> out;
    e.down_rotations(to_mask(t, reg), [&](const Engine::Mask& t2, int box, int q2, int q, int p, int r) {
        out.push_back({from_mask(t2, reg), RotationWitness{reg.point(p), reg.point(q), reg.point(q2), reg.point(r), box}});
    });
    return out;
}

DeltaNuTree bottom_tree(const Region& reg) { return theta(reg, {}); }

DeltaNuTree theta(const Region& reg, const std::vector<Box>& boxes) {
    require_fit(reg);
    const Shape& sh = reg.shape();
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (!sh.contains(boxes[i])) throw Error(ErrorKind::BoxOutOfShape, "theta input");
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            const Box a = boxes[i], b = boxes[j];
            bool bad = a == b || a.r == b.r || a.c == b.c;
            if (!bad && ((a.r > b.r && a.c < b.c) || (a.r < b.r && a.c > b.c))) {
                int lo = std::min(a.c, b.c), hi = std::max(a.c, b.c), m = std::max(a.r, b.r);
                bad = true;
                for (int k = lo; k <= hi; ++k)
                    if (sh.u[k - 1] < m) bad = false;
            }
            if (bad) throw Error(ErrorKind::IncompatibleInput, "theta needs pairwise compatible boxes");
        }
    }
    Engine e(reg);
    std::vector<int> ids;
    for (Box b : boxes) ids.push_back(sh.id(b));
    return from_mask(e.theta_ids(ids), reg);
}

DeltaNuTree join_irreducible_tree_for_box(const Region& reg, Box b) { return theta(reg, {b}); }

TreeStructure tree_structure(const DeltaNuTree& t) {
    const int m = static_cast<int>(t.nodes.size());
    std::map<Point, int> at;
    for (int i = 0; i < m; ++i) at[t.nodes[i]] = i;
    TreeStructure s;
    s.parent.assign(m, -1);
    s.left.assign(m, -1);
    s.right.assign(m, -1);
    for (int i = 0; i < m; ++i) {
        const Point p = t.nodes[i];
        int north = -1, west = -1;
        for (int j = 0; j < m; ++j) {
            const Point q = t.nodes[j];
            if (q.x == p.x && q.y > p.y && (north < 0 || q.y < t.nodes[north].y)) north = j;
            if (q.y == p.y && q.x < p.x && (west < 0 || q.x > t.nodes[west].x)) west = j;
        }
        if (north >= 0) {
            s.parent[i] = north;
            s.left[north] = i;
        } else if (west >= 0) {
            s.parent[i] = west;
            s.right[west] = i;
        } else {
            s.root = i;
        }
    }
    return s;
}

std::vector<int> bracket_vector(const DeltaNuTree& t, const Region& reg) {
    for (int i = 1; i <= reg.n(); ++i)
        if (reg.delta()[i - 1] != reg.nu().runs[i])
            throw Error(ErrorKind::NotNuTree, "bracket vectors need delta = nu");
    auto s = tree_structure(t);
    std::vector<int> out;
    auto walk = [&](auto&& self, int v) -> void {
        if (v < 0) return;
        self(self, s.left[v]);
        out.push_back(t.nodes[v].y);
        self(self, s.right[v]);
    };
    walk(walk, s.root);
    return out;
}

std::vector<int> meet_by_brackets(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "bracket vectors differ in length");
    std::vector<int> m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::min(a[i], b[i]);
    return m;
}

int perspective_label(const DeltaNuTree& t, const DeltaNuTree& t2, const Region& reg) {
    for (const auto& [up, w] : right_rotations(t, reg))
        if (up == t2) return w.box;
    throw Error(ErrorKind::NotACover, "second tree does not cover the first");
}

std::string tree_to_json(const DeltaNuTree& t, const Region& reg) {
    nlohmann::json j;
    j["schema"] = 1;
    for (Point p : t.nodes) j["nodes"].push_back({p.x, p.y});
    j["nu"] = reg.nu().runs;
    j["delta"] = reg.delta();
    return j.dump();
}

std::string tree_to_dot(const DeltaNuTree& t) {
    auto s = tree_structure(t);
    std::ostringstream os;
    os << "digraph tree {\n";
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        os << "  n" << i << " [label=\"(" << t.nodes[i].x << "," << t.nodes[i].y << ")\"];\n";
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        if (s.left[i] >= 0) os << "  n" << i << " -> n" << s.left[i] << " [label=\"S\"];\n";
        if (s.right[i] >= 0) os << "  n" << i << " -> n" << s.right[i] << " [label=\"E\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace altnu
