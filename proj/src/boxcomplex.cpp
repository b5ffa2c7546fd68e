#include "altnu/boxcomplex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "altnu/error.hpp"
#include "altnu/tree_engine.hpp"

namespace altnu {

bool boxes_incompatible(Box a, Box b, const Shape& shape) {
    if (!shape.contains(a) || !shape.contains(b)) throw Error(ErrorKind::BoxOutOfShape, "box outside shape");
    if (a == b) return false;
    if (a.r == b.r || a.c == b.c) return true;
    const bool sw_ne = (a.r > b.r && a.c < b.c) || (a.r < b.r && a.c > b.c);
    if (!sw_ne) return false;
    // top-aligned: the rectangle fits iff every column in range reaches the lower box
    const int lo = std::min(a.c, b.c), hi = std::max(a.c, b.c), depth = std::max(a.r, b.r);
    for (int k = lo; k <= hi; ++k)
        if (shape.u[k - 1] < depth) return false;
    return true;
}

bool cells_incompatible(Box a, Box b, const std::vector<Box>& cells) {
    std::set<Box> s(cells.begin(), cells.end());
    if (!s.count(a) || !s.count(b)) throw Error(ErrorKind::BoxOutOfShape, "cell outside diagram");
    if (a == b) return false;
    if (a.r == b.r || a.c == b.c) return true;
    const bool sw_ne = (a.r > b.r && a.c < b.c) || (a.r < b.r && a.c > b.c);
    if (!sw_ne) return false;
    for (int r = std::min(a.r, b.r); r <= std::max(a.r, b.r); ++r)
        for (int c = std::min(a.c, b.c); c <= std::max(a.c, b.c); ++c)
            if (!s.count({r, c})) return false;
    return true;
}

namespace {

void require_small(std::size_t n) {
    if (n > 64) throw Error(ErrorKind::DimensionOverflow, std::to_string(n) + " boxes exceed 64 vertices");
}

std::string box_name(Box b) { return "(" + std::to_string(b.r) + "," + std::to_string(b.c) + ")"; }

SimplicialComplex flag_complex(const std::vector<std::uint64_t>& compat) {
    // Bron-Kerbosch with pivoting for the maximal cliques
    const int n = static_cast<int>(compat.size());
    std::vector<Face> facets;
    auto bk = [&](auto&& self, Face r, Face p, Face x) -> void {
        if (p == 0) {
            if (x == 0) facets.push_back(r);
            return;
        }
        const int pivot = __builtin_ctzll(p | x);
        Face cand = p & ~compat[pivot];
        while (cand) {
            const int v = __builtin_ctzll(cand);
            const Face bit = Face{1} << v;
            cand &= cand - 1;
            self(self, r | bit, p & compat[v], x & compat[v]);
            p &= ~bit;
            x |= bit;
        }
    };
    const Face all = n == 64 ? ~Face{0} : ((Face{1} << n) - 1);
    bk(bk, 0, all, 0);
    if (n == 0) facets.push_back(0);
    return SimplicialComplex(n, facets);
}

}  // namespace

std::vector<std::uint64_t> compatibility_masks(const Shape& shape) {
    const int n = shape.box_count();
    require_small(n);
    auto bs = shape.boxes();
    std::vector<std::uint64_t> m(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !boxes_incompatible(bs[i], bs[j], shape)) m[i] |= std::uint64_t{1} << j;
    return m;
}

std::vector<std::uint64_t> compatibility_masks(const std::vector<Box>& cells) {
    const int n = static_cast<int>(cells.size());
    require_small(n);
    std::vector<std::uint64_t> m(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !cells_incompatible(cells[i], cells[j], cells)) m[i] |= std::uint64_t{1} << j;
    return m;
}

SimplicialComplex box_complex(const Shape& shape) {
    SimplicialComplex d = flag_complex(compatibility_masks(shape));
    for (Box b : shape.boxes()) d.names.push_back(box_name(b));
    return d;
}

SimplicialComplex box_complex(const std::vector<Box>& cells) {
    SimplicialComplex d = flag_complex(compatibility_masks(cells));
    for (Box b : cells) d.names.push_back(box_name(b));
    return d;
}

std::vector<Box> transposed_cells(const std::vector<int>& u) {
    std::vector<Box> cells;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (int c = 1; c <= u[i]; ++c) cells.push_back({static_cast<int>(i) + 1, c});
    return cells;
}

std::vector<Box> shape_cells(const std::vector<int>& u) { return Shape(u).boxes(); }

void for_each_clique(const std::vector<std::uint64_t>& compat, const std::function<void(Face)>& f) {
    const int n = static_cast<int>(compat.size());
    auto rec = [&](auto&& self, Face face, Face cand) -> void {
        f(face);
        while (cand) {
            const int v = __builtin_ctzll(cand);
            cand &= cand - 1;
            self(self, face | (Face{1} << v), cand & compat[v]);
        }
    };
    rec(rec, 0, n == 64 ? ~Face{0} : ((Face{1} << n) - 1));
}

Face face_of(const std::vector<Box>& boxes, const Shape& shape) {
    Face f = 0;
    for (Box b : boxes) f |= Face{1} << shape.id(b);
    return f;
}

std::vector<Box> boxes_of(Face f, const Shape& shape) {
    std::vector<Box> out;
    for (int i : face_vertices(f)) out.push_back(shape.box(i));
    return out;
}

LinkSplit link_split(const Shape& shape, Box b) {
    if (!shape.contains(b)) throw Error(ErrorKind::BoxOutOfShape, "pivot box outside shape");
    const auto& u = shape.u;
    const int n = shape.columns(), r = b.r, k = b.c;
    LinkSplit s;
    s.i_star = k;
    for (int j = k; j <= n; ++j)
        if (u[j - 1] >= r) s.i_star = j;
    // u- : the part strictly below row r, columns k+1..i*
    std::vector<int> minus_cols;
    for (int j = k + 1; j <= s.i_star; ++j)
        if (u[j - 1] - r > 0) {
            s.u_minus.push_back(u[j - 1] - r);
            minus_cols.push_back(j);
        }
    // u+ : rows above r on the left glued to the columns right of i*
    std::vector<int> plus_cols;
    for (int i = 1; i < k; ++i)
        if (std::min(u[i - 1], r - 1) > 0) {
            s.u_plus.push_back(std::min(u[i - 1], r - 1));
            plus_cols.push_back(i);
        }
    for (int j = s.i_star + 1; j <= n; ++j) {
        s.u_plus.push_back(u[j - 1]);
        plus_cols.push_back(j);
    }
    if (!s.u_minus.empty()) {
        Shape sm(s.u_minus);
        for (Box x : sm.boxes()) s.minus_to_u.push_back({x.r + r, minus_cols[x.c - 1]});
    }
    if (!s.u_plus.empty() && is_unimodal(s.u_plus)) {
        Shape sp(s.u_plus);
        for (Box x : sp.boxes()) s.plus_to_u.push_back({x.r, plus_cols[x.c - 1]});
    }
    // Exactness: images are precisely the boxes compatible with b, and
    // compatibility among them is that of the join.
    if (!is_unimodal(s.u_plus) && !s.u_plus.empty()) return s;
    std::set<Box> link_boxes;
    for (Box x : shape.boxes())
        if (x != b && !boxes_incompatible(x, b, shape)) link_boxes.insert(x);
    std::set<Box> images(s.plus_to_u.begin(), s.plus_to_u.end());
    images.insert(s.minus_to_u.begin(), s.minus_to_u.end());
    if (images != link_boxes || images.size() != s.plus_to_u.size() + s.minus_to_u.size()) return s;
    const Shape sp(s.u_plus.empty() ? std::vector<int>{} : s.u_plus);
    const Shape sm(s.u_minus.empty() ? std::vector<int>{} : s.u_minus);
    for (std::size_t i = 0; i < s.plus_to_u.size(); ++i)
        for (std::size_t j = 0; j < s.plus_to_u.size(); ++j)
            if (boxes_incompatible(sp.box(i), sp.box(j), sp) !=
                boxes_incompatible(s.plus_to_u[i], s.plus_to_u[j], shape))
                return s;
    for (std::size_t i = 0; i < s.minus_to_u.size(); ++i)
        for (std::size_t j = 0; j < s.minus_to_u.size(); ++j)
            if (boxes_incompatible(sm.box(i), sm.box(j), sm) !=
                boxes_incompatible(s.minus_to_u[i], s.minus_to_u[j], shape))
                return s;
    for (Box x : s.plus_to_u)
        for (Box y : s.minus_to_u)
            if (boxes_incompatible(x, y, shape)) return s;
    s.exact = true;
    return s;
}

Decomposition decomposing_vertices(const Shape& shape) {
    Decomposition d;
    const int nb = shape.box_count();
    d.label.assign(nb, 0);
    std::vector<char> left(nb, 1);
    int remaining = nb;
    const auto bs = shape.boxes();
    while (remaining > 0) {
        int best = -1;
        for (int i = 0; i < nb; ++i) {
            if (!left[i]) continue;
            if (best < 0 || bs[i].r > bs[best].r || (bs[i].r == bs[best].r && bs[i].c > bs[best].c)) best = i;
        }
        const Box q = bs[best];
        d.q.push_back(q);
        d.v.emplace_back();
        const int lab = static_cast<int>(d.q.size());
        for (int i = 0; i < nb; ++i) {
            if (!left[i] || (bs[i].r != q.r && bs[i].c != q.c)) continue;
            left[i] = 0;
            --remaining;
            d.label[i] = lab;
            if (i != best) d.v.back().push_back(bs[i]);
        }
    }
    return d;
}

std::vector<Box> q_boxes(const Shape& shape) { return decomposing_vertices(shape).q; }

std::vector<int> deletion_shape(const Shape& shape) {
    const Box q1 = q_boxes(shape).front();
    const int depth = shape.rows();
    std::vector<int> out;
    for (int c = 1; c <= shape.columns(); ++c) {
        if (c == q1.c) continue;
        const int h = shape.u[c - 1] - (shape.u[c - 1] == depth ? 1 : 0);
        if (h > 0) out.push_back(h);
    }
    return out;
}

int AltTamari::box_label(int x, int y) const {
    const auto& up = lattice.upper_covers()[x];
    auto it = std::lower_bound(up.begin(), up.end(), y);
    if (it == up.end() || *it != y) throw Error(ErrorKind::NotACover, "not a cover");
    // covers() lists (x, up[x][j]) in order of x, then j
    std::size_t k = 0;
    for (int z = 0; z < x; ++z) k += lattice.upper_covers()[z].size();
    return cover_box[k + static_cast<std::size_t>(it - up.begin())];
}

AltTamari build_alt_tamari(const NEPath& nu, const IncrementVector& delta, std::size_t max_elements) {
    Region reg(nu, delta);
    using Engine = TreeEngine<4>;
    if (!Engine::fits(reg)) throw Error(ErrorKind::SizeLimit, "region too large for the tree engine");
    Engine e(reg);
    std::vector<Engine::Mask> elems{e.theta_ids({})};
    std::unordered_map<Engine::Mask, int, WordMaskHash<4>> index{{elems[0], 0}};
    std::vector<std::pair<int, int>> covers;
    std::vector<int> labels;
    for (std::size_t h = 0; h < elems.size(); ++h) {
        const Engine::Mask t = elems[h];
        e.up_rotations(t, [&](const Engine::Mask& t2, int box, int, int, int, int) {
            auto [it, fresh] = index.emplace(t2, static_cast<int>(elems.size()));
            if (fresh) {
                if (elems.size() >= max_elements)
                    throw Error(ErrorKind::SizeLimit, "lattice exceeds " + std::to_string(max_elements) + " elements");
                elems.push_back(t2);
            }
            covers.emplace_back(static_cast<int>(h), it->second);
            labels.push_back(box);
        });
    }
    FiniteLattice::Options opt;
    opt.max_elements = max_elements;
    FiniteLattice L = FiniteLattice::build(static_cast<int>(elems.size()), covers, opt);
    // reorder labels to match L.covers()
    std::map<std::pair<int, int>, int> lab;
    for (std::size_t i = 0; i < covers.size(); ++i) lab[covers[i]] = labels[i];
    AltTamari out{reg, {}, std::move(L), {}, {}};
    for (const auto& m : elems) {
        DeltaNuTree t;
        for (int i = m.first(); i >= 0; i = m.next(i + 1)) t.nodes.push_back(reg.point(i));
        std::sort(t.nodes.begin(), t.nodes.end());
        out.trees.push_back(std::move(t));
    }
    for (auto c : out.lattice.covers()) out.cover_box.push_back(lab.at(c));
    for (int j : out.lattice.join_irreducibles()) out.ji_box.push_back(out.box_label(out.lattice.lower_covers()[j][0], j));
    return out;
}

std::vector<Box> tau(const AltTamari& t, const std::vector<int>& face) {
    std::vector<Box> out;
    const Shape& sh = t.region.shape();
    for (int j : face) {
        const int idx = t.lattice.ji_index(j);
        if (idx < 0) throw Error(ErrorKind::NotAFace, "element is not join-irreducible");
        out.push_back(sh.box(t.ji_box[idx]));
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t k = i + 1; k < out.size(); ++k)
            if (boxes_incompatible(out[i], out[k], sh))
                throw Error(ErrorKind::IncompatibleInput, "tau produced incompatible boxes");
    std::sort(out.begin(), out.end(), [&](Box a, Box b) { return sh.id(a) < sh.id(b); });
    return out;
}

DeltaNuTree theta(const Shape& shape, const std::vector<Box>& boxes) {
    if (!shape.nu || !shape.delta) throw Error(ErrorKind::NotApplicable, "shape carries no (nu, delta)");
    return theta(Region(*shape.nu, *shape.delta), boxes);
}

std::string render_ascii(const Shape& shape, const std::vector<Box>& marked) {
    std::set<Box> m(marked.begin(), marked.end());
    std::ostringstream os;
    for (int r = 1; r <= shape.rows(); ++r) {
        std::string line;
        for (int c = 1; c <= shape.columns(); ++c) {
            if (shape.u[c - 1] < r)
                line += " ";
            else
                line += m.count({r, c}) ? "■" : "□";
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << '\n';
    }
    return os.str();
}

std::string shape_to_json(const Shape& shape, const std::vector<Box>& marked) {
    nlohmann::json j;
    j["schema"] = 1;
    j["columns"] = shape.u;
    j["marked"] = nlohmann::json::array();
    for (Box b : marked) j["marked"].push_back({b.r, b.c});
    return j.dump();
}

}  // namespace altnu
