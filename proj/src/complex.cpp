#include "altnu/complex.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "altnu/error.hpp"

namespace altnu {

std::vector<int> face_vertices(Face f) {
    std::vector<int> v;
    while (f) {
        v.push_back(__builtin_ctzll(f));
        f &= f - 1;
    }
    return v;
}

Face face_of(const std::vector<int>& vs) {
    Face f = 0;
    for (int v : vs) {
        if (v < 0 || v >= SimplicialComplex::kMaxVertices)
            throw Error(ErrorKind::DimensionOverflow, "vertex index " + std::to_string(v) + " beyond 64");
        f |= Face{1} << v;
    }
    return f;
}

std::vector<Face> maximal_faces(std::vector<Face> faces) {
    std::sort(faces.begin(), faces.end(), [](Face a, Face b) {
        int sa = face_size(a), sb = face_size(b);
        return sa != sb ? sa > sb : a < b;
    });
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    std::vector<Face> out;
    for (Face f : faces) {
        bool covered = false;
        for (Face g : out)
            if (is_subset(f, g)) {
                covered = true;
                break;
            }
        if (!covered) out.push_back(f);
    }
    return out;
}

SimplicialComplex::SimplicialComplex(int ground, std::vector<Face> generators) : ground_(ground) {
    if (ground > kMaxVertices)
        throw Error(ErrorKind::DimensionOverflow, "ground set of " + std::to_string(ground) + " vertices exceeds 64");
    for (Face f : generators)
        if (ground < 64 && (f >> ground) != 0) throw Error(ErrorKind::NotAFace, "face uses a vertex outside the ground set");
    facets_ = maximal_faces(std::move(generators));
}

bool SimplicialComplex::contains(Face f) const {
    for (Face g : facets_)
        if (is_subset(f, g)) return true;
    return false;
}

int SimplicialComplex::dimension() const {
    int d = -1;
    for (Face f : facets_) d = std::max(d, face_size(f) - 1);
    return d;
}

Face SimplicialComplex::vertex_set() const {
    Face v = 0;
    for (Face f : facets_) v |= f;
    return v;
}

std::vector<Face> SimplicialComplex::faces() const {
    std::unordered_set<Face> seen;
    for (Face f : facets_) {
        // enumerate subsets of f
        Face s = f;
        while (true) {
            seen.insert(s);
            if (s == 0) break;
            s = (s - 1) & f;
        }
    }
    std::vector<Face> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](Face a, Face b) {
        int sa = face_size(a), sb = face_size(b);
        return sa != sb ? sa < sb : a < b;
    });
    return out;
}

std::size_t SimplicialComplex::face_count() const { return faces().size(); }

std::vector<std::int64_t> f_vector(const SimplicialComplex& d) {
    std::vector<std::int64_t> f(std::max(d.dimension() + 1, 0), 0);
    for (Face x : d.faces())
        if (x) ++f[face_size(x) - 1];
    return f;
}

std::int64_t euler(const SimplicialComplex& d) {
    std::int64_t chi = 0;
    auto f = f_vector(d);
    for (std::size_t i = 0; i < f.size(); ++i) chi += (i % 2 ? -1 : 1) * f[i];
    return chi;
}

std::int64_t euler_reduced(const SimplicialComplex& d) { return euler(d) - 1; }

SimplicialComplex link(const SimplicialComplex& d, Face f) {
    if (!d.contains(f)) throw Error(ErrorKind::NotAFace, "link of a non-face");
    std::vector<Face> g;
    for (Face x : d.facets())
        if (is_subset(f, x)) g.push_back(x & ~f);
    return SimplicialComplex(d.ground_size(), g);
}

SimplicialComplex deletion(const SimplicialComplex& d, Face f) {
    std::vector<Face> g;
    for (Face x : d.facets()) {
        if (!is_subset(f, x) || f == 0) {
            if (f != 0) g.push_back(x);
            continue;
        }
        for (int v : face_vertices(f)) g.push_back(x & ~(Face{1} << v));
    }
    if (f == 0) return SimplicialComplex();  // every face contains the empty face
    return SimplicialComplex(d.ground_size(), g);
}

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
    const int ground = a.ground_size() + b.ground_size();
    if (ground > SimplicialComplex::kMaxVertices)
        throw Error(ErrorKind::DimensionOverflow, "join exceeds 64 vertices");
    std::vector<Face> g;
    for (Face x : a.facets())
        for (Face y : b.facets()) g.push_back(x | (a.ground_size() >= 64 ? 0 : (y << a.ground_size())));
    SimplicialComplex j(ground, g);
    if (!a.names.empty() && !b.names.empty()) {
        j.names = a.names;
        j.names.insert(j.names.end(), b.names.begin(), b.names.end());
    }
    return j;
}

SimplicialComplex induced(const SimplicialComplex& d, Face vertices) {
    std::vector<Face> g;
    for (Face x : d.facets()) g.push_back(x & vertices);
    return SimplicialComplex(d.ground_size(), g);
}

// ---------------------------------------------------------------- VD search

namespace {

struct VectorHash {
    std::size_t operator()(const std::vector<Face>& v) const {
        std::uint64_t h = 1469598103934665603ull;
        for (Face f : v) {
            h ^= f + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

struct VDSearch {
    const std::vector<int>& hint;
    std::size_t budget;
    std::size_t explored = 0;
    std::unordered_map<std::vector<Face>, std::shared_ptr<const VDNode>, VectorHash> memo;

    // facets sorted ascending; returns nullptr if not decomposable
    std::shared_ptr<const VDNode> solve(const std::vector<Face>& facets) {
        auto it = memo.find(facets);
        if (it != memo.end()) return it->second;
        if (++explored > budget) throw Error(ErrorKind::SizeLimit, "vertex decomposability search budget exhausted");
        std::shared_ptr<const VDNode> res;
        if (facets.size() == 1) {
            auto leaf = std::make_shared<VDNode>();
            leaf->facets = facets;
            res = leaf;
        } else {
            Face verts = 0;
            for (Face f : facets) verts |= f;
            std::vector<int> order;
            for (int v : hint)
                if (v >= 0 && v < 64 && (verts >> v & 1)) order.push_back(v);
            for (int v : face_vertices(verts))
                if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
            for (int v : order) {
                const Face bit = Face{1} << v;
                std::vector<Face> with, without;
                for (Face f : facets) (f & bit ? with : without).push_back(f);
                if (without.empty()) continue;  // cone point: link = deletion
                bool shedding = true;
                for (Face a : with) {
                    const Face r = a & ~bit;
                    bool inside = false;
                    for (Face b : without)
                        if (is_subset(r, b)) {
                            inside = true;
                            break;
                        }
                    if (!inside) {
                        shedding = false;
                        break;
                    }
                }
                if (!shedding) continue;
                std::vector<Face> lk;
                for (Face a : with) lk.push_back(a & ~bit);
                std::sort(lk.begin(), lk.end());
                auto dl = solve(without);
                if (!dl) continue;
                auto ln = solve(lk);
                if (!ln) continue;
                auto node = std::make_shared<VDNode>();
                node->facets = facets;
                node->vertex = v;
                node->link = ln;
                node->deletion = dl;
                res = node;
                break;
            }
        }
        memo.emplace(facets, res);
        return res;
    }
};

}  // namespace

VDResult is_vertex_decomposable(const SimplicialComplex& d, const std::vector<int>& hint, std::size_t budget) {
    VDResult r;
    if (d.is_void()) return r;
    std::vector<Face> f = d.facets();
    std::sort(f.begin(), f.end());
    VDSearch s{hint, budget, 0, {}};
    r.certificate = s.solve(f);
    r.decomposable = r.certificate != nullptr;
    r.explored = s.explored;
    return r;
}

bool replay_certificate(const VDNode& node, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    std::vector<Face> facets = maximal_faces(node.facets);
    std::sort(facets.begin(), facets.end());
    std::vector<Face> given = node.facets;
    std::sort(given.begin(), given.end());
    if (facets != given) return fail("stored facets are not an antichain");
    if (node.vertex < 0) {
        if (facets.size() != 1) return fail("leaf is not a simplex");
        return true;
    }
    const Face bit = Face{1} << node.vertex;
    std::vector<Face> lk, dl;
    for (Face f : facets) {
        if (f & bit) lk.push_back(f & ~bit);
        dl.push_back(f & ~bit);
    }
    bool has_v = false;
    for (Face f : facets) has_v |= (f & bit) != 0;
    if (!has_v) return fail("decomposing vertex is not a vertex");
    lk = maximal_faces(lk);
    dl = maximal_faces(dl);
    std::sort(lk.begin(), lk.end());
    std::sort(dl.begin(), dl.end());
    if (!node.link || !node.deletion) return fail("missing child certificate");
    auto sorted = [](std::vector<Face> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    if (sorted(node.link->facets) != lk) return fail("link facets do not match");
    if (sorted(node.deletion->facets) != dl) return fail("deletion facets do not match");
    for (Face a : lk)
        if (std::binary_search(dl.begin(), dl.end(), a)) return fail("a link facet is a facet of the deletion");
    return replay_certificate(*node.link, why) && replay_certificate(*node.deletion, why);
}

std::vector<Face> shelling_from_certificate(const VDNode& node) {
    if (node.vertex < 0) return node.facets;
    std::vector<Face> out = shelling_from_certificate(*node.deletion);
    const Face bit = Face{1} << node.vertex;
    for (Face e : shelling_from_certificate(*node.link)) out.push_back(e | bit);
    return out;
}

// ---------------------------------------------------------------- homology

namespace {

// Faces grouped by size (index = size), each sorted ascending.
std::vector<std::vector<Face>> faces_by_size(const SimplicialComplex& d) {
    std::vector<std::vector<Face>> by(d.dimension() + 2);
    for (Face f : d.faces()) by[face_size(f)].push_back(f);
    for (auto& v : by) std::sort(v.begin(), v.end());
    return by;
}

}  // namespace

std::vector<std::int64_t> reduced_betti_gf2(const SimplicialComplex& d) {
    if (d.is_void()) return {};
    auto by = faces_by_size(d);
    const int top = static_cast<int>(by.size()) - 1;  // largest face size
    // rank[s] = rank of the boundary map from size-s faces to size-(s-1) faces
    std::vector<std::int64_t> rank(top + 2, 0);
    // Clearing: a size-(s-1) face that is a pivot row of the size-s reduction
    // has a column in the next map that reduces to zero.
    std::vector<std::vector<char>> cleared(top + 1);
    for (int s = 0; s <= top; ++s) cleared[s].assign(by[s].size(), 0);
    for (int s = top; s >= 1; --s) {
        const auto& rows = by[s - 1];
        std::unordered_map<Face, int> row_index;
        row_index.reserve(rows.size() * 2);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) row_index[rows[i]] = i;
        std::vector<std::vector<int>> pivot_col(rows.size());
        std::vector<int> pivot_owner(rows.size(), -1);
        std::int64_t rk = 0;
        for (std::size_t j = 0; j < by[s].size(); ++j) {
            if (cleared[s][j]) continue;
            std::vector<int> col;
            for (int v : face_vertices(by[s][j])) col.push_back(row_index.at(by[s][j] & ~(Face{1} << v)));
            std::sort(col.begin(), col.end());
            while (!col.empty()) {
                const int low = col.back();
                if (pivot_owner[low] < 0) break;
                // col += pivot column (symmetric difference of sorted lists)
                const auto& p = pivot_col[low];
                std::vector<int> sum;
                sum.reserve(col.size() + p.size());
                std::set_symmetric_difference(col.begin(), col.end(), p.begin(), p.end(), std::back_inserter(sum));
                col.swap(sum);
            }
            if (!col.empty()) {
                const int low = col.back();
                pivot_owner[low] = static_cast<int>(j);
                pivot_col[low] = std::move(col);
                cleared[s - 1][low] = 1;
                ++rk;
            }
        }
        rank[s] = rk;
    }
    std::vector<std::int64_t> beta(top + 1, 0);
    for (int s = 0; s <= top; ++s) {
        const std::int64_t next = s + 1 <= top ? rank[s + 1] : 0;
        beta[s] = static_cast<std::int64_t>(by[s].size()) - rank[s] - next;
    }
    return beta;
}

std::vector<std::int64_t> reduced_betti_rational(const SimplicialComplex& d) {
    using Q = boost::multiprecision::cpp_rational;
    if (d.is_void()) return {};
    auto by = faces_by_size(d);
    const int top = static_cast<int>(by.size()) - 1;
    std::vector<std::int64_t> rank(top + 2, 0);
    for (int s = 1; s <= top; ++s) {
        const auto& rows = by[s - 1];
        std::unordered_map<Face, int> row_index;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) row_index[rows[i]] = i;
        // columns as sparse maps, eliminated against pivots keyed by lowest row
        std::map<int, std::map<int, Q>> pivots;
        std::int64_t rk = 0;
        for (Face f : by[s]) {
            std::map<int, Q> col;
            auto vs = face_vertices(f);
            for (std::size_t k = 0; k < vs.size(); ++k)
                col[row_index.at(f & ~(Face{1} << vs[k]))] = (k % 2 == 0) ? Q(1) : Q(-1);
            while (!col.empty()) {
                auto low = col.rbegin()->first;
                auto it = pivots.find(low);
                if (it == pivots.end()) break;
                const Q factor = col.rbegin()->second / it->second.rbegin()->second;
                for (const auto& [r, val] : it->second) {
                    Q nv = col[r] - factor * val;
                    if (nv == 0)
                        col.erase(r);
                    else
                        col[r] = nv;
                }
            }
            if (!col.empty()) {
                pivots.emplace(col.rbegin()->first, std::move(col));
                ++rk;
            }
        }
        rank[s] = rk;
    }
    std::vector<std::int64_t> beta(top + 1, 0);
    for (int s = 0; s <= top; ++s) {
        const std::int64_t next = s + 1 <= top ? rank[s + 1] : 0;
        beta[s] = static_cast<std::int64_t>(by[s].size()) - rank[s] - next;
    }
    return beta;
}

std::vector<std::int64_t> betti_from_reduced(const std::vector<std::int64_t>& reduced) {
    // reduced[0] is dimension -1
    std::vector<std::int64_t> b;
    for (std::size_t k = 1; k < reduced.size(); ++k) b.push_back(reduced[k]);
    if (b.empty()) return {0};
    if (reduced[0] == 0) b[0] += 1;  // non-empty complex: components = reduced + 1
    while (b.size() > 1 && b.back() == 0) b.pop_back();
    return b;
}

std::vector<std::int64_t> betti_gf2(const SimplicialComplex& d) { return betti_from_reduced(reduced_betti_gf2(d)); }
std::vector<std::int64_t> betti_rational(const SimplicialComplex& d) {
    return betti_from_reduced(reduced_betti_rational(d));
}

// ---------------------------------------------------------------- isomorphism

namespace {

struct IsoSearch {
    std::vector<int> va, vb;                  // used vertices
    std::vector<std::vector<int>> sig_a, sig_b;
    std::vector<Face> adj_a, adj_b;           // 1-skeleton
    std::vector<Face> fa, fb;                 // sorted facets
    std::vector<int> map, used_b;
    int ground_a;

    static std::vector<int> signature(int v, const std::vector<Face>& facets, Face adj) {
        std::vector<int> s;
        for (Face f : facets)
            if (f >> v & 1) s.push_back(face_size(f));
        std::sort(s.begin(), s.end());
        s.push_back(-face_size(adj));
        return s;
    }

    bool full_check() const {
        std::vector<Face> img;
        for (Face f : fa) {
            Face g = 0;
            for (int v : face_vertices(f)) g |= Face{1} << map[v];
            img.push_back(g);
        }
        std::sort(img.begin(), img.end());
        return img == fb;
    }

    bool rec(std::size_t k) {
        if (k == va.size()) return full_check();
        const int v = va[k];
        for (std::size_t j = 0; j < vb.size(); ++j) {
            const int w = vb[j];
            if (used_b[w] || sig_a[v] != sig_b[w]) continue;
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i) {
                const int u = va[i];
                const bool ea = adj_a[v] >> u & 1, eb = adj_b[w] >> map[u] & 1;
                if (ea != eb) ok = false;
            }
            if (!ok) continue;
            map[v] = w;
            used_b[w] = 1;
            if (rec(k + 1)) return true;
            used_b[w] = 0;
            map[v] = -1;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const SimplicialComplex& a, const SimplicialComplex& b) {
    if (a.facets().size() != b.facets().size()) return std::nullopt;
    if (face_size(a.vertex_set()) != face_size(b.vertex_set())) return std::nullopt;
    if (f_vector(a) != f_vector(b)) return std::nullopt;
    IsoSearch s;
    s.fa = a.facets();
    s.fb = b.facets();
    std::sort(s.fa.begin(), s.fa.end());
    std::sort(s.fb.begin(), s.fb.end());
    s.va = face_vertices(a.vertex_set());
    s.vb = face_vertices(b.vertex_set());
    s.adj_a.assign(64, 0);
    s.adj_b.assign(64, 0);
    for (Face f : s.fa)
        for (int v : face_vertices(f)) s.adj_a[v] |= f & ~(Face{1} << v);
    for (Face f : s.fb)
        for (int v : face_vertices(f)) s.adj_b[v] |= f & ~(Face{1} << v);
    s.sig_a.assign(64, {});
    s.sig_b.assign(64, {});
    for (int v : s.va) s.sig_a[v] = IsoSearch::signature(v, s.fa, s.adj_a[v]);
    for (int v : s.vb) s.sig_b[v] = IsoSearch::signature(v, s.fb, s.adj_b[v]);
    // most constrained first: rare signatures, then neighbours of placed ones
    std::map<std::vector<int>, int> freq;
    for (int v : s.va) ++freq[s.sig_a[v]];
    std::vector<int> order;
    std::vector<char> placed(64, 0);
    while (order.size() < s.va.size()) {
        int best = -1;
        long best_key = 0;
        for (int v : s.va) {
            if (placed[v]) continue;
            long conn = 0;
            for (int u : order) conn += (s.adj_a[v] >> u) & 1;
            long key = conn * 1000 - freq[s.sig_a[v]];
            if (best < 0 || key > best_key) {
                best = v;
                best_key = key;
            }
        }
        placed[best] = 1;
        order.push_back(best);
    }
    s.va = order;
    s.map.assign(64, -1);
    s.used_b.assign(64, 0);
    s.ground_a = a.ground_size();
    if (!s.rec(0)) return std::nullopt;
    std::vector<int> m(a.ground_size(), -1);
    for (int v : s.va) m[v] = s.map[v];
    return m;
}

std::string complex_to_facet_list(const SimplicialComplex& d) {
    std::ostringstream os;
    for (Face f : d.facets()) {
        auto vs = face_vertices(f);
        for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? " " : "") << vs[i];
        os << '\n';
    }
    return os.str();
}

std::string complex_to_json(const SimplicialComplex& d) {
    nlohmann::json j;
    j["schema"] = 1;
    if (!d.names.empty())
        j["ground_set"] = d.names;
    else {
        j["ground_set"] = nlohmann::json::array();
        for (int i = 0; i < d.ground_size(); ++i) j["ground_set"].push_back(i);
    }
    j["facets"] = nlohmann::json::array();
    for (Face f : d.facets()) j["facets"].push_back(face_vertices(f));
    return j.dump();
}

}  // namespace altnu
