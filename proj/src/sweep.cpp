#include "altnu/sweep.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <optional>

#include "altnu/boxcomplex.hpp"
#include "altnu/error.hpp"
#include "altnu/lattice.hpp"
#include "altnu/shelling.hpp"
#include "altnu/tree_engine.hpp"

namespace altnu {

namespace {

// Open-addressing map from tree masks to positions.
template <std::size_t Wd>
class MaskIndex {
public:
    using Mask = WordMask<Wd>;

    void reset(std::size_t n) {
        std::size_t cap = 16;
        while (cap < 2 * n) cap <<= 1;
        mask_ = cap - 1;
        slots_.assign(cap, -1);
    }
    void insert(const std::vector<Mask>& keys, int v) {
        std::size_t h = hash(keys[v]) & mask_;
        while (slots_[h] >= 0) h = (h + 1) & mask_;
        slots_[h] = v;
    }
    int find(const std::vector<Mask>& keys, const Mask& k) const {
        std::size_t h = hash(k) & mask_;
        while (slots_[h] >= 0) {
            if (keys[slots_[h]] == k) return slots_[h];
            h = (h + 1) & mask_;
        }
        return -1;
    }

private:
    static std::size_t hash(const Mask& m) {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::size_t i = 0; i < Wd; ++i) {
            h ^= m.w[i];
            h *= 0xbf58476d1ce4e5b9ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
    std::size_t mask_ = 0;
    std::vector<int> slots_;
};

template <std::size_t Wd>
struct Scratch {
    using Mask = WordMask<Wd>;
    std::vector<Mask> found, trees;
    std::vector<int> height, bucket;
    MaskIndex<Wd> index;
    std::vector<std::uint64_t> down, can;
    std::vector<int> ji;
};

template <std::size_t Wd>
LatticeCheck check_region(const Region& reg, const std::vector<std::uint64_t>& compat, std::size_t faces,
                          Scratch<Wd>& sc) {
    using Mask = WordMask<Wd>;
    LatticeCheck out;
    auto fail = [&](bool& flag, const std::string& m) {
        if (out.message.empty()) out.message = m;
        flag = false;
    };
    const TreeEngine<Wd> e(reg);
    const int S = reg.stride(), n = reg.n();
    const int nb = static_cast<int>(compat.size());

    sc.found.clear();
    e.for_each_tree([&](const Mask& t) { sc.found.push_back(t); });
    const int N = static_cast<int>(sc.found.size());
    out.elements = N;

    // every up-rotation raises one node, so the height sum is a linear extension
    sc.height.resize(N);
    Mask rows[64];
    for (int y = 0; y <= n; ++y) {
        rows[y] = Mask{};
        for (int x = y * S; x < (y + 1) * S; ++x) rows[y].set(x);
    }
    int hmax = 0;
    for (int i = 0; i < N; ++i) {
        int h = 0;
        for (int y = 1; y <= n; ++y) h += y * (sc.found[i] & rows[y]).count();
        sc.height[i] = h;
        hmax = std::max(hmax, h);
    }
    sc.bucket.assign(hmax + 2, 0);
    for (int i = 0; i < N; ++i) ++sc.bucket[sc.height[i] + 1];
    for (int h = 1; h <= hmax + 1; ++h) sc.bucket[h] += sc.bucket[h - 1];
    sc.trees.resize(N);
    for (int i = 0; i < N; ++i) sc.trees[sc.bucket[sc.height[i]]++] = sc.found[i];

    sc.index.reset(N);
    for (int i = 0; i < N; ++i) sc.index.insert(sc.trees, i);
    sc.down.assign(N, 0);
    sc.can.assign(N, 0);
    sc.ji.assign(nb, -1);
    out.f_vector.assign(nb + 1, 0);

    struct Lower {
        int idx, box;
    };
    Lower lower[64];
    for (int i = 0; i < N && out.iso_ok && out.lambda_ok; ++i) {
        const Mask& t = sc.trees[i];
        int nl = 0;
        std::uint64_t can = 0, down = 0;
        bool ok = true;
        e.down_rotations(t, [&](const Mask& t2, int box, int, int, int, int) {
            const int j = sc.index.find(sc.trees, t2);
            if (j < 0 || j >= i || box < 0 || (can >> box & 1) || nl >= 64) {
                ok = false;
                return;
            }
            can |= std::uint64_t{1} << box;
            down |= sc.down[j];
            lower[nl++] = {j, box};
        });
        if (!ok) {
            fail(out.iso_ok, "down-rotation leaves the tree set or repeats a label");
            break;
        }
        out.covers += nl;
        if (nl == 1) {
            const int b = lower[0].box;
            if (sc.ji[b] >= 0) {
                fail(out.iso_ok, "two join-irreducibles carry box " + std::to_string(b));
                break;
            }
            sc.ji[b] = i;
            down |= can;
        }
        sc.down[i] = down;
        sc.can[i] = can;
        ++out.f_vector[std::popcount(can)];
        for (std::uint64_t c = can; c; c &= c - 1) {
            const int b = std::countr_zero(c);
            if (can & ~compat[b] & ~(std::uint64_t{1} << b)) {
                fail(out.iso_ok, "canonical join representation is not a face of the box complex");
                break;
            }
        }
        if (!(e.theta_mask(can) == t)) fail(out.iso_ok, "theta(Can T) != T");
        // lambda: the unique join-irreducible m of S = D(T) \ D(x) with D(m) & S = {m}
        for (int k = 0; k < nl; ++k) {
            const std::uint64_t s = down & ~sc.down[lower[k].idx];
            int count = 0, found = -1;
            for (std::uint64_t c = s; c; c &= c - 1) {
                const int m = std::countr_zero(c);
                const int jm = sc.ji[m];
                if (jm < 0) {
                    count = -1;
                    break;
                }
                if ((sc.down[jm] & s) == (std::uint64_t{1} << m)) {
                    ++count;
                    found = m;
                }
            }
            if (count != 1 || found != lower[k].box) {
                fail(out.lambda_ok, "rotation label differs from lambda_jsd");
                break;
            }
        }
    }
    if (out.iso_ok && static_cast<std::size_t>(N) != faces)
        fail(out.iso_ok, std::to_string(N) + " trees but " + std::to_string(faces) + " faces");
    if (out.iso_ok)
        for (int b = 0; b < nb; ++b)
            if (sc.ji[b] < 0) {
                fail(out.iso_ok, "box " + std::to_string(b) + " has no join-irreducible");
                break;
            }
    while (out.f_vector.size() > 1 && out.f_vector.back() == 0) out.f_vector.pop_back();
    return out;
}

std::size_t count_faces(const std::vector<std::uint64_t>& compat) {
    std::size_t c = 0;
    for_each_clique(compat, [&](Face) { ++c; });
    return c;
}

struct ShapeInfo {
    std::vector<std::uint64_t> compat;
    std::size_t faces = 0;
    bool homology_ok = true;
    std::string message;
};

ShapeInfo shape_info(const Shape& sh) {
    ShapeInfo s;
    s.compat = compatibility_masks(sh);
    s.faces = count_faces(s.compat);
    return s;
}

void check_homology(const Shape& sh, ShapeInfo& s) {
    const auto gf2 = betti_gf2(box_complex(sh));
    const auto sh_betti = betti_via_shelling(shelling_order(sh, ShellingMode::Refined));
    if (gf2 != sh_betti) {
        s.homology_ok = false;
        s.message = "shape " + to_string(sh.u) + ": shelling Betti differs from GF(2) Betti";
    }
}

double since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string label(const NEPath& nu, const IncrementVector& d) { return "nu=" + to_string(nu.runs) + " delta=" + to_string(d); }

}  // namespace

LatticeCheck check_lattice(const NEPath& nu, const IncrementVector& delta) {
    const Region reg(nu, delta);
    const Shape& sh = reg.shape();
    if (sh.box_count() > 64) throw Error(ErrorKind::DimensionOverflow, "more than 64 boxes");
    const auto compat = compatibility_masks(sh);
    const std::size_t faces = count_faces(compat);
    if (TreeEngine<2>::fits(reg)) {
        Scratch<2> sc;
        return check_region<2>(reg, compat, faces, sc);
    }
    if (!TreeEngine<4>::fits(reg)) throw Error(ErrorKind::SizeLimit, "region too large for the tree engine");
    Scratch<4> sc;
    return check_region<4>(reg, compat, faces, sc);
}

CoverSetCheck verify_cover_set(const NEPath& nu, const IncrementVector& delta, const std::vector<DeltaNuTree>& trees,
                               const std::vector<std::pair<int, int>>& covers, std::size_t max_elements) {
    CoverSetCheck out;
    out.elements = trees.size();
    out.covers = covers.size();
    auto fail = [&](const std::string& m) {
        out.ok = false;
        out.message = m;
        return out;
    };
    if (trees.size() > max_elements) return fail(std::to_string(trees.size()) + " elements exceed the cap");
    const Region reg(nu, delta);
    const Shape& sh = reg.shape();
    const auto compat = compatibility_masks(sh);
    const int N = static_cast<int>(trees.size());

    std::map<DeltaNuTree, int> index;
    for (int i = 0; i < N; ++i) {
        if (!is_tree(trees[i], reg)) return fail("element " + std::to_string(i) + " is not a (delta,nu)-tree");
        if (!index.emplace(trees[i], i).second) return fail("element " + std::to_string(i) + " is repeated");
    }
    std::map<std::pair<int, int>, int> label;
    for (const auto& [a, b] : covers) {
        if (a < 0 || b < 0 || a >= N || b >= N) return fail("cover refers to a missing element");
        int box = -1;
        for (const auto& [t, w] : left_rotations(trees[b], reg))
            if (t == trees[a]) box = w.box;
        if (box < 0) return fail("cover " + std::to_string(a) + " < " + std::to_string(b) + " is not a rotation");
        label[{a, b}] = box;
    }
    std::optional<FiniteLattice> L;
    try {
        FiniteLattice::Options opt;
        opt.max_elements = max_elements;
        L = FiniteLattice::build(N, covers, opt);
    } catch (const Error& e) {
        return fail(std::string("covers do not form a lattice: ") + e.what());
    }
    std::vector<int> ji_box(N, -1);
    std::vector<int> seen(sh.box_count(), 0);
    for (int j : L->join_irreducibles()) {
        ji_box[j] = label.at({L->lower_covers()[j][0], j});
        if (seen[ji_box[j]]++) return fail("two join-irreducibles carry box " + std::to_string(ji_box[j]));
    }
    if (L->join_irreducibles().size() != static_cast<std::size_t>(sh.box_count()))
        return fail(std::to_string(L->join_irreducibles().size()) + " join-irreducibles for " +
                    std::to_string(sh.box_count()) + " boxes");
    // tau then theta
    std::map<Face, int> face_of_element;
    for (int a = 0; a < N; ++a) {
        std::vector<int> rep;
        try {
            rep = canonical_join_rep(*L, a);
        } catch (const Error& e) {
            return fail("no canonical join representation for " + std::to_string(a) + ": " + e.what());
        }
        Face f = 0;
        std::vector<Box> boxes;
        for (int j : rep) {
            f |= Face{1} << ji_box[j];
            boxes.push_back(sh.box(ji_box[j]));
        }
        for (int v : face_vertices(f))
            if (f & ~compat[v] & ~(Face{1} << v)) return fail("Can(" + std::to_string(a) + ") is not a face");
        if (!(theta(reg, boxes) == trees[a])) return fail("theta(tau(Can " + std::to_string(a) + ")) differs");
        if (!face_of_element.emplace(f, a).second) return fail("tau is not injective");
    }
    // theta then tau, over every face
    bool ok = true;
    for_each_clique(compat, [&](Face f) {
        ++out.faces;
        if (!ok) return;
        auto it = index.find(theta(reg, boxes_of(f, sh)));
        const auto jt = face_of_element.find(f);
        if (it == index.end() || jt == face_of_element.end() || jt->second != it->second) ok = false;
    });
    if (!ok) return fail("tau(Can(theta(F))) differs from F for some face F");
    if (out.faces != static_cast<std::size_t>(N))
        return fail(std::to_string(N) + " elements but " + std::to_string(out.faces) + " faces");
    return out;
}

std::vector<IncrementVector> all_deltas(const NEPath& nu) {
    std::vector<IncrementVector> out;
    IncrementVector d(nu.n(), 0);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == nu.n()) {
            out.push_back(d);
            return;
        }
        for (int v = 0; v <= nu.runs[i + 1]; ++v) {
            d[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<NEPath> all_paths(int n, int max_run, bool vary_nu0) {
    std::vector<NEPath> out;
    std::vector<int> r(n + 1, 0);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n + 1) {
            out.emplace_back(r);
            return;
        }
        const int hi = (i == 0 && !vary_nu0) ? 0 : max_run;
        for (int v = 0; v <= hi; ++v) {
            r[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

SweepReport run_sweep(const SweepOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepReport rep;
    auto note = [&](std::size_t& counter, const std::string& m) {
        ++counter;
        if (rep.messages.size() < 20) rep.messages.push_back(m);
    };
    std::map<std::vector<int>, ShapeInfo> shapes;
    Scratch<2> sc2;
    Scratch<4> sc4;
    for (int n = opt.min_north; n <= opt.max_north; ++n) {
        const auto nus = all_paths(n, opt.max_run, opt.vary_nu0);
        for (const NEPath& nu : nus) {
            ++rep.paths;
            // independent oracle: the valley statistic over enumerated paths
            const auto nar = narayana_polynomial(nu);
            const std::int64_t chi_expected = 1 - evaluate(nar, -1);
            std::vector<std::int64_t> first_f;
            for (const IncrementVector& d : all_deltas(nu)) {
                const Region reg(nu, d);
                const Shape& sh = reg.shape();
                auto it = shapes.find(sh.u);
                const auto tl = std::chrono::steady_clock::now();
                const bool fresh = it == shapes.end();
                if (fresh) it = shapes.emplace(sh.u, shape_info(sh)).first;
                const ShapeInfo& info = it->second;
                LatticeCheck c = TreeEngine<2>::fits(reg) ? check_region<2>(reg, info.compat, info.faces, sc2)
                                                          : check_region<4>(reg, info.compat, info.faces, sc4);
                rep.iso_seconds += since(tl);
                if (fresh) {
                    const auto th = std::chrono::steady_clock::now();
                    check_homology(sh, it->second);
                    rep.homology_seconds += since(th);
                    if (!it->second.homology_ok) note(rep.homology_failures, it->second.message);
                }
                ++rep.lattices;
                rep.elements += c.elements;
                rep.covers += c.covers;
                if (!c.iso_ok) note(rep.iso_failures, label(nu, d) + ": " + c.message);
                if (!c.lambda_ok) note(rep.lambda_failures, label(nu, d) + ": " + c.message);
                std::int64_t chi = 0;
                for (std::size_t k = 1; k < c.f_vector.size(); ++k) chi += (k % 2 ? 1 : -1) * c.f_vector[k];
                if (chi != chi_expected)
                    note(rep.euler_failures, label(nu, d) + ": chi " + std::to_string(chi) + " vs 1 - Nar(-1) = " +
                                                 std::to_string(chi_expected));
                if (first_f.empty())
                    first_f = c.f_vector;
                else if (c.f_vector != first_f)
                    note(rep.fvector_failures, label(nu, d) + ": f-vector depends on delta");
                bool tamari = true;
                for (int i = 1; i <= n; ++i) tamari &= d[i - 1] == nu.runs[i];
                if (tamari) {
                    // f_i (faces of size i + 1) = Nar coefficient of x^{i+1}
                    std::vector<std::int64_t> a(c.f_vector.begin(), c.f_vector.end());
                    std::vector<std::int64_t> b = nar;
                    a.resize(std::max(a.size(), b.size()), 0);
                    b.resize(a.size(), 0);
                    if (!std::equal(a.begin() + 1, a.end(), b.begin() + 1))
                        note(rep.narayana_failures, label(nu, d) + ": f-vector differs from Narayana coefficients");
                }
                if (n <= opt.filter_lambda_max_north) {
                    // explicit lattice: join tables, filter-based lambda, perspective labels
                    const auto te = std::chrono::steady_clock::now();
                    const AltTamari at = build_alt_tamari(nu, d);
                    ++rep.explicit_lattices;
                    const auto cov = at.lattice.covers();
                    for (std::size_t k = 0; k < cov.size(); ++k) {
                        const int j = lambda_jsd(at.lattice, cov[k].first, cov[k].second);
                        const int idx = at.lattice.ji_index(j);
                        if (idx < 0 || at.ji_box[idx] != at.cover_box[k]) {
                            note(rep.lambda_failures, label(nu, d) + ": filter lambda differs from perspective label");
                            break;
                        }
                    }
                    rep.explicit_seconds += since(te);
                }
            }
        }
        if (opt.log)
            opt.log("n=" + std::to_string(n) + ": " + std::to_string(rep.lattices) + " lattices, " +
                    std::to_string(rep.elements) + " elements, " +
                    std::to_string(since(t0)) + " s");
    }
    rep.shapes = shapes.size();
    rep.seconds = since(t0);
    return rep;
}

}  // namespace altnu
