#include "altnu/shelling.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "altnu/boxcomplex.hpp"
#include "altnu/error.hpp"

namespace altnu {

std::vector<int> label_boxes(const Shape& shape) { return decomposing_vertices(shape).label; }

std::vector<int> vertex_insertion_order(const Shape& shape) {
    const Decomposition d = decomposing_vertices(shape);
    std::vector<int> order;
    for (Box q : d.q) order.push_back(shape.id(q));
    for (int i = static_cast<int>(d.q.size()); i >= 1; --i) {
        std::vector<Box> bs = d.v[i - 1];
        std::sort(bs.begin(), bs.end(), [](Box a, Box b) { return a.r != b.r ? a.r < b.r : a.c > b.c; });
        for (Box b : bs) order.push_back(shape.id(b));
    }
    return order;
}

std::vector<int> label_sequence(Face f, const std::vector<int>& labels, int n) {
    std::vector<int> seq(n, 0);
    for (int v : face_vertices(f)) seq[n - labels[v]] = labels[v];
    return seq;
}

std::vector<Face> restriction_sets(const std::vector<Face>& order) {
    std::vector<Face> r(order.size(), 0);
    for (std::size_t j = 1; j < order.size(); ++j)
        for (std::size_t k = 0; k < j; ++k) {
            const Face diff = order[j] & ~order[k];
            if (face_size(diff) == 1) r[j] |= diff;
        }
    return r;
}

bool is_valid_shelling(const std::vector<Face>& order, std::string* why) {
    // With R(F_j) the union of the single vertices F_j \ F_k (k < j), the
    // intersection with the earlier facets is generated by ridges iff R(F_j)
    // is contained in no earlier facet.
    const auto r = restriction_sets(order);
    for (std::size_t j = 0; j < order.size(); ++j)
        for (std::size_t k = 0; k < j; ++k) {
            if (is_subset(order[j], order[k]) || is_subset(order[k], order[j])) {
                if (why) *why = "facets " + std::to_string(k) + " and " + std::to_string(j) + " are nested";
                return false;
            }
            if (is_subset(r[j], order[k])) {
                if (why) *why = "facet " + std::to_string(j) + " meets facet " + std::to_string(k) + " outside a ridge";
                return false;
            }
        }
    return true;
}

namespace {

std::vector<std::int64_t> betti_from_restrictions(const std::vector<Face>& facets, const std::vector<Face>& r) {
    int top = 0;
    for (Face f : facets) top = std::max(top, face_size(f));
    std::vector<std::int64_t> reduced(top + 1, 0);  // index = dim + 1
    if (facets.size() == 1 && facets[0] == 0) reduced[0] = 1;
    for (std::size_t j = 1; j < facets.size(); ++j)
        if (r[j] == facets[j]) ++reduced[face_size(facets[j])];
    return betti_from_reduced(reduced);
}

}  // namespace

std::vector<std::int64_t> betti_via_shelling(const std::vector<Face>& order) {
    return betti_from_restrictions(order, restriction_sets(order));
}

std::vector<std::int64_t> betti_via_shelling(const ShellingOrder& order) {
    return betti_from_restrictions(order.facets, order.restriction);
}

std::vector<int> homology_facets(const ShellingOrder& order) {
    std::vector<int> out;
    for (std::size_t j = 1; j < order.facets.size(); ++j)
        if (order.restriction[j] == order.facets[j]) out.push_back(static_cast<int>(j));
    return out;
}

ShellingOrder shelling_order(const Shape& shape, ShellingMode mode, bool rearrange) {
    const SimplicialComplex d = box_complex(shape);
    const Decomposition dec = decomposing_vertices(shape);
    const int n = static_cast<int>(dec.q.size());
    // latest inserted vertex first
    std::vector<int> hint = vertex_insertion_order(shape);
    std::reverse(hint.begin(), hint.end());
    VDResult vd = is_vertex_decomposable(d, hint);
    if (!vd.decomposable) throw Error(ErrorKind::ValidationFailed, "box complex " + to_string(shape.u) + " is not vertex decomposable");

    ShellingOrder out;
    out.mode = mode;
    out.facets = shelling_from_certificate(*vd.certificate);
    if (shape.box_count() > 0 && out.facets.front() != face_of(dec.q, shape))
        throw Error(ErrorKind::ValidationFailed, "shelling does not start with the q facet");
    for (Face f : out.facets) out.sequence.push_back(label_sequence(f, dec.label, n));
    if (mode == ShellingMode::Plain) {
        std::vector<std::size_t> idx(out.facets.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return out.sequence[a] > out.sequence[b]; });
        std::vector<Face> f;
        std::vector<std::vector<int>> s;
        for (std::size_t i : idx) {
            f.push_back(out.facets[i]);
            s.push_back(out.sequence[i]);
        }
        out.facets = std::move(f);
        out.sequence = std::move(s);
    }
    if (rearrange) {
        std::vector<std::size_t> idx(out.facets.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return face_size(out.facets[a]) > face_size(out.facets[b]);
        });
        std::vector<Face> f;
        std::vector<std::vector<int>> s;
        for (std::size_t i : idx) {
            f.push_back(out.facets[i]);
            s.push_back(out.sequence[i]);
        }
        out.facets = std::move(f);
        out.sequence = std::move(s);
    }
    std::string why;
    if (!is_valid_shelling(out.facets, &why))
        throw Error(ErrorKind::ValidationFailed, "shelling of " + to_string(shape.u) + " invalid: " + why);
    out.restriction = restriction_sets(out.facets);
    return out;
}

namespace {

// Boxes of row r compatible with every box in `chosen`, left to right.
std::vector<int> row_candidates(const Shape& shape, int r, Face chosen, const std::vector<std::uint64_t>& compat) {
    std::vector<int> out;
    for (int c = 1; c <= shape.columns(); ++c) {
        if (shape.u[c - 1] < r) continue;
        const int id = shape.id({r, c});
        if ((chosen & ~compat[id]) == 0) out.push_back(id);
    }
    return out;
}

}  // namespace

std::vector<int> a_sequence(Face facet, const Shape& shape) {
    const auto compat = compatibility_masks(shape);
    const int rows = shape.rows();
    std::vector<int> a;
    Face chosen = 0;
    for (int r = rows; r >= 1; --r) {
        int in_row = -1;
        for (int v : face_vertices(facet))
            if (shape.box(v).r == r) {
                if (in_row >= 0) throw Error(ErrorKind::FaceInvalid, "two boxes in one row");
                in_row = v;
            }
        if (in_row < 0) {
            a.push_back(0);
            continue;
        }
        auto cand = row_candidates(shape, r, chosen, compat);
        auto it = std::find(cand.begin(), cand.end(), in_row);
        if (it == cand.end()) throw Error(ErrorKind::FaceInvalid, "facet boxes are not pairwise compatible");
        a.push_back(static_cast<int>(it - cand.begin()) + 1);
        chosen |= Face{1} << in_row;
    }
    // must be maximal
    for (int v = 0; v < shape.box_count(); ++v)
        if (!(facet >> v & 1) && (facet & ~compat[v]) == 0)
            throw Error(ErrorKind::FaceInvalid, "face is not a facet");
    return a;
}

Face facet_from_a(const std::vector<int>& a, const Shape& shape) {
    const int rows = shape.rows();
    if (static_cast<int>(a.size()) != rows)
        throw Error(ErrorKind::LengthMismatch, "a-sequence needs " + std::to_string(rows) + " entries");
    const auto compat = compatibility_masks(shape);
    Face chosen = 0;
    for (int i = 0; i < rows; ++i) {
        if (a[i] == 0) continue;
        auto cand = row_candidates(shape, rows - i, chosen, compat);
        if (a[i] < 0 || a[i] > static_cast<int>(cand.size()))
            throw Error(ErrorKind::UnrealizableSequence, "a_" + std::to_string(i + 1) + " = " + std::to_string(a[i]) +
                                                             " exceeds " + std::to_string(cand.size()) + " candidates");
        chosen |= Face{1} << cand[a[i] - 1];
    }
    for (int v = 0; v < shape.box_count(); ++v)
        if (!(chosen >> v & 1) && (chosen & ~compat[v]) == 0)
            throw Error(ErrorKind::UnrealizableSequence, "sequence " + to_string(a) + " gives a non-maximal face");
    return chosen;
}

Face h_map(const NEPath& path, const NEPath& nu) {
    if (nu.runs[0] != 0) throw Error(ErrorKind::NotApplicable, "H map needs nu_0 = 0");
    const NEPath bar = shrunken_path(nu);  // throws NotShrinkable
    if (!is_nu_dyck(path, bar)) throw Error(ErrorKind::NotApplicable, "path is not above the shrunken path");
    const int n = nu.n(), W = nu.width();
    const Region reg(nu, IncrementVector(n, 0));
    // x[k] = position of the (k+1)-th north step
    std::vector<int> x;
    int pos = 0;
    for (int k = 0; k < n; ++k) {
        pos += path.runs[k];
        x.push_back(pos);
    }
    Face f = 0;
    for (int i = 1; i <= n - 1; ++i) {
        const int c = W - 2 * i - x[i];
        f |= Face{1} << reg.box_id(c, i);
    }
    return f;
}

Face phi_map(Face facet, const Shape& from, const Shape& to) {
    if (from.nu && to.nu && !(*from.nu == *to.nu))
        throw Error(ErrorKind::NotApplicable, "phi relates shapes of the same nu");
    // only the runs between north steps matter: the last run and nu_0 are free
    if (from.nu)
        for (int i = 1; i < from.nu->n(); ++i)
            if (from.nu->runs[i] < 2) throw Error(ErrorKind::NotApplicable, "phi needs nu_i >= 2 for i < n");
    return facet_from_a(a_sequence(facet, from), to);
}

std::string shelling_to_csv(const ShellingOrder& order, const Shape& shape) {
    std::ostringstream os;
    os << "position,size,a_sequence,restriction_size,homology\n";
    for (std::size_t j = 0; j < order.facets.size(); ++j) {
        auto a = a_sequence(order.facets[j], shape);
        std::string as;
        for (std::size_t i = 0; i < a.size(); ++i) as += (i ? " " : "") + std::to_string(a[i]);
        const bool hom = j > 0 && order.restriction[j] == order.facets[j];
        os << j << ',' << face_size(order.facets[j]) << ',' << as << ',' << face_size(order.restriction[j]) << ','
           << (hom ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string shelling_to_json(const ShellingOrder& order, const Shape& shape) {
    nlohmann::json j;
    j["schema"] = 1;
    j["mode"] = order.mode == ShellingMode::Plain ? "plain" : "refined";
    j["columns"] = shape.u;
    j["facets"] = nlohmann::json::array();
    for (std::size_t k = 0; k < order.facets.size(); ++k) {
        nlohmann::json f;
        for (Box b : boxes_of(order.facets[k], shape)) f["boxes"].push_back({b.r, b.c});
        for (Box b : boxes_of(order.restriction[k], shape)) f["restriction"].push_back({b.r, b.c});
        if (!f.contains("restriction")) f["restriction"] = nlohmann::json::array();
        f["sequence"] = order.sequence[k];
        f["homology"] = k > 0 && order.restriction[k] == order.facets[k];
        j["facets"].push_back(f);
    }
    return j.dump();
}

}  // namespace altnu
