#include "altnu/lattice.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "altnu/error.hpp"

namespace altnu {

namespace {

inline bool bit(const std::vector<std::uint64_t>& row, int i) { return (row[i >> 6] >> (i & 63)) & 1u; }
inline void set_bit(std::vector<std::uint64_t>& row, int i) { row[i >> 6] |= std::uint64_t{1} << (i & 63); }

}  // namespace

FiniteLattice FiniteLattice::build(int n, const std::vector<std::pair<int, int>>& covers, Options opt) {
    if (n <= 0) throw Error(ErrorKind::NotALattice, "empty poset");
    if (static_cast<std::size_t>(n) > opt.max_elements)
        throw Error(ErrorKind::SizeLimit, std::to_string(n) + " elements exceed the limit of " +
                                              std::to_string(opt.max_elements));
    FiniteLattice L;
    L.n_ = n;
    L.words_ = (n + 63) / 64;
    L.up_.assign(n, {});
    L.down_.assign(n, {});
    for (auto [x, y] : covers) {
        if (x < 0 || y < 0 || x >= n || y >= n || x == y)
            throw Error(ErrorKind::NotACover, "cover (" + std::to_string(x) + "," + std::to_string(y) + ")");
        L.up_[x].push_back(y);
        L.down_[y].push_back(x);
    }
    for (int i = 0; i < n; ++i) {
        std::sort(L.up_[i].begin(), L.up_[i].end());
        std::sort(L.down_[i].begin(), L.down_[i].end());
        if (std::adjacent_find(L.up_[i].begin(), L.up_[i].end()) != L.up_[i].end())
            throw Error(ErrorKind::NotACover, "duplicate cover relation");
    }

    // Kahn's algorithm
    std::vector<int> indeg(n);
    for (int i = 0; i < n; ++i) indeg[i] = static_cast<int>(L.down_[i].size());
    std::vector<int> queue;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) queue.push_back(i);
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (int y : L.up_[queue[h]])
            if (--indeg[y] == 0) queue.push_back(y);
    if (static_cast<int>(queue.size()) != n) throw Error(ErrorKind::CyclicCovers, "cover relations contain a cycle");
    L.topo_ = std::move(queue);
    L.pos_.assign(n, 0);
    for (int i = 0; i < n; ++i) L.pos_[L.topo_[i]] = i;

    int minima = 0, maxima = 0;
    for (int i = 0; i < n; ++i) {
        if (L.down_[i].empty()) ++minima, L.bottom_ = i;
        if (L.up_[i].empty()) ++maxima, L.top_ = i;
    }
    if (minima != 1 || maxima != 1) throw Error(ErrorKind::NotALattice, "poset is not bounded");

    L.below_.assign(n, std::vector<std::uint64_t>(L.words_, 0));
    L.above_.assign(n, std::vector<std::uint64_t>(L.words_, 0));
    for (int y : L.topo_) {
        set_bit(L.below_[y], y);
        for (int x : L.down_[y])
            for (int w = 0; w < L.words_; ++w) L.below_[y][w] |= L.below_[x][w];
    }
    for (auto it = L.topo_.rbegin(); it != L.topo_.rend(); ++it) {
        const int x = *it;
        set_bit(L.above_[x], x);
        for (int y : L.up_[x])
            for (int w = 0; w < L.words_; ++w) L.above_[x][w] |= L.above_[y][w];
    }
    if (opt.validate) {
        // no cover may be implied by a longer chain
        for (int y = 0; y < n; ++y)
            for (int x : L.down_[y])
                for (int z : L.down_[y])
                    if (z != x && L.leq(x, z))
                        throw Error(ErrorKind::NotACover, "relation " + std::to_string(x) + " < " + std::to_string(y) +
                                                              " is not a cover");
    }

    if (static_cast<std::size_t>(n) <= opt.table_cap) {
        // join(x, y) is the least of join(x', y) over upper covers x' of x
        L.join_.assign(static_cast<std::size_t>(n) * n, 0);
        L.meet_.assign(static_cast<std::size_t>(n) * n, 0);
        auto J = [&](int x, int y) -> std::uint16_t& { return L.join_[static_cast<std::size_t>(x) * n + y]; };
        auto M = [&](int x, int y) -> std::uint16_t& { return L.meet_[static_cast<std::size_t>(x) * n + y]; };
        for (auto it = L.topo_.rbegin(); it != L.topo_.rend(); ++it) {
            const int x = *it;
            for (int y = 0; y < n; ++y) {
                if (L.leq(x, y)) {
                    J(x, y) = static_cast<std::uint16_t>(y);
                    continue;
                }
                if (L.leq(y, x)) {
                    J(x, y) = static_cast<std::uint16_t>(x);
                    continue;
                }
                int best = -1;
                for (int x2 : L.up_[x]) {
                    const int c = J(x2, y);
                    if (best < 0 || L.leq(c, best)) best = c;
                }
                for (int x2 : L.up_[x])
                    if (!L.leq(best, J(x2, y)))
                        throw Error(ErrorKind::NotALattice, "elements " + std::to_string(x) + " and " +
                                                                std::to_string(y) + " have no join");
                J(x, y) = static_cast<std::uint16_t>(best);
            }
        }
        for (int x : L.topo_) {
            for (int y = 0; y < n; ++y) {
                if (L.leq(x, y)) {
                    M(x, y) = static_cast<std::uint16_t>(x);
                    continue;
                }
                if (L.leq(y, x)) {
                    M(x, y) = static_cast<std::uint16_t>(y);
                    continue;
                }
                int best = -1;
                for (int x2 : L.down_[x]) {
                    const int c = M(x2, y);
                    if (best < 0 || L.leq(best, c)) best = c;
                }
                for (int x2 : L.down_[x])
                    if (!L.leq(M(x2, y), best))
                        throw Error(ErrorKind::NotALattice, "elements " + std::to_string(x) + " and " +
                                                                std::to_string(y) + " have no meet");
                M(x, y) = static_cast<std::uint16_t>(best);
            }
        }
    }

    L.ji_index_.assign(n, -1);
    for (int i = 0; i < n; ++i)
        if (L.down_[i].size() == 1) {
            L.ji_index_[i] = static_cast<int>(L.ji_.size());
            L.ji_.push_back(i);
        }
    const int jw = (static_cast<int>(L.ji_.size()) + 63) / 64;
    L.ji_below_.assign(n, std::vector<std::uint64_t>(std::max(jw, 1), 0));
    for (int y : L.topo_) {
        if (L.ji_index_[y] >= 0) set_bit(L.ji_below_[y], L.ji_index_[y]);
        for (int x : L.down_[y])
            for (int w = 0; w < jw; ++w) L.ji_below_[y][w] |= L.ji_below_[x][w];
    }
    return L;
}

std::vector<std::pair<int, int>> FiniteLattice::covers() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < n_; ++x)
        for (int y : up_[x]) out.emplace_back(x, y);
    return out;
}

bool FiniteLattice::is_cover(int x, int y) const { return std::binary_search(up_[x].begin(), up_[x].end(), y); }

int FiniteLattice::join(int x, int y) const {
    if (!join_.empty()) return join_[static_cast<std::size_t>(x) * n_ + y];
    return join_slow(x, y);
}

int FiniteLattice::meet(int x, int y) const {
    if (!meet_.empty()) return meet_[static_cast<std::size_t>(x) * n_ + y];
    return meet_slow(x, y);
}

int FiniteLattice::join_slow(int x, int y) const {
    int best = -1;
    for (int w = 0; w < words_; ++w) {
        std::uint64_t common = above_[x][w] & above_[y][w];
        while (common) {
            const int c = w * 64 + std::countr_zero(common);
            common &= common - 1;
            if (best < 0 || pos_[c] < pos_[best]) best = c;
        }
    }
    for (int w = 0; w < words_; ++w)
        if ((above_[x][w] & above_[y][w]) & ~above_[best][w])
            throw Error(ErrorKind::NotALattice, "elements " + std::to_string(x) + " and " + std::to_string(y) +
                                                    " have no join");
    return best;
}

int FiniteLattice::meet_slow(int x, int y) const {
    int best = -1;
    for (int w = 0; w < words_; ++w) {
        std::uint64_t common = below_[x][w] & below_[y][w];
        while (common) {
            const int c = w * 64 + std::countr_zero(common);
            common &= common - 1;
            if (best < 0 || pos_[c] > pos_[best]) best = c;
        }
    }
    for (int w = 0; w < words_; ++w)
        if ((below_[x][w] & below_[y][w]) & ~below_[best][w])
            throw Error(ErrorKind::NotALattice, "elements " + std::to_string(x) + " and " + std::to_string(y) +
                                                    " have no meet");
    return best;
}

namespace {

// Minimal elements of {c : x v c = y}.
std::vector<int> join_minimal(const FiniteLattice& L, int x, int y) {
    std::vector<int> cand;
    for (int c = 0; c < L.size(); ++c)
        if (L.leq(c, y) && L.join(x, c) == y) cand.push_back(c);
    std::vector<int> mins;
    for (int c : cand) {
        bool minimal = true;
        for (int d : cand)
            if (d != c && L.leq(d, c)) {
                minimal = false;
                break;
            }
        if (minimal) mins.push_back(c);
    }
    return mins;
}

}  // namespace

bool is_join_semidistributive(const FiniteLattice& L) {
    // A finite lattice is join-semidistributive iff for every cover x < y the
    // set {c : x v c = y} has a least element.
    for (auto [x, y] : L.covers())
        if (join_minimal(L, x, y).size() != 1) return false;
    return true;
}

int lambda_jsd(const FiniteLattice& L, int x, int y) {
    if (!L.is_cover(x, y)) throw Error(ErrorKind::NotACover, "lambda needs a cover relation");
    auto mins = join_minimal(L, x, y);
    if (mins.size() != 1)
        throw Error(ErrorKind::NoUniqueMin, std::to_string(mins.size()) + " minimal elements for cover " +
                                                std::to_string(x) + " < " + std::to_string(y));
    return mins[0];
}

int lambda_jsd_fast(const FiniteLattice& L, int x, int y) {
    if (!L.is_cover(x, y)) throw Error(ErrorKind::NotACover, "lambda needs a cover relation");
    const auto& dy = L.ji_below(y);
    const auto& dx = L.ji_below(x);
    const std::size_t w = dy.size();
    std::vector<std::uint64_t> s(w);
    for (std::size_t i = 0; i < w; ++i) s[i] = dy[i] & ~dx[i];
    int found = -1, count = 0;
    for (std::size_t i = 0; i < w; ++i) {
        std::uint64_t bits = s[i];
        while (bits) {
            const int j = static_cast<int>(i * 64) + std::countr_zero(bits);
            bits &= bits - 1;
            const auto& dm = L.ji_below(L.join_irreducibles()[j]);
            int inter = 0;
            for (std::size_t k = 0; k < w; ++k) inter += std::popcount(dm[k] & s[k]);
            if (inter == 1) {
                found = L.join_irreducibles()[j];
                ++count;
            }
        }
    }
    if (count != 1)
        throw Error(ErrorKind::NoUniqueMin, std::to_string(count) + " minimal join-irreducibles for cover " +
                                                std::to_string(x) + " < " + std::to_string(y));
    return found;
}

std::vector<int> canonical_join_rep(const FiniteLattice& L, int a) {
    std::vector<int> out;
    for (int x : L.lower_covers()[a]) out.push_back(lambda_jsd_fast(L, x, a));
    std::sort(out.begin(), out.end());
    int j = L.bottom();
    for (int c : out) j = L.join(j, c);
    if (j != a) throw Error(ErrorKind::JoinMismatch, "labels of lower covers do not join to the element");
    return out;
}

SimplicialComplex canonical_join_complex(const FiniteLattice& L) {
    const int nv = static_cast<int>(L.join_irreducibles().size());
    if (nv > SimplicialComplex::kMaxVertices)
        throw Error(ErrorKind::DimensionOverflow, std::to_string(nv) + " join-irreducibles exceed 64");
    std::vector<Face> faces;
    for (int a = 0; a < L.size(); ++a) {
        Face f = 0;
        for (int j : canonical_join_rep(L, a)) f |= Face{1} << L.ji_index(j);
        faces.push_back(f);
    }
    return SimplicialComplex(nv, faces);
}

std::string lattice_to_dot(const FiniteLattice& L, const std::vector<std::string>& names,
                           const std::vector<std::string>& cover_labels) {
    std::ostringstream os;
    os << "digraph lattice {\n  rankdir=BT;\n";
    for (int i = 0; i < L.size(); ++i) {
        os << "  v" << i;
        if (i < static_cast<int>(names.size())) os << " [label=\"" << names[i] << "\"]";
        os << ";\n";
    }
    std::size_t k = 0;
    for (auto [x, y] : L.covers()) {
        os << "  v" << x << " -> v" << y;
        if (k < cover_labels.size()) os << " [label=\"" << cover_labels[k] << "\"]";
        os << ";\n";
        ++k;
    }
    os << "}\n";
    return os.str();
}

}  // namespace altnu
