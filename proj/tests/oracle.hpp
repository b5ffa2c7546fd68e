#pragma once

// Slow, definition-level reference implementations. Nothing here calls into
// the library's algorithms beyond plain data types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "altnu/paths.hpp"

namespace oracle {

using altnu::Box;
using altnu::NEPath;

// Ferrers diagram under the check path, lower right corner at (nc0, 0):
// row y reaches right to nc0 + delta_1 + ... + delta_y.
inline int check_right(const NEPath& nu, const std::vector<int>& delta, int y) {
    int total = 0, ds = 0;
    for (int r : nu.runs) total += r;
    for (int d : delta) ds += d;
    int x = total - ds;
    for (int k = 0; k < y; ++k) x += delta[k];
    return x;
}

// The hat path starts at (nc0, 0) and walks W^{nu_0} N W^{nu_1 - delta_1} ...
inline int hat_left(const NEPath& nu, const std::vector<int>& delta, int y) {
    int x = check_right(nu, delta, 0) - nu.runs[0];
    for (int k = 1; k <= y; ++k) x -= nu.runs[k] - delta[k - 1];
    return x;
}

struct Pt {
    int x, y;
    auto operator<=>(const Pt&) const = default;
};

inline std::vector<Pt> region_points(const NEPath& nu, const std::vector<int>& delta) {
    std::vector<Pt> out;
    for (int y = 0; y <= nu.n(); ++y)
        for (int x = hat_left(nu, delta, y); x <= check_right(nu, delta, y); ++x) out.push_back({x, y});
    std::sort(out.begin(), out.end(), [](Pt a, Pt b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    return out;
}

// Strictly SW/NE with the whole bounding rectangle under the check path.
inline bool incompatible(Pt p, Pt q, const NEPath& nu, const std::vector<int>& delta) {
    if (p.x > q.x) std::swap(p, q);
    if (!(p.x < q.x && p.y < q.y)) return false;
    for (int y = p.y; y <= q.y; ++y)
        for (int x = p.x; x <= q.x; ++x)
            if (x > check_right(nu, delta, y)) return false;
    return true;
}

// Maximal compatible sets by plain include/exclude recursion.
inline std::set<std::vector<Pt>> trees(const NEPath& nu, const std::vector<int>& delta) {
    const auto pts = region_points(nu, delta);
    std::set<std::vector<Pt>> out;
    std::vector<Pt> cur;
    auto ok = [&](Pt p, const std::vector<Pt>& s) {
        for (Pt q : s)
            if (incompatible(p, q, nu, delta)) return false;
        return true;
    };
    auto rec = [&](auto& self, std::size_t i) -> void {
        if (i == pts.size()) {
            for (Pt p : pts)
                if (std::find(cur.begin(), cur.end(), p) == cur.end() && ok(p, cur)) return;
            auto s = cur;
            std::sort(s.begin(), s.end());
            out.insert(s);
            return;
        }
        if (ok(pts[i], cur)) {
            cur.push_back(pts[i]);
            self(self, i + 1);
            cur.pop_back();
        }
        self(self, i + 1);
    };
    rec(rec, 0);
    return out;
}

// Northeast paths with the same endpoints as nu staying weakly above it,
// by brute force over all step words.
inline std::vector<std::vector<int>> dyck_paths(const NEPath& nu) {
    const int n = nu.n();
    int W = 0;
    for (int r : nu.runs) W += r;
    // prefix: x position of nu when it takes north step k (1-based)
    std::vector<int> nu_x(n + 1, 0);
    int acc = 0;
    for (int k = 0; k < n; ++k) {
        acc += nu.runs[k];
        nu_x[k + 1] = acc;
    }
    std::vector<std::vector<int>> out;
    std::vector<int> runs(n + 1, 0);
    auto rec = [&](auto& self, int k, int x) -> void {
        if (k == n) {
            runs[n] = W - x;
            out.push_back(runs);
            return;
        }
        // k-th north step (0-based) at position x + runs[k] <= nu_x[k+1]
        for (int e = 0; x + e <= nu_x[k + 1]; ++e) {
            runs[k] = e;
            self(self, k + 1, x + e);
        }
    };
    rec(rec, 0, 0);
    return out;
}

inline int valleys(const std::vector<int>& runs) {
    int v = 0;
    for (std::size_t k = 0; k + 1 < runs.size(); ++k)
        if (runs[k] > 0) ++v;  // E^{r} followed by a north step
    return v;
}

// Ranks over GF(2) with dense rows; reduced Betti numbers, index dim + 1.
inline std::vector<std::int64_t> reduced_betti(const std::vector<std::uint64_t>& faces) {
    int top = 0;
    for (auto f : faces) top = std::max(top, __builtin_popcountll(f));
    std::vector<std::vector<std::uint64_t>> by(top + 1);
    for (auto f : faces) by[__builtin_popcountll(f)].push_back(f);
    std::vector<std::int64_t> rank(top + 2, 0);  // rank of boundary from size s to s-1
    for (int s = 1; s <= top; ++s) {
        std::map<std::uint64_t, int> idx;
        for (std::size_t i = 0; i < by[s - 1].size(); ++i) idx[by[s - 1][i]] = static_cast<int>(i);
        std::vector<std::vector<char>> m;
        for (auto f : by[s]) {
            std::vector<char> row(by[s - 1].size(), 0);
            for (int v = 0; v < 64; ++v)
                if (f >> v & 1) row[idx.at(f & ~(std::uint64_t{1} << v))] ^= 1;
            m.push_back(row);
        }
        std::int64_t r = 0;
        const std::size_t cols = by[s - 1].size();
        for (std::size_t c = 0; c < cols && r < static_cast<std::int64_t>(m.size()); ++c) {
            std::size_t piv = r;
            while (piv < m.size() && !m[piv][c]) ++piv;
            if (piv == m.size()) continue;
            std::swap(m[piv], m[r]);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (i != static_cast<std::size_t>(r) && m[i][c])
                    for (std::size_t k = 0; k < cols; ++k) m[i][k] ^= m[r][k];
            ++r;
        }
        rank[s] = r;
    }
    std::vector<std::int64_t> out(top + 1);
    for (int s = 0; s <= top; ++s)
        out[s] = static_cast<std::int64_t>(by[s].size()) - rank[s] - rank[s + 1];
    return out;
}

// Boxes of F_u (1-based rows from the top, columns from the left) and the
// incompatibility rule read straight off the definition.
inline bool in_shape(Box b, const std::vector<int>& u) {
    return b.c >= 1 && b.c <= static_cast<int>(u.size()) && b.r >= 1 && b.r <= u[b.c - 1];
}

inline bool box_incompatible(Box a, Box b, const std::vector<int>& u) {
    if (a == b) return false;
    if (a.r == b.r || a.c == b.c) return true;
    if (a.c > b.c) std::swap(a, b);
    if (a.r < b.r) return false;  // a is northwest of b
    for (int r = std::min(a.r, b.r); r <= std::max(a.r, b.r); ++r)
        for (int c = a.c; c <= b.c; ++c)
            if (!in_shape({r, c}, u)) return false;
    return true;
}

inline std::vector<Box> boxes(const std::vector<int>& u) {
    std::vector<Box> out;
    for (int c = 1; c <= static_cast<int>(u.size()); ++c)
        for (int r = 1; r <= u[c - 1]; ++r) out.push_back({r, c});
    return out;
}

// All compatible box sets (faces), as sorted box vectors.
inline std::set<std::vector<Box>> faces(const std::vector<int>& u) {
    const auto bs = boxes(u);
    std::set<std::vector<Box>> out;
    std::vector<Box> cur;
    auto rec = [&](auto& self, std::size_t i) -> void {
        if (i == bs.size()) {
            out.insert(cur);
            return;
        }
        self(self, i + 1);
        for (Box b : cur)
            if (box_incompatible(b, bs[i], u)) return;
        cur.push_back(bs[i]);
        self(self, i + 1);
        cur.pop_back();
    };
    rec(rec, 0);
    return out;
}

// All unimodal sequences of positive integers with the given sum.
inline std::vector<std::vector<int>> unimodal(int total) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto& self, int left, bool falling) -> void {
        if (left == 0) {
            if (!cur.empty()) out.push_back(cur);
            return;
        }
        for (int h = 1; h <= left; ++h) {
            const bool f = falling || (!cur.empty() && h < cur.back());
            if (falling && h > cur.back()) break;
            cur.push_back(h);
            self(self, left - h, f);
            cur.pop_back();
        }
    };
    rec(rec, total, false);
    return out;
}

}  // namespace oracle
