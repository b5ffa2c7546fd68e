#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "altnu/bits.hpp"
#include "altnu/trees.hpp"

namespace altnu {

// Bitmask implementation of (delta,nu)-trees. Point (x, y) is bit
// y * (W + 1) + x. The library uses a 4-word instance; exhaustive sweeps
// instantiate a narrower one.
template <std::size_t Wd>
class TreeEngine {
public:
    using Mask = WordMask<Wd>;

    static bool fits(const Region& reg) { return reg.index_capacity() <= Mask::capacity(); }

    explicit TreeEngine(const Region& reg) : reg_(reg), S_(reg.stride()), n_(reg.n()) {
        const int cap = reg.index_capacity();
        incompat_.assign(cap, Mask{});
        box_.assign(cap, -1);
        for (int y = 0; y <= n_; ++y)
            for (int x = reg.left(y); x <= reg.right(y); ++x) region_.set(y * S_ + x);
        // p = (x1, y1) clashes with q = (x2, y2), x2 > x1, y2 > y1, iff x2 <= R(y1)
        for (int y1 = 0; y1 <= n_; ++y1)
            for (int x1 = reg.left(y1); x1 <= reg.right(y1); ++x1) {
                const int p = y1 * S_ + x1;
                for (int y2 = y1 + 1; y2 <= n_; ++y2) {
                    const int lo = std::max(x1 + 1, reg.left(y2)), hi = std::min(reg.right(y1), reg.right(y2));
                    for (int x2 = lo; x2 <= hi; ++x2) {
                        incompat_[p].set(y2 * S_ + x2);
                        incompat_[y2 * S_ + x2].set(p);
                    }
                }
            }
        for (int y = 0; y < n_; ++y)
            for (int c = reg.left(y); c < reg.right(y); ++c) box_[y * S_ + c] = reg.box_id(c, y);
        // the column above x is [ylo_[x], n]: L(y) falls and R(y) rises with y
        ylo_.assign(reg.width() + 1, n_ + 1);
        for (int x = 0; x <= reg.width(); ++x)
            for (int y = n_; y >= 0 && x >= reg.left(y) && x <= reg.right(y); --y) ylo_[x] = y;
        col_.assign(reg.width() + 1, Mask{});
        for (int x = 0; x <= reg.width(); ++x)
            for (int y = ylo_[x]; y <= n_; ++y) col_[x].set(y * S_ + x);
        below_.assign(n_ + 2, Mask{});
        for (int y = 1; y <= n_ + 1; ++y) {
            below_[y] = below_[y - 1];
            for (int i = (y - 1) * S_; i < y * S_; ++i) below_[y].set(i);
        }
        const int W = reg.width();
        span_.assign((W + 1) * (W + 1), Mask{});
        for (int a = 0; a <= W; ++a)
            for (int b = a; b <= W; ++b)
                for (int y = 0; y <= n_; ++y)
                    for (int x = a; x <= b; ++x) span_[a * (W + 1) + b].set(y * S_ + x);
        row_of_.assign(cap, 0);
        for (int i = 0; i < cap; ++i) row_of_[i] = i / S_;
        int nb = reg.shape().box_count();
        box_cell_.assign(nb, -1);
        box_x_.assign(nb, 0);
        box_y_.assign(nb, 0);
        for (int i = 0; i < cap; ++i)
            if (box_[i] >= 0) {
                box_cell_[box_[i]] = i;
                box_x_[box_[i]] = i % S_ + 1;
                box_y_[box_[i]] = i / S_;
            }
    }

    const Region& region() const { return reg_; }
    const Mask& region_mask() const { return region_; }
    int stride() const { return S_; }
    bool compatible(int idx, const Mask& t) const { return !incompat_[idx].intersects(t); }
    const Mask& incompat(int idx) const { return incompat_[idx]; }
    // Shape id of lattice box with lower-left corner index idx, or -1.
    int box_at(int idx) const { return box_[idx]; }
    // Lower-left corner index of a shape box.
    int box_cell(int id) const { return box_cell_[id]; }

    bool is_tree(const Mask& t) const {
        for (int i = t.first(); i >= 0; i = t.next(i + 1))
            if (!region_.test(i) || incompat_[i].intersects(t)) return false;
        for (int i = region_.first(); i >= 0; i = region_.next(i + 1))
            if (!t.test(i) && !incompat_[i].intersects(t)) return false;
        return true;
    }

    // shaded[x] = row of the marked box whose right edge is the line x, or -1.
    Mask theta_shaded(const std::vector<int>& shaded) const { return theta_shaded(shaded.data()); }
    Mask theta_shaded(const int* shaded) const {
        // A node never clashes with its own column, so each column is settled
        // with mask operations against the points blocked so far.
        Mask t, blocked;
        auto place_all = [&](const Mask& m) {
            t |= m;
            m.for_each([&](int i) { blocked |= incompat_[i]; });
        };
        const int W = reg_.width();
        for (int x = W; x >= 1; --x) {
            const Mask avail = col_[x] & ~blocked;
            const int b = shaded[x];
            if (b < 0) {
                const int i = avail.first();
                if (i >= 0) {
                    t.set(i);
                    blocked |= incompat_[i];
                }
                continue;
            }
            // every free point up to the box's top line, then the next one
            Mask m = avail & below_[b + 1];
            const int next = (avail & ~below_[b + 1]).first();
            if (next >= 0) m.set(next);
            place_all(m);
        }
        place_all(col_[0] & ~blocked);
        Mask free = region_ & ~t & ~blocked;
        for (int x = 1; x <= W && free.any(); ++x) {
            const Mask m = col_[x] & free;
            if (m.none()) continue;
            place_all(m);
            free &= ~t & ~blocked;
        }
        return t;
    }

    // Box set given as shape ids; returns false in `ok` if two boxes share a column.
    Mask theta_ids(const std::vector<int>& ids, bool* ok = nullptr) const {
        std::vector<int> shaded(reg_.width() + 1, -1);
        if (ok) *ok = true;
        for (int id : ids) {
            int cell = box_cell_[id];
            int x = cell % S_ + 1, y = cell / S_;
            if (shaded[x] >= 0 && ok) *ok = false;
            shaded[x] = y;
        }
        return theta_shaded(shaded);
    }

    Mask theta_mask(std::uint64_t ids) const {
        int shaded[Mask::capacity()];
        std::fill(shaded, shaded + reg_.width() + 1, -1);
        while (ids) {
            int id = std::countr_zero(ids);
            ids &= ids - 1;
            shaded[box_x_[id]] = box_y_[id];
        }
        return theta_shaded(shaded);
    }

    // f(T2, box_id, q_idx, q2_idx, p_idx, r_idx) for every right rotation.
    template <class F>
    void up_rotations(const Mask& t, F&& f) const {
        for (int qi = t.first(); qi >= 0; qi = t.next(qi + 1)) {
            const int xq = qi % S_, yq = qi / S_;
            int yp = -1;
            for (int y = yq + 1; y <= n_; ++y)
                if (t.test(y * S_ + xq)) {
                    yp = y;
                    break;
                }
            if (yp < 0) continue;
            const int ri = t.next(qi + 1);
            if (ri < 0 || ri >= (yq + 1) * S_) continue;
            const int xr = ri % S_;
            bool empty = true;
            for (int y = yq + 1; y <= yp && empty; ++y)
                if (t.any_in(y * S_ + xq + 1, y * S_ + xr)) empty = false;
            if (!empty) continue;
            Mask t2 = t;
            t2.reset(qi);
            const int q2 = yp * S_ + xr;
            t2.set(q2);
            f(t2, box_[yq * S_ + xr - 1], qi, q2, yp * S_ + xq, ri);
        }
    }

    // f(T2, box_id, q2_idx (removed), q_idx (added), p_idx (west), r_idx (south)).
    template <class F>
    void down_rotations(const Mask& t, F&& f) const {
        // ascending scan: the previous node and the last node seen in each
        // column are the west and south neighbours
        int last[Mask::capacity()];
        std::fill(last, last + S_, -1);
        int pi = -1;
        const int W1 = reg_.width() + 1;
        t.for_each([&](int qi) {
            const int y = row_of_[qi], x = qi - y * S_;
            const int ri = last[x], prev = pi;
            last[x] = qi;
            pi = qi;
            if (prev < y * S_ || ri < 0) return;
            const int xp = prev - y * S_, yr = row_of_[ri];
            if (xp < reg_.left(yr) || xp > reg_.right(yr)) return;
            if ((t & span_[xp * W1 + x - 1] & below_[y] & ~below_[yr]).any()) return;
            Mask t2 = t;
            t2.reset(qi);
            const int q = yr * S_ + xp;
            t2.set(q);
            f(t2, box_[yr * S_ + x - 1], qi, q, prev, ri);
        });
    }

    // Bron-Kerbosch over the compatibility graph.
    template <class F>
    void for_each_tree(F&& f) const {
        std::vector<Mask> comp(reg_.index_capacity());
        for (int i = region_.first(); i >= 0; i = region_.next(i + 1)) {
            comp[i] = region_ & ~incompat_[i];
            comp[i].reset(i);
        }
        Mask r;
        bk(r, region_, Mask{}, comp, f);
    }

private:
    template <class F>
    void bk(Mask& r, Mask p, Mask x, const std::vector<Mask>& comp, F& f) const {
        if (p.none()) {
            if (x.none()) f(r);
            return;
        }
        // pivot maximising |P & N(u)| keeps the branching small
        Mask px = p | x;
        int pivot = -1, best = -1;
        for (int u = px.first(); u >= 0; u = px.next(u + 1)) {
            const int c = (p & comp[u]).count();
            if (c > best) {
                best = c;
                pivot = u;
            }
        }
        Mask cand = p & ~comp[pivot];
        for (int v = cand.first(); v >= 0; v = cand.next(v + 1)) {
            r.set(v);
            bk(r, p & comp[v], x & comp[v], comp, f);
            r.reset(v);
            p.reset(v);
            x.set(v);
        }
    }

    const Region& reg_;
    int S_, n_;
    Mask region_;
    std::vector<Mask> incompat_;
    std::vector<int> box_, box_cell_, box_x_, box_y_;
    std::vector<int> row_of_;
    std::vector<int> ylo_;         // the column above x is [ylo_[x], n]
    std::vector<Mask> col_, below_;  // region column x; all points with y < k
    std::vector<Mask> span_;         // columns a..b, all rows, at a * (W + 1) + b
};

}  // namespace altnu
