#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "altnu/complex.hpp"

namespace altnu {

// Explicit finite lattice on elements 0..n-1 given by its cover relations.
// Order queries use reachability bit rows; join/meet tables are kept when
// the lattice is small enough (table_cap), otherwise computed on demand.
class FiniteLattice {
public:
    struct Options {
        std::size_t max_elements = 20000;
        std::size_t table_cap = 4096;
        bool validate = true;  // check every pair has a join and a meet
    };

    FiniteLattice() = default;
    static FiniteLattice build(int n, const std::vector<std::pair<int, int>>& covers, Options opt);
    static FiniteLattice build(int n, const std::vector<std::pair<int, int>>& covers) {
        return build(n, covers, Options{});
    }

    int size() const { return n_; }
    int bottom() const { return bottom_; }
    int top() const { return top_; }
    const std::vector<std::vector<int>>& upper_covers() const { return up_; }
    const std::vector<std::vector<int>>& lower_covers() const { return down_; }
    std::vector<std::pair<int, int>> covers() const;
    bool is_cover(int x, int y) const;
    const std::vector<int>& topological_order() const { return topo_; }

    bool leq(int x, int y) const { return (below_[y][x >> 6] >> (x & 63)) & 1u; }
    int join(int x, int y) const;
    int meet(int x, int y) const;

    const std::vector<int>& join_irreducibles() const { return ji_; }
    int ji_index(int e) const { return ji_index_[e]; }  // -1 if not join-irreducible
    // Join-irreducibles below e, as a bit row over ji indices.
    const std::vector<std::uint64_t>& ji_below(int e) const { return ji_below_[e]; }

private:
    int join_slow(int x, int y) const;
    int meet_slow(int x, int y) const;

    int n_ = 0, bottom_ = -1, top_ = -1, words_ = 0;
    std::vector<std::vector<int>> up_, down_;
    std::vector<int> topo_, pos_;
    std::vector<std::vector<std::uint64_t>> below_, above_;
    std::vector<std::uint16_t> join_, meet_;
    std::vector<int> ji_, ji_index_;
    std::vector<std::vector<std::uint64_t>> ji_below_;
};

bool is_join_semidistributive(const FiniteLattice& L);

// min{c : x v c = y} by filtering all elements; throws NoUniqueMin.
int lambda_jsd(const FiniteLattice& L, int x, int y);
// Same label from join-irreducible down-sets; for a cover x < y the set
// {c : x v c = y} is {c <= y, c !<= x} and its minimal elements are
// join-irreducible.
int lambda_jsd_fast(const FiniteLattice& L, int x, int y);

// Can(a) = labels of the down-covers of a; verified to join to a.
std::vector<int> canonical_join_rep(const FiniteLattice& L, int a);

// Complex on the join-irreducibles (vertex i = join_irreducibles()[i]).
SimplicialComplex canonical_join_complex(const FiniteLattice& L);

std::string lattice_to_dot(const FiniteLattice& L, const std::vector<std::string>& names,
                           const std::vector<std::string>& cover_labels);

}  // namespace altnu
