#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "altnu/complex.hpp"
#include "altnu/paths.hpp"

namespace altnu {

enum class ShellingMode { Plain, Refined };

struct ShellingOrder {
    ShellingMode mode = ShellingMode::Refined;
    std::vector<Face> facets;                // F_0, F_1, ...
    std::vector<Face> restriction;           // R(F_j)
    std::vector<std::vector<int>> sequence;  // (a_n, ..., a_1), a_i = i or 0
};

// Label of every box (by shape id): i if it shares a row or column with q_i
// once the boxes of q_1..q_{i-1} are removed.
std::vector<int> label_boxes(const Shape& shape);
// q_1..q_n, then labels n..1, each label top to bottom and right to left.
std::vector<int> vertex_insertion_order(const Shape& shape);
std::vector<int> label_sequence(Face f, const std::vector<int>& labels, int n);

ShellingOrder shelling_order(const Shape& shape, ShellingMode mode = ShellingMode::Refined, bool rearrange = false);

// Each F_j (j > 0) meets the earlier facets in a pure (dim F_j - 1)-complex.
bool is_valid_shelling(const std::vector<Face>& order, std::string* why = nullptr);
std::vector<Face> restriction_sets(const std::vector<Face>& order);
// (beta_0, ..., beta_top), beta_0 unreduced, from homology facets R(F) = F.
std::vector<std::int64_t> betti_via_shelling(const ShellingOrder& order);
std::vector<std::int64_t> betti_via_shelling(const std::vector<Face>& order);
// j > 0 with R(F_j) = F_j
std::vector<int> homology_facets(const ShellingOrder& order);

// One entry per shape row, bottom row first: position (1-based, left to
// right) of the facet's box among the row's boxes compatible with the boxes
// chosen below; 0 for an empty row.
std::vector<int> a_sequence(Face facet, const Shape& shape);
Face facet_from_a(const std::vector<int>& a, const Shape& shape);

// nu_0 = 0, nu_i >= 2, delta = 0: the facet attached to a path above the
// shrunken path.
Face h_map(const NEPath& shrunken_dyck_path, const NEPath& nu);
// Facet of F_{delta,nu} to the facet of F_{delta',nu} with the same
// a-sequence. A bijection on facets of top size when nu_i >= 2 for 0 < i < n.
Face phi_map(Face facet, const Shape& from, const Shape& to);

std::string shelling_to_csv(const ShellingOrder& order, const Shape& shape);
std::string shelling_to_json(const ShellingOrder& order, const Shape& shape);

}  // namespace altnu
