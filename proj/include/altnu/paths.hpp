#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace altnu {

// A northeast path nu encoded by its east runs (nu_0, nu_1, ..., nu_n):
// nu_0 east steps, then N E^{nu_1} ... N E^{nu_n}.
struct NEPath {
    std::vector<int> runs;

    NEPath() = default;
    explicit NEPath(std::vector<int> r);

    int n() const { return static_cast<int>(runs.size()) - 1; }
    int width() const;
    friend bool operator==(const NEPath&, const NEPath&) = default;
    friend auto operator<=>(const NEPath&, const NEPath&) = default;
};

using IncrementVector = std::vector<int>;  // (delta_1, ..., delta_n)

// Throws Error(DeltaInvalid) naming the first offending index.
void validate_delta(const NEPath& nu, const IncrementVector& delta);

NEPath check_path(const NEPath& nu, const IncrementVector& delta);
// West runs of the upper-left bounding path: (nu_0, nu_1-delta_1, ..., nu_n-delta_n).
std::vector<int> hat_path(const NEPath& nu, const IncrementVector& delta);

// Box in a top-aligned shape: row counted from the top, column from the left,
// both 1-based.
struct Box {
    int r = 0;
    int c = 0;
    friend bool operator==(const Box&, const Box&) = default;
    friend auto operator<=>(const Box&, const Box&) = default;
};

// Top-aligned unimodal column diagram F_u. Boxes are numbered column by
// column (left to right), top to bottom inside a column.
struct Shape {
    std::vector<int> u;
    std::optional<NEPath> nu;
    std::optional<IncrementVector> delta;

    Shape() = default;
    explicit Shape(std::vector<int> heights);

    int columns() const { return static_cast<int>(u.size()); }
    int rows() const;
    int box_count() const { return static_cast<int>(offset_.empty() ? 0 : offset_.back()); }
    bool contains(Box b) const;
    int id(Box b) const;  // throws BoxOutOfShape
    Box box(int id) const;
    std::vector<Box> boxes() const;

private:
    std::vector<int> offset_;  // prefix sums of u
};

bool is_unimodal(const std::vector<int>& u);

Shape shape_from(const NEPath& nu, const IncrementVector& delta);

// Lattice paths with the same endpoints as nu lying weakly above it, as east
// runs, in lexicographic order of the run vectors.
std::vector<NEPath> enumerate_nu_dyck(const NEPath& nu, std::size_t cap = 1000000);
std::uint64_t count_nu_dyck(const NEPath& nu);
bool is_nu_dyck(const NEPath& path, const NEPath& nu);
int valleys(const NEPath& path);  // number of EN factors

// Coefficients c_i of Nar_nu(x) = sum c_i x^i.
std::vector<std::int64_t> narayana_polynomial(const NEPath& nu, std::size_t cap = 1000000);
std::int64_t evaluate(const std::vector<std::int64_t>& poly, std::int64_t x);

NEPath shrunken_path(const NEPath& nu);

std::uint64_t binomial(int n, int k);
// (1/((m-2)n+1)) * C((m-1)n, n)
std::uint64_t fuss_catalan(int m, int n);

// "(1,2,0)", "1,2,0" or a step string such as "ENEEN" / "NENE".
NEPath parse_path(const std::string& s);
IncrementVector parse_vector(const std::string& s);
// (NE^m)^n, i.e. runs (0, m, ..., m).
NEPath uniform_path(int m, int n);
std::string to_string(const std::vector<int>& v);
std::string to_steps(const NEPath& p);

// Alternative bijection from faces of the Dyck box complex (delta = 0) to
// nu-Dyck paths: mirror the marked boxes and read them as valleys.
NEPath peak_bijection(const std::vector<Box>& face, const Shape& shape);

}  // namespace altnu
