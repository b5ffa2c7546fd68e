#include "altnu/paths.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "altnu/error.hpp"

namespace altnu {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::DeltaInvalid: return "delta-invalid";
        case ErrorKind::ParseError: return "parse-error";
        case ErrorKind::SizeLimit: return "size-limit-exceeded";
        case ErrorKind::NotShrinkable: return "not-shrinkable";
        case ErrorKind::PointOutsideRegion: return "point-outside-region";
        case ErrorKind::BoxOutOfShape: return "box-out-of-shape";
        case ErrorKind::NotNuTree: return "not-nu-tree";
        case ErrorKind::LengthMismatch: return "length-mismatch";
        case ErrorKind::NotACover: return "not-a-cover";
        case ErrorKind::NotALattice: return "not-a-lattice";
        case ErrorKind::CyclicCovers: return "cyclic-covers";
        case ErrorKind::NoUniqueMin: return "no-unique-min";
        case ErrorKind::JoinMismatch: return "join-mismatch";
        case ErrorKind::NotAFace: return "not-a-face";
        case ErrorKind::IncompatibleInput: return "incompatible-input";
        case ErrorKind::ValidationFailed: return "validation-failed";
        case ErrorKind::UnrealizableSequence: return "unrealizable-sequence";
        case ErrorKind::NotApplicable: return "not-applicable";
        case ErrorKind::DimensionOverflow: return "dimension-overflow";
        case ErrorKind::FaceInvalid: return "face-invalid";
    }
    return "error";
}

NEPath::NEPath(std::vector<int> r) : runs(std::move(r)) {
    if (runs.empty()) throw Error(ErrorKind::ParseError, "path needs at least nu_0");
    for (int x : runs)
        if (x < 0) throw Error(ErrorKind::ParseError, "negative east run");
}

int NEPath::width() const { return std::accumulate(runs.begin(), runs.end(), 0); }

void validate_delta(const NEPath& nu, const IncrementVector& delta) {
    if (static_cast<int>(delta.size()) != nu.n())
        throw Error(ErrorKind::DeltaInvalid, "delta has " + std::to_string(delta.size()) +
                                                 " entries, expected " + std::to_string(nu.n()));
    for (int i = 1; i <= nu.n(); ++i) {
        int d = delta[i - 1];
        if (d < 0 || d > nu.runs[i])
            throw Error(ErrorKind::DeltaInvalid, "delta_" + std::to_string(i) + " = " +
                                                     std::to_string(d) + " not in [0, " +
                                                     std::to_string(nu.runs[i]) + "]");
    }
}

NEPath check_path(const NEPath& nu, const IncrementVector& delta) {
    validate_delta(nu, delta);
    std::vector<int> r(nu.runs.size());
    r[0] = nu.width() - std::accumulate(delta.begin(), delta.end(), 0);
    for (int i = 1; i <= nu.n(); ++i) r[i] = delta[i - 1];
    return NEPath(r);
}

std::vector<int> hat_path(const NEPath& nu, const IncrementVector& delta) {
    validate_delta(nu, delta);
    std::vector<int> r(nu.runs.size());
    r[0] = nu.runs[0];
    for (int i = 1; i <= nu.n(); ++i) r[i] = nu.runs[i] - delta[i - 1];
    return r;
}

bool is_unimodal(const std::vector<int>& u) {
    std::size_t i = 0;
    while (i + 1 < u.size() && u[i] <= u[i + 1]) ++i;
    while (i + 1 < u.size() && u[i] >= u[i + 1]) ++i;
    return i + 1 >= u.size();
}

Shape::Shape(std::vector<int> heights) : u(std::move(heights)) {
    for (int h : u)
        if (h <= 0) throw Error(ErrorKind::ParseError, "column heights must be positive");
    if (!is_unimodal(u)) throw Error(ErrorKind::ParseError, "column heights " + altnu::to_string(u) + " are not unimodal");
    offset_.assign(u.size() + 1, 0);
    for (std::size_t i = 0; i < u.size(); ++i) offset_[i + 1] = offset_[i] + u[i];
}

int Shape::rows() const { return u.empty() ? 0 : *std::max_element(u.begin(), u.end()); }

bool Shape::contains(Box b) const {
    return b.c >= 1 && b.c <= columns() && b.r >= 1 && b.r <= u[b.c - 1];
}

int Shape::id(Box b) const {
    if (!contains(b))
        throw Error(ErrorKind::BoxOutOfShape,
                    "(" + std::to_string(b.r) + "," + std::to_string(b.c) + ")");
    return offset_[b.c - 1] + b.r - 1;
}

Box Shape::box(int id) const {
    if (id < 0 || id >= box_count()) throw Error(ErrorKind::BoxOutOfShape, "id " + std::to_string(id));
    int c = static_cast<int>(std::upper_bound(offset_.begin(), offset_.end(), id) - offset_.begin());
    return Box{id - offset_[c - 1] + 1, c};
}

std::vector<Box> Shape::boxes() const {
    std::vector<Box> out;
    for (int c = 1; c <= columns(); ++c)
        for (int r = 1; r <= u[c - 1]; ++r) out.push_back({r, c});
    return out;
}

Shape shape_from(const NEPath& nu, const IncrementVector& delta) {
    validate_delta(nu, delta);
    // Box row y (0 = bottom) spans [L(y), R(y)) with
    // L(y) = sum_{k>y}(nu_k - delta_k) and R(y) = W - sum_{k>y} delta_k.
    // Rows are nested, so every column of the union is top-aligned.
    const int n = nu.n();
    std::vector<int> lo(n), hi(n);
    int sl = 0, sd = 0;
    for (int y = n - 1; y >= 0; --y) {
        sl += nu.runs[y + 1] - delta[y];
        sd += delta[y];
        lo[y] = sl;
        hi[y] = nu.width() - sd;
    }
    std::vector<int> u;
    if (n > 0 && hi[n - 1] > lo[n - 1]) {
        for (int c = lo[n - 1]; c < hi[n - 1]; ++c) {
            int h = 0;
            for (int y = 0; y < n; ++y)
                if (lo[y] <= c && c < hi[y]) ++h;
            u.push_back(h);
        }
    }
    Shape s(u);
    s.nu = nu;
    s.delta = delta;
    return s;
}

namespace {

// Upper bounds on the x-coordinate of the k-th north step (k = 1..n).
std::vector<int> north_bounds(const NEPath& nu) {
    std::vector<int> b(nu.n());
    int s = 0;
    for (int k = 0; k < nu.n(); ++k) {
        s += nu.runs[k];
        b[k] = s;
    }
    return b;
}

NEPath from_north_positions(const std::vector<int>& xs, int W) {
    std::vector<int> runs(xs.size() + 1);
    int prev = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        runs[k] = xs[k] - prev;
        prev = xs[k];
    }
    runs.back() = W - prev;
    return NEPath(runs);
}

}  // namespace

bool is_nu_dyck(const NEPath& path, const NEPath& nu) {
    if (path.n() != nu.n() || path.width() != nu.width()) return false;
    auto b = north_bounds(nu);
    int x = 0;
    for (int k = 0; k < nu.n(); ++k) {
        x += path.runs[k];
        if (x > b[k]) return false;
    }
    return true;
}

int valleys(const NEPath& path) {
    int v = 0;
    for (int k = 0; k < path.n(); ++k)
        if (path.runs[k] > 0) ++v;
    return v;
}

std::vector<NEPath> enumerate_nu_dyck(const NEPath& nu, std::size_t cap) {
    // Lexicographic on run vectors = lexicographic on north-step positions.
    const int n = nu.n(), W = nu.width();
    auto b = north_bounds(nu);
    std::vector<NEPath> out;
    std::vector<int> xs(n);
    auto rec = [&](auto&& self, int k, int lo) -> void {
        if (k == n) {
            if (out.size() >= cap)
                throw Error(ErrorKind::SizeLimit, "more than " + std::to_string(cap) + " nu-Dyck paths");
            out.push_back(from_north_positions(xs, W));
            return;
        }
        for (int x = lo; x <= b[k]; ++x) {
            xs[k] = x;
            self(self, k + 1, x);
        }
    };
    rec(rec, 0, 0);
    return out;
}

std::uint64_t count_nu_dyck(const NEPath& nu) {
    auto b = north_bounds(nu);
    const int W = nu.width();
    std::vector<std::uint64_t> ways(W + 1, 0);  // ways[x]: last north step at x
    ways[0] = 1;
    for (int k = 0; k < nu.n(); ++k) {
        std::vector<std::uint64_t> nx(W + 1, 0);
        std::uint64_t acc = 0;
        for (int x = 0; x <= W; ++x) {
            acc += ways[x];
            if (x <= b[k]) nx[x] = acc;
        }
        ways = nx;
    }
    std::uint64_t t = 0;
    for (auto w : ways) t += w;
    return t;
}

std::vector<std::int64_t> narayana_polynomial(const NEPath& nu, std::size_t cap) {
    std::vector<std::int64_t> c;
    for (const auto& p : enumerate_nu_dyck(nu, cap)) {
        int v = valleys(p);
        if (static_cast<int>(c.size()) <= v) c.resize(v + 1, 0);
        ++c[v];
    }
    return c;
}

std::int64_t evaluate(const std::vector<std::int64_t>& poly, std::int64_t x) {
    std::int64_t r = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) r = r * x + *it;
    return r;
}

NEPath shrunken_path(const NEPath& nu) {
    std::vector<int> r(nu.runs.size());
    r[0] = nu.runs[0];
    for (int i = 1; i <= nu.n(); ++i) {
        if (nu.runs[i] < 2)
            throw Error(ErrorKind::NotShrinkable, "nu_" + std::to_string(i) + " = " + std::to_string(nu.runs[i]) + " < 2");
        r[i] = nu.runs[i] - 2;
    }
    return NEPath(r);
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

std::uint64_t fuss_catalan(int m, int n) {
    return binomial((m - 1) * n, n) / static_cast<std::uint64_t>((m - 2) * n + 1);
}

std::vector<int> parse_vector(const std::string& s) {
    std::vector<int> v;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        try {
            std::size_t pos = 0;
            int x = std::stoi(cur, &pos);
            if (pos != cur.size()) throw std::invalid_argument(cur);
            v.push_back(x);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "bad integer '" + cur + "'");
        }
        cur.clear();
    };
    for (char ch : s) {
        if (ch == '(' || ch == ')' || ch == '[' || ch == ']' || ch == ',' || std::isspace(static_cast<unsigned char>(ch)))
            flush();
        else
            cur.push_back(ch);
    }
    flush();
    return v;
}

NEPath parse_path(const std::string& s) {
    bool steps = !s.empty();
    for (char ch : s)
        if (ch != 'N' && ch != 'E' && ch != 'n' && ch != 'e') steps = false;
    if (steps) {
        std::vector<int> runs{0};
        for (char ch : s) {
            if (ch == 'N' || ch == 'n')
                runs.push_back(0);
            else
                ++runs.back();
        }
        return NEPath(runs);
    }
    auto v = parse_vector(s);
    if (v.empty()) throw Error(ErrorKind::ParseError, "empty path '" + s + "'");
    return NEPath(v);
}

NEPath uniform_path(int m, int n) {
    std::vector<int> r(n + 1, m);
    r[0] = 0;
    return NEPath(r);
}

std::string to_string(const std::vector<int>& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

std::string to_steps(const NEPath& p) {
    std::string s(p.runs[0], 'E');
    for (int i = 1; i <= p.n(); ++i) {
        s += 'N';
        s += std::string(p.runs[i], 'E');
    }
    return s;
}

NEPath peak_bijection(const std::vector<Box>& face, const Shape& shape) {
    if (!shape.nu || !shape.delta)
        throw Error(ErrorKind::NotApplicable, "shape carries no (nu, delta)");
    const NEPath& nu = *shape.nu;
    for (int d : *shape.delta)
        if (d != 0) throw Error(ErrorKind::NotApplicable, "peak bijection needs delta = 0");
    const int n = nu.n(), W = nu.width();
    // Shape column k sits at lattice column c = k - 1 + L(n-1); with delta = 0
    // L(n-1) = nu_n and row r is lattice row y = n - r.
    std::vector<std::pair<int, int>> valley;  // (Y, X) after mirroring
    for (Box b : face) {
        if (!shape.contains(b)) throw Error(ErrorKind::FaceInvalid, "box outside shape");
        int c = b.c - 1 + nu.runs[n];
        int y = n - b.r;
        valley.push_back({y, W - c});
    }
    std::sort(valley.begin(), valley.end());
    std::vector<int> runs(n + 1, 0);
    int px = 0, py = -1;
    for (auto [y, x] : valley) {
        if (y <= py || x <= px)
            throw Error(ErrorKind::FaceInvalid, "marked boxes do not form a northwest chain");
        runs[y] += x - px;
        px = x;
        py = y;
    }
    runs[n] += W - px;
    NEPath p(runs);
    if (!is_nu_dyck(p, nu)) throw Error(ErrorKind::FaceInvalid, "image is not a nu-Dyck path");
    return p;
}

}  // namespace altnu
