#include "altnu/table1.hpp"

#include <sstream>

#include "altnu/boxcomplex.hpp"
#include "altnu/paths.hpp"
#include "altnu/shelling.hpp"

namespace altnu {

const std::vector<Table1Row>& table1_golden() {
    static const std::vector<Table1Row> rows{
        {2, 2, {2}, {2}},
        {2, 3, {2, 1}, {2, 1}},
        {2, 4, {1, 4, 1}, {2, 5, 1}},
        {2, 5, {1, 2, 10, 1}, {2, 8, 15, 1}},
        {2, 6, {1, 0, 15, 20, 1}, {2, 11, 40, 35, 1}},
        {3, 2, {3}, {3}},
        {3, 3, {2, 5}, {2, 5}},
        {3, 4, {1, 8, 14}, {2, 9, 14}},
        {3, 5, {1, 2, 45, 42}, {2, 13, 55, 42}},
        {4, 2, {4}, {4}},
        {4, 3, {2, 12}, {2, 12}},
        {4, 4, {1, 12, 55}, {2, 13, 55}},
        {5, 2, {5}, {5}},
        {5, 3, {2, 22}, {2, 22}},
        {5, 4, {1, 16, 140}, {2, 17, 140}},
        {6, 2, {6}, {6}},
        {6, 3, {2, 35}, {2, 35}},
        {6, 4, {1, 20, 285}, {2, 21, 285}},
        {7, 2, {7}, {7}},
        {7, 3, {2, 51}, {2, 51}},
    };
    return rows;
}

Table1Result compute_table1_row(const Table1Row& row, bool tamari, const Table1Options& opt) {
    const NEPath nu = uniform_path(row.m, row.n);
    Table1Result r;
    r.m = row.m;
    r.n = row.n;
    r.tamari = tamari;
    r.elements = count_nu_dyck(nu);
    r.golden = tamari ? row.tamari : row.dyck;
    r.skipped = !opt.slow && r.elements > opt.max_elements;
    if (!r.skipped) {
        const Shape sh = shape_from(nu, IncrementVector(row.n, tamari ? row.m : 0));
        r.gf2 = betti_gf2(box_complex(sh));
        r.shelling = betti_via_shelling(shelling_order(sh));
    }
    return r;
}

std::vector<Table1Result> compute_table1(const Table1Options& opt) {
    std::vector<Table1Result> out;
    for (const Table1Row& row : table1_golden()) {
        if (row.m > opt.max_m || row.n > opt.max_n) continue;
        for (bool tamari : {true, false}) out.push_back(compute_table1_row(row, tamari, opt));
    }
    return out;
}

namespace {

std::string join(const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

std::string table1_to_csv(const std::vector<Table1Result>& rows) {
    std::ostringstream os;
    os << "m,n,lattice,elements,golden,gf2,shelling,status\n";
    for (const auto& r : rows)
        os << r.m << ',' << r.n << ',' << (r.tamari ? "tamari" : "dyck") << ',' << r.elements << ',' << join(r.golden)
           << ',' << join(r.gf2) << ',' << join(r.shelling) << ','
           << (r.skipped ? "skipped" : r.ok() ? "ok" : "MISMATCH") << '\n';
    return os.str();
}

}  // namespace altnu
