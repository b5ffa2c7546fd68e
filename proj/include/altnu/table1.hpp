#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace altnu {

// Betti numbers (beta_0 unreduced) of the canonical join complexes for
// nu = (NE^m)^n, as published, for the m-Tamari (delta = nu) and m-Dyck
// (delta = 0) lattices.
struct Table1Row {
    int m, n;
    std::vector<std::int64_t> tamari, dyck;
};
const std::vector<Table1Row>& table1_golden();

struct Table1Result {
    int m = 0, n = 0;
    bool tamari = false;
    std::size_t elements = 0;  // lattice size = number of nu-Dyck paths
    std::vector<std::int64_t> golden, gf2, shelling;
    bool skipped = false;  // over the element cap
    bool ok() const { return skipped || (gf2 == golden && shelling == golden); }
};

struct Table1Options {
    int max_m = 7, max_n = 6;
    std::size_t max_elements = 20000;
    bool slow = false;  // ignore max_elements
};

Table1Result compute_table1_row(const Table1Row& row, bool tamari, const Table1Options& opt = {});
std::vector<Table1Result> compute_table1(const Table1Options& opt = {});
std::string table1_to_csv(const std::vector<Table1Result>& rows);

}  // namespace altnu
