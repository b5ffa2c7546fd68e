#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "altnu/paths.hpp"
#include "altnu/trees.hpp"

namespace altnu {

// Result of checking one alternative nu-Tamari lattice against its box complex.
struct LatticeCheck {
    std::size_t elements = 0, covers = 0;
    std::vector<std::int64_t> f_vector;  // faces of the canonical join complex, by size (index 0 = empty face)
    bool iso_ok = true;     // Can(T) is a face, theta(Can T) = T, face counts agree
    bool lambda_ok = true;  // every rotation label is the minimum-based lambda label
    std::string message;    // first failure
};

// Exhaustive check built on bitmask trees: trees are enumerated as maximal
// compatible sets, covers are rotations, join-irreducible down-sets are
// propagated in a linear extension (sum of node heights).
LatticeCheck check_lattice(const NEPath& nu, const IncrementVector& delta);

// Certificate for a cover relation supplied from outside (e.g. a lattice
// file): every element is a (delta,nu)-tree, every cover is a rotation, the
// covers generate a lattice, and tau/theta round-trip between canonical join
// representations and the faces of the box complex in both directions.
struct CoverSetCheck {
    bool ok = true;
    std::string message;  // first failure
    std::size_t elements = 0, covers = 0, faces = 0;
};
CoverSetCheck verify_cover_set(const NEPath& nu, const IncrementVector& delta, const std::vector<DeltaNuTree>& trees,
                               const std::vector<std::pair<int, int>>& covers, std::size_t max_elements = 20000);

struct SweepOptions {
    int min_north = 1, max_north = 5;
    int max_run = 3;
    bool vary_nu0 = true;              // nu_0 ranges over 0..max_run too
    int filter_lambda_max_north = 3;   // also build explicit lattices and use the filter definition of lambda
    std::function<void(const std::string&)> log;
};

struct SweepReport {
    std::size_t paths = 0, lattices = 0, elements = 0, covers = 0, shapes = 0, explicit_lattices = 0;
    std::size_t iso_failures = 0, euler_failures = 0, narayana_failures = 0, fvector_failures = 0;
    std::size_t homology_failures = 0, lambda_failures = 0;
    std::vector<std::string> messages;  // at most 20
    double seconds = 0;
    // wall time split: box complexes and lattice checks (the isomorphism
    // battery), per-shape homology cross-checks, explicit lattices
    double iso_seconds = 0, homology_seconds = 0, explicit_seconds = 0;

    bool ok() const {
        return iso_failures + euler_failures + narayana_failures + fvector_failures + homology_failures +
                   lambda_failures ==
               0;
    }
};

// Every nu with min_north..max_north north steps and runs <= max_run, every valid delta.
SweepReport run_sweep(const SweepOptions& opt);

// All delta with 0 <= delta_i <= nu_i, in lexicographic order.
std::vector<IncrementVector> all_deltas(const NEPath& nu);
// All nu with n north steps and runs in [0, max_run] (nu_0 fixed to 0 unless vary_nu0).
std::vector<NEPath> all_paths(int n, int max_run, bool vary_nu0);

}  // namespace altnu
