#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leibniz/module.hpp"

namespace leibniz {

enum class Parity { even, odd };

struct Root {
    Vec functional;    // values on the Cartan basis
    Subspace space;
    Parity parity;
    Subspace ann_part; // annihilator(L) cap space
};

struct RootDatum {
    Subspace cartan;
    std::vector<Root> roots;
};

/// N_r(H) = {x : <x, H> subseteq H}, by one linear solve.
Subspace right_normalizer(const LeibnizAlgebra& L, const Subspace& H);

/// Cartan subalgebra test: H right nilpotent and self-right-normalizing; H must be a
/// subalgebra (throws NotClosed otherwise).
bool is_cartan(const LeibnizAlgebra& L, const Subspace& H);

/// Fitting-null-component search over pseudo-random elements; at most 64
/// attempts, deterministic from the seed.
Subspace find_cartan(const LeibnizAlgebra& L, std::uint64_t seed);

/// Root space decomposition with even/odd parity per root.
RootDatum root_decomposition(const LeibnizAlgebra& L, const Subspace& H);

struct StructureCheckReport {
    bool cartan_abelian = false;
    bool ann_decomposes = false;
    std::size_t odd_roots_checked = 0;
    std::size_t even_roots_checked = 0;
};

/// Structure checks for algebras with semisimple Lie factor; every clause
/// is guaranteed, so a failure is a hard error.
StructureCheckReport structure_checks(const LeibnizAlgebra& L, const RootDatum& rd);

} // namespace leibniz
