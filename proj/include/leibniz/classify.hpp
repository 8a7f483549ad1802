#pragma once

#include <string>

#include "leibniz/cartan.hpp"

namespace leibniz {

/// Six-dimensional simple family on basis (f, h, e, v0, v1, v2).
LeibnizAlgebra construct_sl22(const Rat& alpha, const Rat& beta);

/// (n+4)-dimensional simple family, n even and >= 4, on basis
/// (f, h, e, v0..vn). Throws BadParity / BadRange.
LeibnizAlgebra construct_sl2n(long n, const Rat& alpha, const Rat& beta);

/// Demisemidirect product sl2 x| V(n): Lie bracket on the sl2 part,
/// <v, x> = -(x.v), <x, v> = 0, <v, w> = 0; simple and standard.
LeibnizAlgebra construct_standard(long n);

struct Sl2Triple {
    Vec e, h, f; // [h,e] = 2e, [h,f] = -2f, [e,f] = h
};

/// Normalizes a 3-dimensional simple Lie algebra to an sl2 triple;
/// deterministic given the input basis. Throws NotSl2 / SplittingFailure.
Sl2Triple find_sl2_triple(const LeibnizAlgebra& K);

enum class ClassificationVariant { Template, Standard, NotApplicable };

struct ClassificationResult {
    ClassificationVariant variant = ClassificationVariant::NotApplicable;
    long n = 0;
    Rat alpha, beta;      // Template only
    Matrix basis_change;  // rows: new basis in input coordinates
    std::string note;
};

/// Constructive classification of simple Leibniz algebras with Lie
/// factor sl2. Template results reproduce the family constants entry-
/// exactly under basis_change; Standard results exhibit a splitting.
ClassificationResult classify(const LeibnizAlgebra& L);

} // namespace leibniz
