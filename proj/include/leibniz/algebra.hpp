#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leibniz/matrix.hpp"

namespace leibniz {

/// A finite-dimensional (right) Leibniz algebra presented by structure
/// constants: <b_i, b_j> = sum_k c[i][j][k] b_k. The raw constructor does
/// not verify the Leibniz identity; call verify_leibniz explicitly.
class LeibnizAlgebra {
  public:
    LeibnizAlgebra(std::vector<std::string> labels, std::vector<Rat> constants);

    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Rat>& constants() const { return constants_; }

    const Rat& c(std::size_t i, std::size_t j, std::size_t k) const {
        return constants_[(i * dim() + j) * dim() + k];
    }
    Rat& c(std::size_t i, std::size_t j, std::size_t k) {
        return constants_[(i * dim() + j) * dim() + k];
    }

    /// <b_i, b_j> as a coordinate vector.
    Vec basis_bracket(std::size_t i, std::size_t j) const;
    /// Bilinear expansion through the structure tensor.
    Vec bracket(const Vec& x, const Vec& y) const;

    /// Matrix of a -> <a, x> (right multiplication by x).
    Matrix right_mult(const Vec& x) const;
    /// Matrix of a -> <x, a> (left multiplication by x).
    Matrix left_mult(const Vec& x) const;

    std::optional<std::size_t> label_index(const std::string& label) const;

    bool operator==(const LeibnizAlgebra&) const = default;

  private:
    std::vector<std::string> labels_;
    std::vector<Rat> constants_; // dim^3, index (i*dim + j)*dim + k
};

struct AlgebraSubspace {
    const LeibnizAlgebra* parent;
    Subspace space;
};

struct LeibnizWitness {
    std::size_t i, j, k; // basis triple violating the identity
};

/// Leibniz identity on all basis triples; sufficient by trilinearity.
std::optional<LeibnizWitness> verify_leibniz(const LeibnizAlgebra& L);

/// Span of the symmetrized brackets <b_i,b_j> + <b_j,b_i>. Re-checks that
/// the result is a bracket-killed ideal; throws IdentityViolation when the
/// input was not a Leibniz algebra.
AlgebraSubspace annihilator(const LeibnizAlgebra& L);

struct LieFactor {
    LeibnizAlgebra algebra;  // the quotient L / L^ann, a Lie algebra
    Matrix projection;       // q x d, coordinates in the chosen section basis
    Matrix section;          // q x d rows: section basis vectors in L coordinates
};

LieFactor lie_factor(const LeibnizAlgebra& L);

/// Matrices of the Lie-factor action xbar . a = -<a, x> on L^ann, indexed
/// by the section basis of the factor; coordinates in the annihilator basis.
struct LieModuleView {
    Subspace base;                // the acted-on subspace inside L
    std::vector<Matrix> action;   // one matrix per factor basis element
};

LieModuleView lie_factor_action_on_ann(const LeibnizAlgebra& L);

bool is_ideal(const LeibnizAlgebra& L, const Subspace& S);
/// Smallest ideal containing S (saturation under basis-vector brackets).
Subspace ideal_closure(const LeibnizAlgebra& L, const Subspace& S);

std::vector<Subspace> derived_series(const LeibnizAlgebra& L);
bool is_solvable(const LeibnizAlgebra& L);

std::vector<Subspace> right_central_series(const LeibnizAlgebra& L);
bool is_right_nilpotent(const LeibnizAlgebra& L);

/// Which clause of the simplicity test failed, if any.
struct SimplicityCertificate {
    bool simple = false;
    bool ann_action_nonzero = false;  // (a) <L^ann, L> != 0
    bool factor_simple = false;       // (b) Lie factor is a simple Lie algebra
    bool ann_irreducible = false;     // (c) L^ann irreducible over the factor
    bool perfect = false;             // (d) <L, L> = L
    std::string detail;
};

/// Decides simplicity through clauses (a)-(d); throws Undecidable when
/// irreducibility cannot be certified by the weight-line method.
SimplicityCertificate is_simple(const LeibnizAlgebra& L);

/// Attempts to lift the Lie factor to a Lie subalgebra complementing
/// L^ann. On success returns rows spanning the complement.
std::optional<Matrix> is_standard(const LeibnizAlgebra& L);

/// Induced algebra on a bracket-closed subspace; throws NotClosed.
LeibnizAlgebra subalgebra(const LeibnizAlgebra& L, const Subspace& S,
                          const std::vector<std::string>& labels = {});
/// Quotient by an ideal; throws NotAnIdeal.
LeibnizAlgebra quotient(const LeibnizAlgebra& L, const Subspace& I);
/// Structure constants w.r.t. the new basis given by the rows of P.
LeibnizAlgebra change_basis(const LeibnizAlgebra& L, const Matrix& P);

/// Killing form matrix K(x,y) = tr(ad_x ad_y) of an antisymmetric algebra.
Matrix killing_form(const LeibnizAlgebra& L);
bool is_antisymmetric(const LeibnizAlgebra& L);

} // namespace leibniz
