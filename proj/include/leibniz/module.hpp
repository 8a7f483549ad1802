#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leibniz/algebra.hpp"

namespace leibniz {

/// A module (V, f, g) over a Leibniz algebra, presented by the matrices
/// of the right map f and left map g on algebra basis elements.
class LeibnizModule {
  public:
    LeibnizModule(std::shared_ptr<const LeibnizAlgebra> algebra,
                  std::vector<Matrix> f_mats, std::vector<Matrix> g_mats);

    const LeibnizAlgebra& algebra() const { return *algebra_; }
    std::shared_ptr<const LeibnizAlgebra> algebra_ptr() const { return algebra_; }
    std::size_t dim_v() const { return dim_v_; }

    const Matrix& f_mat(std::size_t i) const { return f_mats_[i]; }
    const Matrix& g_mat(std::size_t i) const { return g_mats_[i]; }
    const std::vector<Matrix>& f_mats() const { return f_mats_; }
    const std::vector<Matrix>& g_mats() const { return g_mats_; }

    /// f extended linearly to an arbitrary algebra element.
    Matrix f_of(const Vec& x) const;
    Matrix g_of(const Vec& x) const;

  private:
    std::shared_ptr<const LeibnizAlgebra> algebra_;
    std::size_t dim_v_;
    std::vector<Matrix> f_mats_, g_mats_;
};

struct ModuleWitness {
    int axiom;          // which of the three module axioms failed (1-3)
    std::size_t i, j;   // offending algebra basis pair
};

/// The three module axioms on all algebra basis pairs.
std::optional<ModuleWitness> verify_module(const LeibnizModule& M);

/// (L, -r, l): f(x) = -r_x, g(x) = l_x.
LeibnizModule adjoint_module(std::shared_ptr<const LeibnizAlgebra> L);

bool is_submodule(const LeibnizModule& M, const Subspace& U);
Subspace submodule_closure(const LeibnizModule& M, const Subspace& U);

/// span of (g(y) - f(y))(v); verified to be a submodule.
Subspace module_annihilator(const LeibnizModule& M);

/// f-action of the Lie factor on V^ann; matrices indexed
/// by the factor section basis, coordinates in the V^ann basis.
LieModuleView lie_action_on_module_ann(const LeibnizModule& M);

/// Decision under the weight-line proviso; throws Undecidable otherwise.
bool is_3_irreducible(const LeibnizModule& M);

struct EigenvectorDatum {
    Vec phi; // functional values on the algebra basis
    Vec psi; // equal to phi or identically zero
    Vec v;   // nonzero joint eigenvector
};

/// Constructive Extended Lie's Theorem: a joint (f, g)-eigenvector with
/// psi in {phi, 0}. Requires a solvable algebra.
EigenvectorDatum extended_lie_eigenvector(const LeibnizModule& M);

struct FlagBlock {
    std::vector<Vec> ann_vectors;    // psi = 0 branch
    std::optional<Vec> eigen_vector; // (phi, phi) branch
};

struct FlagBasis {
    std::vector<FlagBlock> blocks;
};

struct WeightDatum {
    Vec functional; // value of phi on each algebra basis element
    Subspace space;
    std::optional<FlagBasis> flag;
};

/// Joint generalized eigenspace decomposition of V under f; requires a
/// right nilpotent algebra. Each piece is f- and g-invariant and for
/// phi != 0 satisfies V^ann cap V^phi = (V^phi)^ann.
std::vector<WeightDatum> weight_decomposition(const LeibnizModule& M);

/// Greedy peeling flag for one weight space, verifying the three
/// triangularity congruences before returning.
FlagBasis flag_basis(const LeibnizModule& M, const WeightDatum& w);

/// Module over the induced subalgebra on S; throws NotClosed.
LeibnizModule restrict_module(const LeibnizModule& M, const Subspace& S,
                              const std::vector<std::string>& labels = {});

/// The module induced on U (which must be a submodule) in U's basis.
LeibnizModule restrict_to_subspace(const LeibnizModule& M, const Subspace& U);

} // namespace leibniz
