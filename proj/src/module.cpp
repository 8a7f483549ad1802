#include "leibniz/module.hpp"

#include <algorithm>
#include <functional>

namespace leibniz {

LeibnizModule::LeibnizModule(std::shared_ptr<const LeibnizAlgebra> algebra,
                             std::vector<Matrix> f_mats, std::vector<Matrix> g_mats)
    : algebra_(std::move(algebra)), f_mats_(std::move(f_mats)), g_mats_(std::move(g_mats)) {
    const std::size_t d = algebra_->dim();
    if (f_mats_.size() != d || g_mats_.size() != d)
        throw DimensionMismatch("need one f and one g matrix per algebra basis element");
    dim_v_ = f_mats_.empty() ? 0 : f_mats_.front().rows();
    for (const Matrix& m : f_mats_)
        if (m.rows() != dim_v_ || m.cols() != dim_v_)
            throw DimensionMismatch("module matrix shape mismatch");
    for (const Matrix& m : g_mats_)
        if (m.rows() != dim_v_ || m.cols() != dim_v_)
            throw DimensionMismatch("module matrix shape mismatch");
}

Matrix LeibnizModule::f_of(const Vec& x) const {
    Matrix m(dim_v_, dim_v_);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0) m = m + f_mats_[i] * x[i];
    return m;
}

Matrix LeibnizModule::g_of(const Vec& x) const {
    Matrix m(dim_v_, dim_v_);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0) m = m + g_mats_[i] * x[i];
    return m;
}

std::optional<ModuleWitness> verify_module(const LeibnizModule& M) {
    const LeibnizAlgebra& L = M.algebra();
    const std::size_t d = L.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Matrix f_br = M.f_of(L.basis_bracket(i, j));
            Matrix g_br = M.g_of(L.basis_bracket(i, j));
            if (!(f_br == M.f_mat(i) * M.f_mat(j) - M.f_mat(j) * M.f_mat(i)))
                return ModuleWitness{1, i, j};
            if (!(g_br == M.g_mat(i) * M.f_mat(j) - M.f_mat(j) * M.g_mat(i)))
                return ModuleWitness{2, i, j};
            if (!(M.g_mat(i) * M.g_mat(j) == M.g_mat(i) * M.f_mat(j)))
                return ModuleWitness{3, i, j};
        }
    return std::nullopt;
}

LeibnizModule adjoint_module(std::shared_ptr<const LeibnizAlgebra> L) {
    if (auto w = verify_leibniz(*L))
        throw IdentityViolation("adjoint module of a non-Leibniz tensor");
    const std::size_t d = L->dim();
    std::vector<Matrix> f_mats, g_mats;
    for (std::size_t i = 0; i < d; ++i) {
        Vec x = unit_vec(d, i);
        f_mats.push_back(L->right_mult(x) * Rat(-1));
        g_mats.push_back(L->left_mult(x));
    }
    LeibnizModule M(std::move(L), std::move(f_mats), std::move(g_mats));
    if (verify_module(M)) throw IdentityViolation("adjoint module fails the module axioms");
    return M;
}

bool is_submodule(const LeibnizModule& M, const Subspace& U) {
    for (std::size_t s = 0; s < U.dim(); ++s)
        for (std::size_t i = 0; i < M.algebra().dim(); ++i) {
            if (!U.contains(M.f_mat(i).apply(U.basis_vector(s)))) return false;
            if (!U.contains(M.g_mat(i).apply(U.basis_vector(s)))) return false;
        }
    return true;
}

Subspace submodule_closure(const LeibnizModule& M, const Subspace& U) {
    Subspace current = U;
    for (;;) {
        std::vector<Vec> gens;
        for (std::size_t s = 0; s < current.dim(); ++s) {
            gens.push_back(current.basis_vector(s));
            for (std::size_t i = 0; i < M.algebra().dim(); ++i) {
                gens.push_back(M.f_mat(i).apply(current.basis_vector(s)));
                gens.push_back(M.g_mat(i).apply(current.basis_vector(s)));
            }
        }
        Subspace next = Subspace::span(M.dim_v(), gens);
        if (next.dim() == current.dim()) return next;
        current = std::move(next);
    }
}

Subspace module_annihilator(const LeibnizModule& M) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < M.algebra().dim(); ++i) {
        Matrix diff = M.g_mat(i) - M.f_mat(i);
        for (std::size_t j = 0; j < M.dim_v(); ++j) gens.push_back(diff.col(j));
    }
    Subspace ann = Subspace::span(M.dim_v(), gens);
    if (!is_submodule(M, ann))
        throw WellDefinednessFailure("module annihilator is not a submodule");
    return ann;
}

LieModuleView lie_action_on_module_ann(const LeibnizModule& M) {
    Subspace vann = module_annihilator(M);
    Subspace alg_ann = annihilator(M.algebra()).space;
    const std::size_t m = vann.dim();

    // independence of representative: f(a) kills V^ann for a in L^ann
    for (std::size_t a = 0; a < alg_ann.dim(); ++a) {
        Matrix fa = M.f_of(alg_ann.basis_vector(a));
        for (std::size_t b = 0; b < m; ++b)
            if (!is_zero_vec(fa.apply(vann.basis_vector(b))))
                throw WellDefinednessFailure("Lie action on V^ann depends on the representative");
    }

    LieFactor fac = lie_factor(M.algebra());
    std::vector<Matrix> action;
    for (std::size_t i = 0; i < fac.algebra.dim(); ++i) {
        Matrix fx = M.f_of(fac.section.row(i));
        Matrix mat(m, m);
        for (std::size_t b = 0; b < m; ++b) {
            Vec img = fx.apply(vann.basis_vector(b));
            if (!vann.contains(img))
                throw WellDefinednessFailure("Lie action does not preserve V^ann");
            Vec coords = vann.coordinates(img);
            for (std::size_t r = 0; r < m; ++r) mat.at(r, b) = coords[r];
        }
        action.push_back(std::move(mat));
    }
    return LieModuleView{std::move(vann), std::move(action)};
}

namespace {

// Basis of L ordered so that every suffix spans an ideal of the previous
// suffix, refining the derived series with codimension-1 steps.
std::vector<Vec> chain_adapted_basis(const LeibnizAlgebra& L) {
    std::vector<Subspace> series = derived_series(L);
    if (!series.back().is_zero()) throw NotSolvable("algebra is not solvable");
    const std::size_t d = L.dim();
    // build from the deepest term outward
    std::vector<Vec> vecs; // deepest vectors first
    for (auto it = series.rbegin(); it != series.rend(); ++it) {
        for (std::size_t i = 0; i < it->dim(); ++i) {
            Vec v = it->basis_vector(i);
            std::vector<Vec> test = vecs;
            test.push_back(v);
            if (Subspace::span(d, test).dim() > Subspace::span(d, vecs).dim())
                vecs.push_back(std::move(v));
        }
    }
    // order so that suffixes are the deep ideals
    std::reverse(vecs.begin(), vecs.end());
    return vecs;
}

struct BranchResult {
    Matrix w_basis;  // rows span the joint eigenspace
    Vec phi_chain;   // eigenvalue per chain basis element, deepest last
};

// Depth-first over eigenvalue choices, deepest chain element first.
bool joint_f_eigenspace(const LeibnizModule& M, const std::vector<Vec>& chain,
                        std::size_t next, Matrix w_basis, Vec phi_rev,
                        BranchResult& out, bool& saw_irrational,
                        const std::function<bool(const Matrix&, const Vec&)>& accept) {
    if (next == 0) {
        BranchResult candidate{w_basis, Vec(phi_rev.rbegin(), phi_rev.rend())};
        if (accept(candidate.w_basis, candidate.phi_chain)) {
            out = std::move(candidate);
            return true;
        }
        return false;
    }
    const Vec& z = chain[next - 1];
    Matrix fz = M.f_of(z);
    // restriction of f(z) to the current space
    const std::size_t w = w_basis.rows();
    Matrix restr(w, w);
    for (std::size_t r = 0; r < w; ++r) {
        auto coords = coordinates_in(w_basis, fz.apply(w_basis.row(r)));
        if (!coords) return false; // not invariant: dead branch
        for (std::size_t c = 0; c < w; ++c) restr.at(c, r) = (*coords)[c];
    }
    RationalEigenvalues ev = rational_eigenvalues(restr);
    if (!ev.complete) saw_irrational = true;
    for (const auto& [lambda, mu] : ev.roots) {
        Matrix shifted = restr;
        for (std::size_t i = 0; i < w; ++i) shifted.at(i, i) -= lambda;
        Subspace eig = kernel(shifted);
        if (eig.is_zero()) continue;
        // lift eigenvector coordinates back to the ambient space
        std::vector<Vec> lifted;
        for (std::size_t r = 0; r < eig.dim(); ++r) {
            Vec c = eig.basis_vector(r);
            Vec v = zero_vec(M.dim_v());
            for (std::size_t s = 0; s < w; ++s)
                if (sgn(c[s]) != 0) v = add(v, scale(w_basis.row(s), c[s]));
            lifted.push_back(std::move(v));
        }
        Vec phi_next = phi_rev;
        phi_next.push_back(lambda);
        if (joint_f_eigenspace(M, chain, next - 1, Subspace::span(M.dim_v(), lifted).basis(),
                               phi_next, out, saw_irrational, accept))
            return true;
    }
    return false;
}

// {v in rows(w_basis) : op_i v = mu_i v for all i}, as ambient vectors.
Subspace constrained_subspace(const Matrix& w_basis, const std::vector<Matrix>& ops,
                              const Vec& mus) {
    const std::size_t w = w_basis.rows();
    const std::size_t n = w_basis.cols();
    std::vector<Vec> rows;
    for (std::size_t t = 0; t < ops.size(); ++t) {
        // (op_t - mu_t I) * (c . w_basis) = 0, unknowns c
        for (std::size_t comp = 0; comp < n; ++comp) {
            Vec row(w);
            for (std::size_t s = 0; s < w; ++s) {
                Vec img = ops[t].apply(w_basis.row(s));
                row[s] = img[comp] - mus[t] * w_basis.at(s, comp);
            }
            rows.push_back(std::move(row));
        }
    }
    Subspace coeffs = w == 0 ? Subspace(0) : kernel(Matrix::from_rows(rows, w));
    std::vector<Vec> vecs;
    for (std::size_t r = 0; r < coeffs.dim(); ++r) {
        Vec c = coeffs.basis_vector(r);
        Vec v = zero_vec(n);
        for (std::size_t s = 0; s < w; ++s)
            if (sgn(c[s]) != 0) v = add(v, scale(w_basis.row(s), c[s]));
        vecs.push_back(std::move(v));
    }
    return Subspace::span(n, vecs);
}

} // namespace

EigenvectorDatum extended_lie_eigenvector(const LeibnizModule& M) {
    if (!is_solvable(M.algebra())) throw NotSolvable("Extended Lie requires a solvable algebra");
    if (M.dim_v() == 0) throw DimensionMismatch("Extended Lie requires a nonzero module");
    const std::size_t d = M.algebra().dim();
    std::vector<Vec> chain = chain_adapted_basis(M.algebra());

    std::vector<Matrix> g_ops;
    for (const Vec& z : chain) g_ops.push_back(M.g_of(z));

    EigenvectorDatum result;
    bool saw_irrational = false;
    BranchResult branch;
    auto accept = [&](const Matrix& w_basis, const Vec& phi_chain) {
        // prefer the (phi, phi) branch, then (phi, 0)
        Subspace w1 = constrained_subspace(w_basis, g_ops, phi_chain);
        Subspace w0 = constrained_subspace(w_basis, g_ops, zero_vec(chain.size()));
        const Subspace* chosen = nullptr;
        bool phi_branch = false;
        if (!w1.is_zero()) {
            chosen = &w1;
            phi_branch = true;
        } else if (!w0.is_zero()) {
            chosen = &w0;
        } else {
            return false;
        }
        // express the functional on the original algebra basis
        Matrix chain_mat = Matrix::from_rows(chain, d);
        Matrix to_chain = chain_mat.inverse().transpose(); // e_j coords in chain basis
        Vec phi(d), psi(d);
        for (std::size_t j = 0; j < d; ++j) {
            Vec coords = to_chain.apply(unit_vec(d, j));
            for (std::size_t t = 0; t < chain.size(); ++t) phi[j] += coords[t] * phi_chain[t];
        }
        if (phi_branch) psi = phi;
        result = EigenvectorDatum{phi, psi, chosen->basis_vector(0)};
        return true;
    };

    bool ok = joint_f_eigenspace(M, chain, chain.size(), Matrix::identity(M.dim_v()),
                                 Vec{}, branch, saw_irrational, accept);
    if (!ok) {
        if (saw_irrational)
            throw SplittingFailure("no rational joint eigenvector branch");
        throw TheoremViolation("no (phi, phi) or (phi, 0) eigenvector exists");
    }

    // re-substitution check of the postcondition
    for (std::size_t i = 0; i < d; ++i) {
        if (M.f_mat(i).apply(result.v) != scale(result.v, result.phi[i]) ||
            M.g_mat(i).apply(result.v) != scale(result.v, result.psi[i]))
            throw TheoremViolation("eigenvector postcondition failed re-substitution");
    }
    return result;
}

namespace {

Vec embed(const Subspace& U, const Vec& coords) {
    Vec v = zero_vec(U.ambient_dim());
    for (std::size_t s = 0; s < U.dim(); ++s)
        if (sgn(coords[s]) != 0) v = add(v, scale(U.basis_vector(s), coords[s]));
    return v;
}

} // namespace

LeibnizModule restrict_to_subspace(const LeibnizModule& M, const Subspace& U) {
    if (!is_submodule(M, U)) throw NotClosed("subspace is not a submodule");
    const std::size_t u = U.dim();
    std::vector<Matrix> f_mats, g_mats;
    for (std::size_t i = 0; i < M.algebra().dim(); ++i) {
        Matrix f(u, u), g(u, u);
        for (std::size_t c = 0; c < u; ++c) {
            Vec fc = U.coordinates(M.f_mat(i).apply(U.basis_vector(c)));
            Vec gc = U.coordinates(M.g_mat(i).apply(U.basis_vector(c)));
            for (std::size_t r = 0; r < u; ++r) {
                f.at(r, c) = fc[r];
                g.at(r, c) = gc[r];
            }
        }
        f_mats.push_back(std::move(f));
        g_mats.push_back(std::move(g));
    }
    return LeibnizModule(M.algebra_ptr(), std::move(f_mats), std::move(g_mats));
}

LeibnizModule restrict_module(const LeibnizModule& M, const Subspace& S,
                              const std::vector<std::string>& labels) {
    auto sub = std::make_shared<LeibnizAlgebra>(subalgebra(M.algebra(), S, labels));
    std::vector<Matrix> f_mats, g_mats;
    for (std::size_t i = 0; i < S.dim(); ++i) {
        f_mats.push_back(M.f_of(S.basis_vector(i)));
        g_mats.push_back(M.g_of(S.basis_vector(i)));
    }
    LeibnizModule R(std::move(sub), std::move(f_mats), std::move(g_mats));
    if (verify_module(R)) throw WellDefinednessFailure("restricted module fails the axioms");
    return R;
}

std::vector<WeightDatum> weight_decomposition(const LeibnizModule& M) {
    if (!is_right_nilpotent(M.algebra()))
        throw NotRightNilpotent("weight decomposition requires a right nilpotent algebra");
    std::vector<FittingPiece> pieces = simultaneous_fitting(M.f_mats());

    Subspace vann = module_annihilator(M);
    std::vector<WeightDatum> out;
    for (FittingPiece& piece : pieces) {
        for (std::size_t i = 0; i < M.algebra().dim(); ++i) {
            for (std::size_t s = 0; s < piece.space.dim(); ++s) {
                if (!piece.space.contains(M.f_mat(i).apply(piece.space.basis_vector(s))) ||
                    !piece.space.contains(M.g_mat(i).apply(piece.space.basis_vector(s))))
                    throw NotADecomposition("weight space is not f,g-invariant");
            }
        }
        // for phi != 0, V^ann cap V^phi = (V^phi)^ann
        if (!is_zero_vec(piece.functional)) {
            LeibnizModule R = restrict_to_subspace(M, piece.space);
            Subspace r_ann = module_annihilator(R);
            std::vector<Vec> mapped;
            for (std::size_t s = 0; s < r_ann.dim(); ++s)
                mapped.push_back(embed(piece.space, r_ann.basis_vector(s)));
            Subspace piece_ann = Subspace::span(M.dim_v(), mapped);
            if (!(subspace_intersect(vann, piece.space) == piece_ann))
                throw NotADecomposition("V^ann cap V^phi != (V^phi)^ann");
        }
        out.push_back(WeightDatum{std::move(piece.functional), std::move(piece.space), std::nullopt});
    }
    return out;
}

FlagBasis flag_basis(const LeibnizModule& M, const WeightDatum& w) {
    LeibnizModule N = restrict_to_subspace(M, w.space);
    const std::size_t u = N.dim_v();
    const std::size_t d = M.algebra().dim();
    const Vec& phi = w.functional;

    std::vector<Vec> flag; // in N coordinates, block order
    FlagBasis out;
    while (flag.size() < u) {
        Subspace S = Subspace::span(u, flag);
        Matrix comp_basis = [&] {
            // complement coordinates: unit vectors at non-pivot columns of S
            std::vector<Vec> rows;
            auto pivots = S.pivot_columns();
            for (std::size_t j = 0; j < u; ++j)
                if (std::find(pivots.begin(), pivots.end(), j) == pivots.end())
                    rows.push_back(unit_vec(u, j));
            return Matrix::from_rows(rows, u);
        }();
        const std::size_t qdim = comp_basis.rows();

        auto quotient_op = [&](const Matrix& op) {
            // induced operator on span(comp) mod S
            Matrix q(qdim, qdim);
            for (std::size_t c = 0; c < qdim; ++c) {
                Vec img = op.apply(comp_basis.row(c));
                // reduce mod S
                auto pivots = S.pivot_columns();
                for (std::size_t r = 0; r < pivots.size(); ++r) {
                    Rat f = img[pivots[r]];
                    if (sgn(f) != 0)
                        for (std::size_t j = 0; j < u; ++j) img[j] -= f * S.basis().at(r, j);
                }
                auto coords = coordinates_in(comp_basis, img);
                if (!coords) throw TheoremViolation("flag span is not invariant");
                for (std::size_t r = 0; r < qdim; ++r) q.at(r, c) = (*coords)[r];
            }
            return q;
        };

        std::vector<Matrix> fq, gq;
        for (std::size_t i = 0; i < d; ++i) {
            fq.push_back(quotient_op(N.f_mat(i)));
            gq.push_back(quotient_op(N.g_mat(i)));
        }
        auto joint = [&](const Vec& g_target) {
            std::vector<Vec> rows;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t comp = 0; comp < qdim; ++comp) {
                    Vec row_f(qdim), row_g(qdim);
                    for (std::size_t c = 0; c < qdim; ++c) {
                        row_f[c] = fq[i].at(comp, c) - (comp == c ? phi[i] : Rat(0));
                        row_g[c] = gq[i].at(comp, c) - (comp == c ? g_target[i] : Rat(0));
                    }
                    rows.push_back(std::move(row_f));
                    rows.push_back(std::move(row_g));
                }
            return kernel(Matrix::from_rows(rows, qdim));
        };

        auto lift = [&](const Vec& qcoords) {
            Vec v = zero_vec(u);
            for (std::size_t c = 0; c < qdim; ++c)
                if (sgn(qcoords[c]) != 0) v = add(v, scale(comp_basis.row(c), qcoords[c]));
            return v;
        };

        FlagBlock block;
        Subspace ann_type = joint(zero_vec(d)); // f = phi, g = 0
        for (std::size_t r = 0; r < ann_type.dim(); ++r) {
            Vec v = lift(ann_type.basis_vector(r));
            block.ann_vectors.push_back(v);
            flag.push_back(v);
        }
        if (flag.size() < u) {
            bool have_eigen = false;
            // the (phi, phi) vector lives in the quotient by the flag so far
            {
                Subspace S2 = Subspace::span(u, flag);
                std::vector<Vec> rows2;
                auto pivots2 = S2.pivot_columns();
                for (std::size_t j = 0; j < u; ++j)
                    if (std::find(pivots2.begin(), pivots2.end(), j) == pivots2.end())
                        rows2.push_back(unit_vec(u, j));
                Matrix comp2 = Matrix::from_rows(rows2, u);
                const std::size_t q2 = comp2.rows();
                auto quotient_op2 = [&](const Matrix& op) {
                    Matrix q(q2, q2);
                    for (std::size_t c = 0; c < q2; ++c) {
                        Vec img = op.apply(comp2.row(c));
                        for (std::size_t r = 0; r < pivots2.size(); ++r) {
                            Rat f = img[pivots2[r]];
                            if (sgn(f) != 0)
                                for (std::size_t j = 0; j < u; ++j) img[j] -= f * S2.basis().at(r, j);
                        }
                        auto coords = coordinates_in(comp2, img);
                        if (!coords) throw TheoremViolation("flag span is not invariant");
                        for (std::size_t r = 0; r < q2; ++r) q.at(r, c) = (*coords)[r];
                    }
                    return q;
                };
                std::vector<Vec> rows;
                for (std::size_t i = 0; i < d; ++i) {
                    Matrix f2 = quotient_op2(N.f_mat(i));
                    Matrix g2 = quotient_op2(N.g_mat(i));
                    for (std::size_t comp = 0; comp < q2; ++comp) {
                        Vec row_f(q2), row_g(q2);
                        for (std::size_t c = 0; c < q2; ++c) {
                            row_f[c] = f2.at(comp, c) - (comp == c ? phi[i] : Rat(0));
                            row_g[c] = g2.at(comp, c) - (comp == c ? phi[i] : Rat(0));
                        }
                        rows.push_back(std::move(row_f));
                        rows.push_back(std::move(row_g));
                    }
                }
                Subspace eigen = kernel(Matrix::from_rows(rows, q2));
                if (!eigen.is_zero()) {
                    Vec v = zero_vec(u);
                    Vec c0 = eigen.basis_vector(0);
                    for (std::size_t c = 0; c < q2; ++c)
                        if (sgn(c0[c]) != 0) v = add(v, scale(comp2.row(c), c0[c]));
                    block.eigen_vector = v;
                    flag.push_back(v);
                    have_eigen = true;
                }
            }
            if (!have_eigen && block.ann_vectors.empty())
                throw TheoremViolation("flag peeling stalled: no annihilator or eigen vector");
        }
        out.blocks.push_back(std::move(block));
    }

    // verify the three congruence families against the cumulative flag
    std::size_t consumed = 0;
    for (const FlagBlock& block : out.blocks) {
        std::vector<Vec> prefix(flag.begin(), flag.begin() + consumed);
        Subspace before = Subspace::span(u, prefix);
        Subspace with_ann = [&] {
            std::vector<Vec> v = prefix;
            for (const Vec& a : block.ann_vectors) v.push_back(a);
            return Subspace::span(u, v);
        }();
        for (std::size_t i = 0; i < d; ++i) {
            for (const Vec& a : block.ann_vectors) {
                if (!before.contains(N.g_mat(i).apply(a)))
                    throw TheoremViolation("congruence g(x) v_ih = 0 mod earlier blocks failed");
                if (!before.contains(sub(N.f_mat(i).apply(a), scale(a, phi[i]))))
                    throw TheoremViolation("annihilator vector is not an f-eigenvector mod flag");
            }
            if (block.eigen_vector) {
                const Vec& v = *block.eigen_vector;
                if (!with_ann.contains(sub(N.f_mat(i).apply(v), scale(v, phi[i]))))
                    throw TheoremViolation("congruence f(x) v_i = phi(x) v_i mod flag failed");
                if (!with_ann.contains(sub(N.g_mat(i).apply(v), scale(v, phi[i]))))
                    throw TheoremViolation("congruence g(x) v_i = phi(x) v_i mod flag failed");
            }
        }
        consumed += block.ann_vectors.size() + (block.eigen_vector ? 1 : 0);
    }

    // report flag vectors in ambient V coordinates
    FlagBasis ambient;
    for (const FlagBlock& block : out.blocks) {
        FlagBlock b2;
        for (const Vec& a : block.ann_vectors) b2.ann_vectors.push_back(embed(w.space, a));
        if (block.eigen_vector) b2.eigen_vector = embed(w.space, *block.eigen_vector);
        ambient.blocks.push_back(std::move(b2));
    }
    return ambient;
}

} // namespace leibniz
