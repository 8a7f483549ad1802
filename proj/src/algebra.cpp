#include "leibniz/algebra.hpp"

#include <algorithm>
#include <random>

namespace leibniz {

LeibnizAlgebra::LeibnizAlgebra(std::vector<std::string> labels, std::vector<Rat> constants)
    : labels_(std::move(labels)), constants_(std::move(constants)) {
    const std::size_t d = labels_.size();
    if (d == 0) throw ValidationError("algebra dimension must be positive");
    if (constants_.size() != d * d * d)
        throw ValidationError("structure tensor must have dim^3 entries");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (labels_[i] == labels_[j])
                throw ValidationError("duplicate basis label: " + labels_[i]);
}

Vec LeibnizAlgebra::basis_bracket(std::size_t i, std::size_t j) const {
    Vec v(dim());
    for (std::size_t k = 0; k < dim(); ++k) v[k] = c(i, j, k);
    return v;
}

Vec LeibnizAlgebra::bracket(const Vec& x, const Vec& y) const {
    if (x.size() != dim() || y.size() != dim())
        throw DimensionMismatch("bracket operand length mismatch");
    Vec v(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (sgn(y[j]) == 0) continue;
            Rat f = x[i] * y[j];
            for (std::size_t k = 0; k < dim(); ++k) v[k] += f * c(i, j, k);
        }
    }
    return v;
}

Matrix LeibnizAlgebra::right_mult(const Vec& x) const {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
        Vec col = bracket(unit_vec(dim(), j), x);
        for (std::size_t i = 0; i < dim(); ++i) m.at(i, j) = col[i];
    }
    return m;
}

Matrix LeibnizAlgebra::left_mult(const Vec& x) const {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
        Vec col = bracket(x, unit_vec(dim(), j));
        for (std::size_t i = 0; i < dim(); ++i) m.at(i, j) = col[i];
    }
    return m;
}

std::optional<std::size_t> LeibnizAlgebra::label_index(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

std::optional<LeibnizWitness> verify_leibniz(const LeibnizAlgebra& L) {
    const std::size_t d = L.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Vec bij = L.basis_bracket(i, j);
            for (std::size_t k = 0; k < d; ++k) {
                Vec lhs = L.bracket(bij, unit_vec(d, k));
                Vec rhs = add(L.bracket(unit_vec(d, i), L.basis_bracket(j, k)),
                              L.bracket(L.basis_bracket(i, k), unit_vec(d, j)));
                if (lhs != rhs) return LeibnizWitness{i, j, k};
            }
        }
    return std::nullopt;
}

AlgebraSubspace annihilator(const LeibnizAlgebra& L) {
    const std::size_t d = L.dim();
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j)
            gens.push_back(add(L.basis_bracket(i, j), L.basis_bracket(j, i)));
    Subspace ann = Subspace::span(d, gens);
    // <L, L^ann> = 0 and ideal property; both fail only on non-Leibniz input
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t a = 0; a < ann.dim(); ++a) {
            if (!is_zero_vec(L.bracket(unit_vec(d, i), ann.basis_vector(a))))
                throw IdentityViolation("<L, L^ann> != 0: input is not a Leibniz algebra");
            if (!ann.contains(L.bracket(ann.basis_vector(a), unit_vec(d, i))))
                throw IdentityViolation("L^ann is not an ideal: input is not a Leibniz algebra");
        }
    return AlgebraSubspace{&L, std::move(ann)};
}

namespace {

// Coordinates of v in the quotient by I: reduce against the echelon basis
// of I, then read the entries at the non-pivot columns.
Vec quotient_coords(const Subspace& I, const std::vector<std::size_t>& section_cols, const Vec& v) {
    Vec w = v;
    auto pivots = I.pivot_columns();
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        Rat f = w[pivots[r]];
        if (sgn(f) != 0)
            for (std::size_t j = 0; j < w.size(); ++j) w[j] -= f * I.basis().at(r, j);
    }
    Vec q(section_cols.size());
    for (std::size_t t = 0; t < section_cols.size(); ++t) q[t] = w[section_cols[t]];
    return q;
}

std::vector<std::size_t> complement_columns(const Subspace& I, std::size_t d) {
    auto pivots = I.pivot_columns();
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < d; ++j)
        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) cols.push_back(j);
    return cols;
}

} // namespace

LeibnizAlgebra quotient(const LeibnizAlgebra& L, const Subspace& I) {
    if (!is_ideal(L, I)) throw NotAnIdeal("quotient by a non-ideal");
    const std::size_t d = L.dim();
    auto cols = complement_columns(I, d);
    const std::size_t q = cols.size();
    std::vector<std::string> labels;
    for (std::size_t c : cols) labels.push_back(L.labels()[c]);
    std::vector<Rat> tensor(q * q * q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            Vec w = quotient_coords(I, cols, L.basis_bracket(cols[i], cols[j]));
            for (std::size_t k = 0; k < q; ++k) tensor[(i * q + j) * q + k] = w[k];
        }
    return LeibnizAlgebra(std::move(labels), std::move(tensor));
}

LieFactor lie_factor(const LeibnizAlgebra& L) {
    Subspace ann = annihilator(L).space;
    const std::size_t d = L.dim();
    auto cols = complement_columns(ann, d);
    const std::size_t q = cols.size();

    LeibnizAlgebra fac = quotient(L, ann);
    Matrix proj(q, d);
    for (std::size_t j = 0; j < d; ++j) {
        Vec w = quotient_coords(ann, cols, unit_vec(d, j));
        for (std::size_t i = 0; i < q; ++i) proj.at(i, j) = w[i];
    }
    Matrix section(q, d);
    for (std::size_t i = 0; i < q; ++i) section.at(i, cols[i]) = 1;

    if (verify_leibniz(fac)) throw IdentityViolation("Lie factor fails the Leibniz identity");
    if (!is_antisymmetric(fac)) throw IdentityViolation("Lie factor is not antisymmetric");
    return LieFactor{std::move(fac), std::move(proj), std::move(section)};
}

LieModuleView lie_factor_action_on_ann(const LeibnizAlgebra& L) {
    LieFactor fac = lie_factor(L);
    Subspace ann = annihilator(L).space;
    const std::size_t m = ann.dim();
    const std::size_t q = fac.algebra.dim();
    const std::size_t d = L.dim();

    // action of a section representative must kill nothing it shouldn't:
    // r_a restricted to L^ann vanishes for a in L^ann, which makes the
    // quotient action independent of the section. Re-verified here.
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            if (!is_zero_vec(L.bracket(ann.basis_vector(b), ann.basis_vector(a))))
                throw WellDefinednessFailure("factor action on L^ann depends on the section");

    std::vector<Matrix> action;
    for (std::size_t i = 0; i < q; ++i) {
        Vec x = fac.section.row(i);
        Matrix mat(m, m);
        for (std::size_t b = 0; b < m; ++b) {
            Vec img = scale(L.bracket(ann.basis_vector(b), x), Rat(-1)); // xbar . a = -<a, x>
            if (!ann.contains(img))
                throw WellDefinednessFailure("factor action does not preserve L^ann");
            Vec coords = ann.coordinates(img);
            for (std::size_t r = 0; r < m; ++r) mat.at(r, b) = coords[r];
        }
        action.push_back(std::move(mat));
    }

    // Lie-module axiom against the factor brackets
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            Matrix lhs(m, m);
            for (std::size_t k = 0; k < q; ++k)
                if (sgn(fac.algebra.c(i, j, k)) != 0)
                    lhs = lhs + action[k] * fac.algebra.c(i, j, k);
            Matrix rhs = action[i] * action[j] - action[j] * action[i];
            if (!(lhs == rhs))
                throw WellDefinednessFailure("factor action violates the Lie module axiom");
        }
    (void)d;
    return LieModuleView{std::move(ann), std::move(action)};
}

bool is_ideal(const LeibnizAlgebra& L, const Subspace& S) {
    const std::size_t d = L.dim();
    for (std::size_t s = 0; s < S.dim(); ++s)
        for (std::size_t i = 0; i < d; ++i) {
            if (!S.contains(L.bracket(S.basis_vector(s), unit_vec(d, i)))) return false;
            if (!S.contains(L.bracket(unit_vec(d, i), S.basis_vector(s)))) return false;
        }
    return true;
}

Subspace ideal_closure(const LeibnizAlgebra& L, const Subspace& S) {
    const std::size_t d = L.dim();
    Subspace current = S;
    for (;;) {
        std::vector<Vec> gens;
        for (std::size_t s = 0; s < current.dim(); ++s) gens.push_back(current.basis_vector(s));
        for (std::size_t s = 0; s < current.dim(); ++s)
            for (std::size_t i = 0; i < d; ++i) {
                gens.push_back(L.bracket(current.basis_vector(s), unit_vec(d, i)));
                gens.push_back(L.bracket(unit_vec(d, i), current.basis_vector(s)));
            }
        Subspace next = Subspace::span(d, gens);
        if (next.dim() == current.dim()) return next;
        current = std::move(next);
    }
}

namespace {

Subspace bracket_span(const LeibnizAlgebra& L, const Subspace& A, const Subspace& B) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < B.dim(); ++j)
            gens.push_back(L.bracket(A.basis_vector(i), B.basis_vector(j)));
    return Subspace::span(L.dim(), gens);
}

} // namespace

std::vector<Subspace> derived_series(const LeibnizAlgebra& L) {
    std::vector<Subspace> series{Subspace::full(L.dim())};
    for (;;) {
        Subspace next = bracket_span(L, series.back(), series.back());
        bool stable = next.dim() == series.back().dim();
        series.push_back(std::move(next));
        if (stable || series.back().is_zero()) break; // record the stabilized term once
    }
    return series;
}

bool is_solvable(const LeibnizAlgebra& L) { return derived_series(L).back().is_zero(); }

std::vector<Subspace> right_central_series(const LeibnizAlgebra& L) {
    Subspace full = Subspace::full(L.dim());
    std::vector<Subspace> series{full};
    for (;;) {
        Subspace next = bracket_span(L, series.back(), full);
        bool stable = next.dim() == series.back().dim();
        series.push_back(std::move(next));
        if (stable || series.back().is_zero()) break;
    }
    return series;
}

bool is_right_nilpotent(const LeibnizAlgebra& L) { return right_central_series(L).back().is_zero(); }

bool is_antisymmetric(const LeibnizAlgebra& L) {
    const std::size_t d = L.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (L.c(i, j, k) != -L.c(j, i, k)) return false;
    return true;
}

Matrix killing_form(const LeibnizAlgebra& L) {
    const std::size_t d = L.dim();
    std::vector<Matrix> ad;
    for (std::size_t i = 0; i < d; ++i) ad.push_back(L.left_mult(unit_vec(d, i)));
    Matrix k(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) k.at(i, j) = (ad[i] * ad[j]).trace();
    return k;
}

namespace {

// Cartan subalgebra of a semisimple Lie algebra presented as an
// antisymmetric Leibniz tensor: centralizer of a regular semisimple
// element, found over a deterministic candidate list.
std::optional<Subspace> lie_cartan(const LeibnizAlgebra& K) {
    const std::size_t d = K.dim();
    std::vector<Vec> candidates;
    for (std::size_t i = 0; i < d; ++i) candidates.push_back(unit_vec(d, i));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            candidates.push_back(add(unit_vec(d, i), unit_vec(d, j)));
    std::mt19937_64 rng(0x5ca1ab1eULL);
    std::uniform_int_distribution<int> dist(-4, 4);
    for (int t = 0; t < 32; ++t) {
        Vec v(d);
        for (auto& x : v) x = dist(rng);
        candidates.push_back(std::move(v));
    }

    std::optional<Subspace> best;
    for (const Vec& x : candidates) {
        if (is_zero_vec(x)) continue;
        Matrix ad = K.left_mult(x);
        RationalEigenvalues ev = rational_eigenvalues(ad);
        if (!ev.complete) continue;
        std::size_t eig_total = 0;
        for (auto& [lambda, mu] : ev.roots)
            eig_total += kernel([&] {
                Matrix s = ad;
                for (std::size_t i = 0; i < d; ++i) s.at(i, i) -= lambda;
                return s;
            }()).dim();
        if (eig_total != d) continue; // not semisimple as an operator
        Subspace h = kernel(ad);
        if (!best || h.dim() < best->dim()) best = h;
    }
    return best;
}

// All joint eigen-lines of a commuting diagonalizable family; nullopt if
// some joint eigenspace has dimension > 1 (multiplicity-free proviso).
std::optional<std::vector<Subspace>> weight_lines(const std::vector<Matrix>& ops, std::size_t n) {
    if (ops.empty()) {
        if (n != 1) return std::nullopt;
        return std::vector<Subspace>{Subspace::full(1)};
    }
    std::vector<FittingPiece> pieces = simultaneous_fitting(ops);
    std::vector<Subspace> lines;
    for (auto& piece : pieces) {
        if (piece.space.dim() != 1) return std::nullopt;
        // require plain eigenvectors, not just generalized ones
        for (std::size_t t = 0; t < ops.size(); ++t) {
            Vec v = piece.space.basis_vector(0);
            if (ops[t].apply(v) != scale(v, piece.functional[t])) return std::nullopt;
        }
        lines.push_back(piece.space);
    }
    return lines;
}

} // namespace

SimplicityCertificate is_simple(const LeibnizAlgebra& L) {
    SimplicityCertificate cert;
    const std::size_t d = L.dim();
    Subspace ann = annihilator(L).space;

    // (a) <L^ann, L> != 0
    cert.ann_action_nonzero = !bracket_span(L, ann, Subspace::full(d)).is_zero();
    if (!cert.ann_action_nonzero) {
        cert.detail = "clause (a): <L^ann, L> = 0";
        return cert;
    }

    // (d) <L, L> = L
    cert.perfect = bracket_span(L, Subspace::full(d), Subspace::full(d)).dim() == d;
    if (!cert.perfect) {
        cert.detail = "clause (d): <L, L> != L";
        return cert;
    }

    // (b) Lie factor is a simple Lie algebra
    LieFactor fac = lie_factor(L);
    const std::size_t q = fac.algebra.dim();
    bool killing_ok = q > 0 && sgn(killing_form(fac.algebra).determinant()) != 0;
    if (!killing_ok) {
        cert.detail = "clause (b): Killing form of the Lie factor is degenerate";
        return cert;
    }
    std::optional<Subspace> factor_cartan = lie_cartan(fac.algebra);
    if (q == 3) {
        cert.factor_simple = true; // 3-dim semisimple is simple
    } else {
        if (!factor_cartan)
            throw Undecidable("no rational split Cartan found for the Lie factor");
        std::vector<Matrix> ads;
        for (std::size_t i = 0; i < factor_cartan->dim(); ++i)
            ads.push_back(fac.algebra.left_mult(factor_cartan->basis_vector(i)));
        auto lines = weight_lines(ads, q);
        if (!lines) throw Undecidable("Lie-factor root spaces are not multiplicity-free");
        cert.factor_simple = true;
        for (const Subspace& line : *lines) {
            if (subspace_intersect(line, *factor_cartan) == line) continue; // zero weight
            if (ideal_closure(fac.algebra, line).dim() != q) {
                cert.factor_simple = false;
                cert.detail = "clause (b): a root line generates a proper ideal of the factor";
                return cert;
            }
        }
    }

    // (c) L^ann irreducible over the Lie factor, decided on weight lines
    LieModuleView view = lie_factor_action_on_ann(L);
    const std::size_t m = view.base.dim();
    if (m == 0) {
        cert.detail = "clause (c): empty annihilator"; // unreachable after (a)
        return cert;
    }
    if (!factor_cartan) throw Undecidable("no rational split Cartan found for the Lie factor");
    std::vector<Matrix> cartan_action;
    for (std::size_t i = 0; i < factor_cartan->dim(); ++i) {
        Vec h = factor_cartan->basis_vector(i);
        Matrix a(m, m);
        for (std::size_t t = 0; t < q; ++t)
            if (sgn(h[t]) != 0) a = a + view.action[t] * h[t];
        cartan_action.push_back(std::move(a));
    }
    auto ann_lines = weight_lines(cartan_action, m);
    if (!ann_lines)
        throw Undecidable("Cartan action on L^ann is not diagonalizable multiplicity-free");
    cert.ann_irreducible = true;
    for (const Subspace& line : *ann_lines) {
        // submodule generated by the line
        Subspace current = line;
        for (;;) {
            std::vector<Vec> gens;
            for (std::size_t s = 0; s < current.dim(); ++s) {
                gens.push_back(current.basis_vector(s));
                for (const Matrix& op : view.action)
                    gens.push_back(op.apply(current.basis_vector(s)));
            }
            Subspace next = Subspace::span(m, gens);
            if (next.dim() == current.dim()) break;
            current = std::move(next);
        }
        if (current.dim() != m) {
            cert.ann_irreducible = false;
            cert.detail = "clause (c): a weight line generates a proper submodule of L^ann";
            return cert;
        }
    }

    cert.simple = cert.ann_action_nonzero && cert.factor_simple && cert.ann_irreducible && cert.perfect;

    // randomized cross-check: closures of random vectors land in {L^ann, L}
    if (cert.simple) {
        std::mt19937_64 rng(0xd15ea5eULL);
        std::uniform_int_distribution<int> dist(-3, 3);
        for (int t = 0; t < 20; ++t) {
            Vec v(d);
            do {
                for (auto& x : v) x = dist(rng);
            } while (is_zero_vec(v));
            Subspace cl = ideal_closure(L, Subspace::span(d, {v}));
            if (!(cl == ann) && cl.dim() != d)
                throw Undecidable("randomized oracle found an unexpected proper ideal");
        }
        cert.detail = "all clauses verified";
    }
    return cert;
}

std::optional<Matrix> is_standard(const LeibnizAlgebra& L) {
    const std::size_t d = L.dim();
    Subspace ann = annihilator(L).space;
    LieFactor fac = lie_factor(L);
    const std::size_t q = fac.algebra.dim();
    const std::size_t m = ann.dim();
    if (m == 0) return fac.section; // already a Lie algebra

    // Unknowns: corrections a_1..a_q in L^ann (coordinates in the ann basis).
    // For each pair (i,j): <s_i + a_i, s_j + a_j> = sum_k cbar_ijk (s_k + a_k),
    // which is linear because <L, L^ann> = 0 and <L^ann, L^ann> = 0.
    const std::size_t unknowns = q * m;
    std::vector<Vec> rows;
    Vec rhs_all;
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            Vec rhs = scale(L.bracket(fac.section.row(i), fac.section.row(j)), Rat(-1));
            for (std::size_t k = 0; k < q; ++k)
                rhs = add(rhs, scale(fac.section.row(k), fac.algebra.c(i, j, k)));
            // coefficient of a_i: -r_{s_j}; coefficient of a_k: +cbar_ijk
            for (std::size_t comp = 0; comp < d; ++comp) {
                Vec row(unknowns);
                for (std::size_t u = 0; u < m; ++u) {
                    Vec img = L.bracket(ann.basis_vector(u), fac.section.row(j));
                    row[i * m + u] += img[comp];
                    for (std::size_t k = 0; k < q; ++k)
                        if (sgn(fac.algebra.c(i, j, k)) != 0)
                            row[k * m + u] -= fac.algebra.c(i, j, k) * ann.basis_vector(u)[comp];
                }
                rows.push_back(std::move(row));
                rhs_all.push_back(rhs[comp]);
            }
        }
    auto sol = solve(Matrix::from_rows(rows, unknowns), rhs_all);
    if (!sol) return std::nullopt;

    Matrix complement(q, d);
    for (std::size_t i = 0; i < q; ++i) {
        Vec v = fac.section.row(i);
        for (std::size_t u = 0; u < m; ++u)
            v = add(v, scale(ann.basis_vector(u), (*sol)[i * m + u]));
        complement.set_row(i, v);
    }
    return complement;
}

LeibnizAlgebra subalgebra(const LeibnizAlgebra& L, const Subspace& S,
                          const std::vector<std::string>& labels) {
    const std::size_t q = S.dim();
    std::vector<std::string> lbl = labels;
    if (lbl.empty())
        for (std::size_t i = 0; i < q; ++i) lbl.push_back("s" + std::to_string(i));
    std::vector<Rat> tensor(q * q * q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            Vec w = L.bracket(S.basis_vector(i), S.basis_vector(j));
            if (!S.contains(w)) throw NotClosed("subspace is not closed under the bracket");
            Vec coords = S.coordinates(w);
            for (std::size_t k = 0; k < q; ++k) tensor[(i * q + j) * q + k] = coords[k];
        }
    return LeibnizAlgebra(std::move(lbl), std::move(tensor));
}

LeibnizAlgebra change_basis(const LeibnizAlgebra& L, const Matrix& P) {
    const std::size_t d = L.dim();
    if (P.rows() != d || P.cols() != d) throw DimensionMismatch("change_basis: P must be dim x dim");
    Matrix pinv_t = P.inverse().transpose(); // coords in rows of P
    std::vector<Rat> tensor(d * d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Vec w = pinv_t.apply(L.bracket(P.row(i), P.row(j)));
            for (std::size_t k = 0; k < d; ++k) tensor[(i * d + j) * d + k] = w[k];
        }
    return LeibnizAlgebra(L.labels(), std::move(tensor));
}

} // namespace leibniz
