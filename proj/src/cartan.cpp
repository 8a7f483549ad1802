#include "leibniz/cartan.hpp"

#include <algorithm>
#include <random>

namespace leibniz {

namespace {

std::vector<std::size_t> non_pivot_columns(const Subspace& S) {
    auto pivots = S.pivot_columns();
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < S.ambient_dim(); ++j)
        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) cols.push_back(j);
    return cols;
}

// v reduced modulo the echelon basis of S.
Vec reduce_mod(const Subspace& S, Vec v) {
    auto pivots = S.pivot_columns();
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        Rat f = v[pivots[r]];
        if (sgn(f) != 0)
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * S.basis().at(r, j);
    }
    return v;
}

} // namespace

Subspace right_normalizer(const LeibnizAlgebra& L, const Subspace& H) {
    const std::size_t d = L.dim();
    if (H.is_zero()) return Subspace::full(d); // empty condition
    auto comp = non_pivot_columns(H);
    std::vector<Vec> rows;
    for (std::size_t t = 0; t < H.dim(); ++t) {
        Matrix r_h = L.right_mult(H.basis_vector(t));
        // condition: r_h(x) in H, i.e. its reduction mod H vanishes
        std::vector<Vec> reduced_cols;
        for (std::size_t j = 0; j < d; ++j) reduced_cols.push_back(reduce_mod(H, r_h.col(j)));
        for (std::size_t c : comp) {
            Vec row(d);
            for (std::size_t j = 0; j < d; ++j) row[j] = reduced_cols[j][c];
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) return Subspace::full(d);
    return kernel(Matrix::from_rows(rows, d));
}

bool is_cartan(const LeibnizAlgebra& L, const Subspace& H) {
    LeibnizAlgebra sub = subalgebra(L, H); // throws NotClosed
    if (!is_right_nilpotent(sub)) return false;
    return right_normalizer(L, H) == H;
}

Subspace find_cartan(const LeibnizAlgebra& L, std::uint64_t seed) {
    const std::size_t d = L.dim();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-4, 4);
    std::optional<Subspace> best, unsplit_cartan;
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vec x(d);
        do {
            for (auto& e : x) e = dist(rng);
        } while (is_zero_vec(x));
        Subspace candidate = kernel(L.right_mult(x).pow(d)); // Fitting null component
        bool cartan;
        try {
            cartan = is_cartan(L, candidate);
        } catch (const NotClosed&) {
            continue;
        }
        if (cartan) {
            // prefer a Cartan whose right multiplications split rationally,
            // so the root decomposition exists over Q
            bool split = true;
            for (std::size_t t = 0; t < candidate.dim() && split; ++t)
                split = rational_eigenvalues(L.right_mult(candidate.basis_vector(t))).complete;
            if (split) return candidate;
            if (!unsplit_cartan) unsplit_cartan = candidate;
        } else if (!best || candidate.dim() < best->dim()) {
            best = candidate;
        }
    }
    if (unsplit_cartan) return *unsplit_cartan;
    throw NotFound("no Cartan subalgebra found in 64 attempts; best candidate has dimension " +
                   std::to_string(best ? best->dim() : 0));
}

RootDatum root_decomposition(const LeibnizAlgebra& L, const Subspace& H) {
    if (!is_cartan(L, H)) throw NotCartan("H is not a Cartan subalgebra");
    auto shared = std::make_shared<LeibnizAlgebra>(L);
    LeibnizModule adj = adjoint_module(shared);
    LeibnizModule restricted = restrict_module(adj, H);
    std::vector<WeightDatum> wd = weight_decomposition(restricted);

    Subspace ann = annihilator(L).space;
    RootDatum out{H, {}};
    bool zero_seen = false;
    for (WeightDatum& w : wd) {
        if (is_zero_vec(w.functional)) {
            zero_seen = true;
            if (!(w.space == H))
                throw ZeroWeightMismatch("zero weight space differs from H: H was not Cartan");
            continue;
        }
        Subspace ann_part = subspace_intersect(ann, w.space);
        Parity parity = (ann_part == w.space) ? Parity::odd : Parity::even;
        out.roots.push_back(Root{std::move(w.functional), std::move(w.space), parity,
                                 std::move(ann_part)});
    }
    if (!zero_seen && !H.is_zero())
        throw ZeroWeightMismatch("no zero weight space although H is nonzero");
    return out;
}

StructureCheckReport structure_checks(const LeibnizAlgebra& L, const RootDatum& rd) {
    LieFactor fac = lie_factor(L);
    if (fac.algebra.dim() == 0 || sgn(killing_form(fac.algebra).determinant()) == 0)
        throw SemisimplicityNotEstablished("Killing form of the Lie factor is degenerate");

    StructureCheckReport report;
    const std::size_t d = L.dim();
    const Subspace& H = rd.cartan;

    // (i) H abelian
    for (std::size_t i = 0; i < H.dim(); ++i)
        for (std::size_t j = 0; j < H.dim(); ++j)
            if (!is_zero_vec(L.bracket(H.basis_vector(i), H.basis_vector(j))))
                throw Error("structure check failed: the Cartan subalgebra is not abelian");
    report.cartan_abelian = true;

    // (i) annihilator decomposition across H cap L^ann and the root parts
    Subspace ann = annihilator(L).space;
    Subspace acc = subspace_intersect(H, ann);
    std::size_t dims = acc.dim();
    for (const Root& root : rd.roots) {
        acc = subspace_sum(acc, root.ann_part);
        dims += root.ann_part.dim();
    }
    if (!(acc == ann) || dims != ann.dim())
        throw Error("structure check failed: annihilator does not decompose across root parts");
    report.ann_decomposes = true;

    auto joint_eigen = [&](const Root& root, bool left_zero) {
        // {v in root.space : -r_h v = phi(h) v, and l_h v = 0 when left_zero}
        const Subspace& S = root.space;
        std::vector<Vec> rows;
        for (std::size_t t = 0; t < H.dim(); ++t) {
            Matrix op = L.right_mult(H.basis_vector(t)) * Rat(-1);
            Matrix lop = L.left_mult(H.basis_vector(t));
            for (std::size_t comp = 0; comp < d; ++comp) {
                Vec row(S.dim()), lrow(S.dim());
                for (std::size_t s = 0; s < S.dim(); ++s) {
                    Vec img = op.apply(S.basis_vector(s));
                    row[s] = img[comp] - root.functional[t] * S.basis().at(s, comp);
                    lrow[s] = lop.apply(S.basis_vector(s))[comp];
                }
                rows.push_back(std::move(row));
                if (left_zero) rows.push_back(std::move(lrow));
            }
        }
        Subspace coeffs = kernel(Matrix::from_rows(rows, S.dim()));
        std::vector<Vec> vecs;
        for (std::size_t r = 0; r < coeffs.dim(); ++r) {
            Vec c = coeffs.basis_vector(r);
            Vec v = zero_vec(d);
            for (std::size_t s = 0; s < S.dim(); ++s)
                if (sgn(c[s]) != 0) v = add(v, scale(S.basis_vector(s), c[s]));
            vecs.push_back(std::move(v));
        }
        return Subspace::span(d, vecs);
    };

    for (const Root& root : rd.roots) {
        if (root.parity == Parity::odd) {
            // (ii) the whole root space consists of such vectors
            if (!(joint_eigen(root, true) == root.space))
                throw Error("structure check failed on an odd root: not an annihilator weight line");
            ++report.odd_roots_checked;
        } else {
            // (iii) annihilator lines plus one v^phi with the congruence
            Subspace ann_lines = joint_eigen(root, true);
            Subspace plain = joint_eigen(root, false);
            // v in plain with l_h v = phi(h) v mod ann_lines, v outside ann_lines
            std::vector<Vec> rows;
            auto comp_cols = non_pivot_columns(ann_lines);
            for (std::size_t t = 0; t < H.dim(); ++t) {
                Matrix lop = L.left_mult(H.basis_vector(t));
                for (std::size_t c : comp_cols) {
                    Vec row(plain.dim());
                    for (std::size_t s = 0; s < plain.dim(); ++s) {
                        Vec img = sub(lop.apply(plain.basis_vector(s)),
                                      scale(plain.basis_vector(s), root.functional[t]));
                        row[s] = reduce_mod(ann_lines, img)[c];
                    }
                    rows.push_back(std::move(row));
                }
            }
            Subspace coeffs = plain.dim() == 0
                                  ? Subspace(0)
                                  : kernel(Matrix::from_rows(rows, plain.dim()));
            bool found = false;
            for (std::size_t r = 0; r < coeffs.dim() && !found; ++r) {
                Vec c = coeffs.basis_vector(r);
                Vec v = zero_vec(d);
                for (std::size_t s = 0; s < plain.dim(); ++s)
                    if (sgn(c[s]) != 0) v = add(v, scale(plain.basis_vector(s), c[s]));
                if (!ann_lines.contains(v)) found = true;
            }
            if (!found) throw Error("structure check failed on an even root: no eigenvector outside the annihilator");
            if (ann_lines.dim() + 1 != root.space.dim())
                throw Error("structure check failed: even root space is not ann lines + one line");
            ++report.even_roots_checked;
        }
    }
    return report;
}

} // namespace leibniz
