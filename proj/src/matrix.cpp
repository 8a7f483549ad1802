#include "leibniz/matrix.hpp"

#include <algorithm>
#include <map>

namespace leibniz {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionMismatch("matrix entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

Vec Matrix::row(std::size_t i) const {
    return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

Vec Matrix::col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

void Matrix::set_row(std::size_t i, const Vec& v) {
    if (v.size() != cols_) throw DimensionMismatch("row length mismatch");
    std::copy(v.begin(), v.end(), data_.begin() + i * cols_);
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& a = at(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                p.at(i, j) += a * rhs.at(k, j);
        }
    return p;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix sum shape mismatch");
    Matrix s = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] += rhs.data_[i];
    return s;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix diff shape mismatch");
    Matrix s = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] -= rhs.data_[i];
    return s;
}

Matrix Matrix::operator*(const Rat& c) const {
    Matrix s = *this;
    for (auto& x : s.data_) x *= c;
    return s;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
    Vec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (sgn(at(i, j)) != 0) r[i] += at(i, j) * v[j];
    return r;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rat& x) { return sgn(x) == 0; });
}

Rat Matrix::trace() const {
    Rat t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
}

Matrix Matrix::pow(std::size_t k) const {
    if (rows_ != cols_) throw DimensionMismatch("pow of non-square matrix");
    Matrix result = identity(rows_);
    Matrix base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

Matrix Matrix::vstack(const Matrix& rhs) const {
    if (rhs.rows_ == 0) return *this;
    if (rows_ == 0) return rhs;
    if (cols_ != rhs.cols_) throw DimensionMismatch("vstack column mismatch");
    Matrix s(rows_ + rhs.rows_, cols_);
    std::copy(data_.begin(), data_.end(), s.data_.begin());
    std::copy(rhs.data_.begin(), rhs.data_.end(), s.data_.begin() + data_.size());
    return s;
}

Matrix Matrix::hstack(const Matrix& rhs) const {
    if (rows_ != rhs.rows_) throw DimensionMismatch("hstack row mismatch");
    Matrix s(rows_, cols_ + rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) s.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < rhs.cols_; ++j) s.at(i, cols_ + j) = rhs.at(i, j);
    }
    return s;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw DimensionMismatch("inverse of non-square matrix");
    Matrix aug = hstack(identity(rows_));
    Matrix r = rref(aug);
    for (std::size_t i = 0; i < rows_; ++i)
        if (r.at(i, i) != 1) throw SingularMatrix("matrix is singular");
    Matrix inv(rows_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < rows_; ++j) inv.at(i, j) = r.at(i, rows_ + j);
    return inv;
}

std::size_t Matrix::rank() const {
    Matrix r = rref(*this);
    std::size_t rk = 0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        bool nz = false;
        for (std::size_t j = 0; j < r.cols(); ++j)
            if (sgn(r.at(i, j)) != 0) { nz = true; break; }
        if (nz) ++rk;
    }
    return rk;
}

Rat Matrix::determinant() const {
    if (rows_ != cols_) throw DimensionMismatch("determinant of non-square matrix");
    Matrix a = *this;
    Rat det = 1;
    for (std::size_t c = 0; c < cols_; ++c) {
        std::size_t p = c;
        while (p < rows_ && sgn(a.at(p, c)) == 0) ++p;
        if (p == rows_) return Rat(0);
        if (p != c) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(a.at(p, j), a.at(c, j));
            det = -det;
        }
        det *= a.at(c, c);
        Rat inv = 1 / a.at(c, c);
        for (std::size_t j = c; j < cols_; ++j) a.at(c, j) *= inv;
        for (std::size_t i = c + 1; i < rows_; ++i) {
            if (sgn(a.at(i, c)) == 0) continue;
            Rat f = a.at(i, c);
            for (std::size_t j = c; j < cols_; ++j) a.at(i, j) -= f * a.at(c, j);
        }
    }
    return det;
}

Matrix rref(const Matrix& m) {
    Matrix a = m;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < a.cols() && pivot_row < a.rows(); ++c) {
        std::size_t p = pivot_row;
        while (p < a.rows() && sgn(a.at(p, c)) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != pivot_row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(p, j), a.at(pivot_row, j));
        Rat inv = 1 / a.at(pivot_row, c);
        for (std::size_t j = c; j < a.cols(); ++j) a.at(pivot_row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == pivot_row || sgn(a.at(i, c)) == 0) continue;
            Rat f = a.at(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a.at(i, j) -= f * a.at(pivot_row, j);
        }
        ++pivot_row;
    }
    return a;
}

Rat Polynomial::eval(const Rat& x) const {
    Rat v;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

Matrix Polynomial::eval(const Matrix& m) const {
    Matrix v(m.rows(), m.cols());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        v = v * m;
        for (std::size_t i = 0; i < m.rows(); ++i) v.at(i, i) += *it;
    }
    return v;
}

Subspace Subspace::span(const Matrix& spanning_rows) {
    Subspace s(spanning_rows.cols());
    Matrix r = rref(spanning_rows);
    std::vector<Vec> kept;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        Vec v = r.row(i);
        if (!is_zero_vec(v)) kept.push_back(std::move(v));
    }
    s.basis_ = Matrix::from_rows(kept, spanning_rows.cols());
    return s;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vec>& vectors) {
    return span(Matrix::from_rows(vectors, ambient_dim));
}

Subspace Subspace::full(std::size_t ambient_dim) {
    return span(Matrix::identity(ambient_dim));
}

std::vector<std::size_t> Subspace::pivot_columns() const {
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < basis_.rows(); ++i)
        for (std::size_t j = 0; j < ambient_; ++j)
            if (sgn(basis_.at(i, j)) != 0) { pivots.push_back(j); break; }
    return pivots;
}

bool Subspace::contains(const Vec& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("vector/subspace ambient mismatch");
    // reduce v against the echelon basis
    Vec w = v;
    auto pivots = pivot_columns();
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const Rat& c = w[pivots[i]];
        if (sgn(c) != 0) {
            Rat f = c; // pivot entries are 1
            for (std::size_t j = 0; j < ambient_; ++j) w[j] -= f * basis_.at(i, j);
        }
    }
    return is_zero_vec(w);
}

bool Subspace::contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_vector(i))) return false;
    return true;
}

Vec Subspace::coordinates(const Vec& v) const {
    auto c = coordinates_in(basis_, v);
    if (!c) throw DimensionMismatch("vector not in subspace");
    return *c;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionMismatch("subspace sum: ambient dimension mismatch");
    return Subspace::span(a.basis().vstack(b.basis()));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionMismatch("subspace intersection: ambient dimension mismatch");
    if (a.is_zero() || b.is_zero()) return Subspace(a.ambient_dim());
    // x^T A = y^T B  <=>  (x, y) in kernel of [A^T | -B^T]
    Matrix k = a.basis().transpose().hstack(b.basis().transpose() * Rat(-1));
    Subspace pairs = kernel(k);
    std::vector<Vec> vecs;
    for (std::size_t i = 0; i < pairs.dim(); ++i) {
        Vec p = pairs.basis_vector(i);
        Vec x(p.begin(), p.begin() + a.dim());
        Vec v = zero_vec(a.ambient_dim());
        for (std::size_t r = 0; r < a.dim(); ++r)
            if (sgn(x[r]) != 0) v = add(v, scale(a.basis_vector(r), x[r]));
        vecs.push_back(std::move(v));
    }
    return Subspace::span(a.ambient_dim(), vecs);
}

Subspace kernel(const Matrix& m) {
    Matrix r = rref(m);
    std::vector<std::size_t> pivot_of_col(m.cols(), SIZE_MAX);
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
            if (sgn(r.at(i, j)) != 0) {
                pivot_of_col[j] = i;
                pivots.push_back(j);
                break;
            }
    std::vector<Vec> basis;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (pivot_of_col[j] != SIZE_MAX) continue;
        Vec v = zero_vec(m.cols());
        v[j] = 1;
        for (std::size_t c : pivots) v[c] = -r.at(pivot_of_col[c], j);
        basis.push_back(std::move(v));
    }
    return Subspace::span(m.cols(), basis);
}

Polynomial char_poly(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("char_poly of non-square matrix");
    const std::size_t n = m.rows();
    // Faddeev-LeVerrier: M_1 = m, c_{n-k} = -tr(M_k)/k, M_{k+1} = m (M_k + c_{n-k} I)
    std::vector<Rat> c(n + 1);
    c[n] = 1;
    Matrix mk = m;
    for (std::size_t k = 1; k <= n; ++k) {
        c[n - k] = -mk.trace() / Rat(static_cast<long>(k));
        if (k < n) {
            Matrix t = mk;
            for (std::size_t i = 0; i < n; ++i) t.at(i, i) += c[n - k];
            mk = m * t;
        }
    }
    return Polynomial{std::move(c)};
}

namespace {

// All positive divisors by trial division; desk-scale inputs only.
std::vector<Int> positive_divisors(Int n) {
    n = abs(n);
    std::vector<std::pair<Int, unsigned>> factors;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            factors.emplace_back(p, e);
        }
    }
    if (n > 1) factors.emplace_back(n, 1);
    std::vector<Int> divs{Int(1)};
    for (auto& [p, e] : factors) {
        std::size_t sz = divs.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

// Divides poly by (t - root) in place; assumes exact divisibility.
void deflate(std::vector<Rat>& coeffs, const Rat& root) {
    std::vector<Rat> q(coeffs.size() - 1);
    Rat carry = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = coeffs[i] + root * carry;
    }
    coeffs = std::move(q);
}

} // namespace

RationalEigenvalues rational_eigenvalues(const Matrix& m) {
    Polynomial p = char_poly(m);
    std::vector<Rat> c = p.coeffs;
    const std::size_t degree = p.degree();
    std::map<Rat, std::size_t> mult;

    // strip roots at zero
    while (c.size() > 1 && sgn(c[0]) == 0) {
        ++mult[Rat(0)];
        c.erase(c.begin());
    }
    while (c.size() > 1) {
        // integer coefficients of the primitive associate
        Int den_lcm = 1;
        for (const Rat& q : c) den_lcm = lcm(den_lcm, Int(q.get_den()));
        Int a0 = Int(c.front().get_num()) * (den_lcm / Int(c.front().get_den()));
        Int ad = Int(c.back().get_num()) * (den_lcm / Int(c.back().get_den()));
        bool found = false;
        for (const Int& pn : positive_divisors(a0)) {
            for (const Int& qd : positive_divisors(ad)) {
                for (int s : {1, -1}) {
                    Rat cand(s > 0 ? pn : -pn, qd);
                    cand.canonicalize();
                    Rat v;
                    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * cand + *it;
                    if (sgn(v) == 0) {
                        ++mult[cand];
                        deflate(c, cand);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
        while (c.size() > 1 && sgn(c[0]) == 0) {
            ++mult[Rat(0)];
            c.erase(c.begin());
        }
    }

    RationalEigenvalues out;
    std::size_t total = 0;
    for (auto& [val, mu] : mult) {
        out.roots.emplace_back(val, mu);
        total += mu;
    }
    out.complete = (total == degree);
    return out;
}

Subspace generalized_eigenspace(const Matrix& m, const Rat& lambda) {
    if (m.rows() != m.cols()) throw DimensionMismatch("generalized_eigenspace: non-square matrix");
    Matrix shifted = m;
    for (std::size_t i = 0; i < m.rows(); ++i) shifted.at(i, i) -= lambda;
    return kernel(shifted.pow(m.rows()));
}

std::vector<FittingPiece> simultaneous_fitting(const std::vector<Matrix>& ops) {
    if (ops.empty()) throw DimensionMismatch("simultaneous_fitting: empty operator family");
    const std::size_t n = ops.front().rows();
    for (const Matrix& op : ops)
        if (op.rows() != n || op.cols() != n)
            throw DimensionMismatch("simultaneous_fitting: operator size mismatch");

    std::vector<FittingPiece> pieces{{{}, Subspace::full(n)}};
    for (const Matrix& op : ops) {
        RationalEigenvalues ev = rational_eigenvalues(op);
        if (!ev.complete)
            throw SplittingFailure("characteristic polynomial does not split over the rationals");
        std::vector<FittingPiece> refined;
        for (const FittingPiece& piece : pieces) {
            for (const auto& [lambda, mu] : ev.roots) {
                Subspace cut = subspace_intersect(piece.space, generalized_eigenspace(op, lambda));
                if (cut.is_zero()) continue;
                FittingPiece next{piece.functional, std::move(cut)};
                next.functional.push_back(lambda);
                refined.push_back(std::move(next));
            }
        }
        pieces = std::move(refined);
    }

    std::size_t total = 0;
    for (const FittingPiece& piece : pieces) total += piece.space.dim();
    if (total != n)
        throw NotADecomposition("refined generalized eigenspaces do not sum to the full space");
    return pieces;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw DimensionMismatch("solve: rhs length mismatch");
    Matrix aug = m.hstack(Matrix::from_rows({b}, b.size()).transpose());
    Matrix r = rref(aug);
    Vec x = zero_vec(m.cols());
    for (std::size_t i = 0; i < r.rows(); ++i) {
        std::size_t piv = SIZE_MAX;
        for (std::size_t j = 0; j < r.cols(); ++j)
            if (sgn(r.at(i, j)) != 0) { piv = j; break; }
        if (piv == SIZE_MAX) continue;
        if (piv == m.cols()) return std::nullopt; // inconsistent row
        x[piv] = r.at(i, m.cols());
    }
    return x;
}

std::optional<Vec> coordinates_in(const Matrix& basis_rows, const Vec& v) {
    return solve(basis_rows.transpose(), v);
}

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = 1;
    return v;
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sum length mismatch");
    Vec r = a;
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector diff length mismatch");
    Vec r = a;
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scale(const Vec& a, const Rat& c) {
    Vec r = a;
    for (auto& x : r) x *= c;
    return r;
}

bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return sgn(x) == 0; });
}

} // namespace leibniz
