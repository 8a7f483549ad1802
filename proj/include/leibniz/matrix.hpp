#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "leibniz/rational.hpp"

namespace leibniz {

/// Dense matrix over the exact rationals, row-major.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    void set_row(std::size_t i, const Vec& v);

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator*(const Rat& c) const;
    Vec apply(const Vec& v) const; // matrix * column vector
    bool operator==(const Matrix& rhs) const = default;

    bool is_zero() const;
    Rat trace() const;
    Matrix pow(std::size_t k) const;

    /// Stacks rhs below this matrix (same column count).
    Matrix vstack(const Matrix& rhs) const;
    /// Puts rhs to the right of this matrix (same row count).
    Matrix hstack(const Matrix& rhs) const;

    /// Inverse via Gauss-Jordan; throws SingularMatrix.
    Matrix inverse() const;
    std::size_t rank() const;
    Rat determinant() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

/// Unique reduced row-echelon form; row space preserved.
Matrix rref(const Matrix& m);

/// Monic coefficient list, lowest degree first; leading coefficient
/// nonzero unless the polynomial is zero.
struct Polynomial {
    std::vector<Rat> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    Rat eval(const Rat& x) const;
    Matrix eval(const Matrix& m) const; // Cayley-Hamilton checks
    bool operator==(const Polynomial&) const = default;
};

/// A subspace of Q^n held in canonical form: basis rows in reduced
/// row-echelon form with zero rows removed. Equality is entry-wise
/// equality of the canonical bases.
class Subspace {
  public:
    explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}
    /// Canonicalizes the row span of `spanning_rows`.
    static Subspace span(const Matrix& spanning_rows);
    static Subspace span(std::size_t ambient_dim, const std::vector<Vec>& vectors);
    static Subspace full(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    Vec basis_vector(std::size_t i) const { return basis_.row(i); }

    bool is_zero() const { return dim() == 0; }
    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& rhs) const = default;

    /// Coordinates of v in the canonical basis; throws if v is outside.
    Vec coordinates(const Vec& v) const;

    /// Indices of the pivot columns of the canonical basis.
    std::vector<std::size_t> pivot_columns() const;

  private:
    std::size_t ambient_;
    Matrix basis_;
};

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

/// Right kernel {v : m v = 0}.
Subspace kernel(const Matrix& m);

/// det(tI - m), computed exactly by Faddeev-LeVerrier.
Polynomial char_poly(const Matrix& m);

struct RationalEigenvalues {
    std::vector<std::pair<Rat, std::size_t>> roots; // (value, algebraic multiplicity)
    bool complete = false; // multiplicities sum to the degree
};

/// All rational roots of char_poly(m) with algebraic multiplicities.
RationalEigenvalues rational_eigenvalues(const Matrix& m);

/// kernel((m - lambda I)^d), d = ambient dimension.
Subspace generalized_eigenspace(const Matrix& m, const Rat& lambda);

struct FittingPiece {
    Vec functional; // one eigenvalue per input operator
    Subspace space;
};

/// Common refinement of the generalized eigenspace decompositions of a
/// family of operators. Throws SplittingFailure when some characteristic
/// polynomial has irrational roots, NotADecomposition when the refined
/// pieces fail to sum directly.
std::vector<FittingPiece> simultaneous_fitting(const std::vector<Matrix>& ops);

/// Particular solution of m x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

/// Expresses v in the given basis rows, or nullopt when outside the span.
std::optional<Vec> coordinates_in(const Matrix& basis_rows, const Vec& v);

// small vector helpers
Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Rat& c);
bool is_zero_vec(const Vec& v);

} // namespace leibniz
