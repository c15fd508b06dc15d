#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bohrnet/matrix.hpp"

namespace bohrnet {

// Sparse coordinate vector: sorted by index, values nonzero. A d x d matrix
// flattens row-major into a vector of width d*d over the Gaussian rationals.
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec sv_from_mat(const Mat& m);
Mat sv_to_mat(const SparseVec& v, int dim);
// a + c*b
SparseVec sv_axpy(const SparseVec& a, const Scalar& c, const SparseVec& b);
// matrix product of two flattened d x d matrices
SparseVec sv_matmul(const SparseVec& a, const SparseVec& b, int d);
SparseVec sv_adjoint(const SparseVec& a, int d);
int sv_compare(const SparseVec& a, const SparseVec& b);

// Incrementally maintained reduced row echelon basis of a subspace of F^width
// over F = Q(i). Reduced echelon form is canonical: two subspaces are equal
// exactly when their row lists are identical.
class EchelonBasis {
 public:
  explicit EchelonBasis(int width) : width_(width) {}

  // Residual of v after eliminating all pivots.
  SparseVec reduce(SparseVec v) const;
  // Inserts v if independent; returns the normalized row as inserted.
  std::optional<SparseVec> insert(SparseVec v);
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  int width() const { return width_; }
  size_t size() const { return rows_.size(); }
  const std::vector<SparseVec>& rows() const { return rows_; }

 private:
  int row_with_pivot(int idx) const;

  int width_;
  std::vector<SparseVec> rows_;  // sorted by pivot index
  std::vector<int> pivots_;
};

// A unital *-subalgebra of a fixed d x d matrix algebra, stored as the
// canonical reduced-echelon basis of its linear span. Instances are immutable
// and cheap to copy; equality of spans is equality of canonical bases.
class AlgebraSpan {
 public:
  AlgebraSpan() = default;

  // Smallest unital *-subalgebra containing the generators.
  static AlgebraSpan generate(int ambient_dim, const std::vector<Mat>& gens);
  static AlgebraSpan trivial(int ambient_dim);  // span{ I }

  int ambient_dim() const { return rep_->dim; }
  int dim() const { return static_cast<int>(rep_->rows.size()); }
  const std::vector<SparseVec>& rows() const { return rep_->rows; }
  Mat basis_mat(int i) const { return sv_to_mat(rep_->rows[i], rep_->dim); }
  std::vector<Mat> basis() const;

  bool contains(const Mat& m) const;
  bool contains(const SparseVec& v) const;
  bool contains_span(const AlgebraSpan& other) const;
  bool is_commutative() const;
  bool is_trivial() const { return dim() == 1; }

  AlgebraSpan commutant() const;

  bool operator==(const AlgebraSpan& o) const;
  bool operator!=(const AlgebraSpan& o) const { return !(*this == o); }
  size_t hash() const { return rep_->hash; }

  // Content-based total order (ambient dim, dim, then rows lexicographically);
  // used wherever deterministic listings are needed.
  static int cmp(const AlgebraSpan& a, const AlgebraSpan& b);

  // Checks the full invariant set: contains identity, closed under product
  // and adjoint, basis in canonical form. Used by tests.
  bool validate() const;

 private:
  struct Rep {
    int dim = 0;
    std::vector<SparseVec> rows;
    size_t hash = 0;
  };
  static AlgebraSpan from_echelon(int dim, EchelonBasis eb);
  // Worklist closure under products and adjoints, starting from the echelon
  // basis and the element snapshots spanning it.
  static AlgebraSpan close_span(int dim, EchelonBasis eb, std::vector<SparseVec> elems);

  std::shared_ptr<const Rep> rep_;

  friend AlgebraSpan intersect(const AlgebraSpan&, const AlgebraSpan&);
  friend AlgebraSpan join(const AlgebraSpan&, const AlgebraSpan&);
};

// Linear-subspace intersection; the result is again a unital *-subalgebra.
AlgebraSpan intersect(const AlgebraSpan& s, const AlgebraSpan& t);
// Subalgebra generated by the union; takes a fast path when s and t commute
// elementwise (then products of basis elements already span the join).
AlgebraSpan join(const AlgebraSpan& s, const AlgebraSpan& t);

struct SpanHash {
  size_t operator()(const AlgebraSpan& s) const { return s.hash(); }
};

// A declared observable: a normal matrix together with its (validated)
// finite spectrum, which makes exact spectral projections possible without
// polynomial factoring.
struct GeneratorDecl {
  std::string label;
  Mat matrix;
  std::vector<Scalar> spectrum;

  // Throws SpecError when the spectrum has repeats, the matrix is not normal,
  // or the annihilation identity prod (m - lambda I) = 0 fails (the message
  // then carries the residual matrix).
  void validate() const;
};

// For each declared eigenvalue lambda, the projection
//   e_lambda = prod_{mu != lambda} (a - mu) / (lambda - mu).
// The projections are idempotent, pairwise orthogonal and sum to the
// identity; zero projections are dropped.
std::vector<std::pair<Scalar, Mat>> spectral_projections(const GeneratorDecl& g);

}  // namespace bohrnet
