#pragma once

#include <string>
#include <vector>

#include "bohrnet/scalar.hpp"

namespace bohrnet {

// Dense square matrix over Gaussian rationals, row-major.
class Mat {
 public:
  Mat() = default;
  explicit Mat(int dim) : dim_(dim), e_(static_cast<size_t>(dim) * dim) {}

  static Mat identity(int dim);
  static Mat kron(const Mat& a, const Mat& b);

  int dim() const { return dim_; }
  const Scalar& at(int r, int c) const { return e_[static_cast<size_t>(r) * dim_ + c]; }
  Scalar& at(int r, int c) { return e_[static_cast<size_t>(r) * dim_ + c]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat scaled(const Scalar& c) const;
  Mat adjoint() const;

  Scalar trace() const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_normal() const;  // commutes with its adjoint
  bool commutes_with(const Mat& o) const;

  bool operator==(const Mat& o) const { return dim_ == o.dim_ && e_ == o.e_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  std::string str() const;

 private:
  int dim_ = 0;
  std::vector<Scalar> e_;
};

// The usual one-qubit test matrices (all Gaussian-rational).
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();

}  // namespace bohrnet
