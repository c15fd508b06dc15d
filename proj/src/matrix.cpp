#include "bohrnet/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace bohrnet {

Mat Mat::identity(int dim) {
  Mat m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = Scalar(1);
  return m;
}

Mat Mat::kron(const Mat& a, const Mat& b) {
  Mat m(a.dim() * b.dim());
  for (int ra = 0; ra < a.dim(); ++ra)
    for (int ca = 0; ca < a.dim(); ++ca) {
      if (a.at(ra, ca).is_zero()) continue;
      for (int rb = 0; rb < b.dim(); ++rb)
        for (int cb = 0; cb < b.dim(); ++cb) {
          if (b.at(rb, cb).is_zero()) continue;
          m.at(ra * b.dim() + rb, ca * b.dim() + cb) = a.at(ra, ca) * b.at(rb, cb);
        }
    }
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch in product");
  Mat m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int k = 0; k < dim_; ++k) {
      const Scalar& a = at(r, k);
      if (a.is_zero()) continue;
      for (int c = 0; c < dim_; ++c) {
        if (o.at(k, c).is_zero()) continue;
        m.at(r, c) += a * o.at(k, c);
      }
    }
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch in sum");
  Mat m(dim_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] + o.e_[i];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch in difference");
  Mat m(dim_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] - o.e_[i];
  return m;
}

Mat Mat::operator-() const {
  Mat m(dim_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = -e_[i];
  return m;
}

Mat Mat::scaled(const Scalar& c) const {
  Mat m(dim_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * c;
  return m;
}

Mat Mat::adjoint() const {
  Mat m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m.at(c, r) = at(r, c).conj();
  return m;
}

Scalar Mat::trace() const {
  Scalar t;
  for (int i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

bool Mat::is_zero() const {
  for (const auto& s : e_)
    if (!s.is_zero()) return false;
  return true;
}

bool Mat::is_identity() const {
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) {
      if (r == c ? at(r, c) != Scalar(1) : !at(r, c).is_zero()) return false;
    }
  return true;
}

bool Mat::is_normal() const {
  Mat a = adjoint();
  return (*this * a) == (a * *this);
}

bool Mat::commutes_with(const Mat& o) const { return (*this * o) == (o * *this); }

std::string Mat::str() const {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < dim_; ++r) {
    if (r) os << "; ";
    for (int c = 0; c < dim_; ++c) {
      if (c) os << ", ";
      os << at(r, c).str();
    }
  }
  os << "]";
  return os.str();
}

Mat pauli_x() {
  Mat m(2);
  m.at(0, 1) = Scalar(1);
  m.at(1, 0) = Scalar(1);
  return m;
}

Mat pauli_y() {
  Mat m(2);
  m.at(0, 1) = -Scalar::unit_im();
  m.at(1, 0) = Scalar::unit_im();
  return m;
}

Mat pauli_z() {
  Mat m(2);
  m.at(0, 0) = Scalar(1);
  m.at(1, 1) = Scalar(-1);
  return m;
}

}  // namespace bohrnet
