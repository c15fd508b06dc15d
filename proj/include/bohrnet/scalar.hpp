#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace bohrnet {

using Rat = mpq_class;

Rat rat_from_string(std::string_view text);
std::string rat_to_string(const Rat& r);

// Gaussian rational a + b*i. Every value in the library is one of these;
// there is no floating point anywhere, so equality of values (and hence of
// subspaces) is decidable.
struct Scalar {
  Rat re, im;

  Scalar() : re(0), im(0) {}
  Scalar(long n) : re(n), im(0) {}  // NOLINT: implicit on purpose
  Scalar(Rat r) : re(std::move(r)), im(0) {}
  Scalar(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static Scalar unit_im() { return Scalar(Rat(0), Rat(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  Scalar conj() const { return Scalar(re, -im); }
  Scalar inverse() const;  // throws std::domain_error on zero

  Scalar operator-() const { return Scalar(-re, -im); }
  Scalar operator+(const Scalar& o) const { return Scalar(re + o.re, im + o.im); }
  Scalar operator-(const Scalar& o) const { return Scalar(re - o.re, im - o.im); }
  Scalar operator*(const Scalar& o) const {
    return Scalar(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  Scalar& operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  bool operator==(const Scalar& o) const { return re == o.re && im == o.im; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Total order used for canonical sorting: real part before imaginary part.
  static int cmp(const Scalar& a, const Scalar& b);

  std::string str() const;  // compact human-readable form, e.g. "1/2-3i"
};

std::size_t hash_rat(const Rat& r, std::size_t seed);
std::size_t hash_scalar(const Scalar& s, std::size_t seed);

// FNV-1a over bytes; the library's deterministic digest primitive.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace bohrnet
