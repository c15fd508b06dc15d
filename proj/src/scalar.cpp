#include "bohrnet/scalar.hpp"

#include <cctype>
#include <stdexcept>

#include "bohrnet/errors.hpp"

namespace bohrnet {

Rat rat_from_string(std::string_view text) {
  // Accepted forms: "p", "p/q", with optional leading sign on p and q.
  if (text.empty()) throw SpecError("empty rational literal");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw SpecError("bad character in rational literal '" + std::string(text) + "'");
  }
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      mpz_class num{std::string(text)};
      return Rat(num);
    }
    mpz_class num{std::string(text.substr(0, slash))};
    mpz_class den{std::string(text.substr(slash + 1))};
    if (den == 0) throw SpecError("zero denominator in '" + std::string(text) + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw SpecError("unparsable rational literal '" + std::string(text) + "'");
  }
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero scalar");
  Rat n = re * re + im * im;
  return Scalar(re / n, -im / n);
}

int Scalar::cmp(const Scalar& a, const Scalar& b) {
  int c = ::cmp(a.re, b.re);
  if (c != 0) return c;
  return ::cmp(a.im, b.im);
}

std::string Scalar::str() const {
  if (is_zero()) return "0";
  std::string out;
  if (sgn(re) != 0) out += rat_to_string(re);
  if (sgn(im) != 0) {
    if (!out.empty() && sgn(im) > 0) out += "+";
    if (im == -1)
      out += "-";
    else if (im != 1)
      out += rat_to_string(im);
    out += "i";
  }
  return out;
}

std::size_t hash_rat(const Rat& r, std::size_t seed) {
  auto mix = [&seed](std::uint64_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
  };
  const mpz_srcptr num = r.get_num_mpz_t();
  const mpz_srcptr den = r.get_den_mpz_t();
  mix(static_cast<std::uint64_t>(mpz_sgn(num)) + 3);
  for (size_t i = 0, n = mpz_size(num); i < n; ++i) mix(mpz_getlimbn(num, i));
  for (size_t i = 0, n = mpz_size(den); i < n; ++i) mix(mpz_getlimbn(den, i));
  return seed;
}

std::size_t hash_scalar(const Scalar& s, std::size_t seed) {
  return hash_rat(s.im, hash_rat(s.re, seed));
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace bohrnet
