#include "bohrnet/algebra.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "bohrnet/errors.hpp"

namespace bohrnet {

SparseVec sv_from_mat(const Mat& m) {
  SparseVec v;
  const int d = m.dim();
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if (!m.at(r, c).is_zero()) v.emplace_back(r * d + c, m.at(r, c));
  return v;
}

Mat sv_to_mat(const SparseVec& v, int dim) {
  Mat m(dim);
  for (const auto& [idx, val] : v) m.at(idx / dim, idx % dim) = val;
  return m;
}

SparseVec sv_axpy(const SparseVec& a, const Scalar& c, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Scalar s = c * b[j].second;
      if (!s.is_zero()) out.emplace_back(b[j].first, std::move(s));
      ++j;
    } else {
      Scalar s = a[i].second + c * b[j].second;
      if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec sv_matmul(const SparseVec& a, const SparseVec& b, int d) {
  std::vector<std::pair<int, Scalar>> terms;
  for (const auto& [ia, va] : a) {
    const int r = ia / d, k = ia % d;
    auto it = std::lower_bound(b.begin(), b.end(), k * d,
                               [](const auto& p, int key) { return p.first < key; });
    for (; it != b.end() && it->first < (k + 1) * d; ++it)
      terms.emplace_back(r * d + (it->first - k * d), va * it->second);
  }
  std::sort(terms.begin(), terms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec out;
  for (auto& [idx, val] : terms) {
    if (!out.empty() && out.back().first == idx)
      out.back().second += val;
    else
      out.emplace_back(idx, std::move(val));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& p) { return p.second.is_zero(); }),
            out.end());
  return out;
}

SparseVec sv_adjoint(const SparseVec& a, int d) {
  SparseVec out;
  out.reserve(a.size());
  for (const auto& [idx, val] : a) out.emplace_back((idx % d) * d + idx / d, val.conj());
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

int sv_compare(const SparseVec& a, const SparseVec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].first != b[i].first) return a[i].first < b[i].first ? -1 : 1;
    int c = Scalar::cmp(a[i].second, b[i].second);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int EchelonBasis::row_with_pivot(int idx) const {
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), idx);
  if (it != pivots_.end() && *it == idx) return static_cast<int>(it - pivots_.begin());
  return -1;
}

SparseVec EchelonBasis::reduce(SparseVec v) const {
  size_t i = 0;
  while (i < v.size()) {
    const int k = row_with_pivot(v[i].first);
    if (k < 0) {
      ++i;
      continue;
    }
    // Entries before position i are pivot-free and unchanged by the update.
    v = sv_axpy(v, -v[i].second, rows_[k]);
  }
  return v;
}

std::optional<SparseVec> EchelonBasis::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return std::nullopt;
  const Scalar inv = v[0].second.inverse();
  for (auto& [idx, val] : v) val = val * inv;
  const int pivot = v[0].first;
  for (auto& row : rows_) {
    auto it = std::lower_bound(row.begin(), row.end(), pivot,
                               [](const auto& p, int key) { return p.first < key; });
    if (it != row.end() && it->first == pivot) row = sv_axpy(row, -it->second, v);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  const auto at = pos - pivots_.begin();
  pivots_.insert(pos, pivot);
  rows_.insert(rows_.begin() + at, v);
  return v;
}

AlgebraSpan AlgebraSpan::from_echelon(int dim, EchelonBasis eb) {
  auto rep = std::make_shared<Rep>();
  rep->dim = dim;
  rep->rows = eb.rows();
  size_t h = 0x811c9dc5u ^ static_cast<size_t>(dim);
  for (const auto& row : rep->rows)
    for (const auto& [idx, val] : row) {
      h ^= static_cast<size_t>(idx) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h = hash_scalar(val, h);
    }
  rep->hash = h;
  AlgebraSpan s;
  s.rep_ = std::move(rep);
  return s;
}

AlgebraSpan AlgebraSpan::trivial(int ambient_dim) {
  return generate(ambient_dim, {});
}

// Worklist closure: every inserted element is paired (in both orders) with
// all elements inserted before it, and its adjoint is queued, so the final
// basis is closed under product and adjoint by bilinearity. The queue holds
// index pairs; products are computed lazily at pop time from the immutable
// snapshots in `elems`.
AlgebraSpan AlgebraSpan::close_span(int dim, EchelonBasis eb, std::vector<SparseVec> elems) {
  std::deque<std::pair<int, int>> work;  // (i, j) = elems[i]*elems[j]; (i, -1) = adjoint
  auto enqueue_for = [&](int self) {
    work.emplace_back(self, -1);
    for (int j = 0; j <= self; ++j) {
      work.emplace_back(self, j);
      if (j != self) work.emplace_back(j, self);
    }
  };
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) enqueue_for(i);
  while (!work.empty()) {
    const auto [i, j] = work.front();
    work.pop_front();
    SparseVec v =
        j < 0 ? sv_adjoint(elems[i], dim) : sv_matmul(elems[i], elems[j], dim);
    auto inserted = eb.insert(std::move(v));
    if (!inserted) continue;
    elems.push_back(*inserted);
    enqueue_for(static_cast<int>(elems.size()) - 1);
  }
  return AlgebraSpan::from_echelon(dim, std::move(eb));
}

namespace {

// Residual of v after elimination against rows already in reduced echelon
// form (sorted by pivot).
SparseVec reduce_against_rref(const std::vector<SparseVec>& rows, SparseVec v) {
  size_t i = 0;
  while (i < v.size()) {
    const int idx = v[i].first;
    auto it = std::lower_bound(rows.begin(), rows.end(), idx,
                               [](const SparseVec& r, int key) { return r[0].first < key; });
    if (it == rows.end() || (*it)[0].first != idx) {
      ++i;
      continue;
    }
    v = sv_axpy(v, -v[i].second, *it);
  }
  return v;
}

}  // namespace

AlgebraSpan AlgebraSpan::generate(int ambient_dim, const std::vector<Mat>& gens) {
  EchelonBasis eb(ambient_dim * ambient_dim);
  std::vector<SparseVec> elems;
  auto seed = [&](const SparseVec& v) {
    if (auto r = eb.insert(v)) elems.push_back(*r);
  };
  seed(sv_from_mat(Mat::identity(ambient_dim)));
  for (const Mat& g : gens) {
    if (g.dim() != ambient_dim)
      throw std::invalid_argument("generator dimension mismatch: expected " +
                                  std::to_string(ambient_dim) + ", got " +
                                  std::to_string(g.dim()));
    seed(sv_from_mat(g));
  }
  return close_span(ambient_dim, std::move(eb), std::move(elems));
}

std::vector<Mat> AlgebraSpan::basis() const {
  std::vector<Mat> out;
  out.reserve(rep_->rows.size());
  for (size_t i = 0; i < rep_->rows.size(); ++i) out.push_back(basis_mat(static_cast<int>(i)));
  return out;
}

bool AlgebraSpan::contains(const SparseVec& v) const {
  return reduce_against_rref(rep_->rows, v).empty();
}

bool AlgebraSpan::contains(const Mat& m) const {
  if (m.dim() != rep_->dim) return false;
  return contains(sv_from_mat(m));
}

bool AlgebraSpan::contains_span(const AlgebraSpan& other) const {
  if (other.ambient_dim() != ambient_dim()) return false;
  if (other.dim() > dim()) return false;
  for (const auto& row : other.rows())
    if (!reduce_against_rref(rep_->rows, row).empty()) return false;
  return true;
}

bool AlgebraSpan::is_commutative() const {
  // Pairwise commutation of basis elements suffices by bilinearity.
  const int d = rep_->dim;
  for (size_t i = 0; i < rep_->rows.size(); ++i)
    for (size_t j = i + 1; j < rep_->rows.size(); ++j) {
      if (sv_matmul(rep_->rows[i], rep_->rows[j], d) !=
          sv_matmul(rep_->rows[j], rep_->rows[i], d))
        return false;
    }
  return true;
}

bool AlgebraSpan::operator==(const AlgebraSpan& o) const {
  if (rep_ == o.rep_) return true;
  return rep_->dim == o.rep_->dim && rep_->hash == o.rep_->hash && rep_->rows == o.rep_->rows;
}

int AlgebraSpan::cmp(const AlgebraSpan& a, const AlgebraSpan& b) {
  if (a.ambient_dim() != b.ambient_dim()) return a.ambient_dim() < b.ambient_dim() ? -1 : 1;
  if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
  for (int i = 0; i < a.dim(); ++i) {
    int c = sv_compare(a.rows()[i], b.rows()[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool AlgebraSpan::validate() const {
  const int d = rep_->dim;
  if (!contains(Mat::identity(d))) return false;
  EchelonBasis eb(d * d);
  for (const auto& row : rep_->rows) {
    auto r = eb.insert(row);
    if (!r || *r != row) return false;  // not in canonical reduced form
  }
  for (const auto& row : rep_->rows)
    if (!eb.contains(sv_adjoint(row, d))) return false;
  for (const auto& a : rep_->rows)
    for (const auto& b : rep_->rows)
      if (!eb.contains(sv_matmul(a, b, d))) return false;
  return true;
}

AlgebraSpan intersect(const AlgebraSpan& s, const AlgebraSpan& t) {
  if (s.ambient_dim() != t.ambient_dim())
    throw std::invalid_argument("ambient dimension mismatch in intersect");
  if (s == t) return s;
  if (s.contains_span(t)) return t;
  if (t.contains_span(s)) return s;
  const int d = s.ambient_dim();
  const int w = d * d;
  // Zassenhaus: rows [u | u] for u in S and [v | 0] for v in T; echelon rows
  // whose left half vanishes carry a basis of the intersection on the right.
  EchelonBasis eb(2 * w);
  for (const auto& u : s.rows()) {
    SparseVec ext = u;
    ext.reserve(2 * u.size());
    for (const auto& [idx, val] : u) ext.emplace_back(idx + w, val);
    eb.insert(std::move(ext));
  }
  for (const auto& v : t.rows()) eb.insert(v);
  EchelonBasis out(w);
  for (const auto& row : eb.rows()) {
    if (row.empty() || row[0].first < w) continue;
    SparseVec shifted;
    shifted.reserve(row.size());
    for (const auto& [idx, val] : row) shifted.emplace_back(idx - w, val);
    out.insert(std::move(shifted));
  }
  return AlgebraSpan::from_echelon(d, std::move(out));
}

AlgebraSpan join(const AlgebraSpan& s, const AlgebraSpan& t) {
  if (s.ambient_dim() != t.ambient_dim())
    throw std::invalid_argument("ambient dimension mismatch in join");
  if (s.contains_span(t)) return s;
  if (t.contains_span(s)) return t;
  const int d = s.ambient_dim();
  bool commuting = true;
  for (const auto& a : s.rows()) {
    for (const auto& b : t.rows()) {
      if (sv_matmul(a, b, d) != sv_matmul(b, a, d)) {
        commuting = false;
        break;
      }
    }
    if (!commuting) break;
  }
  if (commuting) {
    // Products a*b of basis elements already span a *-closed algebra.
    EchelonBasis eb(d * d);
    for (const auto& a : s.rows())
      for (const auto& b : t.rows()) eb.insert(sv_matmul(a, b, d));
    return AlgebraSpan::from_echelon(d, std::move(eb));
  }
  std::vector<Mat> gens;
  for (const auto& a : s.rows()) gens.push_back(sv_to_mat(a, d));
  for (const auto& b : t.rows()) gens.push_back(sv_to_mat(b, d));
  return AlgebraSpan::generate(d, gens);
}

AlgebraSpan AlgebraSpan::commutant() const {
  const int d = rep_->dim;
  const int w = d * d;
  // Row space of all constraints B.X - X.B = 0, one block per basis element.
  EchelonBasis constraints(w);
  for (const auto& b : rep_->rows) {
    const Mat bm = sv_to_mat(b, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        // d/d(X[k*d+c]): B[r,k];  d/d(X[r*d+k]): -B[k,c]
        std::vector<std::pair<int, Scalar>> terms;
        for (int k = 0; k < d; ++k) {
          if (!bm.at(r, k).is_zero()) terms.emplace_back(k * d + c, bm.at(r, k));
          if (!bm.at(k, c).is_zero()) terms.emplace_back(r * d + k, -bm.at(k, c));
        }
        std::sort(terms.begin(), terms.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        SparseVec row;
        for (auto& [idx, val] : terms) {
          if (!row.empty() && row.back().first == idx)
            row.back().second += val;
          else
            row.emplace_back(idx, std::move(val));
        }
        row.erase(std::remove_if(row.begin(), row.end(),
                                 [](const auto& p) { return p.second.is_zero(); }),
                  row.end());
        constraints.insert(std::move(row));
      }
  }
  // Null space from the reduced echelon form: one vector per free coordinate.
  std::vector<bool> is_pivot(w, false);
  for (const auto& row : constraints.rows()) is_pivot[row[0].first] = true;
  EchelonBasis kernel(w);
  for (int f = 0; f < w; ++f) {
    if (is_pivot[f]) continue;
    SparseVec v;
    v.emplace_back(f, Scalar(1));
    for (const auto& row : constraints.rows()) {
      auto it = std::lower_bound(row.begin(), row.end(), f,
                                 [](const auto& p, int key) { return p.first < key; });
      if (it != row.end() && it->first == f) {
        Scalar coeff = -it->second;
        v.emplace_back(row[0].first, std::move(coeff));
      }
    }
    std::sort(v.begin(), v.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    kernel.insert(std::move(v));
  }
  return AlgebraSpan::from_echelon(d, std::move(kernel));
}

void GeneratorDecl::validate() const {
  for (size_t i = 0; i < spectrum.size(); ++i)
    for (size_t j = i + 1; j < spectrum.size(); ++j)
      if (spectrum[i] == spectrum[j])
        throw SpecError("generator '" + label + "': repeated eigenvalue " + spectrum[i].str());
  if (!matrix.is_normal())
    throw SpecError("generator '" + label + "' is not normal");
  Mat p = Mat::identity(matrix.dim());
  for (const Scalar& lambda : spectrum)
    p = p * (matrix - Mat::identity(matrix.dim()).scaled(lambda));
  if (!p.is_zero())
    throw SpecError("generator '" + label +
                    "': declared spectrum fails the annihilation test, residual " + p.str());
}

std::vector<std::pair<Scalar, Mat>> spectral_projections(const GeneratorDecl& g) {
  g.validate();
  std::vector<std::pair<Scalar, Mat>> out;
  const int d = g.matrix.dim();
  for (const Scalar& lambda : g.spectrum) {
    Mat e = Mat::identity(d);
    for (const Scalar& mu : g.spectrum) {
      if (mu == lambda) continue;
      e = (e * (g.matrix - Mat::identity(d).scaled(mu))).scaled((lambda - mu).inverse());
    }
    if (!e.is_zero()) out.emplace_back(lambda, std::move(e));
  }
  return out;
}

}  // namespace bohrnet
