#include "lieinv/qlinalg.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace lieinv {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error("from_rows: ragged input");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols, std::size_t rows) {
  QMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error("from_columns: ragged input");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

QVector QMatrix::column(std::size_t j) const {
  QVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error("matrix product: shape mismatch");
  QMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        if (sgn(rhs(k, j)) != 0) out(i, j) += a * rhs(k, j);
    }
  return out;
}

QVector QMatrix::operator*(const QVector& v) const {
  if (cols_ != v.size()) throw Error("matrix-vector product: shape mismatch");
  QVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& rhs) const {
  QMatrix out = *this;
  out += rhs;
  return out;
}

QMatrix& QMatrix::operator+=(const QMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

QMatrix QMatrix::operator-(const QMatrix& rhs) const { return *this + (-rhs); }

QMatrix QMatrix::operator-() const { return scaled(-1); }

QMatrix QMatrix::scaled(const Rational& s) const {
  QMatrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Rational QMatrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::string QMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------

SparseVector to_sparse(std::span<const Rational> v) {
  SparseVector s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return s;
}

QVector to_dense(const SparseVector& v, std::size_t dim) {
  QVector d(dim);
  for (const auto& [i, x] : v) d[i] = x;
  return d;
}

void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
  if (sgn(a) == 0 || x.empty()) return;
  SparseVector out;
  out.reserve(y.size() + x.size());
  std::size_t p = 0, q = 0;
  while (p < y.size() || q < x.size()) {
    if (q == x.size() || (p < y.size() && y[p].first < x[q].first)) {
      out.push_back(std::move(y[p++]));
    } else if (p == y.size() || x[q].first < y[p].first) {
      out.emplace_back(x[q].first, a * x[q].second);
      ++q;
    } else {
      Rational s = y[p].second + a * x[q].second;
      if (sgn(s) != 0) out.emplace_back(y[p].first, std::move(s));
      ++p;
      ++q;
    }
  }
  y = std::move(out);
}

SparseQMatrix SparseQMatrix::from_dense(const QMatrix& m) {
  SparseQMatrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) s.rows_[i] = to_sparse(m.row(i));
  return s;
}

void SparseQMatrix::add(std::size_t i, std::size_t j, const Rational& value) {
  if (sgn(value) == 0) return;
  SparseVector& r = rows_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
  if (it != r.end() && it->first == j) {
    it->second += value;
    if (sgn(it->second) == 0) r.erase(it);
  } else {
    r.insert(it, {static_cast<std::uint32_t>(j), value});
  }
}

Rational SparseQMatrix::get(std::size_t i, std::size_t j) const {
  const SparseVector& r = rows_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
  if (it != r.end() && it->first == j) return it->second;
  return 0;
}

QMatrix SparseQMatrix::to_dense() const {
  QMatrix m(rows(), cols_);
  for (std::size_t i = 0; i < rows(); ++i)
    for (const auto& [j, x] : rows_[i]) m(i, j) = x;
  return m;
}

SparseQMatrix SparseQMatrix::transpose() const {
  SparseQMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (const auto& [j, x] : rows_[i]) t.rows_[j].emplace_back(static_cast<std::uint32_t>(i), x);
  return t;
}

SparseQMatrix SparseQMatrix::operator*(const SparseQMatrix& rhs) const {
  if (cols_ != rhs.rows()) throw Error("sparse product: shape mismatch");
  SparseQMatrix out(rows(), rhs.cols_);
  for (std::size_t i = 0; i < rows(); ++i) {
    SparseVector acc;
    for (const auto& [k, a] : rows_[i]) axpy(acc, a, rhs.rows_[k]);
    out.rows_[i] = std::move(acc);
  }
  return out;
}

SparseQMatrix SparseQMatrix::operator+(const SparseQMatrix& rhs) const {
  if (rows() != rhs.rows() || cols_ != rhs.cols_) throw Error("sparse sum: shape mismatch");
  SparseQMatrix out = *this;
  for (std::size_t i = 0; i < rows(); ++i) axpy(out.rows_[i], 1, rhs.rows_[i]);
  return out;
}

SparseQMatrix SparseQMatrix::operator-(const SparseQMatrix& rhs) const {
  if (rows() != rhs.rows() || cols_ != rhs.cols_) throw Error("sparse difference: shape mismatch");
  SparseQMatrix out = *this;
  for (std::size_t i = 0; i < rows(); ++i) axpy(out.rows_[i], -1, rhs.rows_[i]);
  return out;
}

SparseQMatrix SparseQMatrix::scaled(const Rational& s) const {
  if (sgn(s) == 0) return SparseQMatrix(rows(), cols_);
  SparseQMatrix out = *this;
  for (auto& r : out.rows_)
    for (auto& e : r) e.second *= s;
  return out;
}

QVector SparseQMatrix::apply(const QVector& v) const {
  if (v.size() != cols_) throw Error("sparse apply: shape mismatch");
  QVector out(rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (const auto& [j, x] : rows_[i])
      if (sgn(v[j]) != 0) out[i] += x * v[j];
  return out;
}

std::size_t SparseQMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

bool SparseQMatrix::is_zero() const { return nonzeros() == 0; }

SparseQMatrix commutator(const SparseQMatrix& a, const SparseQMatrix& b) { return a * b - b * a; }

// ---------------------------------------------------------------------------

QMatrix rref(const QMatrix& m, std::vector<std::size_t>* pivots) {
  QMatrix a = m;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (sgn(a(r, j)) != 0) a(i, j) -= f * a(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = std::move(piv);
  return a;
}

std::vector<QVector> kernel_basis(const QMatrix& m) {
  std::vector<std::size_t> piv;
  QMatrix r = rref(m, &piv);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  if (b.size() != a.rows()) throw Error("solve: shape mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<std::size_t> piv;
  QMatrix r = rref(aug, &piv);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  QVector x(a.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = r(i, a.cols());
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (!m.is_square()) throw Error("inverse: matrix not square");
  std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> piv;
  QMatrix r = rref(aug, &piv);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

Rational determinant(const QMatrix& m) {
  if (!m.is_square()) throw Error("determinant: matrix not square");
  QMatrix a = m;
  std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j)
        if (sgn(a(c, j)) != 0) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

QVector characteristic_polynomial(const QMatrix& m) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k)/k.
  if (!m.is_square()) throw Error("characteristic_polynomial: matrix not square");
  std::size_t n = m.rows();
  QVector c(n + 1);
  c[0] = 1;
  QMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[k - 1];
    c[k] = -(m * mk).trace() / Rational(static_cast<long>(k));
  }
  return c;
}

SpanCoordinates::SpanCoordinates(const std::vector<QVector>& basis, std::size_t ambient_dim)
    : size_(basis.size()), ambient_(ambient_dim) {
  for (const auto& b : basis) {
    if (b.size() != ambient_dim) throw Error("SpanCoordinates: wrong vector length");
    basis_.push_back(to_sparse(b));
  }
  std::vector<std::size_t> piv;
  rref(QMatrix::from_rows(basis, ambient_dim), &piv);
  if (piv.size() != basis.size()) throw Error("SpanCoordinates: basis is linearly dependent");
  pivot_cols_ = piv;
  QMatrix sub(size_, size_);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) sub(i, j) = basis[j][pivot_cols_[i]];
  pivot_inverse_ = SparseQMatrix::from_dense(*inverse(sub));
}

std::optional<SparseVector> SpanCoordinates::coordinates(const SparseVector& v) const {
  std::vector<std::int64_t> where(ambient_, -1);
  for (std::size_t i = 0; i < size_; ++i) where[pivot_cols_[i]] = static_cast<std::int64_t>(i);
  SparseVector rhs;
  for (const auto& [j, x] : v) {
    if (j >= ambient_) throw Error("SpanCoordinates: index out of range");
    if (where[j] >= 0) rhs.emplace_back(static_cast<std::uint32_t>(where[j]), x);
  }
  std::sort(rhs.begin(), rhs.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  SparseVector c;
  for (std::size_t i = 0; i < size_; ++i) {
    Rational s = 0;
    const SparseVector& row = pivot_inverse_.row(i);
    std::size_t p = 0, q = 0;
    while (p < row.size() && q < rhs.size()) {
      if (row[p].first < rhs[q].first) ++p;
      else if (rhs[q].first < row[p].first) ++q;
      else s += row[p++].second * rhs[q++].second;
    }
    if (sgn(s) != 0) c.emplace_back(static_cast<std::uint32_t>(i), s);
  }
  SparseVector back;
  for (const auto& [j, x] : c) axpy(back, x, basis_[j]);
  if (back != v) return std::nullopt;
  return c;
}

std::optional<QVector> SpanCoordinates::coordinates(const QVector& v) const {
  if (v.size() != ambient_) throw Error("SpanCoordinates: wrong vector length");
  auto c = coordinates(to_sparse(v));
  if (!c) return std::nullopt;
  return to_dense(*c, size_);
}

std::vector<std::size_t> independent_subset(const std::vector<QVector>& vectors) {
  std::vector<std::size_t> chosen;
  if (vectors.empty()) return chosen;
  SparseEchelon ech(vectors.front().size());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (ech.add_row(to_sparse(vectors[i]))) chosen.push_back(i);
  return chosen;
}

// ---------------------------------------------------------------------------

SparseVector SparseEchelon::reduce(SparseVector row) const {
  std::size_t pos = 0;
  while (pos < row.size()) {
    auto it = pivots_.find(row[pos].first);
    if (it == pivots_.end()) {
      ++pos;
      continue;
    }
    Rational f = -row[pos].second;
    axpy(row, f, it->second);
    // entries before pos are unchanged since pivot rows start at their pivot
  }
  return row;
}

bool SparseEchelon::add_row(SparseVector row) {
  for (const auto& e : row)
    if (e.first >= cols_) throw Error("SparseEchelon: column out of range");
  row = reduce(std::move(row));
  if (row.empty()) return false;
  Rational inv = 1 / row.front().second;
  for (auto& e : row) e.second *= inv;
  pivots_.emplace(row.front().first, std::move(row));
  return true;
}

std::vector<SparseVector> SparseEchelon::rows() const {
  std::vector<SparseVector> out;
  for (const auto& [p, row] : pivots_) out.push_back(row);
  return out;
}

std::vector<QVector> SparseEchelon::kernel() const {
  // back substitution, highest pivot first, so every stored row becomes fully reduced
  std::map<std::uint32_t, SparseVector> reduced;
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    SparseVector row = it->second;
    std::size_t pos = 1;
    while (pos < row.size()) {
      auto r = reduced.find(row[pos].first);
      if (r == reduced.end()) {
        ++pos;
        continue;
      }
      Rational f = -row[pos].second;
      axpy(row, f, r->second);
    }
    reduced.emplace(it->first, std::move(row));
  }
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> by_free(cols_);
  for (const auto& [p, row] : reduced)
    for (std::size_t k = 1; k < row.size(); ++k) by_free[row[k].first].emplace_back(p, row[k].second);
  std::vector<QVector> basis;
  for (std::uint32_t f = 0; f < cols_; ++f) {
    if (pivots_.count(f)) continue;
    QVector v(cols_);
    v[f] = 1;
    for (const auto& [p, x] : by_free[f]) v[p] = -x;
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

QVector sample_vector(const SampleConfig& cfg, std::size_t dim, std::uint64_t round, std::uint64_t stream) {
  if (cfg.height < 1) throw Error("SampleConfig: height must be >= 1");
  std::uint64_t s = splitmix64(cfg.seed);
  s = splitmix64(s ^ static_cast<std::uint64_t>(cfg.height));
  s = splitmix64(s ^ dim);
  s = splitmix64(s ^ round);
  s = splitmix64(s ^ (stream * 0x632be59bd9b4e019ULL));
  std::mt19937_64 gen(s);
  std::uniform_int_distribution<std::int64_t> dist(-cfg.height, cfg.height);
  QVector v(dim);
  for (auto& x : v) x = Rational(static_cast<long>(dist(gen)));
  return v;
}

GenericRank generic_max_rank(const SampleConfig& cfg, std::size_t dim,
                             const std::function<std::size_t(const QVector&)>& rank_at, std::uint64_t stream) {
  if (cfg.rounds < 1) throw Error("SampleConfig: rounds must be >= 1");
  GenericRank out;
  SampleConfig c = cfg;
  std::uint64_t round = 0;
  QVector p = sample_vector(c, dim, round++, stream);
  std::size_t prev = rank_at(p);
  out.rank = prev;
  out.point = p;
  out.samples = 1;
  for (int esc = 0; esc < cfg.rounds; ++esc) {
    p = sample_vector(c, dim, round++, stream);
    std::size_t cur = rank_at(p);
    ++out.samples;
    if (cur > out.rank) {
      out.rank = cur;
      out.point = p;
    }
    if (cur == prev && cur == out.rank) {
      out.stabilised = true;
      return out;
    }
    prev = cur;
    c.height *= 2;
  }
  return out;
}

// ---------------------------------------------------------------------------

QVector leading_graded_component(const std::function<Rational(const Rational&)>& evaluate,
                                 std::size_t degree_bound) {
  std::size_t n = degree_bound + 1;
  QMatrix vander(n, n);
  QVector values(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational t = static_cast<long>(i + 1);
    Rational p = 1;
    for (std::size_t j = 0; j < n; ++j) {
      vander(i, j) = p;
      p *= t;
    }
    values[i] = evaluate(t);
  }
  auto coeffs = solve(vander, values);
  if (!coeffs) throw Error("leading_graded_component: interpolation nodes collide");
  return *coeffs;
}

void trim(UPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const UPoly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (sgn(p[i]) != 0) return static_cast<int>(i);
  return -1;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    while (!a.empty() && a.size() >= b.size()) {
      Rational f = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
      trim(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& x : a) x /= lead;
  }
  return a;
}

}  // namespace lieinv
