#include "lieinv/liealg.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>

namespace lieinv {

std::string to_string(Family f) {
  switch (f) {
    case Family::gl: return "gl";
    case Family::sl: return "sl";
    case Family::so: return "so";
    case Family::sp: return "sp";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "gl") return Family::gl;
  if (s == "sl") return Family::sl;
  if (s == "so") return Family::so;
  if (s == "sp") return Family::sp;
  throw Error("unknown family '" + s + "'");
}

LieAlgebraData::LieAlgebraData(std::vector<std::string> labels)
    : labels_(std::move(labels)), table_(labels_.size() * labels_.size()) {}

void LieAlgebraData::set_bracket(std::size_t i, std::size_t j, const SparseVector& v) {
  if (i == j) {
    if (!v.empty()) throw Error("set_bracket: [x, x] must vanish");
    return;
  }
  table_[i * dim() + j] = v;
  SparseVector neg = v;
  for (auto& e : neg) e.second = -e.second;
  table_[j * dim() + i] = std::move(neg);
}

SparseVector LieAlgebraData::bracket(const SparseVector& u, const SparseVector& v) const {
  SparseVector out;
  for (const auto& [i, a] : u)
    for (const auto& [j, b] : v) {
      const SparseVector& c = bracket(i, j);
      if (!c.empty()) axpy(out, a * b, c);
    }
  return out;
}

QVector LieAlgebraData::bracket(const QVector& u, const QVector& v) const {
  return to_dense(bracket(to_sparse(u), to_sparse(v)), dim());
}

SparseQMatrix LieAlgebraData::ad(std::size_t i) const {
  SparseQMatrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j)
    for (const auto& [k, c] : bracket(i, j)) m.row(k).emplace_back(static_cast<std::uint32_t>(j), c);
  return m;
}

// ---------------------------------------------------------------------------

namespace {

SparseVector flatten(const SparseQMatrix& m) {
  SparseVector v;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, x] : m.row(i)) v.emplace_back(static_cast<std::uint32_t>(i * m.cols() + j), x);
  return v;
}

QMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
  QMatrix m(n, n);
  m(i, j) = 1;
  return m;
}

std::string idx(std::size_t i, std::size_t j) { return std::to_string(i + 1) + "," + std::to_string(j + 1); }

}  // namespace

LieAlgebraData matrix_lie_algebra(const std::vector<QMatrix>& basis, std::vector<std::string> labels) {
  if (labels.size() != basis.size()) throw Error("matrix_lie_algebra: label count mismatch");
  LieAlgebraData l(std::move(labels));
  if (basis.empty()) return l;
  const std::size_t n = basis.front().rows();
  std::vector<SparseQMatrix> sp;
  std::vector<QVector> flat;
  for (const auto& b : basis) {
    if (b.rows() != n || b.cols() != n) throw Error("matrix_lie_algebra: inconsistent matrix sizes");
    sp.push_back(SparseQMatrix::from_dense(b));
    flat.push_back(to_dense(flatten(sp.back()), n * n));
  }
  SpanCoordinates coords(flat, n * n);
  const std::size_t d = basis.size();
  std::vector<SparseVector> results(d * d);
  std::vector<int> failed(d * d, 0);
#pragma omp parallel for schedule(dynamic)
  for (long ii = 0; ii < static_cast<long>(d); ++ii) {
    std::size_t i = static_cast<std::size_t>(ii);
    for (std::size_t j = i + 1; j < d; ++j) {
      auto c = coords.coordinates(flatten(commutator(sp[i], sp[j])));
      if (!c) failed[i * d + j] = 1;
      else results[i * d + j] = std::move(*c);
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      if (failed[i * d + j]) throw NotClosed(i, j);
      l.set_bracket(i, j, results[i * d + j]);
    }
  l.set_matrices(basis);
  return l;
}

QMatrix classical_form(Family family, std::size_t n) {
  QMatrix s(n, n);
  if (family == Family::so) {
    for (std::size_t i = 0; i < n; ++i) s(i, n - 1 - i) = 1;
  } else if (family == Family::sp) {
    if (n % 2) throw Error("sp needs an even matrix size");
    std::size_t h = n / 2;
    for (std::size_t i = 0; i < h; ++i) {
      s(i, h + i) = 1;
      s(h + i, i) = -1;
    }
  } else {
    throw Error("classical_form: no invariant form for " + to_string(family));
  }
  return s;
}

LieAlgebraData classical_algebra(Family family, std::size_t n) {
  if (n < 1) throw Error("classical_algebra: size must be >= 1");
  std::vector<QMatrix> basis;
  std::vector<std::string> labels;
  std::size_t cartan = 0;
  switch (family) {
    case Family::gl:
      for (std::size_t i = 0; i < n; ++i) {
        basis.push_back(unit(n, i, i));
        labels.push_back("E" + idx(i, i));
      }
      cartan = n;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) {
            basis.push_back(unit(n, i, j));
            labels.push_back("E" + idx(i, j));
          }
      break;
    case Family::sl:
      for (std::size_t i = 0; i + 1 < n; ++i) {
        basis.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
        labels.push_back("H" + std::to_string(i + 1));
      }
      cartan = n - 1;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) {
            basis.push_back(unit(n, i, j));
            labels.push_back("E" + idx(i, j));
          }
      break;
    case Family::so: {
      // X_{ij} = -X_{n-1-j, n-1-i}
      auto bar = [n](std::size_t i) { return n - 1 - i; };
      for (std::size_t i = 0; i < n / 2; ++i) {
        basis.push_back(unit(n, i, i) - unit(n, bar(i), bar(i)));
        labels.push_back("H" + std::to_string(i + 1));
      }
      cartan = n / 2;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j || i + j == n - 1) continue;
          std::pair<std::size_t, std::size_t> me{i, j}, partner{bar(j), bar(i)};
          if (partner < me) continue;
          basis.push_back(unit(n, i, j) - unit(n, bar(j), bar(i)));
          labels.push_back("X" + idx(i, j));
        }
      break;
    }
    case Family::sp: {
      if (n % 2) throw Error("sp needs an even matrix size, got " + std::to_string(n));
      std::size_t h = n / 2;
      for (std::size_t i = 0; i < h; ++i) {
        basis.push_back(unit(n, i, i) - unit(n, h + i, h + i));
        labels.push_back("H" + std::to_string(i + 1));
      }
      cartan = h;
      for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j)
          if (i != j) {
            basis.push_back(unit(n, i, j) - unit(n, h + j, h + i));
            labels.push_back("A" + idx(i, j));
          }
      for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i; j < h; ++j) {
          QMatrix b = unit(n, i, h + j);
          if (i != j) b += unit(n, j, h + i);
          basis.push_back(b);
          labels.push_back("B" + idx(i, j));
        }
      for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i; j < h; ++j) {
          QMatrix c = unit(n, h + i, j);
          if (i != j) c += unit(n, h + j, i);
          basis.push_back(c);
          labels.push_back("C" + idx(i, j));
        }
      break;
    }
  }
  LieAlgebraData l = matrix_lie_algebra(basis, std::move(labels));
  l.classical = std::make_pair(family, n);
  l.cartan_size = cartan;
  return l;
}

LieAlgebraData abelian(std::size_t d) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("a" + std::to_string(i + 1));
  return LieAlgebraData(std::move(labels));
}

LieAlgebraData heisenberg(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i) labels.push_back("q" + std::to_string(i + 1));
  labels.push_back("z");
  LieAlgebraData l(std::move(labels));
  for (std::size_t i = 0; i < n; ++i)
    l.set_bracket(i, n + i, SparseVector{{static_cast<std::uint32_t>(2 * n), Rational(1)}});
  return l;
}

LieAlgebraData direct_sum(const LieAlgebraData& a, const LieAlgebraData& b) {
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  LieAlgebraData l(std::move(labels));
  const auto off = static_cast<std::uint32_t>(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) l.set_bracket(i, j, a.bracket(i, j));
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = i + 1; j < b.dim(); ++j) {
      SparseVector v = b.bracket(i, j);
      for (auto& e : v) e.first += off;
      l.set_bracket(off + i, off + j, v);
    }
  if (a.has_matrices() && b.has_matrices()) {
    std::size_t na = a.matrix_size(), nb = b.matrix_size();
    std::vector<QMatrix> m;
    for (const auto& x : a.matrices()) {
      QMatrix y(na + nb, na + nb);
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) y(i, j) = x(i, j);
      m.push_back(std::move(y));
    }
    for (const auto& x : b.matrices()) {
      QMatrix y(na + nb, na + nb);
      for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) y(na + i, na + j) = x(i, j);
      m.push_back(std::move(y));
    }
    l.set_matrices(std::move(m));
  }
  return l;
}

LieAlgebraData symplectic_heisenberg(std::size_t k) {
  if (k == 0) return heisenberg(0);
  LieAlgebraData sp = classical_algebra(Family::sp, 2 * k);
  const std::size_t d = sp.dim(), n = 2 * k;
  std::vector<std::string> labels = sp.labels();
  for (std::size_t a = 0; a < n; ++a) labels.push_back("u" + std::to_string(a + 1));
  labels.push_back("z");
  LieAlgebraData l(std::move(labels));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) l.set_bracket(i, j, sp.bracket(i, j));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a < n; ++a) {
      SparseVector img;
      for (std::size_t b = 0; b < n; ++b)
        if (sgn(sp.matrices()[i](b, a)) != 0) img.emplace_back(static_cast<std::uint32_t>(d + b), sp.matrices()[i](b, a));
      if (!img.empty()) l.set_bracket(i, d + a, img);
    }
  QMatrix j = classical_form(Family::sp, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (sgn(j(a, b)) != 0) l.set_bracket(d + a, d + b, {{static_cast<std::uint32_t>(d + n), j(a, b)}});
  return l;
}

// ---------------------------------------------------------------------------

bool is_antisymmetric(const LieAlgebraData& l) {
  for (std::size_t i = 0; i < l.dim(); ++i) {
    if (!l.bracket(i, i).empty()) return false;
    for (std::size_t j = i + 1; j < l.dim(); ++j) {
      SparseVector s = l.bracket(i, j);
      axpy(s, 1, l.bracket(j, i));
      if (!s.empty()) return false;
    }
  }
  return true;
}

std::optional<std::array<std::size_t, 3>> jacobi_violation(const LieAlgebraData& l) {
  const long d = static_cast<long>(l.dim());
  std::vector<std::optional<std::array<std::size_t, 3>>> first(d);
#pragma omp parallel for schedule(dynamic)
  for (long ii = 0; ii < d; ++ii) {
    auto i = static_cast<std::size_t>(ii);
    auto unit_i = SparseVector{{static_cast<std::uint32_t>(i), Rational(1)}};
    for (std::size_t j = i + 1; j < l.dim() && !first[ii]; ++j) {
      auto unit_j = SparseVector{{static_cast<std::uint32_t>(j), Rational(1)}};
      for (std::size_t k = j + 1; k < l.dim(); ++k) {
        auto unit_k = SparseVector{{static_cast<std::uint32_t>(k), Rational(1)}};
        SparseVector s = l.bracket(unit_i, l.bracket(j, k));
        axpy(s, 1, l.bracket(unit_j, l.bracket(k, i)));
        axpy(s, 1, l.bracket(unit_k, l.bracket(i, j)));
        if (!s.empty()) {
          first[ii] = std::array<std::size_t, 3>{i, j, k};
          break;
        }
      }
    }
  }
  for (const auto& f : first)
    if (f) return f;
  return std::nullopt;
}

LieAlgebraData subalgebra(const LieAlgebraData& l, const std::vector<QVector>& span, std::vector<QVector>* retained) {
  std::vector<QVector> basis;
  for (auto i : independent_subset(span)) basis.push_back(span[i]);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < basis.size(); ++i) labels.push_back("y" + std::to_string(i + 1));
  LieAlgebraData sub(std::move(labels));
  if (!basis.empty()) {
    SpanCoordinates coords(basis, l.dim());
    std::vector<SparseVector> sparse;
    for (const auto& b : basis) sparse.push_back(to_sparse(b));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        auto c = coords.coordinates(l.bracket(sparse[i], sparse[j]));
        if (!c) throw NotClosed(i, j);
        sub.set_bracket(i, j, *c);
      }
    if (l.has_matrices()) {
      std::size_t n = l.matrix_size();
      std::vector<QMatrix> m;
      for (const auto& b : basis) {
        QMatrix x(n, n);
        for (std::size_t k = 0; k < b.size(); ++k)
          if (sgn(b[k]) != 0) x += l.matrices()[k].scaled(b[k]);
        m.push_back(std::move(x));
      }
      sub.set_matrices(std::move(m));
    }
  }
  if (retained) *retained = basis;
  return sub;
}

// ---------------------------------------------------------------------------

QMatrix kirillov_form(const LieAlgebraData& l, const QVector& gamma) {
  if (gamma.size() != l.dim()) throw Error("kirillov_form: wrong dual vector length");
  QMatrix b(l.dim(), l.dim());
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j) {
      Rational s = 0;
      for (const auto& [k, c] : l.bracket(i, j))
        if (sgn(gamma[k]) != 0) s += c * gamma[k];
      b(i, j) = s;
      b(j, i) = -s;
    }
  return b;
}

IndexResult index(const LieAlgebraData& l, const SampleConfig& cfg) {
  auto g = generic_max_rank(cfg, l.dim(), [&](const QVector& gamma) { return rank(kirillov_form(l, gamma)); });
  return {l.dim() - g.rank, g.stabilised, g.point};
}

BResult b_of(const LieAlgebraData& l, const SampleConfig& cfg) {
  auto ind = index(l, cfg);
  return {(ind.value + l.dim()) / 2, ind.stabilised};
}

std::size_t killing_rank(const LieAlgebraData& l) {
  const std::size_t d = l.dim();
  std::vector<SparseQMatrix> ad(d), adt(d);
  for (std::size_t i = 0; i < d; ++i) {
    ad[i] = l.ad(i);
    adt[i] = ad[i].transpose();
  }
  QMatrix k(d, d);
#pragma omp parallel for schedule(dynamic)
  for (long ii = 0; ii < static_cast<long>(d); ++ii) {
    auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = i; j < d; ++j) {
      // tr(ad_i ad_j) = sum_r row_r(ad_i) . col_r(ad_j)
      Rational s = 0;
      for (std::size_t r = 0; r < d; ++r) {
        const auto& a = ad[i].row(r);
        const auto& b = adt[j].row(r);
        std::size_t p = 0, q = 0;
        while (p < a.size() && q < b.size()) {
          if (a[p].first < b[q].first) ++p;
          else if (b[q].first < a[p].first) ++q;
          else s += a[p++].second * b[q++].second;
        }
      }
      k(i, j) = s;
      k(j, i) = s;
    }
  }
  return rank(k);
}

std::size_t center_dim(const LieAlgebraData& l) {
  SparseEchelon e(l.dim());
  for (std::size_t i = 0; i < l.dim(); ++i) {
    SparseQMatrix a = l.ad(i);
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (!a.row(r).empty()) e.add_row(a.row(r));
  }
  return l.dim() - e.rank();
}

std::vector<std::size_t> derived_series_dims(const LieAlgebraData& l) {
  std::vector<std::size_t> dims{l.dim()};
  std::vector<SparseVector> cur;
  for (std::size_t i = 0; i < l.dim(); ++i) cur.push_back({{static_cast<std::uint32_t>(i), Rational(1)}});
  while (!cur.empty()) {
    SparseEchelon e(l.dim());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        SparseVector b = l.bracket(cur[i], cur[j]);
        if (!b.empty()) e.add_row(std::move(b));
      }
    std::size_t next = e.rank();
    dims.push_back(next);
    if (next == cur.size()) break;
    cur = e.rows();
  }
  return dims;
}

std::string Fingerprint::to_string() const {
  std::ostringstream os;
  os << "(dim " << dim << ", index " << index << ", derived [";
  for (std::size_t i = 0; i < derived_series.size(); ++i) os << (i ? "," : "") << derived_series[i];
  os << "], killing rank " << killing_rank << ", centre " << center_dim << ")";
  return os.str();
}

Fingerprint fingerprint(const LieAlgebraData& l, const SampleConfig& cfg) {
  Fingerprint f;
  f.dim = l.dim();
  auto ind = index(l, cfg);
  f.index = ind.value;
  f.stabilised = ind.stabilised;
  f.derived_series = derived_series_dims(l);
  f.killing_rank = killing_rank(l);
  f.center_dim = center_dim(l);
  return f;
}

}  // namespace lieinv
