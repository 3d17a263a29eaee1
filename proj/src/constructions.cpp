#include "lieinv/constructions.hpp"

#include <algorithm>
#include <bit>

namespace lieinv {

// ---------------------------------------------------------------------------
// Minors and Pfaffians.

Rational principal_minor_sum(const QMatrix& m, std::size_t k) {
  if (!m.is_square() || k > m.rows()) throw Error("principal_minor_sum: need a square matrix and k <= N");
  QVector c = characteristic_polynomial(m);
  return k % 2 ? Rational(-c[k]) : c[k];
}

namespace {

void check_square(const PolyMatrix& m) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw Error("polynomial matrix is not square");
}

std::size_t poly_vars(const PolyMatrix& m) { return m.empty() ? 0 : m[0][0].vars(); }

// det of the submatrix on `idx` (rows = columns) by expansion over column subsets
MultiPoly sub_determinant(const PolyMatrix& m, const std::vector<std::size_t>& idx) {
  const std::size_t k = idx.size(), vars = poly_vars(m);
  if (k > 20) throw Error("symbolic determinant too large");
  std::vector<MultiPoly> dp(std::size_t(1) << k, MultiPoly(vars));
  std::vector<bool> live(dp.size(), false);
  dp[0] = MultiPoly::constant(vars, 1);
  live[0] = true;
  for (std::uint32_t s = 0; s < dp.size(); ++s) {
    if (!live[s] || dp[s].is_zero()) continue;
    const std::size_t r = std::popcount(s);
    if (r == k) continue;
    for (std::size_t c = 0; c < k; ++c) {
      if (s >> c & 1) continue;
      const MultiPoly& entry = m[idx[r]][idx[c]];
      if (entry.is_zero()) continue;
      // parity of the used columns to the right of c
      bool odd = std::popcount(s >> (c + 1)) % 2;
      MultiPoly term = dp[s] * entry;
      std::uint32_t t = s | (1u << c);
      dp[t] += odd ? term.scaled(-1) : term;
      live[t] = true;
    }
    if (s != 0) dp[s] = MultiPoly(vars);  // no longer needed
  }
  return dp.back();
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MultiPoly determinant(const PolyMatrix& m) {
  check_square(m);
  std::vector<std::size_t> idx(m.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return sub_determinant(m, idx);
}

MultiPoly principal_minor_sum(const PolyMatrix& m, std::size_t k) {
  check_square(m);
  if (k > m.size()) throw Error("principal_minor_sum: k exceeds the matrix size");
  std::vector<std::vector<std::size_t>> all;
  std::vector<std::size_t> cur;
  subsets(m.size(), k, 0, cur, all);
  std::vector<MultiPoly> parts(all.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t s = 0; s < all.size(); ++s) parts[s] = sub_determinant(m, all[s]);
  MultiPoly total(poly_vars(m));
  for (const auto& p : parts) total += p;
  return total;
}

Rational pfaffian(const QMatrix& input) {
  if (!input.is_square() || input.rows() % 2) throw Error("pfaffian: needs an even square matrix");
  if (!(input.transpose() == -input)) throw Error("pfaffian: matrix is not antisymmetric");
  QMatrix a = input;
  Rational pf = 1;
  std::size_t n = a.rows();
  while (n > 0) {
    std::size_t j = 1;
    while (j < n && sgn(a(0, j)) == 0) ++j;
    if (j == n) return 0;
    if (j != 1) {
      for (std::size_t r = 0; r < n; ++r) std::swap(a(r, 1), a(r, j));
      for (std::size_t c = 0; c < n; ++c) std::swap(a(1, c), a(j, c));
      pf = -pf;
    }
    Rational piv = a(0, 1);
    pf *= piv;
    // Pf(A) = a01 Pf(C + (w u^T - u w^T) / a01) with u = row 0, w = row 1
    QMatrix next(n - 2, n - 2);
    for (std::size_t r = 2; r < n; ++r)
      for (std::size_t c = 2; c < n; ++c)
        next(r - 2, c - 2) = a(r, c) + (a(1, r) * a(0, c) - a(0, r) * a(1, c)) / piv;
    a = std::move(next);
    n -= 2;
  }
  return pf;
}

namespace {

MultiPoly pfaffian_rec(const PolyMatrix& m, std::uint32_t set, std::map<std::uint32_t, MultiPoly>& memo) {
  const std::size_t vars = poly_vars(m);
  if (set == 0) return MultiPoly::constant(vars, 1);
  auto it = memo.find(set);
  if (it != memo.end()) return it->second;
  std::size_t i0 = std::countr_zero(set);
  std::uint32_t rest = set & ~(1u << i0);
  MultiPoly total(vars);
  int pos = 0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (!(rest >> j & 1)) continue;
    ++pos;  // position of j in the sorted set, i0 being position 0
    if (m[i0][j].is_zero()) continue;
    MultiPoly sub = pfaffian_rec(m, rest & ~(1u << j), memo) * m[i0][j];
    total += pos % 2 ? sub : sub.scaled(-1);
  }
  memo.emplace(set, total);
  return total;
}

}  // namespace

MultiPoly pfaffian(const PolyMatrix& m) {
  check_square(m);
  if (m.size() % 2) throw Error("pfaffian: needs an even square matrix");
  if (m.size() > 30) throw Error("symbolic pfaffian too large");
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!(m[i][j] == m[j][i].scaled(-1))) throw Error("pfaffian: matrix is not antisymmetric");
  std::map<std::uint32_t, MultiPoly> memo;
  std::uint32_t all = m.size() == 32 ? ~0u : ((1u << m.size()) - 1);
  return pfaffian_rec(m, all, memo);
}

// ---------------------------------------------------------------------------
// Realisations and graded components.

QMatrix MatrixRealisation::evaluate(const QVector& x) const {
  if (x.size() != coords.size()) throw Error("MatrixRealisation: point has the wrong length");
  QMatrix r = constant.rows() ? constant : QMatrix(n, n);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) r += coords[i].scaled(x[i]);
  return r;
}

PolyMatrix MatrixRealisation::symbolic(bool scale_constant) const {
  const std::size_t vars = coords.size() + (scale_constant ? 1 : 0);
  PolyMatrix m(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
  Monomial mono(vars, 0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (sgn(coords[i](r, c)) == 0) continue;
        mono[i] = 1;
        m[r][c].add_term(mono, coords[i](r, c));
        mono[i] = 0;
      }
      if (constant.rows() && sgn(constant(r, c)) != 0) {
        if (scale_constant) mono[vars - 1] = 1;
        m[r][c].add_term(mono, constant(r, c));
        if (scale_constant) mono[vars - 1] = 0;
      }
    }
  return m;
}

std::vector<QMatrix> frobenius_dual(const std::vector<QMatrix>& basis) {
  const std::size_t d = basis.size();
  QMatrix gram(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Rational s = 0;
      for (std::size_t r = 0; r < basis[i].rows(); ++r)
        for (std::size_t c = 0; c < basis[i].cols(); ++c) s += basis[i](r, c) * basis[j](r, c);
      gram(i, j) = gram(j, i) = s;
    }
  auto inv = inverse(gram);
  if (!inv) throw Error("frobenius_dual: basis matrices are dependent");
  std::vector<QMatrix> dual;
  for (std::size_t j = 0; j < d; ++j) {
    QMatrix l(basis[0].rows(), basis[0].cols());
    for (std::size_t i = 0; i < d; ++i)
      if (sgn((*inv)(i, j)) != 0) l += basis[i].scaled((*inv)(i, j));
    dual.push_back(std::move(l));
  }
  return dual;
}

EvaluatorPoly delta_k(const MatrixRealisation& layout, std::size_t k) {
  if (k > layout.n) throw Error("delta_k: k exceeds the matrix size");
  EvaluatorPoly p;
  p.vars = layout.vars();
  p.degree_bound = static_cast<unsigned>(k);
  p.eval = [layout, k](const QVector& x) -> Rational { return principal_minor_sum(layout.evaluate(x), k); };
  return p;
}

HighestComponent highest_component(const MultiPoly& p, const std::vector<bool>& mask) {
  if (p.is_zero()) throw Error("highest_component of the zero polynomial");
  if (mask.size() != p.vars()) throw Error("highest_component: mask has the wrong length");
  unsigned top = 0;
  for (const auto& [m, c] : p.terms()) {
    unsigned d = 0;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (mask[j]) d += m[j];
    top = std::max(top, d);
  }
  return {p.component(mask, top), top};
}

HighestComponent highest_component(const SemiDirectProduct& s, const MultiPoly& p, std::size_t block) {
  std::vector<bool> mask(s.dim());
  for (std::size_t j = 0; j < s.dim(); ++j) mask[j] = s.block_of[j] == block;
  return highest_component(p, mask);
}

namespace {

QVector graded_coefficients(const EvaluatorPoly& p, const std::vector<bool>& mask, const QVector& x) {
  return leading_graded_component(
      [&](const Rational& t) -> Rational {
        QVector y = x;
        for (std::size_t j = 0; j < y.size(); ++j)
          if (mask[j]) y[j] *= t;
        return p(y);
      },
      p.degree_bound);
}

}  // namespace

HighestEvaluator highest_component(const EvaluatorPoly& p, const std::vector<bool>& mask, const SampleConfig& cfg) {
  if (mask.size() != p.vars) throw Error("highest_component: mask has the wrong length");
  int top = -1;
  for (int r = 0; r <= cfg.rounds; ++r) {
    QVector c = graded_coefficients(p, mask, sample_vector(cfg, p.vars, r, 13));
    trim(c);
    top = std::max(top, degree(c));
  }
  if (top < 0) throw Error("highest_component of the zero polynomial");
  HighestEvaluator h;
  h.degree = static_cast<unsigned>(top);
  h.poly.vars = p.vars;
  h.poly.degree_bound = p.degree_bound;
  h.poly.eval = [p, mask, top](const QVector& x) -> Rational {
    QVector c = graded_coefficients(p, mask, x);
    return static_cast<std::size_t>(top) < c.size() ? c[top] : Rational(0);
  };
  return h;
}

// ---------------------------------------------------------------------------
// Nilpotent centralisers in sp.

namespace {

QMatrix unit(std::size_t n, std::size_t r, std::size_t c) {
  QMatrix m(n, n);
  m(r, c) = 1;
  return m;
}

QMatrix block_diag(const QMatrix& a, const QMatrix& b) {
  QMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
  return m;
}

QMatrix embed(const QMatrix& x, std::size_t n, std::size_t off) {
  QMatrix m(n, n);
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) m(off + r, off + c) = x(r, c);
  return m;
}

QVector flatten(const QMatrix& m) {
  QVector v;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

QMatrix unflatten(const QVector& v, std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t k = 0; k < v.size(); ++k) m(k / n, k % n) = v[k];
  return m;
}

bool preserves_form(const QMatrix& x, const QMatrix& form) { return (x.transpose() * form + form * x).is_zero(); }

// Matrices X with X^T F + F X = 0 and [X, e] = 0, as a kernel.
std::size_t centraliser_kernel_dim(const QMatrix& form, const QMatrix& e) {
  const std::size_t n = form.rows(), nn = n * n;
  QMatrix sys(2 * nn, nn);
  for (std::size_t k = 0; k < nn; ++k) {
    QMatrix x = unit(n, k / n, k % n);
    QVector a = flatten(x.transpose() * form + form * x), b = flatten(x * e - e * x);
    for (std::size_t r = 0; r < nn; ++r) {
      sys(r, k) = a[r];
      sys(nn + r, k) = b[r];
    }
  }
  return nn - rank(sys);
}

}  // namespace

CentraliserLayout two_block_centraliser_layout(std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw Error("two_block_centraliser_layout: needs m >= 1 and n >= 1");
  CentraliserLayout c;
  c.m = m;
  c.n = n;
  const std::size_t N = 2 * m + 2 * n;
  QMatrix j2n = classical_form(Family::sp, 2 * n);
  c.form = block_diag(classical_form(Family::sp, 2 * m), j2n);
  c.e = QMatrix(N, N);
  c.f = QMatrix(N, N);
  for (std::size_t r = 0; r < m; ++r) {
    c.e(r, m + r) = 1;
    c.f(m + r, r) = 1;
  }
  std::vector<QMatrix> basis;
  std::vector<std::string> labels;
  auto push = [&](QMatrix x, std::string label, std::vector<std::size_t>& where) {
    where.push_back(basis.size());
    basis.push_back(std::move(x));
    labels.push_back(std::move(label));
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      QMatrix x(N, N);
      x(i, j) = 1;
      x(j, i) = -1;
      x(m + i, m + j) = 1;
      x(m + j, m + i) = -1;
      push(std::move(x), "a" + std::to_string(i + 1) + "_" + std::to_string(j + 1), c.so_coords);
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      QMatrix x(N, N);
      x(i, m + j) = 1;
      x(j, m + i) = 1;
      push(std::move(x), m == 1 ? std::string("c") : "c" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
           c.sym_coords);
    }
  LieAlgebraData sp = classical_algebra(Family::sp, 2 * n);
  for (std::size_t i = 0; i < sp.dim(); ++i) push(embed(sp.matrices()[i], N, 2 * m), sp.labels()[i], c.sp_coords);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t j = 0; j < 2 * n; ++j) {
      // row a has a 1 in column 2m + j; block (3, 2) carries J e_j in column m + a
      QMatrix x(N, N);
      x(a, 2 * m + j) = 1;
      for (std::size_t r = 0; r < 2 * n; ++r) x(2 * m + r, m + a) = j2n(r, j);
      push(std::move(x), (m == 1 ? "u" : "u" + std::to_string(a + 1) + "_") + std::to_string(j + 1), c.star_coords);
    }
  for (const auto& x : basis)
    if (!preserves_form(x, c.form) || !(x * c.e - c.e * x).is_zero())
      throw Error("two_block_centraliser_layout: basis element outside g_e");
  c.kernel_dim = centraliser_kernel_dim(c.form, c.e);
  c.centraliser = matrix_lie_algebra(basis, labels);
  c.layout.n = N;
  c.layout.constant = c.f;
  c.layout.coords = frobenius_dual(basis);
  c.layout.labels = labels;
  return c;
}

CentraliserLayout minimal_nilpotent_centraliser_layout(std::size_t n) {
  if (n < 2) throw Error("minimal_nilpotent_centraliser_layout: needs n >= 2");
  return two_block_centraliser_layout(1, n - 1);
}

SemiDirectProduct centraliser_semidirect(const CentraliserLayout& c) {
  auto base = share(classical_algebra(Family::sp, 2 * c.n));
  const auto& g = c.centraliser;
  std::vector<std::size_t> pos(g.dim(), SIZE_MAX);  // centraliser index -> target index
  for (std::size_t i = 0; i < c.sp_coords.size(); ++i) pos[c.sp_coords[i]] = i;
  for (std::size_t a = 0; a < c.star_coords.size(); ++a) pos[c.star_coords[a]] = c.sp_coords.size() + a;
  RepresentationData rep;
  rep.algebra = base;
  rep.dim = c.star_coords.size();
  rep.label = std::to_string(c.m) + "k" + std::to_string(2 * c.n);
  for (std::size_t a = 0; a < c.m; ++a)
    rep.blocks.push_back({a * 2 * c.n, 2 * c.n, "std#" + std::to_string(a + 1)});
  for (std::size_t i = 0; i < base->dim(); ++i) {
    SparseQMatrix act(rep.dim, rep.dim);
    for (std::size_t b = 0; b < rep.dim; ++b)
      for (const auto& [k, x] : g.bracket(c.sp_coords[i], c.star_coords[b])) {
        if (pos[k] < c.sp_coords.size() || pos[k] == SIZE_MAX)
          throw Error("centraliser_semidirect: [sp, star] leaves the starred span");
        act.add(pos[k] - c.sp_coords.size(), b, x);
      }
    rep.action.push_back(std::move(act));
  }
  SemiDirectProduct s = semidirect(rep);
  // the target is the quotient by S^2 k^m restricted to sp + stars
  std::vector<std::size_t> kept = c.sp_coords;
  kept.insert(kept.end(), c.star_coords.begin(), c.star_coords.end());
  for (auto i : kept)
    for (auto j : kept) {
      SparseVector proj;
      for (const auto& [k, x] : g.bracket(i, j)) {
        if (std::find(c.sym_coords.begin(), c.sym_coords.end(), k) != c.sym_coords.end()) continue;
        if (pos[k] == SIZE_MAX) throw Error("centraliser_semidirect: bracket leaves sp + stars modulo S^2");
        proj.emplace_back(static_cast<std::uint32_t>(pos[k]), x);
      }
      std::sort(proj.begin(), proj.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      if (proj != s.total->bracket(pos[i], pos[j])) throw Error("centraliser_semidirect: structure mismatch");
    }
  return s;
}

// ---------------------------------------------------------------------------
// eDelta_k restricted to the annihilator of S^2 k^m.

EDelta e_delta_restricted(const CentraliserLayout& c, std::size_t k, const SampleConfig& cfg) {
  if (c.m % 2 == 0) throw Error("e_delta_restricted: m must be odd");
  if (k + 1 < 3 * c.m + 2 || (k + 1 - 3 * c.m) % 2) throw Error("e_delta_restricted: k must be 3m + 2i - 1, i >= 1");
  const std::size_t i = (k + 1 - 3 * c.m) / 2;
  if (i > c.n - (c.m - 1) / 2) throw Error("e_delta_restricted: i exceeds n - (m - 1)/2");
  EDelta r;
  r.k = k;
  r.i = i;
  r.target = centraliser_semidirect(c);

  // f-degree: top power of t in Delta_k(t f + gamma) at sampled gamma
  const auto& lay = c.layout;
  int d = -1;
  for (int round = 0; round <= cfg.rounds; ++round) {
    QVector x = sample_vector(cfg, lay.vars(), round, 14);
    QVector coef = leading_graded_component(
        [&](const Rational& t) -> Rational {
          QMatrix m = lay.constant.scaled(t);
          for (std::size_t j = 0; j < x.size(); ++j) m += lay.coords[j].scaled(x[j]);
          return principal_minor_sum(m, k);
        },
        k);
    trim(coef);
    d = std::max(d, degree(coef));
  }
  if (d < 0) throw Error("e_delta_restricted: Delta_k vanishes on f + g_e*");
  r.f_degree = static_cast<unsigned>(d);

  // symbolic matrix on the coordinates outside S^2 k^m, plus t
  std::vector<bool> dropped(lay.vars(), false);
  for (auto j : c.sym_coords) dropped[j] = true;
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < lay.vars(); ++j)
    if (!dropped[j]) kept.push_back(j);
  MatrixRealisation reduced;
  reduced.n = lay.n;
  reduced.constant = lay.constant;
  for (auto j : kept) reduced.coords.push_back(lay.coords[j]);
  MultiPoly full = principal_minor_sum(reduced.symbolic(true), k);
  const std::size_t tv = kept.size();

  // target coordinates: sp then stars
  std::vector<std::size_t> target(tv, SIZE_MAX);
  for (std::size_t a = 0; a < c.sp_coords.size(); ++a)
    target[std::find(kept.begin(), kept.end(), c.sp_coords[a]) - kept.begin()] = a;
  for (std::size_t a = 0; a < c.star_coords.size(); ++a)
    target[std::find(kept.begin(), kept.end(), c.star_coords[a]) - kept.begin()] = c.sp_coords.size() + a;

  MultiPoly top(r.target.dim());
  for (const auto& [mono, coef] : full.terms()) {
    if (mono[tv] > r.f_degree) throw Error("e_delta_restricted: f-degree exceeds the sampled one");
    if (mono[tv] != r.f_degree) continue;
    Monomial m(r.target.dim(), 0);
    for (std::size_t j = 0; j < tv; ++j) {
      if (!mono[j]) continue;
      if (target[j] == SIZE_MAX) throw Error("e_delta_restricted: restriction depends on so_m coordinates");
      m[target[j]] = mono[j];
    }
    top.add_term(m, coef);
  }
  if (top.is_zero()) throw Error("e_delta_restricted: restriction vanishes");
  r.poly = std::move(top);
  return r;
}

// ---------------------------------------------------------------------------
// psi_x: restriction to x + q*.

PsiRestriction restrict_psi(const SemiDirectProduct& s, const MultiPoly& h, const QVector& x) {
  if (x.size() != s.v_dim()) throw Error("restrict_psi: x has the wrong length");
  if (h.vars() != s.dim()) throw Error("restrict_psi: polynomial ring mismatch");
  PsiRestriction r;
  r.stabiliser = stabiliser_in_V(s, x);
  const std::size_t qd = s.q_dim(), rd = r.stabiliser.basis.size();
  // adapted basis T of q: the stabiliser first, then unit vectors
  std::vector<QVector> cols = r.stabiliser.basis;
  SparseEchelon ech(qd);
  for (const auto& b : cols) ech.add_row(to_sparse(b));
  for (std::size_t j = 0; j < qd && cols.size() < qd; ++j) {
    QVector e(qd, 0);
    e[j] = 1;
    if (ech.add_row(to_sparse(e))) cols.push_back(e);
  }
  auto tinv = inverse(QMatrix::from_columns(cols, qd));
  if (!tinv) throw Error("restrict_psi: adapted basis is singular");
  // gamma(x_i) = sum_j Tinv(j, i) gamma'(y_j)
  std::vector<SparseVector> images(s.dim());
  QVector shift(s.dim(), 0);
  for (std::size_t i = 0; i < qd; ++i)
    for (std::size_t j = 0; j < qd; ++j)
      if (sgn((*tinv)(j, i)) != 0) images[i].emplace_back(static_cast<std::uint32_t>(j), (*tinv)(j, i));
  for (std::size_t a = 0; a < s.v_dim(); ++a) shift[qd + a] = x[a];
  MultiPoly sub = h.substitute_affine(images, shift, qd);
  for (const auto& [mono, coef] : sub.terms())
    for (std::size_t j = rd; j < qd; ++j)
      if (mono[j]) throw Error("restriction escapes S(q_x): coordinate " + std::to_string(j));
  std::vector<std::size_t> target(qd);
  for (std::size_t j = 0; j < qd; ++j) target[j] = j < rd ? j : 0;  // unused beyond rd
  r.poly = sub.relabel(target, rd);
  for (std::size_t j = 0; j < rd; ++j)
    if (!lie_derivative(r.stabiliser.algebra, j, r.poly).is_zero())
      throw Error("restrict_psi: restriction is not q_x-invariant");
  return r;
}

Matryoshka matryoshka_check(std::size_t n, std::size_t i, const SampleConfig& cfg, std::size_t points) {
  if (n < 2 || i < 1 || i > n) throw Error("matryoshka_check: needs n >= 2 and 1 <= i <= n");
  CentraliserLayout big = minimal_nilpotent_centraliser_layout(n + 1);
  EDelta h = e_delta_restricted(big, 2 * i + 2, cfg);
  const SemiDirectProduct& s = h.target;
  CentraliserLayout small = minimal_nilpotent_centraliser_layout(n);
  const std::size_t N = 2 * n;

  // classical order u_1..u_2n -> order of small: u_1, u_{n+1}, u_2..u_n, u_{n+2}..u_2n
  std::vector<std::size_t> perm{0, n};
  for (std::size_t a = 1; a < n; ++a) perm.push_back(a);
  for (std::size_t a = n + 1; a < N; ++a) perm.push_back(a);
  QMatrix p(N, N);
  for (std::size_t w = 0; w < N; ++w) p(w, perm[w]) = 1;
  if (!(p * classical_form(Family::sp, N) * p.transpose() == small.form))
    throw Error("matryoshka_check: permutation does not match the forms");

  std::vector<QVector> small_flat;
  for (const auto& b : small.centraliser.matrices()) small_flat.push_back(flatten(b));
  SpanCoordinates small_span(small_flat, N * N);
  const auto& sp_basis = s.base->matrices();

  Matryoshka out;
  std::optional<PsiRestriction> psi;
  std::vector<QVector> rows;  // y_j in the basis of small
  for (std::size_t a = 0; a < s.v_dim() && !psi; ++a) {
    QVector x(s.v_dim(), 0);
    x[a] = 1;
    StabiliserResult st = stabiliser_in_V(s, x);
    if (st.basis.size() != small.centraliser.dim()) continue;
    std::vector<QVector> coords;
    for (const auto& y : st.basis) {
      QMatrix m(N, N);
      for (std::size_t k = 0; k < y.size(); ++k)
        if (sgn(y[k]) != 0) m += sp_basis[k].scaled(y[k]);
      auto c = small_span.coordinates(flatten(p * m * p.transpose()));
      if (!c) break;
      coords.push_back(*c);
    }
    if (coords.size() != st.basis.size()) continue;
    out.point = x;
    psi = restrict_psi(s, h.poly, x);
    rows = coords;
  }
  if (!psi) throw Error("matryoshka_check: no unit vector with stabiliser conjugate to g'_e'");

  // eDelta'_2i on g'_e'*: top t-coefficient of Delta_2i(t f' + gamma')
  const auto& lay = small.layout;
  auto t_coefficients = [&](const QVector& g) -> QVector {
    QVector c = leading_graded_component(
        [&](const Rational& t) -> Rational {
          QMatrix m = lay.constant.scaled(t);
          for (std::size_t j = 0; j < g.size(); ++j) m += lay.coords[j].scaled(g[j]);
          return principal_minor_sum(m, 2 * i);
        },
        2 * i);
    trim(c);
    return c;
  };
  int fd = -1;
  for (int round = 0; round <= cfg.rounds; ++round)
    fd = std::max(fd, degree(t_coefficients(sample_vector(cfg, small.centraliser.dim(), round, 16))));
  if (fd < 0) throw Error("matryoshka_check: eDelta' vanishes");
  auto small_delta = [&](const QVector& g) -> Rational {
    QVector c = t_coefficients(g);
    return static_cast<std::size_t>(fd) < c.size() ? c[fd] : Rational(0);
  };
  std::vector<std::pair<Rational, Rational>> values;
  for (std::size_t r = 0; r < points; ++r) {
    QVector g = sample_vector(cfg, small.centraliser.dim(), r, 15);
    QVector gy(rows.size(), 0);
    for (std::size_t j = 0; j < rows.size(); ++j)
      for (std::size_t k = 0; k < g.size(); ++k) gy[j] += rows[j][k] * g[k];
    values.emplace_back(psi->poly.evaluate(gy), small_delta(g));
  }
  out.points = points;
  bool found = false;
  for (const auto& [lhs, rhs] : values)
    if (sgn(rhs) != 0) {
      out.ratio = lhs / rhs;
      found = true;
      break;
    }
  out.proportional = found && sgn(out.ratio) != 0;
  for (const auto& [lhs, rhs] : values)
    if (lhs != out.ratio * rhs) out.proportional = false;
  return out;
}

SemiDirectProduct takiff(const LieAlgebraData& l) { return semidirect(adjoint_rep(share(l))); }

// ---------------------------------------------------------------------------
// Z2-contractions.

std::string ContractionSpec::to_string() const {
  auto s = [](std::size_t v) { return std::to_string(v); };
  switch (kind) {
    case ContractionKind::so_so: return "so" + s(n + m) + ">so" + s(n) + "+so" + s(m);
    case ContractionKind::sp_sp: return "sp" + s(n + m) + ">sp" + s(n) + "+sp" + s(m);
    case ContractionKind::sl_sp: return "sl" + s(n) + ">sp" + s(n);
    case ContractionKind::so_gl: return "so" + s(2 * n) + ">gl" + s(n);
  }
  return "?";
}

namespace {

// Solutions X of the linear conditions cond(X) = 0, in RREF order.
std::vector<QMatrix> matrix_kernel(std::size_t N, const std::function<std::vector<QMatrix>(const QMatrix&)>& cond) {
  const std::size_t nn = N * N;
  std::vector<SparseVector> cols;
  std::size_t rows = 0;
  for (std::size_t k = 0; k < nn; ++k) {
    QVector all;
    for (const auto& m : cond(unit(N, k / N, k % N))) {
      QVector f = flatten(m);
      all.insert(all.end(), f.begin(), f.end());
    }
    rows = all.size();
    cols.push_back(to_sparse(all));
  }
  QMatrix sys(rows, nn);
  for (std::size_t k = 0; k < nn; ++k)
    for (const auto& [r, v] : cols[k]) sys(r, k) = v;
  std::vector<QMatrix> out;
  for (const auto& v : kernel_basis(sys)) out.push_back(unflatten(v, N));
  return out;
}

std::vector<MultiDegree> exponent_vectors(const std::vector<unsigned>& deg, unsigned total) {
  std::vector<MultiDegree> out;
  MultiDegree cur(deg.size(), 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t j, unsigned left) {
    if (j == deg.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (unsigned a = 0; a * deg[j] <= left; ++a) {
      cur[j] = a;
      rec(j + 1, left - a * deg[j]);
    }
    cur[j] = 0;
  };
  rec(0, total);
  return out;
}

MultiPoly product(const std::vector<MultiPoly>& polys, const MultiDegree& alpha, std::size_t vars) {
  MultiPoly p = MultiPoly::constant(vars, 1);
  for (std::size_t j = 0; j < alpha.size(); ++j)
    if (alpha[j]) p = p * polys[j].pow(alpha[j]);
  return p;
}

// Coefficients c with target = sum_a c_a candidates[a], if any.
std::optional<QVector> express(const MultiPoly& target, const std::vector<MultiPoly>& candidates) {
  std::map<Monomial, std::size_t, GrlexLess> row;
  auto index = [&](const Monomial& m) {
    auto [it, fresh] = row.emplace(m, row.size());
    return it->second;
  };
  for (const auto& [m, c] : target.terms()) index(m);
  for (const auto& p : candidates)
    for (const auto& [m, c] : p.terms()) index(m);
  QMatrix a(row.size(), candidates.size());
  QVector b(row.size(), 0);
  for (std::size_t k = 0; k < candidates.size(); ++k)
    for (const auto& [m, c] : candidates[k].terms()) a(row[m], k) = c;
  for (const auto& [m, c] : target.terms()) b[row[m]] = c;
  return solve(a, b);
}

}  // namespace

Contraction z2_contraction(const ContractionSpec& spec) {
  Contraction out;
  out.spec = spec;
  const auto kind = spec.kind;
  std::size_t N = 0, split = 0;  // split: size of the first diagonal block
  std::vector<QMatrix> g0;
  std::vector<std::string> g0_labels;
  AlgebraPtr base;
  Family ambient_family = Family::sl;
  auto add_embedded = [&](Family f, std::size_t size, std::size_t off, const std::string& tag) {
    if (size < 2 && f == Family::so) return;
    LieAlgebraData l = classical_algebra(f, size);
    for (std::size_t k = 0; k < l.dim(); ++k) {
      g0.push_back(embed(l.matrices()[k], N, off));
      g0_labels.push_back(l.labels()[k] + tag);
    }
  };
  switch (kind) {
    case ContractionKind::so_so:
      if (spec.n < 1 || spec.m < 1 || spec.n + spec.m < 3) throw Error("z2_contraction: so_{n+m} needs n + m >= 3");
      N = spec.n + spec.m;
      split = spec.n;
      ambient_family = Family::so;
      out.form = block_diag(classical_form(Family::so, spec.n), classical_form(Family::so, spec.m));
      add_embedded(Family::so, spec.n, 0, "");
      add_embedded(Family::so, spec.m, spec.n, "'");
      break;
    case ContractionKind::sp_sp:
      if (spec.n < 2 || spec.m < 2 || spec.n % 2 || spec.m % 2) throw Error("z2_contraction: sp sizes must be even");
      N = spec.n + spec.m;
      split = spec.n;
      ambient_family = Family::sp;
      out.form = block_diag(classical_form(Family::sp, spec.n), classical_form(Family::sp, spec.m));
      add_embedded(Family::sp, spec.n, 0, "");
      add_embedded(Family::sp, spec.m, spec.n, "'");
      break;
    case ContractionKind::sl_sp: {
      if (spec.n < 2 || spec.n % 2) throw Error("z2_contraction: sl_n > sp_n needs n even");
      N = spec.n;
      base = share(classical_algebra(Family::sp, N));
      g0 = base->matrices();
      g0_labels = base->labels();
      break;
    }
    case ContractionKind::so_gl: {
      if (spec.n < 2) throw Error("z2_contraction: so_2n > gl_n needs n >= 2");
      N = 2 * spec.n;
      split = spec.n;
      ambient_family = Family::so;
      out.form = classical_form(Family::so, N);
      QMatrix sn = classical_form(Family::so, spec.n);
      for (std::size_t r = 0; r < spec.n; ++r)
        for (std::size_t c = 0; c < spec.n; ++c) {
          QMatrix a = unit(spec.n, r, c);
          g0.push_back(block_diag(a, -(sn * a.transpose() * sn)));
          g0_labels.push_back("E" + std::to_string(r + 1) + std::to_string(c + 1));
        }
      break;
    }
  }
  if (!base) base = share(matrix_lie_algebra(g0, g0_labels));

  std::vector<QMatrix> g1;
  if (kind == ContractionKind::sl_sp) {
    QMatrix j = classical_form(Family::sp, N);
    QMatrix jinv = *inverse(j);
    g1 = matrix_kernel(N, [&](const QMatrix& x) {
      QMatrix tr(1, 1);
      tr(0, 0) = x.trace();
      return std::vector<QMatrix>{jinv * x.transpose() * j - x, tr};
    });
  } else {
    g1 = matrix_kernel(N, [&](const QMatrix& x) {
      QMatrix diag(N, N);
      for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
          if ((r < split) == (c < split)) diag(r, c) = x(r, c);
      return std::vector<QMatrix>{x.transpose() * out.form + out.form * x, diag};
    });
  }
  const std::size_t expected = ambient_family == Family::so   ? N * (N - 1) / 2
                               : ambient_family == Family::sp ? N * (N + 1) / 2
                                                              : N * N - 1;
  if (g0.size() + g1.size() != expected) throw Error("z2_contraction: g_0 + g_1 has the wrong dimension");

  // Z2 grading
  std::vector<QVector> f0, f1;
  for (const auto& x : g0) f0.push_back(flatten(x));
  for (const auto& x : g1) f1.push_back(flatten(x));
  SpanCoordinates s0(f0, N * N), s1(f1, N * N);
  RepresentationData rep;
  rep.algebra = base;
  rep.dim = g1.size();
  rep.label = "g1";
  rep.blocks.push_back({0, g1.size(), "g1"});
  for (std::size_t i = 0; i < g0.size(); ++i) {
    SparseQMatrix act(g1.size(), g1.size());
    for (std::size_t b = 0; b < g1.size(); ++b) {
      auto c = s1.coordinates(flatten(g0[i] * g1[b] - g1[b] * g0[i]));
      if (!c) throw Error("z2_contraction: [g_0, g_1] is not in g_1");
      for (std::size_t a = 0; a < c->size(); ++a)
        if (sgn((*c)[a]) != 0) act.add(a, b, (*c)[a]);
    }
    rep.action.push_back(std::move(act));
  }
  for (const auto& x : g1)
    for (const auto& y : g1)
      if (!s0.coordinates(flatten(x * y - y * x))) throw Error("z2_contraction: [g_1, g_1] is not in g_0");
  out.s = semidirect(rep);
  out.basis = g0;
  out.basis.insert(out.basis.end(), g1.begin(), g1.end());
  out.ambient.n = N;
  out.ambient.coords = frobenius_dual(out.basis);

  // basic invariants of the ambient algebra
  const std::size_t vars = out.basis.size();
  PolyMatrix sym = out.ambient.symbolic();
  std::vector<std::pair<MultiPoly, std::string>> basic;
  if (ambient_family == Family::sl) {
    for (std::size_t k = 2; k <= N; ++k) basic.emplace_back(principal_minor_sum(sym, k), "Delta_" + std::to_string(k));
  } else if (ambient_family == Family::sp || N % 2) {
    for (std::size_t k = 2; k + (ambient_family == Family::so) <= N; k += 2)
      basic.emplace_back(principal_minor_sum(sym, k), "Delta_" + std::to_string(k));
  } else {
    for (std::size_t k = 2; k + 2 <= N; k += 2)
      basic.emplace_back(principal_minor_sum(sym, k), "Delta_" + std::to_string(k));
    PolyMatrix sm(N, std::vector<MultiPoly>(N, MultiPoly(vars)));
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c)
        for (std::size_t k = 0; k < N; ++k)
          if (sgn(out.form(r, k)) != 0) sm[r][c] += sym[k][c].scaled(out.form(r, k));
    basic.emplace_back(pfaffian(sm), "Pf");
  }

  std::vector<bool> mask(vars, false);
  for (std::size_t j = g0.size(); j < vars; ++j) mask[j] = true;
  std::vector<unsigned> total_deg;
  for (auto& [poly, source] : basic) {
    if (poly.is_zero()) throw Error("z2_contraction: basic invariant " + source + " vanishes");
    const unsigned deg = static_cast<unsigned>(poly.degree());
    bool modified = false;
    HighestComponent top = highest_component(poly, mask);
    for (;;) {
      // products of earlier tops with the same bidegree
      std::vector<MultiDegree> alphas;
      std::vector<MultiPoly> cands, fulls;
      for (const auto& alpha : exponent_vectors(total_deg, deg)) {
        unsigned d1 = 0;
        for (std::size_t j = 0; j < alpha.size(); ++j) d1 += alpha[j] * out.degrees[j][1];
        if (d1 != top.degree) continue;
        cands.push_back(product(out.generators, alpha, vars));
        fulls.push_back(product(out.ambient_invariants, alpha, vars));
      }
      auto c = cands.empty() ? std::nullopt : express(top.poly, cands);
      if (!c) break;
      for (std::size_t a = 0; a < fulls.size(); ++a)
        if (sgn((*c)[a]) != 0) poly += fulls[a].scaled(-(*c)[a]);
      modified = true;
      if (poly.is_zero()) throw Error("z2_contraction: " + source + " is decomposable");
      top = highest_component(poly, mask);
    }
    out.ambient_invariants.push_back(poly);
    out.sources.push_back(modified ? source + " (modified)" : source);
    out.generators.push_back(top.poly);
    out.degrees.push_back({deg - top.degree, top.degree});
    total_deg.push_back(deg);
  }
  return out;
}

SemiDirectProduct derived_base(const SemiDirectProduct& s) {
  const auto& q = *s.base;
  std::vector<QVector> span;
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = i + 1; j < q.dim(); ++j) span.push_back(to_dense(q.bracket(i, j), q.dim()));
  std::vector<QVector> kept;
  auto d = share(subalgebra(q, span, &kept));
  RepresentationData rep;
  rep.algebra = d;
  rep.dim = s.rep.dim;
  rep.label = s.rep.label;
  rep.blocks = s.rep.blocks;
  for (const auto& y : kept) rep.action.push_back(s.rep.act(y));
  return semidirect(rep);
}

// ---------------------------------------------------------------------------
// Lift through S^2(k^2n).

Item3Lift item3_lift(std::size_t n) {
  Item3Lift out;
  out.n = n;
  out.item2 = z2_contraction({ContractionKind::sl_sp, 2 * n, 0});
  const auto& base = out.item2.s.base;
  out.s = semidirect(direct_sum(standard_rep(base), out.item2.s.rep));
  const std::size_t dg = base->dim(), v1 = 2 * n, v2 = out.item2.s.v_dim(), vars = out.s.dim();

  for (std::size_t k = 0; k < out.item2.generators.size(); ++k)
    if (out.item2.degrees[k][0] == 2) out.h.push_back(out.item2.generators[k]);
  if (out.h.size() != n) throw Error("item3_lift: expected n generators of g-degree 2");

  // phi(x_b) = q_b in S^2(V1) with phi([x_j, x_i]) = D_{x_j} phi(x_i)
  auto mons = monomials_of_degree(v1, 2);
  const std::size_t nm = mons.size();
  auto lift = [&](const Monomial& m) {
    Monomial full(vars, 0);
    for (std::size_t a = 0; a < v1; ++a) full[dg + a] = m[a];
    return full;
  };
  std::map<Monomial, std::size_t, GrlexLess> mon_index;
  for (std::size_t k = 0; k < nm; ++k) mon_index[lift(mons[k])] = k;
  SparseEchelon ech(dg * nm);
  for (std::size_t j = 0; j < dg; ++j) {
    // D_{x_j} on each quadratic monomial
    std::vector<MultiPoly> dmon;
    for (const auto& m : mons) {
      MultiPoly p(vars);
      p.add_term(lift(m), 1);
      dmon.push_back(lie_derivative(out.s, j, p));
    }
    for (std::size_t i = 0; i < dg; ++i) {
      std::map<std::size_t, SparseVector> rows;  // per result monomial
      for (const auto& [k, c] : base->bracket(j, i))
        for (std::size_t mu = 0; mu < nm; ++mu) rows[mu].emplace_back(static_cast<std::uint32_t>(k * nm + mu), c);
      for (std::size_t mu = 0; mu < nm; ++mu)
        for (const auto& [m, c] : dmon[mu].terms()) {
          auto it = mon_index.find(m);
          if (it == mon_index.end()) throw Error("item3_lift: derivative leaves S^2(V1)");
          rows[it->second].emplace_back(static_cast<std::uint32_t>(i * nm + mu), -c);
        }
      for (auto& [r, row] : rows) {
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseVector merged;
        for (const auto& [col, c] : row) axpy(merged, c, SparseVector{{col, Rational(1)}});
        ech.add_row(std::move(merged));
      }
    }
  }
  auto ker = ech.kernel();
  if (ker.size() != 1) throw Error("item3_lift: equivariant map g -> S^2(V1) is not unique");
  for (std::size_t b = 0; b < dg; ++b) {
    MultiPoly q(vars);
    for (std::size_t mu = 0; mu < nm; ++mu)
      if (sgn(ker[0][b * nm + mu]) != 0) q.add_term(lift(mons[mu]), ker[0][b * nm + mu]);
    out.phi.push_back(std::move(q));
  }

  // item-2 coordinates [g, g_1] -> [g, V1, g_1]
  std::vector<std::size_t> target(dg + v2);
  for (std::size_t j = 0; j < dg; ++j) target[j] = j;
  for (std::size_t a = 0; a < v2; ++a) target[dg + a] = dg + v1 + a;
  for (const auto& h : out.h) {
    MultiPoly hr = h.relabel(target, vars), lifted(vars);
    for (std::size_t b = 0; b < dg; ++b)
      if (!out.phi[b].is_zero()) lifted += (out.phi[b] * hr.partial(b)).scaled(Rational(1, 2));
    out.lifted.push_back(std::move(lifted));
  }
  return out;
}

bool item3_evaluation_identity(const Item3Lift& lift, const SampleConfig& cfg, std::size_t points, Rational* scalar) {
  const auto& base = *lift.item2.s.base;
  const std::size_t dg = base.dim(), v1 = 2 * lift.n, v2 = lift.item2.s.v_dim();
  QMatrix j = classical_form(Family::sp, v1), jinv = *inverse(j);
  std::optional<Rational> ratio;
  for (std::size_t r = 0; r < points; ++r) {
    QVector a = sample_vector(cfg, dg, r, 51), xi = sample_vector(cfg, v1, r, 52), v = sample_vector(cfg, v2, r, 53);
    QVector full = a;
    full.insert(full.end(), xi.begin(), xi.end());
    full.insert(full.end(), v.begin(), v.end());
    QVector u = jinv * xi;
    QMatrix uu(v1, v1);
    for (std::size_t p = 0; p < v1; ++p)
      for (std::size_t q = 0; q < v1; ++q) uu(p, q) = u[p] * u[q];
    QMatrix bm = uu * j;
    QVector b(dg);
    for (std::size_t k = 0; k < dg; ++k) b[k] = (bm * base.matrices()[k]).trace();
    auto at = [&](const QVector& g) {
      QVector x = g;
      x.insert(x.end(), v.begin(), v.end());
      return x;
    };
    QVector ab(dg);
    for (std::size_t k = 0; k < dg; ++k) ab[k] = a[k] + b[k];
    for (std::size_t i = 0; i < lift.h.size(); ++i) {
      const auto& h = lift.h[i];
      Rational rhs = (h.evaluate(at(ab)) - h.evaluate(at(a)) - h.evaluate(at(b))) / 2;
      Rational lhs = lift.lifted[i].evaluate(full);
      if (sgn(rhs) == 0) {
        if (sgn(lhs) != 0) return false;
        continue;
      }
      Rational q = lhs / rhs;
      if (sgn(q) == 0 || (ratio && *ratio != q)) return false;
      ratio = q;
    }
  }
  if (!ratio) return false;
  if (scalar) *scalar = *ratio;
  return true;
}

}  // namespace lieinv
