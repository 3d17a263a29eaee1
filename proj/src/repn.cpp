#include "lieinv/repn.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cctype>

namespace lieinv {

SparseQMatrix RepresentationData::act(const QVector& x) const {
  if (x.size() != action.size()) throw Error("act: wrong coordinate vector length");
  SparseQMatrix m(dim, dim);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) m = m + action[i].scaled(x[i]);
  return m;
}

std::optional<std::pair<std::size_t, std::size_t>> representation_violation(const RepresentationData& r) {
  const LieAlgebraData& l = *r.algebra;
  const long d = static_cast<long>(l.dim());
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> bad(d);
#pragma omp parallel for schedule(dynamic)
  for (long ii = 0; ii < d; ++ii) {
    auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = i + 1; j < l.dim(); ++j) {
      SparseQMatrix lhs = commutator(r.action[i], r.action[j]);
      for (const auto& [k, c] : l.bracket(i, j)) lhs = lhs - r.action[k].scaled(c);
      if (!lhs.is_zero()) {
        bad[ii] = std::make_pair(i, j);
        break;
      }
    }
  }
  for (const auto& b : bad)
    if (b) return b;
  return std::nullopt;
}

RepresentationData standard_rep(AlgebraPtr l) {
  if (!l->has_matrices()) throw Error("standard_rep: algebra has no matrix realisation");
  RepresentationData r;
  r.algebra = l;
  r.dim = l->matrix_size();
  for (const auto& m : l->matrices()) r.action.push_back(SparseQMatrix::from_dense(m));
  r.label = "std";
  r.blocks = {{0, r.dim, r.label}};
  return r;
}

RepresentationData trivial_rep(AlgebraPtr l, std::size_t d) {
  RepresentationData r;
  r.dim = d;
  r.action.assign(l->dim(), SparseQMatrix(d, d));
  r.algebra = std::move(l);
  r.label = "trivial";
  r.blocks = {{0, d, r.label}};
  return r;
}

RepresentationData adjoint_rep(AlgebraPtr l) {
  RepresentationData r;
  r.dim = l->dim();
  for (std::size_t i = 0; i < l->dim(); ++i) r.action.push_back(l->ad(i));
  r.algebra = std::move(l);
  r.label = "adjoint";
  r.blocks = {{0, r.dim, r.label}};
  return r;
}

RepresentationData dual_rep(const RepresentationData& r) {
  RepresentationData d = r;
  for (auto& a : d.action) a = a.transpose().scaled(-1);
  d.label = r.label + "*";
  for (auto& b : d.blocks) b.label += "*";
  return d;
}

RepresentationData direct_sum(const std::vector<RepresentationData>& parts) {
  if (parts.empty()) throw Error("direct_sum: no summands");
  RepresentationData s;
  s.algebra = parts.front().algebra;
  for (const auto& p : parts) {
    if (p.algebra.get() != s.algebra.get()) throw Error("direct_sum: modules over different algebras");
    s.dim += p.dim;
  }
  s.action.assign(s.algebra->dim(), SparseQMatrix(s.dim, s.dim));
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.action.size(); ++i)
      for (std::size_t row = 0; row < p.dim; ++row) {
        SparseVector& target = s.action[i].row(off + row);
        for (const auto& [col, x] : p.action[i].row(row)) target.emplace_back(static_cast<std::uint32_t>(off + col), x);
      }
    for (const auto& b : p.blocks) s.blocks.push_back({off + b.offset, b.dim, b.label});
    s.label += (s.label.empty() ? "" : "+") + p.label;
    off += p.dim;
  }
  return s;
}

RepresentationData direct_sum(const RepresentationData& a, const RepresentationData& b) { return direct_sum({a, b}); }

RepresentationData tensor_product(const RepresentationData& a, const RepresentationData& b) {
  if (a.algebra.get() != b.algebra.get()) throw Error("tensor_product: modules over different algebras");
  RepresentationData t;
  t.algebra = a.algebra;
  t.dim = a.dim * b.dim;
  t.label = "(" + a.label + ")x(" + b.label + ")";
  t.blocks = {{0, t.dim, t.label}};
  for (std::size_t i = 0; i < a.action.size(); ++i) {
    // A (x) 1 + 1 (x) B, basis index p * dim_b + q
    SparseQMatrix m(t.dim, t.dim);
    for (std::size_t p = 0; p < a.dim; ++p)
      for (std::size_t q = 0; q < b.dim; ++q) {
        for (const auto& [c, x] : a.action[i].row(p)) m.add(p * b.dim + q, c * b.dim + q, x);
        for (const auto& [c, x] : b.action[i].row(q)) m.add(p * b.dim + q, p * b.dim + c, x);
      }
    t.action.push_back(std::move(m));
  }
  return t;
}

// ---------------------------------------------------------------------------

namespace {

using Tuple = std::vector<std::uint16_t>;

void tuples(std::size_t n, std::size_t k, bool strict, Tuple& cur, std::vector<Tuple>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  std::size_t start = cur.empty() ? 0 : cur.back() + (strict ? 1 : 0);
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(static_cast<std::uint16_t>(i));
    tuples(n, k, strict, cur, out);
    cur.pop_back();
  }
}

std::vector<Tuple> all_tuples(std::size_t n, std::size_t k, bool strict) {
  std::vector<Tuple> out;
  Tuple cur;
  tuples(n, k, strict, cur, out);
  return out;
}

// sorts t in place; when `strict` returns the parity of the permutation, or 0
// on a repeated entry, otherwise 1
int sort_sign(Tuple& t, bool strict) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i)
    for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
      if (t[j - 1] == t[j]) {
        if (strict) return 0;
        break;
      }
      std::swap(t[j - 1], t[j]);
      if (strict) sign = -sign;
    }
  return sign;
}

RepresentationData power(const RepresentationData& r, std::size_t k, bool exterior) {
  if (exterior && k > r.dim) throw Error("exterior_power: k exceeds the module dimension");
  auto basis = all_tuples(r.dim, k, exterior);
  std::map<Tuple, std::uint32_t> where;
  for (std::size_t i = 0; i < basis.size(); ++i) where[basis[i]] = static_cast<std::uint32_t>(i);
  RepresentationData p;
  p.algebra = r.algebra;
  p.dim = basis.size();
  p.label = (exterior ? "L" : "S") + std::to_string(k) + "(" + r.label + ")";
  p.blocks = {{0, p.dim, p.label}};
  p.action.resize(r.action.size());
#pragma omp parallel for schedule(dynamic)
  for (long ii = 0; ii < static_cast<long>(r.action.size()); ++ii) {
    SparseQMatrix cols = r.action[ii].transpose();  // row i = image of e_i
    SparseQMatrix m(p.dim, p.dim);
    for (std::size_t s = 0; s < basis.size(); ++s)
      for (std::size_t pos = 0; pos < k; ++pos)
        for (const auto& [l, x] : cols.row(basis[s][pos])) {
          Tuple t = basis[s];
          t[pos] = static_cast<std::uint16_t>(l);
          int sign = sort_sign(t, exterior);
          if (sign == 0) continue;
          m.add(where.at(t), s, sign > 0 ? x : Rational(-x));
        }
    p.action[ii] = std::move(m);
  }
  return p;
}

}  // namespace

RepresentationData exterior_power(const RepresentationData& r, std::size_t k) { return power(r, k, true); }

RepresentationData symmetric_power(const RepresentationData& r, std::size_t k) { return power(r, k, false); }

RepresentationData restrict_to_submodule(const RepresentationData& r, const std::vector<QVector>& basis,
                                         std::string label) {
  RepresentationData s;
  s.algebra = r.algebra;
  s.dim = basis.size();
  s.label = std::move(label);
  s.blocks = {{0, s.dim, s.label}};
  if (basis.empty()) {
    s.action.assign(r.action.size(), SparseQMatrix(0, 0));
    return s;
  }
  SpanCoordinates coords(basis, r.dim);
  s.action.assign(r.action.size(), SparseQMatrix(s.dim, s.dim));
  bool ok = true;
#pragma omp parallel for schedule(dynamic)
  for (long ii = 0; ii < static_cast<long>(r.action.size()); ++ii) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto c = coords.coordinates(r.action[ii].apply(basis[j]));
      if (!c) {
#pragma omp atomic write
        ok = false;
        break;
      }
      for (std::size_t i = 0; i < s.dim; ++i)
        if (sgn((*c)[i]) != 0) s.action[ii].row(i).emplace_back(static_cast<std::uint32_t>(j), (*c)[i]);
    }
  }
  if (!ok) throw Error("restrict_to_submodule: subspace is not invariant");
  return s;
}

std::vector<QMatrix> intertwiners(const RepresentationData& a, const RepresentationData& b) {
  // unknown f (b.dim x a.dim), index r * a.dim + c; equations f A_i - B_i f = 0
  const std::size_t na = a.dim, nb = b.dim;
  SparseEchelon e(na * nb);
  for (std::size_t i = 0; i < a.action.size(); ++i) {
    SparseQMatrix at = a.action[i].transpose();
    for (std::size_t r = 0; r < nb; ++r)
      for (std::size_t c = 0; c < na; ++c) {
        // (f A)_{rc} = sum_k f_{rk} A_{kc};  (B f)_{rc} = sum_k B_{rk} f_{kc}
        SparseVector row;
        for (const auto& [k, x] : at.row(c)) row.emplace_back(static_cast<std::uint32_t>(r * na + k), x);
        SparseVector other;
        for (const auto& [k, x] : b.action[i].row(r)) other.emplace_back(static_cast<std::uint32_t>(k * na + c), x);
        std::sort(other.begin(), other.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        axpy(row, -1, other);
        if (!row.empty()) e.add_row(std::move(row));
      }
  }
  std::vector<QMatrix> out;
  for (const auto& v : e.kernel()) {
    QMatrix f(nb, na);
    for (std::size_t r = 0; r < nb; ++r)
      for (std::size_t c = 0; c < na; ++c) f(r, c) = v[r * na + c];
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<QMatrix> invariant_forms(const RepresentationData& r, bool symmetric) {
  // A^T F + F A = 0 means F is an intertwiner V -> V* ; then impose F = +-F^T
  const std::size_t n = r.dim;
  SparseEchelon e(n * n);
  for (std::size_t i = 0; i < r.action.size(); ++i) {
    SparseQMatrix at = r.action[i].transpose();
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        // (A^T F)_{pq} = sum_k A_{kp} F_{kq};  (F A)_{pq} = sum_k F_{pk} A_{kq}
        SparseVector row;
        for (const auto& [k, x] : at.row(p)) row.emplace_back(static_cast<std::uint32_t>(k * n + q), x);
        std::sort(row.begin(), row.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
        SparseVector other;
        for (const auto& [k, x] : at.row(q)) other.emplace_back(static_cast<std::uint32_t>(p * n + k), x);
        axpy(row, 1, other);
        if (!row.empty()) e.add_row(std::move(row));
      }
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      e.add_row({{static_cast<std::uint32_t>(p * n + q), Rational(1)},
                 {static_cast<std::uint32_t>(q * n + p), Rational(symmetric ? -1 : 1)}});
  if (!symmetric)
    for (std::size_t p = 0; p < n; ++p) e.add_row({{static_cast<std::uint32_t>(p * n + p), Rational(1)}});
  std::vector<QMatrix> out;
  for (const auto& v : e.kernel()) {
    QMatrix f(n, n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) f(p, q) = v[p * n + q];
    out.push_back(std::move(f));
  }
  return out;
}

RepresentationData contraction_kernel(const RepresentationData& base, std::size_t k, const QMatrix& form) {
  if (form.rows() != base.dim || form.cols() != base.dim) throw Error("contraction_kernel: form has wrong size");
  for (std::size_t i = 0; i < base.action.size(); ++i) {
    QMatrix a = base.action[i].to_dense();
    if (!(a.transpose() * form + form * a).is_zero()) throw FormNotInvariant(i);
  }
  if (k < 2) throw Error("contraction_kernel: k must be >= 2");
  RepresentationData top = exterior_power(base, k);
  auto src = all_tuples(base.dim, k, true);
  auto dst = all_tuples(base.dim, k - 2, true);
  std::map<Tuple, std::size_t> where;
  for (std::size_t i = 0; i < dst.size(); ++i) where[dst[i]] = i;
  QMatrix c(dst.size(), src.size());
  for (std::size_t s = 0; s < src.size(); ++s)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        const Rational& w = form(src[s][a], src[s][b]);
        if (sgn(w) == 0) continue;
        Tuple t;
        for (std::size_t p = 0; p < k; ++p)
          if (p != a && p != b) t.push_back(src[s][p]);
        c(where.at(t), s) += ((a + b) % 2) ? w : Rational(-w);
      }
  return restrict_to_submodule(top, kernel_basis(c), "L" + std::to_string(k) + "_0(" + base.label + ")");
}

// ---------------------------------------------------------------------------

namespace {

// Clifford generators on the Fock space of subsets of {0..m-1} (bitmasks).
struct Fock {
  std::size_t m;
  std::size_t dim() const { return std::size_t{1} << m; }
  static int sign_before(std::size_t mask, std::size_t i) {
    return (std::popcount(mask & ((std::size_t{1} << i) - 1)) % 2) ? -1 : 1;
  }
  SparseQMatrix create(std::size_t i) const {
    SparseQMatrix a(dim(), dim());
    for (std::size_t s = 0; s < dim(); ++s)
      if (!(s >> i & 1)) a.add(s | (std::size_t{1} << i), s, sign_before(s, i));
    return a;
  }
  SparseQMatrix annihilate(std::size_t i) const {
    SparseQMatrix a(dim(), dim());
    for (std::size_t s = 0; s < dim(); ++s)
      if (s >> i & 1) a.add(s & ~(std::size_t{1} << i), s, sign_before(s, i));
    return a;
  }
  SparseQMatrix parity() const {
    SparseQMatrix a(dim(), dim());
    for (std::size_t s = 0; s < dim(); ++s) a.add(s, s, (std::popcount(s) % 2) ? -1 : 1);
    return a;
  }
};

}  // namespace

RepresentationData spin_rep(AlgebraPtr so_n, std::optional<Chirality> half) {
  if (!so_n->classical || so_n->classical->first != Family::so)
    throw Error("spin_rep: algebra is not a classical so_n");
  const std::size_t n = so_n->classical->second;
  if (n < 3) throw Error("spin_rep: n must be >= 3");
  if (n % 2 == 1 && half) throw Error("spin_rep: chirality requested for odd n");
  const std::size_t m = n / 2;
  Fock f{m};
  // c(e_i) = a_i^+, c(e_{n-1-i}) = 2 a_i, c(e_m) = parity for odd n; then
  // {c(v), c(w)} = 2 B(v, w) with B the antidiagonal form.
  std::vector<SparseQMatrix> c(n);
  for (std::size_t i = 0; i < m; ++i) {
    c[i] = f.create(i);
    c[n - 1 - i] = f.annihilate(i).scaled(2);
  }
  if (n % 2) c[m] = f.parity();
  RepresentationData r;
  r.algebra = so_n;
  r.dim = f.dim();
  const Rational half_q(1, 2);
  for (const auto& x : so_n->matrices()) {
    // x = E_ij - E_{n-1-j, n-1-i} = e_i ^ e_{n-1-j}, acting as c(e_i) c(e_{n-1-j}) / 2 - B / 2
    std::size_t bi = n, bj = n;
    for (std::size_t a = 0; a < n && bi == n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (x(a, b) == 1) {
          bi = a;
          bj = b;
          break;
        }
    if (bi == n) throw Error("spin_rep: unexpected basis matrix");
    SparseQMatrix rho = (c[bi] * c[n - 1 - bj]).scaled(half_q);
    if (bi == bj)
      for (std::size_t s = 0; s < r.dim; ++s) rho.add(s, s, -half_q);
    r.action.push_back(std::move(rho));
  }
  r.label = "spin" + std::to_string(n);
  if (half) {
    std::vector<QVector> basis;
    for (std::size_t s = 0; s < r.dim; ++s)
      if ((std::popcount(s) % 2 == 0) == (*half == Chirality::even)) {
        QVector v(r.dim);
        v[s] = 1;
        basis.push_back(std::move(v));
      }
    return restrict_to_submodule(r, basis, r.label + (*half == Chirality::even ? "+" : "-"));
  }
  r.blocks = {{0, r.dim, r.label}};
  return r;
}

RepresentationData spin_rep(std::size_t n, std::optional<Chirality> half) {
  return spin_rep(share(classical_algebra(Family::so, n)), half);
}

// ---------------------------------------------------------------------------

ModuleSpec ModuleSpec::parse(const std::string& text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 2, "\xcf\x86") == 0) {  // the Greek letter phi in UTF-8
      s += "phi";
      ++i;
    } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      s += text[i];
    }
  }
  ModuleSpec spec;
  if (s.empty() || s == "0") return spec;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t plus = s.find('+', pos);
    std::string term = s.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
    if (term.empty()) throw Error("module spec: empty term in '" + text + "'");
    std::size_t k = 0;
    while (k < term.size() && std::isdigit(static_cast<unsigned char>(term[k]))) ++k;
    std::size_t mult = k ? std::stoul(term.substr(0, k)) : 1;
    std::string label = term.substr(k);
    if (label.empty()) throw Error("module spec: missing weight in '" + text + "'");
    if (mult > 0) spec.summands.emplace_back(label, mult);
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return spec;
}

std::string ModuleSpec::to_string() const {
  std::string out;
  for (const auto& [label, mult] : summands) {
    if (!out.empty()) out += "+";
    if (mult != 1) out += std::to_string(mult);
    out += label;
  }
  return out.empty() ? "0" : out;
}

RepresentationData build_constructor(AlgebraPtr l, const std::string& constructor) {
  if (constructor == "std") return standard_rep(l);
  if (constructor == "trivial") return trivial_rep(l, 1);
  if (constructor == "adjoint") return adjoint_rep(l);
  if (constructor == "spin") return spin_rep(l);
  if (constructor == "halfspin_even") return spin_rep(l, Chirality::even);
  if (constructor == "halfspin_odd") return spin_rep(l, Chirality::odd);
  if (constructor == "wedge2") return exterior_power(standard_rep(l), 2);
  if (constructor == "sym2") return symmetric_power(standard_rep(l), 2);
  if (constructor == "wedge2_0" || constructor == "wedge3_0") {
    if (!l->classical || l->classical->first != Family::sp)
      throw Error("primitive exterior powers are only built for sp");
    std::size_t k = constructor[5] - '0';
    return contraction_kernel(standard_rep(l), k, classical_form(Family::sp, l->classical->second));
  }
  throw Error("unknown module constructor '" + constructor + "'");
}

RepresentationData build_module(AlgebraPtr l, const ModuleSpec& spec, const WeightDictionary& dictionary) {
  std::vector<RepresentationData> parts;
  for (const auto& [label, mult] : spec.summands) {
    auto it = dictionary.find(label);
    if (it == dictionary.end()) throw Error("unknown weight label '" + label + "'");
    RepresentationData one = build_constructor(l, it->second);
    one.label = label;
    for (std::size_t c = 0; c < mult; ++c) {
      RepresentationData copy = one;
      copy.blocks = {{0, one.dim, mult > 1 ? label + "#" + std::to_string(c + 1) : label}};
      parts.push_back(std::move(copy));
    }
  }
  if (parts.empty()) return trivial_rep(l, 0);
  return direct_sum(parts);
}

}  // namespace lieinv
