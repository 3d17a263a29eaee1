#include "lieinv/semidirect.hpp"

#include <sstream>

namespace lieinv {

SemiDirectProduct semidirect(const RepresentationData& rep, bool split_blocks) {
  SemiDirectProduct s;
  s.base = rep.algebra;
  s.rep = rep;
  const std::size_t q = rep.algebra->dim(), v = rep.dim;
  std::vector<std::string> labels = rep.algebra->labels();
  for (std::size_t a = 0; a < v; ++a) labels.push_back("v" + std::to_string(a + 1));
  LieAlgebraData t(std::move(labels));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j) t.set_bracket(i, j, rep.algebra->bracket(i, j));
  for (std::size_t i = 0; i < q; ++i) {
    SparseQMatrix cols = rep.action[i].transpose();  // row a = A_i v_a
    for (std::size_t a = 0; a < v; ++a) {
      SparseVector img = cols.row(a);
      for (auto& e : img) e.first += static_cast<std::uint32_t>(q);
      if (!img.empty()) t.set_bracket(i, q + a, img);
    }
  }
  s.total = share(std::move(t));
  s.block_of.assign(q + v, 0);
  s.block_names = {"q"};
  if (v > 0) {
    if (split_blocks && !rep.blocks.empty()) {
      for (const auto& b : rep.blocks) {
        s.block_names.push_back(b.label);
        for (std::size_t a = 0; a < b.dim; ++a) s.block_of[q + b.offset + a] = s.block_names.size() - 1;
      }
    } else {
      s.block_names.push_back(rep.label);
      for (std::size_t a = 0; a < v; ++a) s.block_of[q + a] = 1;
    }
  }
  return s;
}

namespace {

// column i = A_i^T x, so the kernel is the stabiliser of x in V*
QMatrix orbit_map(const SemiDirectProduct& s, const QVector& x) {
  if (x.size() != s.v_dim()) throw Error("point of V* has the wrong length");
  QMatrix m(s.v_dim(), s.q_dim());
  for (std::size_t i = 0; i < s.q_dim(); ++i) {
    const SparseQMatrix& a = s.rep.action[i];
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (const auto& [c, val] : a.row(r))
        if (sgn(x[r]) != 0) m(c, i) += val * x[r];
  }
  return m;
}

}  // namespace

std::size_t orbit_dim_V(const SemiDirectProduct& s, const QVector& x) { return rank(orbit_map(s, x)); }

StabiliserResult stabiliser_in_V(const SemiDirectProduct& s, const QVector& x) {
  StabiliserResult r;
  r.point = x;
  auto ker = kernel_basis(orbit_map(s, x));
  r.algebra = subalgebra(*s.base, ker, &r.basis);
  r.dim_orbit = s.q_dim() - r.basis.size();
  return r;
}

GenericPoint generic_point_V(const SemiDirectProduct& s, const SampleConfig& cfg) {
  auto g = generic_max_rank(cfg, s.v_dim(), [&](const QVector& x) { return orbit_dim_V(s, x); }, 1);
  return {g.point, g.rank, g.stabilised};
}

RaisResult rais_index(const SemiDirectProduct& s, const SampleConfig& cfg) {
  RaisResult r;
  auto gp = generic_point_V(s, cfg);
  auto st = stabiliser_in_V(s, gp.point);
  auto ind = index(st.algebra, cfg);
  r.point = gp.point;
  r.stabiliser_dim = st.algebra.dim();
  r.stabiliser_index = ind.value;
  r.value = s.v_dim() - st.dim_orbit + ind.value;
  r.stabilised = gp.stabilised && ind.stabilised;
  return r;
}

StabiliserResult stabiliser_full(const SemiDirectProduct& s, const QVector& xi) {
  StabiliserResult r;
  r.point = xi;
  auto ker = kernel_basis(kirillov_form(*s.total, xi));
  r.algebra = subalgebra(*s.total, ker, &r.basis);
  r.dim_orbit = s.dim() - r.basis.size();
  return r;
}

std::size_t split_stabiliser_formula(const SemiDirectProduct& s, const QVector& gamma, const QVector& y) {
  if (gamma.size() != s.q_dim()) throw Error("split_stabiliser_formula: gamma has the wrong length");
  auto st = stabiliser_in_V(s, y);
  QVector bar(st.basis.size());
  for (std::size_t k = 0; k < st.basis.size(); ++k)
    for (std::size_t i = 0; i < gamma.size(); ++i) bar[k] += gamma[i] * st.basis[k][i];
  std::size_t stab = st.algebra.dim() - rank(kirillov_form(st.algebra, bar));
  return stab + s.v_dim() - st.dim_orbit;
}

Codim2Line codim2_line_test(const LieAlgebraData& l, const SampleConfig& cfg) {
  Codim2Line out;
  auto ind = index(l, cfg);
  const std::size_t d = l.dim(), r = d - ind.value;
  out.generic_rank = r;
  if (r == 0) {
    out.holds = true;
    out.gcd = {1};
    return out;
  }
  for (int attempt = 0; attempt < cfg.rounds; ++attempt) {
    QMatrix b0 = kirillov_form(l, sample_vector(cfg, d, 2 * attempt, 7));
    QMatrix b1 = kirillov_form(l, sample_vector(cfg, d, 2 * attempt + 1, 7));
    std::vector<UPoly> dets;
    for (std::uint64_t p = 0; p < 2; ++p) {
      QMatrix proj(r, d);
      for (std::size_t i = 0; i < r; ++i) {
        auto row = sample_vector(cfg, d, 1000 * attempt + 10 * p + i, 8);
        for (std::size_t j = 0; j < d; ++j) proj(i, j) = row[j];
      }
      QMatrix pt = proj.transpose();
      QMatrix c0 = proj * b0 * pt, c1 = proj * b1 * pt;
      UPoly poly = leading_graded_component(
          [&](const Rational& t) -> Rational { return determinant(c0 + c1.scaled(t)); }, r);
      trim(poly);
      dets.push_back(std::move(poly));
    }
    if (dets[0].empty() || dets[1].empty()) continue;
    out.gcd = upoly_gcd(dets[0], dets[1]);
    out.holds = degree(out.gcd) == 0;
    return out;
  }
  return out;
}

bool Codim2Evidence::all_hold() const {
  if (!criterion_i) return false;
  for (const auto& d : divisors)
    if (!d.holds) return false;
  return true;
}

std::string Codim2Evidence::summary() const {
  std::ostringstream os;
  os << (partial ? "partial evidence" : "evidence") << ": criterion (i) " << (criterion_i ? "holds" : "fails");
  for (const auto& d : divisors)
    os << "; divisor point: " << d.lhs << (d.holds ? " = " : " != ") << d.rhs;
  return os.str();
}

Codim2Evidence codim2_evidence(const SemiDirectProduct& s, const std::vector<QVector>& divisor_points,
                               const SampleConfig& cfg) {
  Codim2Evidence ev;
  auto gp = generic_point_V(s, cfg);
  auto st = stabiliser_in_V(s, gp.point);
  ev.criterion_i = codim2_line_test(st.algebra, cfg).holds;
  ev.index_s = index(*s.total, cfg).value;
  for (const auto& y : divisor_points) {
    bool zero = true;
    for (const auto& c : y) zero = zero && sgn(c) == 0;
    if (zero) continue;
    auto sy = stabiliser_in_V(s, y);
    DivisorVerdict v;
    v.point = y;
    v.lhs = index(sy.algebra, cfg).value + s.v_dim() - sy.dim_orbit;
    v.rhs = ev.index_s;
    v.holds = v.lhs == v.rhs;
    ev.divisors.push_back(std::move(v));
  }
  ev.partial = ev.divisors.empty();
  return ev;
}

}  // namespace lieinv
