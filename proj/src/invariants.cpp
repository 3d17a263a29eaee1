#include "lieinv/invariants.hpp"

#include <algorithm>
#include <exception>
#include <sstream>

namespace lieinv {

std::string to_string(const MultiDegree& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

MultiPoly lie_derivative(const LieAlgebraData& l, std::size_t xi, const MultiPoly& p) {
  if (p.vars() != l.dim()) throw Error("lie_derivative: polynomial and algebra dimensions differ");
  MultiPoly r(p.vars());
  for (const auto& [mono, c] : p.terms()) {
    Monomial m = mono;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      const SparseVector& img = l.bracket(xi, j);
      if (img.empty()) continue;
      Rational f = c * m[j];
      --m[j];
      for (const auto& [k, a] : img) {
        ++m[k];
        r.add_term(m, f * a);
        --m[k];
      }
      ++m[j];
    }
  }
  return r;
}

MultiPoly lie_derivative(const SemiDirectProduct& s, std::size_t xi, const MultiPoly& p) {
  return lie_derivative(*s.total, xi, p);
}

bool is_invariant(const SemiDirectProduct& s, const MultiPoly& p) {
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (!lie_derivative(s, i, p).is_zero()) return false;
  return true;
}

namespace {

bool is_diagonal(const LieAlgebraData& l, std::size_t i) {
  for (std::size_t j = 0; j < l.dim(); ++j) {
    const auto& b = l.bracket(i, j);
    if (b.size() > 1 || (b.size() == 1 && b[0].first != j)) return false;
  }
  return true;
}

std::size_t closure_rank(const LieAlgebraData& l, const std::vector<std::size_t>& gens, SparseEchelon& ech) {
  ech = SparseEchelon(l.dim());
  std::vector<SparseVector> queue;
  for (auto g : gens) {
    SparseVector e{{static_cast<std::uint32_t>(g), Rational(1)}};
    if (ech.add_row(e)) queue.push_back(e);
  }
  for (std::size_t q = 0; q < queue.size() && ech.rank() < l.dim(); ++q)
    for (auto g : gens) {
      SparseVector w = l.bracket(SparseVector{{static_cast<std::uint32_t>(g), Rational(1)}}, queue[q]);
      if (!w.empty() && ech.add_row(w)) queue.push_back(std::move(w));
    }
  return ech.rank();
}

std::size_t saturating_binomial(std::size_t n, std::size_t k) {
  // C(n, k) with saturation at SIZE_MAX
  Integer r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= static_cast<unsigned long>(n - k + i);
    r /= static_cast<unsigned long>(i);
  }
  return r.fits_ulong_p() ? r.get_ui() : SIZE_MAX;
}

struct Component {
  std::vector<Monomial> columns;
  std::map<Monomial, std::uint32_t> index;
};

// Monomials of multidegree d of weight zero for every diagonal basis element.
Component build_component(const SemiDirectProduct& s, const MultiDegree& d, const std::vector<std::size_t>& diag) {
  const std::size_t n = s.dim();
  std::vector<std::vector<std::size_t>> vars(s.blocks());
  for (std::size_t j = 0; j < n; ++j) vars[s.block_of[j]].push_back(j);
  std::vector<std::vector<Rational>> weights;
  for (auto i : diag) {
    std::vector<Rational> w(n);
    for (std::size_t j = 0; j < n; ++j)
      if (!s.total->bracket(i, j).empty()) w[j] = s.total->bracket(i, j)[0].second;
    weights.push_back(std::move(w));
  }
  std::vector<Monomial> cur{Monomial(n, 0)};
  for (std::size_t b = 0; b < s.blocks(); ++b) {
    auto local = monomials_of_degree(vars[b].size(), d[b]);
    std::vector<Monomial> next;
    next.reserve(cur.size() * local.size());
    for (const auto& m : cur)
      for (const auto& e : local) {
        Monomial x = m;
        for (std::size_t k = 0; k < e.size(); ++k) x[vars[b][k]] = e[k];
        next.push_back(std::move(x));
      }
    cur = std::move(next);
  }
  Component c;
  for (auto& m : cur) {
    bool zero = true;
    for (const auto& w : weights) {
      Rational t = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (m[j]) t += w[j] * m[j];
      if (sgn(t) != 0) {
        zero = false;
        break;
      }
    }
    if (zero) c.columns.push_back(std::move(m));
  }
  std::sort(c.columns.begin(), c.columns.end(), GrlexLess{});
  for (std::uint32_t k = 0; k < c.columns.size(); ++k) c.index.emplace(c.columns[k], k);
  return c;
}

}  // namespace

GeneratingSet generating_set(const LieAlgebraData& l) {
  GeneratingSet g;
  for (std::size_t i = 0; i < l.dim(); ++i)
    if (is_diagonal(l, i)) g.diagonal.push_back(i);
  std::vector<std::size_t> all = g.diagonal;
  SparseEchelon ech(l.dim());
  closure_rank(l, all, ech);
  for (std::size_t i = 0; i < l.dim() && ech.rank() < l.dim(); ++i) {
    if (ech.reduce(SparseVector{{static_cast<std::uint32_t>(i), Rational(1)}}).empty()) continue;
    all.push_back(i);
    g.others.push_back(i);
    closure_rank(l, all, ech);
  }
  return g;
}

std::size_t component_size(const SemiDirectProduct& s, const MultiDegree& d) {
  if (d.size() != s.blocks()) throw Error("multidegree has " + std::to_string(d.size()) + " entries, expected " +
                                          std::to_string(s.blocks()));
  std::vector<std::size_t> vars(s.blocks(), 0);
  for (auto b : s.block_of) ++vars[b];
  std::size_t total = 1;
  for (std::size_t b = 0; b < d.size(); ++b) {
    std::size_t c = vars[b] == 0 ? (d[b] == 0 ? 1 : 0) : saturating_binomial(vars[b] + d[b] - 1, d[b]);
    if (c != 0 && total > SIZE_MAX / c) return SIZE_MAX;
    total *= c;
  }
  return total;
}

std::vector<MultiPoly> invariant_space(const SemiDirectProduct& s, const MultiDegree& d, const InvariantOptions& opt) {
  std::size_t count = component_size(s, d);
  if (count > opt.monomial_cap) throw ComponentTooLarge(count);
  const std::size_t n = s.dim();
  if (count == 0) return {};
  GeneratingSet gens = generating_set(*s.total);
  Component comp = build_component(s, d, gens.diagonal);
  if (comp.columns.empty()) return {};
  const std::size_t cols = comp.columns.size();
  // column order for elimination: increasing grlex, so the kernel basis comes
  // out reduced with the largest free monomial as leading term
  auto col_of = [&](std::uint32_t k) -> std::uint32_t {
    return opt.reverse_order ? static_cast<std::uint32_t>(cols - 1 - k) : k;
  };
  SparseEchelon ech(cols);
  for (auto xi : gens.others) {
    std::map<Monomial, SparseVector> rows;
    for (std::uint32_t k = 0; k < cols; ++k) {
      MultiPoly mono(n);
      mono.add_term(comp.columns[k], 1);
      MultiPoly img = lie_derivative(*s.total, xi, mono);
      for (const auto& [m, c] : img.terms()) rows[m].emplace_back(col_of(k), c);
    }
    for (auto& [m, row] : rows) {
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      ech.add_row(std::move(row));
      if (ech.rank() == cols) return {};
    }
  }
  std::vector<MultiPoly> basis;
  for (const auto& v : ech.kernel()) {
    MultiPoly p(n);
    for (std::uint32_t c = 0; c < cols; ++c)
      if (sgn(v[c]) != 0) p.add_term(comp.columns[col_of(c)], v[c]);
    if (!is_invariant(s, p)) throw Error("invariant_space: kernel element fails the derivation check");
    basis.push_back(std::move(p));
  }
  return basis;
}

bool GeneratorLedger::complete() const {
  for (const auto& e : entries)
    if (e.too_large || e.incomplete) return false;
  return true;
}

std::vector<MultiPoly> GeneratorLedger::generators() const {
  std::vector<MultiPoly> out;
  for (const auto& e : entries)
    for (const auto& g : e.generators) out.push_back(g);
  return out;
}

std::vector<unsigned> GeneratorLedger::generator_degrees() const {
  std::vector<unsigned> out;
  for (const auto& e : entries) {
    unsigned t = 0;
    for (auto x : e.degree) t += x;
    for (std::size_t k = 0; k < e.new_generators; ++k) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string GeneratorLedger::to_string() const {
  std::ostringstream os;
  os << "multidegree  monomials  invariants  decomposable  new\n";
  for (const auto& e : entries) {
    if (e.too_large) {
      os << lieinv::to_string(e.degree) << "  " << e.monomials << "  component too large\n";
      continue;
    }
    if (e.invariant_dim == 0) continue;
    os << lieinv::to_string(e.degree) << "  " << e.monomials << "  " << e.invariant_dim << "  " << e.decomposable_dim
       << "  " << e.new_generators << (e.incomplete ? "  (incomplete)" : "") << "\n";
  }
  return os.str();
}

namespace {

void multidegrees(std::size_t blocks, unsigned total, MultiDegree& cur, std::size_t pos,
                  std::vector<MultiDegree>& out) {
  if (pos + 1 == blocks) {
    cur[pos] = total;
    out.push_back(cur);
    return;
  }
  for (int e = static_cast<int>(total); e >= 0; --e) {
    cur[pos] = e;
    multidegrees(blocks, total - e, cur, pos + 1, out);
  }
}

}  // namespace

GeneratorLedger generator_ledger(const SemiDirectProduct& s, unsigned cap, const InvariantOptions& opt) {
  GeneratorLedger led;
  led.cap = cap;
  for (unsigned t = 1; t <= cap; ++t) {
    MultiDegree cur(s.blocks(), 0);
    std::vector<MultiDegree> ds;
    multidegrees(s.blocks(), t, cur, 0, ds);
    for (auto& d : ds) {
      LedgerEntry e;
      e.degree = d;
      led.entries.push_back(std::move(e));
    }
  }
  std::vector<std::vector<MultiPoly>> spaces(led.entries.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < led.entries.size(); ++k) {
    auto& e = led.entries[k];
    try {
      e.monomials = component_size(s, e.degree);
      spaces[k] = invariant_space(s, e.degree, opt);
      e.invariant_dim = spaces[k].size();
    } catch (const ComponentTooLarge&) {
      e.too_large = true;
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::map<MultiDegree, std::size_t> where;
  for (std::size_t k = 0; k < led.entries.size(); ++k) where[led.entries[k].degree] = k;
  for (std::size_t k = 0; k < led.entries.size(); ++k) {
    auto& e = led.entries[k];
    if (e.too_large || e.invariant_dim == 0) continue;
    std::map<Monomial, std::uint32_t, GrlexLess> support;
    for (const auto& p : spaces[k])
      for (const auto& [m, c] : p.terms()) support.emplace(m, 0);
    std::uint32_t next = 0;
    for (auto& [m, idx] : support) idx = next++;
    auto sparse = [&](const MultiPoly& p) {
      SparseVector v;
      for (const auto& [m, c] : p.terms()) {
        auto it = support.find(m);
        if (it == support.end()) throw Error("generator_ledger: product leaves the invariant component");
        v.emplace_back(it->second, c);
      }
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      return v;
    };
    SparseEchelon ech(support.size());
    for (std::size_t a = 0; a < k; ++a) {
      const auto& d1 = led.entries[a].degree;
      MultiDegree d2(d1.size());
      bool fits = true;
      for (std::size_t b = 0; b < d1.size(); ++b) {
        if (d1[b] > e.degree[b]) fits = false;
        else d2[b] = e.degree[b] - d1[b];
      }
      if (!fits) continue;
      auto it = where.find(d2);
      if (it == where.end() || it->second < a) continue;  // each unordered pair once
      const std::size_t other = it->second;
      if (led.entries[a].too_large || led.entries[other].too_large) {
        e.incomplete = true;
        continue;
      }
      for (std::size_t i = 0; i < spaces[a].size(); ++i)
        for (std::size_t j = (a == other ? i : 0); j < spaces[other].size(); ++j)
          ech.add_row(sparse(spaces[a][i] * spaces[other][j]));
    }
    e.decomposable_dim = ech.rank();
    for (const auto& p : spaces[k])
      if (ech.add_row(sparse(p))) e.generators.push_back(p);
    e.new_generators = e.generators.size();
    if (e.new_generators != e.invariant_dim - e.decomposable_dim)
      throw Error("generator_ledger: inconsistent decomposable part at " + lieinv::to_string(e.degree));
  }
  return led;
}

std::size_t jacobian_rank(const std::vector<MultiPoly>& polys, std::size_t vars, const SampleConfig& cfg) {
  if (polys.empty()) return 0;
  std::vector<std::vector<MultiPoly>> grad(polys.size());
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = 0; j < vars; ++j) grad[i].push_back(polys[i].partial(j));
  std::size_t best = 0;
  for (int r = 0; r <= cfg.rounds && best < polys.size(); ++r) {
    QVector x = sample_vector(cfg, vars, r, 21);
    QMatrix jac(polys.size(), vars);
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (std::size_t j = 0; j < vars; ++j) jac(i, j) = grad[i][j].evaluate(x);
    best = std::max(best, rank(jac));
  }
  return best;
}

bool jacobian_independent(const std::vector<MultiPoly>& polys, const SemiDirectProduct& s, const SampleConfig& cfg) {
  return jacobian_rank(polys, s.dim(), cfg) == polys.size();
}

bool FreenessVerdict::passed() const {
  return all_invariant && homogeneous && independent && count_matches() && degree_sum_matches() &&
         codim2.all_hold();
}

std::string FreenessVerdict::to_string() const {
  std::ostringstream os;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  os << "invariant: " << yn(all_invariant) << "\n";
  os << "homogeneous: " << yn(homogeneous) << "\n";
  os << "algebraically independent: " << yn(independent) << "\n";
  os << "count: " << count << (count_matches() ? " = " : " != ") << "ind " << index << "\n";
  os << "degree sum: ";
  for (std::size_t i = 0; i < degrees.size(); ++i) os << (i ? " + " : "") << degrees[i];
  if (degrees.empty()) os << "0";
  os << " = " << degree_sum << (degree_sum_matches() ? " = " : " != ") << "b " << b << "\n";
  os << "codim-2: " << codim2.summary() << "\n";
  os << "verdict: " << (passed() ? "free" : "not established") << "\n";
  return os.str();
}

FreenessVerdict freeness_checklist(const SemiDirectProduct& s, const std::vector<MultiPoly>& candidates,
                                   const SampleConfig& cfg, const Codim2Evidence& codim2) {
  FreenessVerdict v;
  v.all_invariant = true;
  v.homogeneous = true;
  for (const auto& p : candidates) {
    v.all_invariant = v.all_invariant && is_invariant(s, p);
    int deg = p.degree();
    bool hom = deg > 0;
    for (const auto& [m, c] : p.terms()) hom = hom && static_cast<int>(total_degree(m)) == deg;
    v.homogeneous = v.homogeneous && hom;
    v.degrees.push_back(deg < 0 ? 0 : static_cast<unsigned>(deg));
    v.degree_sum += v.degrees.back();
  }
  v.independent = jacobian_independent(candidates, s, cfg);
  v.count = candidates.size();
  v.index = index(*s.total, cfg).value;
  v.b = b_of(*s.total, cfg).value;
  v.codim2 = codim2;
  return v;
}

}  // namespace lieinv
