#include "lieinv/multipoly.hpp"

#include <sstream>

namespace lieinv {

unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

namespace {

void fill_monomials(std::size_t pos, unsigned left, Monomial& cur, std::vector<Monomial>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = static_cast<std::uint8_t>(left);
    out.push_back(cur);
    return;
  }
  for (int e = static_cast<int>(left); e >= 0; --e) {
    cur[pos] = static_cast<std::uint8_t>(e);
    fill_monomials(pos + 1, left - e, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t vars, unsigned degree) {
  std::vector<Monomial> out;
  if (degree > 255) throw Error("monomial degree exceeds 255");
  if (vars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Monomial cur(vars, 0);
  fill_monomials(0, degree, cur, out);
  return out;
}

MultiPoly MultiPoly::constant(std::size_t vars, const Rational& c) {
  MultiPoly p(vars);
  p.add_term(Monomial(vars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t vars, std::size_t j) {
  if (j >= vars) throw Error("variable index out of range");
  MultiPoly p(vars);
  Monomial m(vars, 0);
  m[j] = 1;
  p.add_term(m, 1);
  return p;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != vars_) throw Error("monomial has the wrong number of variables");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

Rational MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.vars_ != vars_) throw Error("polynomials over different variable sets");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  r += o;
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + o.scaled(-1); }

MultiPoly MultiPoly::scaled(const Rational& s) const {
  MultiPoly r(vars_);
  if (sgn(s) == 0) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * s);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (o.vars_ != vars_) throw Error("polynomials over different variable sets");
  MultiPoly r(vars_);
  Monomial m(vars_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      for (std::size_t j = 0; j < vars_; ++j) {
        unsigned e = a[j] + b[j];
        if (e > 255) throw Error("monomial degree exceeds 255");
        m[j] = static_cast<std::uint8_t>(e);
      }
      r.add_term(m, ca * cb);
    }
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(vars_, 1), base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

MultiPoly MultiPoly::partial(std::size_t j) const {
  MultiPoly r(vars_);
  for (const auto& [mono, c] : terms_) {
    if (mono[j] == 0) continue;
    Monomial m = mono;
    Rational k = c * m[j];
    --m[j];
    r.add_term(m, k);
  }
  return r;
}

Rational MultiPoly::evaluate(const QVector& x) const {
  if (x.size() != vars_) throw Error("evaluation point has the wrong length");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t j = 0; j < vars_ && sgn(t) != 0; ++j)
      for (unsigned e = 0; e < m[j]; ++e) t *= x[j];
    total += t;
  }
  return total;
}

int MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

std::optional<std::vector<unsigned>> MultiPoly::multidegree(const std::vector<std::size_t>& block_of,
                                                            std::size_t blocks) const {
  std::optional<std::vector<unsigned>> deg;
  for (const auto& [m, c] : terms_) {
    std::vector<unsigned> d(blocks, 0);
    for (std::size_t j = 0; j < vars_; ++j) d[block_of[j]] += m[j];
    if (!deg) deg = d;
    else if (*deg != d) return std::nullopt;
  }
  if (!deg) deg = std::vector<unsigned>(blocks, 0);
  return deg;
}

MultiPoly MultiPoly::component(const std::vector<bool>& mask, unsigned d) const {
  MultiPoly r(vars_);
  for (const auto& [m, c] : terms_) {
    unsigned k = 0;
    for (std::size_t j = 0; j < vars_; ++j)
      if (mask[j]) k += m[j];
    if (k == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
  }
  return r;
}

MultiPoly MultiPoly::substitute_linear(const std::vector<SparseVector>& images, std::size_t new_vars) const {
  if (images.size() != vars_) throw Error("substitution needs one image per variable");
  std::vector<MultiPoly> lin;
  for (const auto& img : images) {
    MultiPoly p(new_vars);
    for (const auto& [k, c] : img) p += variable(new_vars, k).scaled(c);
    lin.push_back(std::move(p));
  }
  MultiPoly r(new_vars);
  std::map<std::pair<std::size_t, unsigned>, MultiPoly> powers;
  for (const auto& [m, c] : terms_) {
    MultiPoly t = constant(new_vars, c);
    for (std::size_t j = 0; j < vars_ && !t.is_zero(); ++j) {
      if (m[j] == 0) continue;
      auto key = std::make_pair(j, static_cast<unsigned>(m[j]));
      auto it = powers.find(key);
      if (it == powers.end()) it = powers.emplace(key, lin[j].pow(m[j])).first;
      t = t * it->second;
    }
    r += t;
  }
  return r;
}

MultiPoly MultiPoly::substitute_affine(const std::vector<SparseVector>& images, const QVector& shift,
                                       std::size_t new_vars) const {
  if (shift.size() != vars_) throw Error("substitution needs one shift per variable");
  // the extra variable stands for 1
  std::vector<SparseVector> ext = images;
  for (std::size_t j = 0; j < vars_; ++j)
    if (sgn(shift[j]) != 0) ext[j].emplace_back(static_cast<std::uint32_t>(new_vars), shift[j]);
  MultiPoly wide = substitute_linear(ext, new_vars + 1), r(new_vars);
  for (const auto& [m, c] : wide.terms_) r.add_term(Monomial(m.begin(), m.end() - 1), c);
  return r;
}

MultiPoly MultiPoly::relabel(const std::vector<std::size_t>& target, std::size_t new_vars) const {
  if (target.size() != vars_) throw Error("relabel needs one target per variable");
  MultiPoly r(new_vars);
  for (const auto& [m, c] : terms_) {
    Monomial x(new_vars, 0);
    for (std::size_t j = 0; j < vars_; ++j) {
      if (m[j] == 0) continue;
      if (target[j] >= new_vars) throw Error("relabel target out of range");
      x[target[j]] = static_cast<std::uint8_t>(x[target[j]] + m[j]);
    }
    r.add_term(x, c);
  }
  return r;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = abs(c);
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool unit = total_degree(m) > 0 && a == 1;
    if (!unit) os << a.get_str();
    bool need_star = !unit;
    for (std::size_t j = 0; j < vars_; ++j) {
      if (m[j] == 0) continue;
      if (need_star) os << "*";
      os << (j < names.size() ? names[j] : "x" + std::to_string(j + 1));
      if (m[j] > 1) os << "^" << static_cast<unsigned>(m[j]);
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

}  // namespace lieinv
