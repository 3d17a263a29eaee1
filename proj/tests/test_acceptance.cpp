// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include "lieinv/atlas.hpp"

using namespace lieinv;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "  (" << std::fixed
            << std::setprecision(1) << secs << " s)" << std::endl;
}

const CheckResult* find_check(const RowReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.check == name) return &c;
  return nullptr;
}

SemiDirectProduct std_product(Family f, std::size_t n) {
  return semidirect(standard_rep(share(classical_algebra(f, n))));
}

std::vector<ContractionSpec> contraction_battery() {
  return {{ContractionKind::so_so, 3, 1}, {ContractionKind::so_so, 3, 2}, {ContractionKind::so_so, 4, 1},
          {ContractionKind::so_so, 2, 2}, {ContractionKind::sp_sp, 2, 2}, {ContractionKind::sp_sp, 4, 2},
          {ContractionKind::sl_sp, 4, 0}, {ContractionKind::so_gl, 2, 0}, {ContractionKind::so_gl, 3, 0}};
}

std::string degree_list(const std::vector<unsigned>& d) {
  std::string s = "{";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + "}";
}

}  // namespace

int main() {
  const SampleConfig cfg;
  const Atlas atlas = load_atlas(default_atlas_path(), cfg);
  SuiteConfig sc;
  sc.verify.cfg = cfg;
  sc.properties = false;
  SuiteReport suite;

  report(1, [&] {
    suite = run_suite(atlas, sc);
    std::size_t failed = 0, skipped = 0;
    std::string first;
    for (const auto& r : suite.rows) {
      if (!r.pass()) {
        ++failed;
        if (first.empty()) first = " first failure " + r.row;
      }
      for (const auto& c : r.checks) skipped += c.skipped;
    }
    bool ok = failed == 0 && skipped == 0 && suite.rows.size() == atlas.rows.size();
    return Outcome{ok, "table regression: " + std::to_string(suite.rows.size()) + " rows, " + std::to_string(failed) +
                           " failed, " + std::to_string(skipped) + " skipped" + first};
  });

  report(2, [&] {
    std::size_t cases = 0, agree = 0;
    for (const auto& r : suite.rows) {
      auto* d = find_check(r, "index_direct");
      auto* k = find_check(r, "index_rais");
      ++cases;
      agree += d && k && !d->skipped && d->computed == k->computed && d->computed.find("error") == std::string::npos;
    }
    std::vector<SemiDirectProduct> extra;
    for (auto [f, n] : std::vector<std::pair<Family, std::size_t>>{
             {Family::sl, 2}, {Family::so, 3}, {Family::sl, 3}, {Family::sp, 4}, {Family::so, 5}})
      extra.push_back(takiff(classical_algebra(f, n)));
    for (const auto& spec : contraction_battery()) extra.push_back(z2_contraction(spec).s);
    for (const auto& s : extra) {
      auto d = index(*s.total, cfg);
      auto k = rais_index(s, cfg);
      ++cases;
      agree += d.stabilised && k.stabilised && d.value == k.value;
    }
    return Outcome{cases >= 50 && agree == cases,
                   "direct index = Rais index on " + std::to_string(agree) + "/" + std::to_string(cases) + " products"};
  });

  report(3, [&] {
    struct Case {
      std::string name;
      SemiDirectProduct s;
      unsigned cap;
      std::vector<unsigned> want;
    };
    std::vector<Case> cases;
    cases.push_back({"sp2 x| k^2", std_product(Family::sp, 2), 4, {3}});
    cases.push_back({"sp4 x| k^4", std_product(Family::sp, 4), 5, {3, 5}});
    cases.push_back({"Takiff sl2", takiff(classical_algebra(Family::sl, 2)), 3, {2, 2}});
    cases.push_back({"so3 x| k^3", std_product(Family::so, 3), 3, {2, 2}});
    bool ok = true;
    std::ostringstream out;
    for (const auto& c : cases) {
      auto ledger = generator_ledger(c.s, c.cap);
      auto degs = ledger.generator_degrees();
      auto ind = index(*c.s.total, cfg).value;
      auto b = b_of(*c.s.total, cfg).value;
      unsigned sum = std::accumulate(degs.begin(), degs.end(), 0u);
      bool good = ledger.complete() && degs == c.want && degs.size() == ind && sum == b &&
                  jacobian_independent(ledger.generators(), c.s, cfg);
      ok &= good;
      out << c.name << " " << degree_list(degs) << (good ? "" : " (wrong)") << "; ";
    }
    return Outcome{ok, out.str() + "count = ind and degree sum = b"};
  });

  report(4, [&] {
    bool ok = true;
    std::ostringstream out;
    for (std::size_t i : {1, 2}) {
      auto m = matryoshka_check(2, i, cfg, 20);
      ok &= m.proportional && m.points >= 20 && sgn(m.ratio) != 0;
      out << "H_" << i << ": " << m.points << " points, ratio " << m.ratio.get_str() << "; ";
    }
    return Outcome{ok, out.str() + "psi_x(H_i) proportional to eDelta'"};
  });

  report(5, [&] {
    std::size_t total = 0, good = 0;
    for (const auto& spec : contraction_battery()) {
      auto c = z2_contraction(spec);
      for (const auto& g : c.generators) {
        ++total;
        good += is_invariant(c.s, g);
      }
    }
    for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {3, 1}, {2, 3}}) {
      auto layout = two_block_centraliser_layout(m, n);
      for (std::size_t i = 1; i <= n - (m - 1) / 2; ++i) {
        auto e = e_delta_restricted(layout, 3 * m + 2 * i - 1, cfg);
        ++total;
        good += is_invariant(e.target, e.poly);
      }
    }
    auto lift = item3_lift(2);
    for (const auto& h : lift.lifted) {
      ++total;
      good += is_invariant(lift.s, h);
    }
    return Outcome{good == total && total > 0, std::to_string(good) + "/" + std::to_string(total) +
                                                   " constructed polynomials annihilated by every derivation"};
  });

  report(6, [&] {
    auto lift = item3_lift(2);
    bool degrees = lift.lifted.size() == lift.h.size() && !lift.h.empty();
    for (std::size_t i = 0; degrees && i < lift.h.size(); ++i)
      degrees = lift.lifted[i].degree() == lift.h[i].degree() + 1;
    Rational scalar;
    bool law = item3_evaluation_identity(lift, cfg, 20, &scalar);
    return Outcome{degrees && law, std::string("H_i(A+xi+v) = c h_i(A,B(xi),v) at 20 points ") +
                                       (law ? "with c = " + scalar.get_str() : "fails") +
                                       (degrees ? "; deg H_i = deg h_i + 1" : "; degree shift wrong")};
  });

  report(7, [&] {
    std::size_t modules = 0, bad = 0;
    for (const auto& row : atlas.rows) {
      ++modules;
      bad += representation_violation(build_row(row, atlas).rep).has_value();
    }
    for (std::size_t n : {7, 9, 11, 13}) {
      ++modules;
      bad += representation_violation(spin_rep(n)).has_value();
    }
    for (std::size_t n : {8, 10, 12, 14})
      for (auto ch : {Chirality::even, Chirality::odd}) {
        ++modules;
        bad += representation_violation(spin_rep(n, ch)).has_value();
      }
    std::size_t pf_ok = 0;
    for (std::uint64_t r = 0; r < 100; ++r) {
      std::size_t n = 2 + 2 * (r % 6);
      QVector v = sample_vector(cfg, n * n, r, 61);
      QMatrix a(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = v[i * n + j] - v[j * n + i];
      Rational p = pfaffian(a);
      pf_ok += p * p == determinant(a);
    }
    return Outcome{bad == 0 && pf_ok == 100, std::to_string(modules - bad) + "/" + std::to_string(modules) +
                                                 " modules satisfy [A_x, A_y] = A_[x,y]; Pf^2 = det on " +
                                                 std::to_string(pf_ok) + "/100 matrices"};
  });

  report(8, [&] {
    // declared out of reach: show the size bound and run the substitutes
    auto spin9 = semidirect(spin_rep(9));
    std::size_t size = component_size(spin9, {6, 6});
    bool beyond = size > InvariantOptions{}.monomial_cap;

    auto sp2 = std_product(Family::sp, 2);
    auto partial = codim2_evidence(sp2, {QVector(2, 0)}, cfg);
    auto so5 = std_product(Family::so, 5);
    QVector y(5, 0);
    y[0] = 1;  // isotropic for the antidiagonal form
    auto quadric = codim2_evidence(so5, {y}, cfg);
    bool subs = partial.partial && partial.criterion_i && !quadric.partial && quadric.all_hold();
    return Outcome{beyond && subs, "not reproducible at desk scale (declared): Spin9 bi-degree (6,6) has " +
                                       std::to_string(size) + " monomials; substitutes run: codim-2 evidence " +
                                       (subs ? "consistent" : "inconsistent") +
                                       " on sp2 x| k^2 (partial) and so5 x| k^5 (quadric point)"};
  });

  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria pass"))
            << std::endl;
  return failures ? 1 : 0;
}
