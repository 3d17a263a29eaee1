#include "lieinv/atlas.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace lieinv {

// ---------------------------------------------------------------------------
// Stabiliser types.

namespace {

const std::regex kTermBase(R"(^(A|B|C|D|so|CH|U|T)([0-9]+)$|^G2$|^B3V$)");

Fingerprint g2_fingerprint() {
  Fingerprint f;
  f.dim = 14;
  f.index = 2;
  f.derived_series = {14, 14};
  f.killing_rank = 14;
  return f;
}

Fingerprint zero_fingerprint() {
  Fingerprint f;
  f.derived_series = {0};
  return f;
}

// Fingerprint of a direct sum from the fingerprints of the summands.
Fingerprint combine(const Fingerprint& a, const Fingerprint& b) {
  Fingerprint f;
  f.dim = a.dim + b.dim;
  f.index = a.index + b.index;
  f.killing_rank = a.killing_rank + b.killing_rank;
  f.center_dim = a.center_dim + b.center_dim;
  f.stabilised = a.stabilised && b.stabilised;
  const std::size_t len = std::max(a.derived_series.size(), b.derived_series.size()) + 1;
  auto at = [](const std::vector<std::size_t>& s, std::size_t i) { return i < s.size() ? s[i] : s.back(); };
  for (std::size_t i = 0; i < len; ++i) {
    f.derived_series.push_back(at(a.derived_series, i) + at(b.derived_series, i));
    if (f.derived_series.back() == 0 || (i > 0 && f.derived_series[i] == f.derived_series[i - 1])) break;
  }
  return f;
}

std::optional<LieAlgebraData> term_algebra(const std::string& base) {
  if (base == "G2") return std::nullopt;
  if (base == "B3V") return *semidirect(spin_rep(7)).total;
  std::smatch m;
  std::regex_match(base, m, kTermBase);
  const std::string kind = m[1];
  const std::size_t k = std::stoul(m[2]);
  if (kind == "A") return classical_algebra(Family::sl, k + 1);
  if (kind == "B") return classical_algebra(Family::so, 2 * k + 1);
  if (kind == "C") return classical_algebra(Family::sp, 2 * k);
  if (kind == "D") return classical_algebra(Family::so, 2 * k);
  if (kind == "so") return k >= 3 ? classical_algebra(Family::so, k) : abelian(k == 2 ? 1 : 0);
  if (kind == "CH") return k == 0 ? abelian(1) : symplectic_heisenberg(k);
  return abelian(k);  // U, T
}

}  // namespace

StabiliserType StabiliserType::parse(const std::string& text) {
  StabiliserType t;
  if (text == "0") return t;
  std::stringstream ss(text);
  std::string term;
  while (std::getline(ss, term, '+')) {
    std::size_t i = 0;
    while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) ++i;
    std::size_t mult = i ? std::stoul(term.substr(0, i)) : 1;
    std::string base = term.substr(i);
    std::smatch m;
    if (mult == 0 || !std::regex_match(base, m, kTermBase)) throw Error("bad stabiliser type '" + text + "'");
    if (m[2].matched) {
      std::size_t k = std::stoul(m[2]);
      const std::string kind = m[1];
      if ((kind == "A" || kind == "B" || kind == "C") && k < 1) throw Error("bad rank in '" + base + "'");
      if (kind == "D" && k < 2) throw Error("bad rank in '" + base + "'");
    }
    t.terms.emplace_back(mult, base);
  }
  if (t.terms.empty()) throw Error("empty stabiliser type");
  return t;
}

std::string StabiliserType::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [mult, base] : terms) {
    if (!s.empty()) s += "+";
    s += (mult > 1 ? std::to_string(mult) : "") + base;
  }
  return s;
}

Fingerprint StabiliserType::fingerprint(const SampleConfig& cfg) const {
  Fingerprint total = zero_fingerprint();
  bool first = true;
  for (const auto& [mult, base] : terms) {
    auto alg = term_algebra(base);
    Fingerprint one = alg ? (alg->dim() ? lieinv::fingerprint(*alg, cfg) : zero_fingerprint()) : g2_fingerprint();
    for (std::size_t c = 0; c < mult; ++c) {
      total = first ? one : combine(total, one);
      first = false;
    }
  }
  return total;
}

int StabiliserType::nilpotency() const {
  if (terms.empty()) return 0;
  bool all_u = true, all_t = true;
  for (const auto& [mult, base] : terms) {
    all_u &= base[0] == 'U';
    all_t &= base[0] == 'T';
  }
  return all_u ? 1 : all_t ? -1 : 0;
}

// ---------------------------------------------------------------------------
// Rows and parsing.

std::string TableRowSpec::label() const {
  return "T" + std::to_string(table) + "." + row + (params.empty() ? "" : "[" + params + "]");
}

std::size_t TableRowSpec::dim_g() const { return family == Family::sp ? size * (size + 1) / 2 : size * (size - 1) / 2; }

const WeightDictionary& Atlas::dictionary(const std::string& group) const {
  auto it = weights.find(group);
  if (it != weights.end()) return it->second;
  std::string stem = group;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  it = weights.find(stem + "*");
  if (it == weights.end()) throw Error("no weight dictionary for group " + group);
  return it->second;
}

namespace {

std::pair<Family, std::size_t> parse_group(const std::string& g) {
  std::smatch m;
  if (!std::regex_match(g, m, std::regex(R"(^(SO|B|C|D)([0-9]+)$)"))) throw Error("bad group '" + g + "'");
  const std::string kind = m[1];
  const std::size_t k = std::stoul(m[2]);
  if (kind == "SO" && k >= 3) return {Family::so, k};
  if (kind == "B" && k >= 1) return {Family::so, 2 * k + 1};
  if (kind == "C" && k >= 1) return {Family::sp, 2 * k};
  if (kind == "D" && k >= 2) return {Family::so, 2 * k};
  throw Error("bad rank in group '" + g + "'");
}

std::size_t parse_count(const std::string& v, bool* derived) {
  std::string s = v;
  *derived = !s.empty() && s.back() == '*';
  if (*derived) s.pop_back();
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw Error("expected a count, got '" + v + "'");
  return std::stoul(s);
}

}  // namespace

Atlas parse_atlas(const std::string& text, const SampleConfig& cfg) {
  Atlas atlas;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  static const std::vector<std::string> required{"table", "row", "group", "module", "dimV", "dimVG", "h", "ind", "fa"};
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream toks(line);
    std::string kind;
    if (!(toks >> kind)) continue;
    std::map<std::string, std::string> fields;
    std::vector<std::pair<std::string, std::string>> ordered;
    for (std::string tok; toks >> tok;) {
      auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) throw AtlasParseError(lineno, "expected key=value, got '" + tok + "'");
      std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
      if (fields.count(key)) throw AtlasParseError(lineno, "duplicate field '" + key + "'");
      fields[key] = value;
      ordered.emplace_back(key, value);
    }
    if (kind == "weights") {
      if (!fields.count("group")) throw AtlasParseError(lineno, "weights record without group");
      WeightDictionary d;
      for (const auto& [k, v] : ordered)
        if (k != "group") d[k] = v;
      atlas.weights[fields["group"]] = d;
      continue;
    }
    if (kind != "row") throw AtlasParseError(lineno, "unknown record kind '" + kind + "'");
    for (const auto& r : required)
      if (!fields.count(r)) throw AtlasParseError(lineno, "missing field '" + r + "'");
    for (const auto& [k, v] : fields)
      if (k != "params" && std::find(required.begin(), required.end(), k) == required.end())
        throw AtlasParseError(lineno, "unknown field '" + k + "'");
    TableRowSpec row;
    row.line = lineno;
    try {
      bool unused = false;
      row.table = static_cast<int>(parse_count(fields["table"], &unused));
      if (row.table != 1 && row.table != 2) throw Error("table must be 1 or 2");
      row.row = fields["row"];
      row.params = fields.count("params") ? fields["params"] : "";
      row.group = fields["group"];
      std::tie(row.family, row.size) = parse_group(row.group);
      row.module_text = fields["module"];
      row.module = ModuleSpec::parse(row.module_text);
      row.dim_v = parse_count(fields["dimV"], &unused);
      row.dim_vg = parse_count(fields["dimVG"], &row.dim_vg_derived);
      row.ind = parse_count(fields["ind"], &row.ind_derived);
      row.h = fields["h"];
      row.h_type = StabiliserType::parse(row.h);
      if (fields["fa"] != "+" && fields["fa"] != "-") throw Error("fa must be + or -");
      row.fa = fields["fa"] == "+";
    } catch (const AtlasParseError&) {
      throw;
    } catch (const Error& e) {
      throw AtlasParseError(lineno, e.what());
    }
    atlas.rows.push_back(std::move(row));
  }

  // labels and the two arithmetic identities
  std::map<std::string, Fingerprint> cache;
  for (const auto& row : atlas.rows) {
    try {
      const auto& dict = atlas.dictionary(row.group);
      for (const auto& [label, mult] : row.module.summands)
        if (!dict.count(label)) throw Error("weight " + label + " has no constructor for " + row.group);
    } catch (const Error& e) {
      throw AtlasParseError(row.line, e.what());
    }
    auto it = cache.find(row.h);
    if (it == cache.end()) it = cache.emplace(row.h, row.h_type.fingerprint(cfg)).first;
    const Fingerprint& h = it->second;
    if (row.dim_vg + row.dim_g() != row.dim_v + h.dim)
      throw AtlasParseError(row.line, "dim V//G = " + std::to_string(row.dim_vg) + " but dim V - dim g + dim h = " +
                                          std::to_string(long(row.dim_v) - long(row.dim_g()) + long(h.dim)));
    if (row.fa && row.ind != row.dim_vg + h.index)
      throw AtlasParseError(row.line, "ind s = " + std::to_string(row.ind) + " but dim V//G + ind h = " +
                                          std::to_string(row.dim_vg + h.index));
  }
  return atlas;
}

Atlas load_atlas(const std::string& path, const SampleConfig& cfg) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open atlas file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_atlas(ss.str(), cfg);
}

std::string default_atlas_path() {
  if (const char* env = std::getenv("LIEINV_ATLAS")) return env;
#ifdef LIEINV_DATA_DIR
  return std::string(LIEINV_DATA_DIR) + "/atlas.txt";
#else
  return "data/atlas.txt";
#endif
}

SemiDirectProduct build_row(const TableRowSpec& row, const Atlas& atlas) {
  auto base = share(classical_algebra(row.family, row.size));
  return semidirect(build_module(base, row.module, atlas.dictionary(row.group)));
}

// ---------------------------------------------------------------------------
// Verification.

bool RowReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass || c.skipped; });
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <class F>
void timed(RowReport& r, const std::string& name, F&& body) {
  CheckResult c;
  c.check = name;
  auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.computed = std::string("error: ") + e.what();
  }
  c.millis = since(t0);
  r.checks.push_back(std::move(c));
}

CheckResult count_check(const std::string& name, std::size_t expected, std::size_t computed) {
  return {name, std::to_string(expected), std::to_string(computed), expected == computed, false, 0};
}

bool nilpotent_matrix(const QMatrix& y) {
  QMatrix p = y;
  for (std::size_t k = 1; k < y.rows(); ++k) p = p * y;
  return p.is_zero();
}

std::string degrees_text(const std::vector<unsigned>& d) {
  std::string s = "{";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + "}";
}

}  // namespace

RowReport verify_row(const TableRowSpec& row, const Atlas& atlas, const VerifyOptions& opt) {
  RowReport r;
  r.row = row.label();
  auto t0 = Clock::now();
  const auto& cfg = opt.cfg;
  const std::size_t dim_s = row.dim_g() + row.dim_v;
  if (dim_s > opt.max_dim) {
    r.flags.push_back("dim s = " + std::to_string(dim_s) + " exceeds max-dim; checks skipped");
    CheckResult c{"all", "", "", false, true, 0};
    r.checks.push_back(c);
    return r;
  }
  std::optional<SemiDirectProduct> s;
  timed(r, "build", [&](CheckResult& c) {
    s = build_row(row, atlas);
    c.expected = row.group + " x| " + row.module_text;
    c.computed = "dim s = " + std::to_string(s->dim());
    c.pass = true;
  });
  if (!s) {
    r.millis = since(t0);
    return r;
  }

  timed(r, "dim_v", [&](CheckResult& c) { c = count_check("dim_v", row.dim_v, s->v_dim()); });

  Fingerprint expected_h = row.h_type.fingerprint(cfg);
  std::optional<StabiliserResult> st;
  timed(r, "stabiliser_dim", [&](CheckResult& c) {
    auto gp = generic_point_V(*s, cfg);
    if (!gp.stabilised) r.flags.push_back("generic orbit dimension not stabilised");
    st = stabiliser_in_V(*s, gp.point);
    c = count_check("stabiliser_dim", expected_h.dim, st->algebra.dim());
    c.pass &= gp.stabilised;
  });
  if (st) {
    timed(r, "fingerprint", [&](CheckResult& c) {
      Fingerprint f = st->algebra.dim() ? fingerprint(st->algebra, cfg) : zero_fingerprint();
      c.expected = row.h + " " + expected_h.to_string();
      c.computed = f.to_string();
      c.pass = f == expected_h;
      if (int want = row.h_type.nilpotency(); want != 0 && c.pass) {
        bool all_nil = true, any_nil = false;
        for (const auto& y : st->basis) {
          QMatrix m(row.size, row.size);
          for (std::size_t k = 0; k < y.size(); ++k)
            if (sgn(y[k]) != 0) m += s->base->matrices()[k].scaled(y[k]);
          bool nil = nilpotent_matrix(m);
          all_nil &= nil;
          any_nil |= nil;
        }
        c.computed += want > 0 ? (all_nil ? " nilpotent" : " not nilpotent") : (any_nil ? " has nilpotents" : " semisimple");
        c.pass = want > 0 ? all_nil : !any_nil;
      }
    });
    timed(r, "dim_vg", [&](CheckResult& c) {
      c = count_check("dim_vg", row.dim_vg, s->v_dim() + st->algebra.dim() - s->q_dim());
    });
  }

  std::optional<std::size_t> direct;
  timed(r, "index_direct", [&](CheckResult& c) {
    auto ind = index(*s->total, cfg);
    if (!ind.stabilised) r.flags.push_back("direct index not stabilised");
    direct = ind.value;
    c = count_check("index_direct", row.ind, ind.value);
    c.pass &= ind.stabilised;
  });
  timed(r, "index_rais", [&](CheckResult& c) {
    auto rais = rais_index(*s, cfg);
    if (!rais.stabilised) r.flags.push_back("Rais index not stabilised");
    c = count_check("index_rais", row.ind, rais.value);
    c.pass &= rais.stabilised;
  });
  timed(r, "b", [&](CheckResult& c) {
    if (!direct) throw Error("no direct index");
    c.expected = (row.ind + dim_s) % 2 ? "ind s + dim s odd" : std::to_string((row.ind + dim_s) / 2);
    c.computed = (*direct + dim_s) % 2 ? "ind s + dim s odd" : std::to_string((*direct + dim_s) / 2);
    c.pass = (*direct + dim_s) % 2 == 0 && c.expected == c.computed;
  });

  if (row.fa && dim_s <= opt.ledger_max_dim) {
    timed(r, "ledger", [&](CheckResult& c) {
      const std::size_t b = (row.ind + dim_s) / 2;
      c.expected = std::to_string(row.ind) + " generators, degree sum " + std::to_string(b);
      std::optional<GeneratorLedger> l;
      for (unsigned d = 1; d <= opt.ledger_max_degree; ++d) {
        l = generator_ledger(*s, d);
        if (!l->complete() || l->generators().size() >= row.ind) break;
      }
      auto degs = l->generator_degrees();
      unsigned sum = 0;
      for (auto d : degs) sum += d;
      c.computed = std::to_string(degs.size()) + " generators " + degrees_text(degs) + ", degree sum " +
                   std::to_string(sum);
      if (!l->complete() || degs.size() < row.ind) {
        c.skipped = true;
        r.flags.push_back("ledger stopped before ind s generators were found");
        return;
      }
      c.pass = degs.size() == row.ind && sum == b;
    });
  }
  r.millis = since(t0);
  return r;
}

bool SuiteReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const RowReport& r) { return r.pass(); }) &&
         std::all_of(properties.begin(), properties.end(), [](const CheckResult& c) { return c.pass || c.skipped; });
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& r : rows) {
    failed += !r.pass();
    out << (r.pass() ? "PASS " : "FAIL ") << r.row << "  (" << static_cast<long>(r.millis) << " ms)\n";
    for (const auto& c : r.checks)
      if (!c.pass && !c.skipped)
        out << "    " << c.check << ": expected " << c.expected << ", computed " << c.computed << "\n";
    for (const auto& f : r.flags) out << "    note: " << f << "\n";
  }
  for (const auto& c : properties)
    out << (c.pass ? "PASS " : c.skipped ? "SKIP " : "FAIL ") << "property " << c.check << ": expected "
        << c.expected << ", computed " << c.computed << "\n";
  out << rows.size() << " rows, " << failed << " failed; " << (pass() ? "all checks pass" : "failures present") << "\n";
  return out.str();
}

std::string SuiteReport::to_json() const {
  using nlohmann::json;
  json records = json::array(), flags = json::object();
  auto record = [](const std::string& row, const CheckResult& c) {
    return json{{"row", row},         {"check", c.check},   {"expected", c.expected}, {"computed", c.computed},
                {"pass", c.pass},     {"skipped", c.skipped}, {"millis", c.millis}};
  };
  std::size_t failed = 0;
  for (const auto& r : rows) {
    failed += !r.pass();
    for (const auto& c : r.checks) records.push_back(record(r.row, c));
    if (!r.flags.empty()) flags[r.row] = r.flags;
  }
  for (const auto& c : properties) records.push_back(record("property", c));
  json out{{"records", records},
           {"flags", flags},
           {"summary", {{"rows", rows.size()}, {"failed_rows", failed}, {"pass", pass()}}}};
  return out.dump(2);
}

namespace {

std::vector<CheckResult> property_checks(const SampleConfig& cfg) {
  std::vector<CheckResult> out;
  auto run = [&](const std::string& name, auto&& body) {
    CheckResult c;
    c.check = name;
    auto t0 = Clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.computed = std::string("error: ") + e.what();
    }
    c.millis = since(t0);
    out.push_back(std::move(c));
  };
  run("takiff_sl2_degree_sum", [&](CheckResult& c) {
    auto t = takiff(classical_algebra(Family::sl, 2));
    auto degs = generator_ledger(t, 3).generator_degrees();
    unsigned sum = 0;
    for (auto d : degs) sum += d;
    auto b = b_of(*t.total, cfg).value;
    c.expected = std::to_string(b);
    c.computed = std::to_string(sum);
    c.pass = sum == b;
  });
  run("rais_equals_direct_takiff_so3", [&](CheckResult& c) {
    auto t = takiff(classical_algebra(Family::so, 3));
    auto d = index(*t.total, cfg).value, r = rais_index(t, cfg).value;
    c.expected = std::to_string(d);
    c.computed = std::to_string(r);
    c.pass = d == r;
  });
  run("pfaffian_squared_is_determinant", [&](CheckResult& c) {
    std::size_t good = 0;
    for (std::uint64_t r = 0; r < 20; ++r) {
      std::size_t n = 2 + 2 * (r % 4);
      QVector v = sample_vector(cfg, n * n, r, 60);
      QMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          m(i, j) = v[i * n + j];
          m(j, i) = -v[i * n + j];
        }
      Rational p = pfaffian(m);
      good += p * p == determinant(m);
    }
    c.expected = "20";
    c.computed = std::to_string(good);
    c.pass = good == 20;
  });
  return out;
}

}  // namespace

SuiteReport run_suite(const Atlas& atlas, const SuiteConfig& config) {
  std::vector<const TableRowSpec*> selected;
  for (const auto& row : atlas.rows) {
    if (config.table != 0 && row.table != config.table) continue;
    if (!config.row_filter.empty() && row.row != config.row_filter && row.label() != config.row_filter) continue;
    selected.push_back(&row);
  }
  SuiteReport report;
  report.rows.resize(selected.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < selected.size(); ++i) report.rows[i] = verify_row(*selected[i], atlas, config.verify);
  // deterministic order: by table, then by row label, file order within a row
  std::vector<std::size_t> order(selected.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(selected[a]->table, selected[a]->row) < std::tie(selected[b]->table, selected[b]->row);
  });
  std::vector<RowReport> sorted;
  for (auto i : order) sorted.push_back(std::move(report.rows[i]));
  report.rows = std::move(sorted);
  if (config.properties && !selected.empty()) report.properties = property_checks(config.verify.cfg);
  return report;
}

}  // namespace lieinv
