// lieinv: index, invariants and table verification for semi-direct products.
//
// Exit status: 0 when every check passes, 1 on a check failure, 2 on a
// configuration or parse error.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lieinv/atlas.hpp"

using namespace lieinv;

namespace {

// Weight labels for an arbitrary classical algebra, plus the constructor
// names themselves.
WeightDictionary dictionary_for(const Atlas& atlas, Family f, std::size_t n) {
  WeightDictionary d;
  for (const char* c : {"std", "trivial", "adjoint", "spin", "halfspin_even", "halfspin_odd", "wedge2", "sym2",
                        "wedge2_0", "wedge3_0"})
    d[c] = c;
  std::string group;
  if (f == Family::so) group = n % 2 ? "B" + std::to_string(n / 2) : "D" + std::to_string(n / 2);
  if (f == Family::sp) group = "C" + std::to_string(n / 2);
  d["phi1"] = "std";
  if (!group.empty()) {
    try {
      for (const auto& [k, v] : atlas.dictionary(group)) d[k] = v;
    } catch (const Error&) {
      // no table entry for this rank: only phi1 and constructor names
    }
  }
  return d;
}

SemiDirectProduct build(const std::string& atlas_path, const std::string& family, std::size_t size,
                        const std::string& module) {
  Family f = parse_family(family);
  Atlas atlas = load_atlas(atlas_path);
  auto base = share(classical_algebra(f, size));
  return semidirect(build_module(base, ModuleSpec::parse(module), dictionary_for(atlas, f, size)));
}

SampleConfig sample_config(std::uint64_t seed, std::int64_t height) {
  SampleConfig cfg;
  cfg.seed = seed;
  cfg.height = height;
  return cfg;
}

std::string degrees(const std::vector<MultiDegree>& ds) {
  std::string s;
  for (const auto& d : ds) s += (s.empty() ? "" : " ") + to_string(d);
  return s;
}

// Renders a saved JSON report as text.
std::string json_to_text(const nlohmann::json& js) {
  std::ostringstream out;
  std::string current;
  for (const auto& rec : js.at("records")) {
    const std::string row = rec.at("row");
    bool ok = rec.at("pass").get<bool>() || rec.value("skipped", false);
    if (row != current) {
      out << row << "\n";
      current = row;
    }
    out << "    " << (ok ? "ok   " : "FAIL ") << rec.at("check").get<std::string>() << ": expected "
        << rec.at("expected").get<std::string>() << ", computed " << rec.at("computed").get<std::string>() << "\n";
  }
  const auto& sum = js.at("summary");
  out << sum.at("rows").get<std::size_t>() << " rows, " << sum.at("failed_rows").get<std::size_t>() << " failed\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Index, invariants and table verification for semi-direct products g x| V"};
  app.require_subcommand(1);
  std::string atlas_path = default_atlas_path();
  std::uint64_t seed = SampleConfig{}.seed;
  std::int64_t height = SampleConfig{}.height;
  app.add_option("--atlas", atlas_path, "atlas file");
  app.add_option("--seed", seed, "sampling seed");
  app.add_option("--height", height, "initial sampling height")->check(CLI::PositiveNumber);

  // verify / report
  std::string table = "all", row, format = "text", output, input;
  std::size_t max_dim = 400;
  auto* verify = app.add_subcommand("verify", "verify rows of the tables");
  verify->add_option("--table", table, "1, 2 or all")->check(CLI::IsMember({"1", "2", "all"}));
  verify->add_option("--row", row, "row label, e.g. 3b or T1.3b");
  verify->add_option("--max-dim", max_dim, "skip rows with dim s above this");
  verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--output", output, "also write the JSON report to this file");
  auto* report = app.add_subcommand("report", "run the whole suite, or render a saved JSON report");
  report->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  report->add_option("--input", input, "saved JSON report");

  // index / invariants
  std::string family, module = "phi1";
  std::size_t size = 0;
  unsigned cap = 4;
  auto* idx = app.add_subcommand("index", "index of g x| V, directly and by the Rais formula");
  auto* inv = app.add_subcommand("invariants", "generator ledger of S(s)^s up to a degree");
  for (auto* sc : {idx, inv}) {
    sc->add_option("--family", family, "gl, sl, so or sp")->required();
    sc->add_option("--size", size, "matrix size")->required();
    sc->add_option("--module", module, "module, e.g. 2phi1+phi4 or std+adjoint");
  }
  inv->add_option("--cap", cap, "largest total degree");

  // construct
  auto* cons = app.add_subcommand("construct", "explicit invariant constructions");
  cons->require_subcommand(1);
  auto* c_takiff = cons->add_subcommand("takiff", "l x| l^ab for a classical l");
  c_takiff->add_option("--family", family)->required();
  c_takiff->add_option("--size", size)->required();
  c_takiff->add_option("--cap", cap, "ledger degree bound");
  std::string kind = "so_so";
  std::size_t n = 2, m = 1, k = 4;
  auto* c_contr = cons->add_subcommand("contraction", "Z2-contraction g_0 x| g_1^ab");
  c_contr->add_option("--kind", kind)->check(CLI::IsMember({"so_so", "sp_sp", "sl_sp", "so_gl"}));
  c_contr->add_option("--n", n, "first block size (matrix size)");
  c_contr->add_option("--m", m, "second block size (matrix size)");
  auto* c_edelta = cons->add_subcommand("edelta", "eDelta_k restricted, on sp_2n x| m k^2n");
  c_edelta->add_option("--m", m, "number of Jordan blocks of size 2 (odd)");
  c_edelta->add_option("--n", n, "half the size of the sp block");
  c_edelta->add_option("--k", k, "minor size, 3m + 2i - 1");
  bool print_poly = false;
  c_edelta->add_flag("--print", print_poly, "print the polynomial");
  auto* c_item3 = cons->add_subcommand("item3", "lift of the sl_2n > sp_2n generators through S^2(k^2n)");
  c_item3->add_option("--n", n, "rank of sp_2n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    SampleConfig cfg = sample_config(seed, height);
    if (verify->parsed() || report->parsed()) {
      if (report->parsed() && !input.empty()) {
        std::ifstream f(input);
        if (!f) throw Error("cannot open " + input);
        auto js = nlohmann::json::parse(f);
        std::cout << (format == "json" ? js.dump(2) + "\n" : json_to_text(js));
        return js.at("summary").at("pass").get<bool>() ? 0 : 1;
      }
      Atlas atlas = load_atlas(atlas_path, cfg);
      SuiteConfig sc;
      sc.verify.cfg = cfg;
      sc.verify.max_dim = max_dim;
      sc.table = table == "all" ? 0 : std::stoi(table);
      sc.row_filter = row;
      SuiteReport rep = run_suite(atlas, sc);
      std::cout << (format == "json" ? rep.to_json() + "\n" : rep.to_text());
      if (!output.empty()) std::ofstream(output) << rep.to_json() << "\n";
      return rep.pass() ? 0 : 1;
    }
    if (idx->parsed()) {
      auto s = build(atlas_path, family, size, module);
      auto direct = index(*s.total, cfg);
      auto rais = rais_index(s, cfg);
      auto fp = fingerprint(stabiliser_in_V(s, rais.point).algebra, cfg);
      std::cout << "dim s            " << s.dim() << " (q " << s.q_dim() << ", V " << s.v_dim() << ")\n"
                << "index (direct)   " << direct.value << (direct.stabilised ? "" : " (not stabilised)") << "\n"
                << "index (Rais)     " << rais.value << (rais.stabilised ? "" : " (not stabilised)") << "\n"
                << "b(s)             " << (direct.value + s.dim()) / 2 << "\n"
                << "generic q_x      " << fp.to_string() << "\n";
      return direct.value == rais.value ? 0 : 1;
    }
    if (inv->parsed()) {
      auto s = build(atlas_path, family, size, module);
      auto ledger = generator_ledger(s, cap);
      std::cout << ledger.to_string();
      auto ind = index(*s.total, cfg).value;
      std::cout << "ind s = " << ind << ", b(s) = " << (ind + s.dim()) / 2 << "\n";
      return 0;
    }
    if (c_takiff->parsed()) {
      auto t = takiff(classical_algebra(parse_family(family), size));
      auto ledger = generator_ledger(t, cap);
      std::cout << "dim " << t.dim() << ", index " << index(*t.total, cfg).value << "\n" << ledger.to_string();
      return 0;
    }
    if (c_contr->parsed()) {
      static const std::map<std::string, ContractionKind> kinds{{"so_so", ContractionKind::so_so},
                                                                 {"sp_sp", ContractionKind::sp_sp},
                                                                 {"sl_sp", ContractionKind::sl_sp},
                                                                 {"so_gl", ContractionKind::so_gl}};
      auto c = z2_contraction({kinds.at(kind), n, m});
      bool ok = true;
      std::cout << c.spec.to_string() << ": dim " << c.s.dim() << ", index " << index(*c.s.total, cfg).value << "\n";
      for (std::size_t i = 0; i < c.generators.size(); ++i) {
        bool inv_ok = is_invariant(c.s, c.generators[i]);
        ok &= inv_ok;
        std::cout << "  " << c.sources[i] << " -> bidegree " << to_string(c.degrees[i])
                  << (inv_ok ? ", invariant" : ", NOT invariant") << "\n";
      }
      return ok ? 0 : 1;
    }
    if (c_edelta->parsed()) {
      auto layout = two_block_centraliser_layout(m, n);
      auto e = e_delta_restricted(layout, k, cfg);
      bool ok = is_invariant(e.target, e.poly);
      std::cout << "g_e dim " << layout.centraliser.dim() << ", f-degree " << e.f_degree << ", degree "
                << e.poly.degree() << ", " << e.poly.size() << " terms, " << (ok ? "invariant" : "NOT invariant")
                << "\n";
      if (print_poly) std::cout << e.poly.to_string(e.target.total->labels()) << "\n";
      return ok ? 0 : 1;
    }
    if (c_item3->parsed()) {
      auto lift = item3_lift(n);
      bool ok = true;
      std::cout << "s dim " << lift.s.dim() << "; item-2 generators " << degrees(lift.item2.degrees) << "\n";
      for (std::size_t i = 0; i < lift.lifted.size(); ++i) {
        bool inv_ok = is_invariant(lift.s, lift.lifted[i]);
        ok &= inv_ok && lift.lifted[i].degree() == lift.h[i].degree() + 1;
        std::cout << "  h" << i + 1 << " degree " << lift.h[i].degree() << " -> H" << i + 1 << " degree "
                  << lift.lifted[i].degree() << (inv_ok ? ", invariant" : ", NOT invariant") << "\n";
      }
      Rational scalar;
      bool law = item3_evaluation_identity(lift, cfg, 20, &scalar);
      std::cout << "evaluation law at 20 points: " << (law ? "holds, scalar " + scalar.get_str() : "fails") << "\n";
      return ok && law ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
