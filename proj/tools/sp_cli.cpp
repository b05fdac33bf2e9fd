// Command-line front end: symbol, flat-model, prolong, verify, secant, goh, extract.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sp/abnormal.hpp"
#include "sp/errors.hpp"
#include "sp/flagprolong.hpp"
#include "sp/lie.hpp"
#include "sp/prolongpoly.hpp"
#include "sp/symbol.hpp"
#include "sp/tanaka.hpp"

using nlohmann::ordered_json;
using namespace sp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string spec;
  int n = 0;
  int rank = 0;
  int k_max = 6;
  uint64_t seed = 42;
  bool json = false;
  std::string out;
  std::string curve_file;
  std::string action;  // subcommand argument (symbol action or prolong kind)
};

// ---------------------------------------------------------------- serialization

ordered_json symbol_json(const FlagSymbol& s) {
  ordered_json comps = ordered_json::array();
  for (const auto& c : s.components()) {
    if (c.is_two_row())
      comps.push_back({{"type", "D"}, {"s", c.s}, {"l", c.l}});
    else
      comps.push_back({{"type", "R"}, {"m2", c.m2}});
  }
  return {{"spec", s.str()}, {"components", comps}, {"index_set", to_string(s.index_set())}, {"dim", s.dim()}};
}

ordered_json matrix_json(const RatMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json r = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

ordered_json algebra_json(const GradedLieAlgebra& g) {
  ordered_json basis = ordered_json::array();
  for (int i = 0; i < g.dim(); ++i) basis.push_back({{"label", g.labels()[i]}, {"weight2", g.weight(i)}});
  ordered_json brackets = ordered_json::array();
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j)
      for (int k = 0; k < g.dim(); ++k)
        if (sgn(g.constant(i, j, k)) != 0) brackets.push_back({{"i", i}, {"j", j}, {"k", k}, {"c", to_string(g.constant(i, j, k))}});
  return {{"dim", g.dim()}, {"basis", basis}, {"brackets", brackets}};
}

ordered_json report_json(const ProlongationReport& r) {
  ordered_json degrees = ordered_json::array();
  for (const auto& l : r.levels) degrees.push_back({{"k", l.degree}, {"dim", l.dim()}});
  ordered_json j = {{"degrees", degrees}, {"terminated", r.terminated}, {"total_dim", r.total_dim()}};
  if (r.termination_degree) j["termination_degree"] = *r.termination_degree;
  return j;
}

std::string scalar_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_text(const ordered_json& j, std::ostream& os, const std::string& indent = "") {
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      os << indent << key << ":\n";
      render_text(v, os, indent + "  ");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << indent << key << ":\n";
      std::vector<std::string> cols;
      for (const auto& row : v)
        for (const auto& [c, _] : row.items())
          if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
      std::vector<size_t> width(cols.size());
      for (size_t c = 0; c < cols.size(); ++c) {
        width[c] = cols[c].size();
        for (const auto& row : v)
          if (row.contains(cols[c])) width[c] = std::max(width[c], scalar_text(row[cols[c]]).size());
      }
      auto line = [&](auto cell) {
        os << indent << "  ";
        for (size_t c = 0; c < cols.size(); ++c) {
          const std::string s = cell(c);
          os << s << std::string(width[c] - s.size() + 2, ' ');
        }
        os << "\n";
      };
      line([&](size_t c) { return cols[c]; });
      for (const auto& row : v) line([&](size_t c) { return row.contains(cols[c]) ? scalar_text(row[cols[c]]) : std::string("-"); });
    } else if (v.is_array()) {
      os << indent << key << ": ";
      for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << (v[i].is_array() ? v[i].dump() : scalar_text(v[i]));
      os << "\n";
    } else {
      os << indent << key << ": " << scalar_text(v) << "\n";
    }
  }
}

// ---------------------------------------------------------------- input resolution

FlagSymbol resolve_symbol(const RunConfig& cfg) {
  if (!cfg.spec.empty()) {
    FlagSymbol s = parse_symbol(cfg.spec);
    if (cfg.n > 0 && s.dim() != 2 * cfg.n - 6)
      throw UsageError("symbol " + s.str() + " has dim " + std::to_string(s.dim()) + ", expected 2n-6 = " +
                       std::to_string(2 * cfg.n - 6));
    return s;
  }
  if (cfg.n <= 0) throw UsageError("either --spec or --n is required");
  const int rank = cfg.rank == 0 ? 2 : cfg.rank;
  const auto all = enumerate_symbols(rank, cfg.n);
  std::vector<FlagSymbol> finite;
  for (const auto& s : all)
    if (classify_finiteness(s).finite) finite.push_back(s);
  if (finite.size() == 1) return finite.front();
  std::string names;
  for (const auto& s : all) names += (names.empty() ? "" : ", ") + s.str();
  throw UsageError("--n " + std::to_string(cfg.n) + " with rank " + std::to_string(rank) +
                   " does not determine a unique finite-type symbol: " + names);
}

Rational parse_rational(const ordered_json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    Rational r;
    if (r.set_str(v.get<std::string>(), 10) != 0) throw SyntaxError("bad rational: " + v.get<std::string>());
    r.canonicalize();
    return r;
  }
  throw SyntaxError("rational entries must be integers or \"p/q\" strings");
}

RatMatrix parse_matrix(const ordered_json& v) {
  if (!v.is_array() || v.empty() || !v.front().is_array()) throw SyntaxError("matrix must be a non-empty array of rows");
  RatMatrix m(static_cast<int>(v.size()), static_cast<int>(v.front().size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(v[i].size()) != m.cols()) throw SyntaxError("ragged matrix");
    for (int j = 0; j < m.cols(); ++j) m(i, j) = parse_rational(v[i][j]);
  }
  return m;
}

// ---------------------------------------------------------------- commands

struct Outcome {
  ordered_json body;
  bool passed = true;
};

Outcome cmd_symbol(const RunConfig& cfg) {
  Outcome o;
  if (cfg.action == "enumerate") {
    if (cfg.n <= 0 || cfg.rank == 0) throw UsageError("symbol enumerate needs --rank and --n");
    ordered_json list = ordered_json::array();
    for (const auto& s : enumerate_symbols(cfg.rank, cfg.n)) {
      const Finiteness f = classify_finiteness(s);
      list.push_back({{"spec", s.str()}, {"dim", s.dim()}, {"finite", f.finite}});
    }
    o.body = {{"rank", cfg.rank}, {"n", cfg.n}, {"symbols", list}};
    return o;
  }
  const FlagSymbol s = resolve_symbol(cfg);
  o.body["symbol"] = symbol_json(s);
  if (cfg.action == "classify") {
    const Finiteness f = classify_finiteness(s);
    o.body["verdict"] = f.finite ? std::string("Finite") : "Infinite (" + f.reason + ")";
    o.body["finite"] = f.finite;
    o.body["violated_condition"] = f.violated_condition;
  } else if (cfg.action == "parse" || cfg.action.empty()) {
    const GradedSymplecticSpace x = build_model_space(s);
    ordered_json rows = ordered_json::array();
    for (const auto& r : x.rows) {
      const char* kind = r.kind == RowInterval::Kind::E ? "E" : r.kind == RowInterval::Kind::F ? "F" : "R";
      rows.push_back({{"component", r.component}, {"kind", kind}, {"top", r.top.str()}, {"bottom", r.bottom.str()}});
    }
    o.body["rows"] = rows;
    const std::string why = x.check_invariants();
    o.body["invariants"] = why.empty() ? std::string("ok") : why;
    o.passed = why.empty();
  } else {
    throw UsageError("symbol action must be parse, classify or enumerate");
  }
  return o;
}

Outcome cmd_flat_model(const RunConfig& cfg) {
  const FlatModel fm = flat_model(resolve_symbol(cfg));
  Outcome o;
  o.body["symbol"] = symbol_json(fm.symbol);
  o.body["algebra"] = algebra_json(fm.algebra);
  o.body["distribution"] = fm.distribution;
  const auto bad = check_jacobi(fm.algebra);
  o.body["jacobi"] = bad ? "violated at (" + std::to_string(bad->i) + "," + std::to_string(bad->j) + "," +
                               std::to_string(bad->k) + ")"
                         : std::string("ok");
  o.passed = !bad;
  return o;
}

Outcome cmd_prolong(const RunConfig& cfg) {
  const FlagSymbol s = resolve_symbol(cfg);
  const GradedSymplecticSpace x = build_model_space(s);
  Outcome o;
  o.body["symbol"] = symbol_json(s);
  if (cfg.action == "flag") {
    const AZPDecomposition d = decompose_azp(x);
    ordered_json pieces = ordered_json::array();
    pieces.push_back({{"degree", "-1"}, {"dim", 1}});
    for (size_t i = 0; i < d.uF.degrees.size(); ++i)
      pieces.push_back({{"degree", d.uF.degrees[i].str()}, {"dim", d.uF.pieces[i].dim()}});
    o.body["pieces"] = pieces;
    o.body["uF_dim"] = d.uF.dim();
    o.body["l_x"] = d.l_of_x.dim();
    o.body["a"] = d.a.dim();
    o.body["z"] = d.z.dim();
    o.body["p"] = d.p.dim();
    const PredictedDims pd = predicted_dims(s);
    o.body["predicted"] = {{"uF_dim", pd.uF}, {"l_x", pd.l_x}, {"z", pd.z}, {"p", pd.p}};
    o.passed = pd.uF == d.uF.dim() && pd.l_x == d.l_of_x.dim() && pd.z == d.z.dim() && pd.p == d.p.dim();
  } else if (cfg.action == "tanaka") {
    const ProlongationReport r = symbol_prolongation(x, cfg.k_max, false);
    o.body["report"] = report_json(r);
    if (r.terminated) {
      const GradedLieAlgebra full = assemble_algebra(heisenberg(x), r);
      const auto bad = check_jacobi(full);
      o.body["jacobi"] = bad ? "violated" : "ok";
      o.body["killing_rank"] = killing_signature(full).rank;
      o.passed = !bad;
    }
  } else if (cfg.action == "standard") {
    const AZPDecomposition d = decompose_azp(x);
    ordered_json degrees = ordered_json::array();
    for (int k = 0; k <= cfg.k_max; ++k) {
      const int dim = standard_prolong(x, d.p, k).dim();
      degrees.push_back({{"k", k}, {"dim", dim}});
      if (dim == 0) break;
    }
    o.body["p_dim"] = d.p.dim();
    o.body["degrees"] = degrees;
  } else {
    throw UsageError("prolong kind must be flag, tanaka or standard");
  }
  return o;
}

Outcome cmd_verify(const RunConfig& cfg) {
  const VerifyReport r = verify_prolongation_theorems(resolve_symbol(cfg), cfg.k_max, cfg.seed);
  Outcome o;
  o.body["symbol"] = symbol_json(r.symbol);
  o.body["k_max"] = r.k_max;
  o.body["seed"] = r.seed;
  o.body["hypotheses"] = r.genpr_hypotheses ? std::string("hold") : r.hypotheses_note;
  ordered_json degrees = ordered_json::array();
  for (const auto& d : r.degrees) {
    ordered_json row = {{"k", d.k}, {"u", d.u}, {"p", d.p}, {"lx", d.lx}};
    if (d.tangential) row["tangential"] = *d.tangential;
    if (d.secant_sum) row["secant"] = *d.secant_sum;
    degrees.push_back(row);
  }
  o.body["degrees"] = degrees;
  ordered_json theorems = ordered_json::array();
  for (const auto& t : r.theorems)
    theorems.push_back({{"name", t.name}, {"status", !t.applicable ? "SKIP" : t.pass ? "PASS" : "FAIL"}, {"note", t.note}});
  o.body["theorems"] = theorems;
  o.passed = r.all_pass();
  return o;
}

Outcome cmd_secant(const RunConfig& cfg) {
  const FlagSymbol s = resolve_symbol(cfg);
  const GradedSymplecticSpace x = build_model_space(s);
  std::vector<VarietySampler> vs = row_varieties(x);
  vs.push_back(sum_variety(x));
  Outcome o;
  o.body["symbol"] = symbol_json(s);
  ordered_json rows = ordered_json::array();
  for (const auto& v : vs) {
    for (int k = 0; k <= cfg.k_max; ++k) {
      const PolySpace ps = secant_ideal(v, k + 2, k, cfg.seed);
      bool certified = true;
      for (const auto& p : ps.basis) certified = certified && vanishes_on_secant(v, p, k);
      rows.push_back({{"variety", v.name}, {"k", k}, {"degree", k + 2}, {"dim", ps.dim()}, {"certified", certified}});
      o.passed = o.passed && certified;
      if (ps.dim() == 0) break;
    }
  }
  o.body["ideals"] = rows;
  return o;
}

Outcome cmd_goh(const RunConfig& cfg) {
  const FlatModel fm = flat_model(resolve_symbol(cfg));
  const GohMatrix g = goh_matrix(fm);
  std::vector<std::string> names;
  for (int i = 0; i < fm.algebra.dim(); ++i) names.push_back("l" + std::to_string(i));
  Outcome o;
  o.body["symbol"] = symbol_json(fm.symbol);
  o.body["rank"] = fm.rank();
  ordered_json m = ordered_json::array();
  for (int i = 0; i < g.size; ++i) {
    ordered_json r = ordered_json::array();
    for (int j = 0; j < g.size; ++j) r.push_back(g(i, j).str(names));
    m.push_back(r);
  }
  o.body["goh_matrix"] = m;
  const DegeneracyLocus loc = degeneracy_locus(fm);
  o.body["always_degenerate"] = loc.always_degenerate;
  if (!loc.always_degenerate) o.body["pfaffian"] = loc.pfaffian.str(names);
  ordered_json subs = ordered_json::array();
  for (const auto& p : loc.sub_pfaffians) subs.push_back(p.str(names));
  o.body["sub_pfaffians"] = subs;
  ordered_json checks = ordered_json::array();
  for (const auto& c : locus_identities(fm)) {
    checks.push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
    o.passed = o.passed && c.holds;
  }
  o.body["locus_identities"] = checks;
  return o;
}

JacobiCase parse_kind(const std::string& k) {
  if (k == "odd") return JacobiCase::Odd;
  if (k == "two") return JacobiCase::RankTwo;
  if (k == "even") return JacobiCase::Even;
  throw SyntaxError("curve kind must be odd, two or even");
}

Outcome cmd_extract(const RunConfig& cfg) {
  ExtractedFlag e;
  Outcome o;
  if (!cfg.curve_file.empty()) {
    std::ifstream in(cfg.curve_file);
    if (!in) throw UsageError("cannot open " + cfg.curve_file);
    ordered_json j;
    try {
      j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
      throw SyntaxError(std::string("curve file: ") + ex.what());
    }
    if (!j.contains("sigma") || !j.contains("coeffs") || !j.contains("kind"))
      throw SyntaxError("curve file needs sigma, coeffs and kind");
    PolyCurve c;
    for (const auto& m : j["coeffs"]) c.coeffs.push_back(parse_matrix(m));
    if (c.coeffs.empty()) throw SyntaxError("curve needs at least one coefficient matrix");
    c.dim = c.coeffs[0].rows();
    c.cols = c.coeffs[0].cols();
    for (const auto& m : c.coeffs)
      if (m.rows() != c.dim || m.cols() != c.cols) throw SyntaxError("coefficient matrices differ in shape");
    const RatMatrix sigma = parse_matrix(j["sigma"]);
    if (sigma.rows() != c.dim || sigma.cols() != c.dim) throw SyntaxError("sigma does not match the curve dimension");
    e = extract_flag_symbol(c, sigma, parse_kind(j["kind"].get<std::string>()));
  } else {
    const FlagSymbol s = resolve_symbol(cfg);
    e = extract_flag_symbol(flat_curve(build_model_space(s)));
    o.body["input"] = symbol_json(s);
    o.passed = e.symbol == s;
  }
  o.body["kind"] = to_string(e.kind);
  ordered_json pieces = ordered_json::array();
  for (size_t i = 0; i < e.indices.size(); ++i)
    pieces.push_back({{"index", e.indices[i].str()}, {"space_dim", e.spaces[i].size()}, {"graded_dim", e.graded_dims[i]}});
  o.body["flag"] = pieces;
  o.body["floor_dim"] = e.floor_dim;
  o.body["symbol"] = symbol_json(e.symbol);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symplectic flag symbols, prolongations and flat models"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("SP_KMAX")) {
    try {
      cfg.k_max = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "error: SP_KMAX must be an integer\n";
      return kExitUsage;
    }
  }

  auto common = [&](CLI::App* c) {
    c->add_option("--spec", cfg.spec, "Symbol, e.g. \"D(3,4)+R(5/2)\"");
    c->add_option("--n", cfg.n, "Manifold dimension (resolves the symbol for rank 2/3)");
    c->add_option("--rank", cfg.rank, "Distribution rank used with --n")->check(CLI::IsMember({2, 3}));
    c->add_option("--kmax", cfg.k_max, "Prolongation degree cap")->check(CLI::Range(0, 64));
    c->add_option("--seed", cfg.seed, "Seed for sampling");
    c->add_flag("--json", cfg.json, "Emit JSON");
    c->add_option("--out", cfg.out, "Write the report to a file");
  };

  std::vector<std::pair<CLI::App*, Outcome (*)(const RunConfig&)>> commands;
  auto* sym = app.add_subcommand("symbol", "Parse, classify or enumerate flag symbols");
  sym->add_option("action", cfg.action, "parse | classify | enumerate")->check(CLI::IsMember({"parse", "classify", "enumerate"}));
  commands.emplace_back(sym, cmd_symbol);
  commands.emplace_back(app.add_subcommand("flat-model", "Structure constants of the flat model"), cmd_flat_model);
  auto* pro = app.add_subcommand("prolong", "Flag, Tanaka or standard prolongation");
  pro->add_option("kind", cfg.action, "flag | tanaka | standard")->required()->check(CLI::IsMember({"flag", "tanaka", "standard"}));
  commands.emplace_back(pro, cmd_prolong);
  commands.emplace_back(app.add_subcommand("verify", "Cross-check prolongation dimensions and ideals"), cmd_verify);
  commands.emplace_back(app.add_subcommand("secant", "Secant ideals of the row and sum varieties"), cmd_secant);
  commands.emplace_back(app.add_subcommand("goh", "Goh matrix, Pfaffians and locus identities"), cmd_goh);
  auto* ext = app.add_subcommand("extract", "Flag symbol of a curve of subspaces");
  ext->add_option("--curve", cfg.curve_file, "JSON curve {kind, sigma, coeffs}");
  commands.emplace_back(ext, cmd_extract);
  for (auto& [c, _] : commands) common(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Outcome outcome;
  try {
    for (auto& [c, fn] : commands)
      if (c->parsed()) outcome = fn(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConstraintError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedRank& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kExitFailed;
  }

  ordered_json doc = {{"schema", "sp-1"}, {"command", app.get_subcommands().front()->get_name()}};
  if (!cfg.action.empty()) doc["action"] = cfg.action;
  for (const auto& [k, v] : outcome.body.items()) doc[k] = v;
  doc["status"] = outcome.passed ? "ok" : "failed";

  std::ostringstream os;
  if (cfg.json)
    os << doc.dump(2) << "\n";
  else
    render_text(doc, os);
  if (cfg.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return kExitUsage;
    }
    f << os.str();
  }
  return outcome.passed ? kExitOk : kExitFailed;
}
