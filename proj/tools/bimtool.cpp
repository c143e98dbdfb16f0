// bimtool: command-line front end for the finite and Cuntz engines.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "bim/checkers.hpp"
#include "bim/cuntz.hpp"
#include "bim/cuntz_witness.hpp"
#include "bim/duality.hpp"
#include "bim/error.hpp"
#include "bim/verify.hpp"

using namespace bim;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  std::string monoid;
  std::size_t from_group = 0;
  std::vector<std::string> args;
  unsigned n = 2;
  std::string op;
  std::string suite = "all";
  std::string certificate;
  std::uint64_t seed = 42;
  std::size_t depth_cap = 32;
  std::string out;
  bool human = false;
  bool dual = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// `pair:n`, `group:...`, `disjoint_union(a,b)`, JSON groupoid text, or a file
// holding either a groupoid or {"groupoid": ..., "carrier": [...]}.
FinBIM load_monoid(const Options& o) {
  if (o.from_group) {
    std::vector<Permutation> gens;
    for (const auto& a : o.args) gens.push_back(parse_permutation(a, o.from_group));
    return monoid_from_group(o.from_group, gens);
  }
  if (o.monoid.empty()) throw ParseError("give --monoid or --from-group");
  std::string text = o.monoid;
  if (std::ifstream(text).good()) text = read_file(text);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("monoid file is not valid JSON");
    if (j.contains("carrier")) {
      auto g = std::make_shared<const FiniteGroupoid>(groupoid_from_json(j.at("groupoid")));
      const auto full = FinBIM::full(g);
      std::vector<Bisection> carrier;
      for (const auto& e : j.at("carrier")) carrier.push_back(full.parse(e.is_string() ? e.get<std::string>() : e.dump()));
      return FinBIM::with_carrier(g, std::move(carrier));
    }
  }
  return kb_monoid(parse_groupoid_spec(text));
}

std::string label(const Options& o) {
  if (!o.from_group) return o.monoid;
  std::string s = "from-group " + std::to_string(o.from_group);
  for (const auto& a : o.args) s += " " + a;
  return s;
}

int emit(const Options& o, const json& j, const std::string& human_text = {}) {
  std::string text = o.human ? (human_text.empty() ? j.dump(2) : human_text) : j.dump();
  if (o.out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(o.out);
    if (!f) throw ParseError("cannot write '" + o.out + "'");
    f << text << "\n";
  }
  return kOk;
}

int run_analyze(const Options& o) {
  const auto s = load_monoid(o);
  const auto profile = classify_monoid(s);
  json j;
  j["monoid"] = label(o);
  j["size"] = s.size();
  j["units"] = s.units().size();
  j["idempotents"] = s.idempotents().size();
  j["profile"] = to_json(s, profile);
  if (profile.fundamental) j["armature"] = to_json(armature_check(s));
  return emit(o, j);
}

int run_dualize(const Options& o) {
  const auto s = load_monoid(o);
  json j;
  j["monoid"] = label(o);
  j["dual"] = dualize_report(s);
  const bool ok = j["dual"]["roundtrip"]["ok"].get<bool>();
  emit(o, j);
  return ok ? kOk : kFailed;
}

int run_export_dot(const Options& o) {
  std::string dot;
  if (o.dual || o.from_group) {
    const auto s = load_monoid(o);
    dot = to_dot(*groupoid_of(s).groupoid, "G(S)");
  } else {
    if (o.monoid.empty()) throw ParseError("give --monoid or --from-group");
    std::string text = o.monoid;
    if (std::ifstream(text).good()) text = read_file(text);
    dot = to_dot(parse_groupoid_spec(text), o.monoid);
  }
  if (o.out.empty()) {
    std::cout << dot;
  } else {
    std::ofstream f(o.out);
    f << dot;
  }
  return kOk;
}

int run_verify(const Options& o) {
  if (!o.certificate.empty()) {
    const auto cert = nlohmann::json::parse(read_file(o.certificate), nullptr, false);
    if (cert.is_discarded()) throw ParseError("certificate is not valid JSON");
    const auto r = verify_certificate(cert);
    json j{{"certificate", o.certificate}, {"verified", r.ok}};
    if (!r.ok) j["reason"] = r.reason;
    emit(o, j, r.ok ? "verified" : "not verified: " + r.reason);
    return r.ok ? kOk : kFailed;
  }
  const auto r = run_suite(o.suite, o.seed);
  std::string human;
  for (const auto& p : r.properties) {
    human += (p.pass() ? "pass  " : "FAIL  ") + p.name + " (" + std::to_string(p.checked) + " checked";
    if (p.failed) human += ", " + std::to_string(p.failed) + " failed: " + p.first_failure;
    human += ")\n";
  }
  human += r.pass() ? "suite " + r.suite + ": pass" : "suite " + r.suite + ": FAIL";
  emit(o, to_json(r), human);
  return r.pass() ? kOk : kFailed;
}

// ---------------------------------------------------------------------------
// cuntz

void want(const std::vector<std::string>& args, std::size_t lo, std::size_t hi, const std::string& op) {
  if (args.size() < lo || args.size() > hi)
    throw ParseError(op + " takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi)) +
                     " arguments, got " + std::to_string(args.size()));
}

const std::vector<std::string>& cuntz_ops() {
  static const std::vector<std::string> ops = {
      "canonicalize", "compose",        "inverse", "phi",     "sigma",    "domain",          "range",
      "meet",         "join",           "relations", "classify", "evaluate", "basic-decompose", "fixpoint-support",
      "clopen-ops",   "unit-from-infinitesimal", "orthogonal-refinement"};
  return ops;
}

int run_cuntz(const Options& o) {
  const CuntzMonoid m(o.n, o.depth_cap);
  const auto& a = o.args;
  const auto& witness = witness_operations();
  if (std::find(witness.begin(), witness.end(), o.op) != witness.end()) {
    const auto cert = certify(m, o.op, a);
    std::string human;
    for (const auto& [k, v] : cert["output"].items())
      if (v.is_string()) human += k + ": " + v.get<std::string>() + "\n";
    human += cert.dump(2);
    emit(o, cert, human);
    return cert["verified"].get<bool>() ? kOk : kFailed;
  }
  auto el = [&](std::size_t i) { return m.parse_element(a.at(i)); };
  json result;
  std::string human;
  auto set = [&](const std::string& text) {
    result = text;
    human = text;
  };
  if (o.op == "canonicalize" || o.op == "inverse" || o.op == "phi" || o.op == "sigma" || o.op == "domain" ||
      o.op == "range" || o.op == "classify" || o.op == "basic-decompose" || o.op == "fixpoint-support" ||
      o.op == "unit-from-infinitesimal") {
    want(a, 1, 1, o.op);
    const auto s = el(0);
    if (o.op == "canonicalize") set(m.format(s));
    if (o.op == "inverse") set(m.format(m.inverse(s)));
    if (o.op == "phi") set(m.format(m.as_clopen(m.phi(s))));
    if (o.op == "sigma") set(m.format(m.as_clopen(sigma(m, s))));
    if (o.op == "domain") set(m.format(m.domain(s)));
    if (o.op == "range") set(m.format(m.range(s)));
    if (o.op == "unit-from-infinitesimal") set(m.format(unit_from_infinitesimal(m, s)));
    if (o.op == "classify") {
      const auto c = classify(m, s);
      result = {{"is_idempotent", c.is_idempotent},
                {"is_infinitesimal", c.is_infinitesimal},
                {"is_unit", c.is_unit},
                {"is_atom", c.is_atom}};
    }
    if (o.op == "fixpoint-support") {
      const auto f = fixpoint_and_support(m, s);
      result = {{"phi", m.format(m.as_clopen(f.phi))},
                {"sigma", m.format(m.as_clopen(f.sigma))},
                {"fixed_part", m.format(f.fixed_part)},
                {"moving_part", m.format(f.moving_part)}};
    }
    if (o.op == "basic-decompose") {
      const auto r = basic_decompose(m, s);
      if (const auto* d = std::get_if<CuntzBasicDecomposition>(&r)) {
        json inf = json::array();
        for (const auto& x : d->infinitesimals) inf.push_back(m.format(x));
        result = {{"basic", true}, {"idempotent", m.format(d->idempotent)}, {"infinitesimals", inf}};
      } else {
        json w = json::array();
        for (const auto& x : std::get<CuntzBasicFailure>(r).witnesses)
          w.push_back(format_word(x.from) + "->" + format_word(x.to));
        result = {{"basic", false}, {"witnesses", w}};
      }
    }
  } else if (o.op == "compose") {
    want(a, 1, 64, o.op);
    auto acc = el(0);
    for (std::size_t i = 1; i < a.size(); ++i) acc = m.multiply(acc, el(i));
    set(m.format(acc));
  } else if (o.op == "meet" || o.op == "join" || o.op == "relations") {
    want(a, 2, 2, o.op);
    const auto x = el(0), y = el(1);
    if (o.op == "meet") set(m.format(meet(m, x, y)));
    if (o.op == "join") set(m.format(join(m, x, y)));
    if (o.op == "relations") {
      const auto r = relations(m, x, y);
      result = {{"leq", r.leq},
                {"compatible", r.compatible},
                {"orthogonal", r.orthogonal},
                {"mu_related", r.mu_related},
                {"mu_depth", r.mu_depth}};
    }
  } else if (o.op == "evaluate") {
    want(a, 2, 2, o.op);
    const auto r = m.evaluate(el(0), parse_word(a[1], m.alphabet()));
    switch (r.kind) {
      case EvalOutcome::Kind::mapped: set(format_word(r.image)); break;
      case EvalOutcome::Kind::undefined: set("undefined"); break;
      case EvalOutcome::Kind::needs_longer_input: set("needs-longer-input"); break;
    }
  } else if (o.op == "clopen-ops") {
    want(a, 2, 2, o.op);
    const auto e = m.parse_clopen(a[0]), f = m.parse_clopen(a[1]);
    result = {{"meet", m.format(m.clopen_meet(e, f))},
              {"join", m.format(m.clopen_join(e, f))},
              {"complement", m.format(m.clopen_complement(e))},
              {"leq", m.clopen_leq(e, f)}};
  } else if (o.op == "orthogonal-refinement") {
    want(a, 1, 64, o.op);
    std::vector<CuntzElement> parts;
    for (std::size_t i = 0; i < a.size(); ++i) parts.push_back(el(i));
    json list = json::array();
    for (const auto& x : orthogonal_refinement<CuntzMonoid>(m, parts)) list.push_back(m.format(x));
    result = list;
  } else {
    throw ParseError("unknown cuntz operation '" + o.op + "'");
  }
  json j{{"op", o.op}, {"n", o.n}, {"inputs", a}, {"result", result}};
  return emit(o, j, human);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite Boolean inverse monoids and the Cuntz monoids C_n"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write the report to a file");
    sub->add_flag("--human", o.human, "Human-readable output");
  };
  auto monoid_input = [&](CLI::App* sub) {
    sub->add_option("--monoid", o.monoid, "pair:n, group:<name>, disjoint_union(a,b), JSON text or file");
    sub->add_option("--from-group", o.from_group, "Degree n of a permutation group given by generator arguments");
    sub->add_option("args", o.args, "Generators for --from-group");
  };

  auto* analyze = app.add_subcommand("analyze", "Classify a finite monoid");
  monoid_input(analyze);
  common(analyze);

  auto* dualize = app.add_subcommand("dualize", "Dual groupoid, round trip and ideals of a finite monoid");
  monoid_input(dualize);
  common(dualize);

  auto* cuntz = app.add_subcommand("cuntz", "Compute in C_n");
  cuntz->add_option("--n", o.n, "Alphabet size")->check(CLI::Range(2u, 10u));
  std::vector<std::string> all_ops = cuntz_ops();
  for (const auto& w : witness_operations()) all_ops.push_back(w);
  cuntz->add_option("--op", o.op, "Operation")->required()->check(CLI::IsMember(all_ops));
  cuntz->add_option("--depth-cap", o.depth_cap, "Longest word allowed")->check(CLI::PositiveNumber);
  cuntz->add_option("args", o.args, "Elements, clopens or words");
  common(cuntz);

  auto* verify = app.add_subcommand("verify", "Run an invariant suite or re-verify a certificate");
  verify->add_option("--suite", o.suite, "Suite name")->check(CLI::IsMember(suite_names()));
  verify->add_option("--seed", o.seed, "Random seed");
  verify->add_option("--certificate", o.certificate, "Certificate file to re-verify");
  common(verify);

  auto* dot = app.add_subcommand("export-dot", "Graphviz DOT for a groupoid, or for G(S) with --dual");
  monoid_input(dot);
  dot->add_flag("--dual", o.dual, "Export the dual groupoid of kb(--monoid)");
  dot->add_option("--out", o.out, "Write to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return run_analyze(o);
    if (*dualize) return run_dualize(o);
    if (*cuntz) return run_cuntz(o);
    if (*verify) return run_verify(o);
    if (*dot) return run_export_dot(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
