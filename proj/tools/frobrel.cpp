// Command-line front end. Exit codes: 0 success, 1 check failure, 2 input error.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "frobrel/frobrel.hpp"

using json = nlohmann::json;
using namespace frobrel;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kInputError = 2;

struct Options {
  bool json = false;
  std::string file, name, to, unit, kind, structure, term, require;
  std::size_t size = 0;
  bool commutative = false;
};

json envelope_of(json body) {
  body["schema"] = 1;
  return body;
}

json flags_json(const std::vector<std::string>& names, const std::vector<bool>& flags) {
  json out = json::object();
  for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = static_cast<bool>(flags[i]);
  return out;
}

std::string flags_text(const std::string& prefix, const std::vector<std::string>& names, const std::vector<bool>& flags) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += prefix + names[i] + ": " + (flags[i] ? "pass" : "FAIL") + "\n";
  return out;
}

std::vector<std::string> subset_labels(const FinSet& s, const std::vector<bool>& sub) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < sub.size(); ++i)
    if (sub[i]) out.push_back(s.label(i));
  return out;
}

// Emits a report and returns the exit code.
int report(const Options& o, json body, const std::string& text, bool pass) {
  body["pass"] = pass;
  if (o.json) std::cout << envelope_of(std::move(body)).dump(2) << "\n";
  else std::cout << text;
  return pass ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- check

int cmd_check(const Options& o) {
  auto doc = frl::load(o.file);
  const auto& e = doc.select(o.name);
  std::vector<std::string> names;
  std::vector<bool> flags;
  std::vector<std::string> required;
  json extra = json::object();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FinSet>) {
          throw InputError("'" + e.name + "' is an object; nothing to check");
        } else if constexpr (std::is_same_v<T, FinRel>) {
          auto p = relation_properties(v, is_endo(v));
          names = {"single_valued", "total", "difunctional"};
          flags = {p.single_valued, p.total, p.difunctional};
          if (p.equivalence) {
            names.insert(names.end(), {"reflexive", "symmetric", "transitive", "equivalence"});
            flags.insert(flags.end(), {*p.reflexive, *p.symmetric, *p.transitive, *p.equivalence});
          }
        } else if constexpr (std::is_same_v<T, Frob2>) {
          auto r = check_frob2(v);
          names = Frob2Report::names();
          flags = r.flags();
          required = names;
          names.push_back("symmetric");
          flags.push_back(is_symmetric(v));
        } else if constexpr (std::is_same_v<T, Frob3>) {
          auto r = check_frob3(v);
          names = Frob3Report::names();
          flags = r.flags();
          names.push_back("sliding");
          flags.push_back(check_sliding(v));
          required = {"assoc", "dagger_symmetric"};
          json units = json::array();
          for (const auto& u : unit_candidates(v)) units.push_back(subset_labels(v.carrier, u));
          extra["unit_candidates"] = units;
        } else if constexpr (std::is_same_v<T, Connector>) {
          auto r = check_connector(v);
          names = ConnectorReport::names();
          flags = r.flags();
          required = names;
        } else {
          auto r = check_groupoid(v);
          names = GroupoidReport::names();
          flags = r.flags();
          required = names;
        }
      },
      e.value);
  bool pass = true;
  for (const auto& req : required)
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == req && !flags[i]) pass = false;
  json body{{"command", "check"}, {"name", e.name}, {"kind", frl::kind_name(e.value)},
            {"checked", names},   {"required", required}, {"flags", flags_json(names, flags)}};
  for (auto& [k, v] : extra.items()) body[k] = v;
  std::string text = frl::kind_name(e.value) + " " + e.name + "\n" + flags_text("  ", names, flags);
  if (extra.contains("unit_candidates")) text += "  unit candidates: " + extra["unit_candidates"].dump() + "\n";
  text += pass ? "result: pass\n" : "result: FAIL\n";
  return report(o, body, text, pass);
}

// -------------------------------------------------------------- convert

std::vector<bool> parse_unit(const Frob3& t, const std::string& spec) {
  std::vector<bool> e(t.size(), false);
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto i = t.carrier.index_of(tok);
    if (!i) throw InputError("'" + tok + "' is not an element of " + t.carrier.name);
    e[*i] = true;
  }
  return e;
}

std::vector<bool> choose_unit(const Frob3& t, const std::string& spec) {
  if (!spec.empty()) return parse_unit(t, spec);
  auto cands = unit_candidates(t);
  if (cands.empty()) throw PreconditionError("structure has no unit; three_to_two is undefined");
  if (cands.size() > 1) throw InputError("structure has several units; choose one with --unit");
  return cands[0];
}

int emit_document(const Options& o, const frl::Document& out, json body) {
  auto text = frl::to_string(out);
  body["frl"] = text;
  return report(o, body, text, true);
}

int cmd_convert(const Options& o) {
  auto doc = frl::load(o.file);
  const auto& e = doc.select(o.name);
  frl::Document out;
  const std::string result_name = e.name + "_" + o.to;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Frob2>) {
          if (o.to == "groupoid") out.add(result_name, frob2_to_groupoid(v));
          else if (o.to == "frob3") out.add(result_name, two_to_three(v));
          else throw InputError("frob2 converts to groupoid or frob3");
        } else if constexpr (std::is_same_v<T, Groupoid>) {
          if (o.to != "frob2") throw InputError("groupoid converts to frob2");
          out.add(result_name, groupoid_to_frob2(v));
        } else if constexpr (std::is_same_v<T, Frob3>) {
          if (o.to == "connector") out.add(result_name, frob3_to_connector(v));
          else if (o.to == "frob2") out.add(result_name, three_to_two(v, choose_unit(v, o.unit)));
          else throw InputError("frob3 converts to connector or frob2");
        } else if constexpr (std::is_same_v<T, Connector>) {
          if (o.to != "frob3") throw InputError("connector converts to frob3");
          out.add(result_name, connector_to_frob3(v));
        } else {
          throw InputError(frl::kind_name(e.value) + " '" + e.name + "' has no conversions");
        }
      },
      e.value);
  return emit_document(o, out, {{"command", "convert"}, {"name", e.name}, {"to", o.to}, {"result", result_name}});
}

template <class T>
const T& select_as(const frl::Document& doc, const std::string& name, const char* what) {
  const auto& e = doc.select(name);
  if (!std::holds_alternative<T>(e.value))
    throw InputError("'" + e.name + "' is a " + frl::kind_name(e.value) + ", expected " + what);
  return std::get<T>(e.value);
}

int cmd_split(const Options& o) {
  auto doc = frl::load(o.file);
  const auto& e = doc.select(o.name);
  const auto& t = select_as<Frob3>(doc, e.name, "frob3");
  auto sp = split_construction(t);
  auto r = check_frob2(sp.two_structure);
  bool isometry = compose(sp.i, dagger(sp.i)) == identity(Obj(sp.L));
  bool splits_l = compose(dagger(sp.i), sp.i) == l_rel(t);
  bool sym = is_symmetric(sp.two_structure);
  auto names = Frob2Report::names();
  auto flags = r.flags();
  names.insert(names.end(), {"symmetric", "isometry", "splits_l"});
  flags.insert(flags.end(), {sym, isometry, splits_l});
  bool pass = r.F1_unit_left && r.F2_unit_right && r.F3_assoc && r.F5_frobenius && sym && isometry && splits_l &&
              r.F4_special == check_frob3(t).right_idempotent;
  frl::Document out;
  out.add(e.name + "_split", sp.two_structure);
  auto text = frl::to_string(out);
  std::ostringstream os;
  os << text << "\n# classes: " << sp.L.size << "\n";
  os << flags_text("# ", names, flags);
  json body{{"command", "split"}, {"name", e.name}, {"classes", sp.L.size}, {"frl", text},
            {"checked", names},   {"flags", flags_json(names, flags)}};
  return report(o, body, os.str(), pass);
}

std::string part_tag(Envelope::Part p) {
  switch (p) {
    case Envelope::Part::Ql: return "Ql";
    case Envelope::Part::Qr: return "Qr";
    case Envelope::Part::Aminus: return "Aminus";
    case Envelope::Part::Aplus: return "Aplus";
  }
  return "?";
}

int cmd_envelope(const Options& o) {
  auto doc = frl::load(o.file);
  const auto& e = doc.select(o.name);
  const auto& t = select_as<Frob3>(doc, e.name, "frob3");
  auto env = envelope(t);
  auto r = verify_envelope(env);
  std::vector<std::string> names = Frob2Report::names();
  auto flags = r.frob2.flags();
  names.insert(names.end(), {"symmetric", "groupoid", "kappa_sub3structure", "kappa_square_zero"});
  flags.insert(flags.end(), {r.symmetric, r.groupoid, r.kappa_sub3, r.kappa_square_zero});
  frl::Document out;
  std::vector<std::string> tags;
  for (std::size_t i = 0; i < env.E.size; ++i) tags.push_back(part_tag(env.part(i)));
  std::string result_name = e.name + "_envelope";
  if (r.groupoid) out.add(result_name, frob2_to_groupoid(env.structure), tags);
  else out.add(result_name, env.structure);
  auto text = frl::to_string(out);
  std::ostringstream os;
  os << text << "\n# morphisms: " << env.E.size << " (Ql " << env.nql << ", Qr " << env.nqr << ", A- " << env.na
     << ", A+ " << env.na << ")\n";
  os << flags_text("# ", names, flags);
  json body{{"command", "envelope"},
            {"name", e.name},
            {"morphisms", env.E.size},
            {"components", {{"Ql", env.nql}, {"Qr", env.nqr}, {"Aminus", env.na}, {"Aplus", env.na}}},
            {"frl", text},
            {"checked", names},
            {"flags", flags_json(names, flags)}};
  return report(o, body, os.str(), r.all());
}

// ------------------------------------------------------------ enumerate

int cmd_enumerate(const Options& o) {
  json body{{"command", "enumerate"}, {"kind", o.kind}, {"size", o.size}};
  auto fill = [&](const auto& rep) {
    body["count"] = rep.count;
    body["candidate_space"] = rep.candidate_space;
    body["strategy"] = rep.strategy;
    body["wall_ms"] = rep.wall_ms;
  };
  if (o.kind == "frob2") {
    fill(search::enumerate_frob2(o.size));
    body["checked"] = Frob2Report::names();
  } else if (o.kind == "groupoid") {
    fill(search::enumerate_groupoids(o.size));
    body["checked"] = GroupoidReport::names();
  } else if (o.kind == "frob3") {
    search::Frob3Requirements req{false, false, false};
    std::stringstream ss(o.require.empty() ? "normal,dagger_symmetric,assoc" : o.require);
    std::string tok;
    std::vector<std::string> checked;
    while (std::getline(ss, tok, ',')) {
      if (tok == "normal") req.normal = true;
      else if (tok == "dagger_symmetric") req.dagger_symmetric = true;
      else if (tok == "assoc") req.assoc = true;
      else if (tok == "none") continue;
      else throw InputError("unknown requirement '" + tok + "'");
      checked.push_back(tok);
    }
    fill(search::enumerate_frob3(o.size, req));
    body["checked"] = checked;
  } else if (o.kind == "connector") {
    fill(search::enumerate_connectors(o.size));
    body["checked"] = ConnectorReport::names();
  } else {
    throw InputError("unknown kind '" + o.kind + "'");
  }
  std::cout << envelope_of(body).dump(2) << "\n";
  return kOk;
}

int cmd_cp_gap(const Options& o) {
  auto doc = frl::load(o.file);
  const auto& e = doc.select(o.name);
  Frob2 f;
  if (std::holds_alternative<Groupoid>(e.value)) f = groupoid_to_frob2(std::get<Groupoid>(e.value));
  else if (std::holds_alternative<Frob2>(e.value)) f = std::get<Frob2>(e.value);
  else throw InputError("'" + e.name + "' is a " + frl::kind_name(e.value) + ", expected groupoid or frob2");
  auto gap = search::find_cp_gap(f);
  json body{{"command", "search cp-gap"}, {"name", e.name}, {"found", gap.has_value()}};
  std::ostringstream os;
  if (gap) {
    body["subset"] = subset_labels(f.carrier, *gap);
    os << "completely positive but not a subgroupoid: " << json(subset_labels(f.carrier, *gap)).dump() << "\n";
  } else {
    os << "no gap: every completely positive subset is a subgroupoid\n";
  }
  body["checked"] = {"completely_positive", "subgroupoid"};
  return report(o, body, os.str(), true);
}

// -------------------------------------------------------------- diagram

Frob3 find_structure(const Options& o) {
  if (!o.file.empty()) {
    auto doc = frl::load(o.file);
    return select_as<Frob3>(doc, o.structure, "frob3");
  }
  for (const auto& [name, t] : search::curated_frob3())
    if (name == o.structure) return t;
  throw InputError("unknown structure '" + o.structure + "'; pass --file or use a built-in name such as T3");
}

int cmd_diagram_eval(const Options& o) {
  auto term = diagrams::parse(o.term);
  auto t = find_structure(o);
  auto ty = diagrams::typecheck(term, o.commutative);
  auto r = diagrams::eval(term, t, o.commutative);
  frl::Document out;
  out.add(t.carrier.name, t.carrier);
  out.add("result", r);
  auto text = frl::to_string(out);
  json pairs = json::array();
  for (auto [a, b] : r.pairs()) pairs.push_back({r.src().decode(a), r.dst().decode(b)});
  json body{{"command", "diagram eval"},
            {"term", diagrams::print(term)},
            {"type", {{"in", diagrams::word_to_string(ty.in)}, {"out", diagrams::word_to_string(ty.out)}}},
            {"pairs", pairs},
            {"frl", text}};
  return report(o, body, text, true);
}

int cmd_diagram_normalize(const Options& o) {
  auto term = diagrams::parse(o.term);
  auto d = diagrams::normalize(term, o.commutative);
  json bending = json::array();
  for (const auto& op : d.bending.ops) {
    json j{{"kind", diagrams::bend_name(op.kind)}};
    if (!op.perm.empty()) j["perm"] = op.perm;
    bending.push_back(j);
  }
  auto spider = diagrams::print(diagrams::spider_of(d));
  json body{{"command", "diagram normalize"},
            {"term", diagrams::print(term)},
            {"commutative", o.commutative},
            {"m", d.m},
            {"n", d.n},
            {"in_word", diagrams::word_to_string(d.in_word)},
            {"out_word", diagrams::word_to_string(d.out_word)},
            {"bending", bending},
            {"spider", spider}};
  std::ostringstream os;
  os << "m = " << d.m << ", n = " << d.n << "\nboundary (" << diagrams::word_to_string(d.in_word) << ") -> ("
     << diagrams::word_to_string(d.out_word) << ")\nbending:";
  if (d.bending.empty()) os << " none";
  for (const auto& op : d.bending.ops) os << " " << diagrams::bend_name(op.kind);
  os << "\nspider: " << spider << "\n";
  return report(o, body, os.str(), true);
}

int fail_input(const Options& o, const std::string& kind, const std::string& msg, int code,
               std::optional<std::pair<std::size_t, std::size_t>> pos = std::nullopt) {
  if (o.json) {
    json err{{"kind", kind}, {"message", msg}};
    if (pos) {
      err["line"] = pos->first;
      err["column"] = pos->second;
    }
    std::cout << envelope_of({{"error", err}}).dump(2) << "\n";
  }
  std::cerr << "error: " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite relational Frobenius structures: checks, conversions, constructions and diagrams"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Emit JSON reports on stdout");

  auto* check = app.add_subcommand("check", "Run the checkers for a declaration");
  check->add_option("file", o.file, ".frl file")->required();
  check->add_option("--name", o.name, "Declaration name (default: the sole structure)");
  check->add_flag("--json", o.json);

  auto* convert = app.add_subcommand("convert", "Convert between groupoid, frob2, frob3 and connector");
  convert->add_option("file", o.file)->required();
  convert->add_option("--name", o.name);
  convert->add_option("--to", o.to)->required()->check(CLI::IsMember({"groupoid", "frob2", "frob3", "connector"}));
  convert->add_option("--unit", o.unit, "Comma-separated unit elements for frob3 -> frob2");
  convert->add_flag("--json", o.json);

  auto* split = app.add_subcommand("split", "Split the left idempotent of a frob3 into a frob2");
  split->add_option("file", o.file)->required();
  split->add_option("--name", o.name);
  split->add_flag("--json", o.json);

  auto* env = app.add_subcommand("envelope", "Build the enveloping groupoid of a normal frob3");
  env->add_option("file", o.file)->required();
  env->add_option("--name", o.name);
  env->add_flag("--json", o.json);

  auto* en = app.add_subcommand("enumerate", "Count labeled structures on a small carrier (JSON)");
  en->add_option("--kind", o.kind)->required()->check(CLI::IsMember({"frob2", "groupoid", "frob3", "connector"}));
  en->add_option("--size", o.size)->required();
  en->add_option("--require", o.require, "frob3 flags: comma list of normal, dagger_symmetric, assoc, or none");
  en->add_flag("--json", o.json);

  auto* search_cmd = app.add_subcommand("search", "Counterexample searches");
  search_cmd->require_subcommand(1);
  auto* gap = search_cmd->add_subcommand("cp-gap", "Completely positive subset that is not a subgroupoid");
  gap->add_option("file", o.file)->required();
  gap->add_option("--name", o.name);
  gap->add_flag("--json", o.json);

  auto* diagram = app.add_subcommand("diagram", "String-diagram terms");
  diagram->require_subcommand(1);
  auto* deval = diagram->add_subcommand("eval", "Evaluate a term on a frob3");
  deval->add_option("--structure", o.structure, "frob3 name in --file, or a built-in name")->required();
  deval->add_option("--file", o.file, ".frl file holding the structure");
  deval->add_option("term", o.term)->required();
  deval->add_flag("--commutative", o.commutative);
  deval->add_flag("--json", o.json);
  auto* dnorm = diagram->add_subcommand("normalize", "Spider normal form of a connected term");
  dnorm->add_flag("--commutative", o.commutative);
  dnorm->add_option("term", o.term)->required();
  dnorm->add_flag("--json", o.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*check) return cmd_check(o);
    if (*convert) return cmd_convert(o);
    if (*split) return cmd_split(o);
    if (*env) return cmd_envelope(o);
    if (*en) return cmd_enumerate(o);
    if (*gap) return cmd_cp_gap(o);
    if (*deval) return cmd_diagram_eval(o);
    if (*dnorm) return cmd_diagram_normalize(o);
  } catch (const SyntaxError& e) {
    return fail_input(o, "syntax", e.what(), kInputError, std::make_pair(e.line(), e.column()));
  } catch (const TypeError& e) {
    return fail_input(o, "type", e.what(), kInputError);
  } catch (const ShapeError& e) {
    return fail_input(o, "shape", e.what(), kInputError);
  } catch (const InputError& e) {
    return fail_input(o, "input", e.what(), kInputError);
  } catch (const PreconditionError& e) {
    // The structure fails the hypotheses of the requested construction.
    return fail_input(o, "precondition", e.what(), kCheckFailed);
  } catch (const Error& e) {
    return fail_input(o, "internal", e.what(), kInputError);
  }
  return kInputError;
}
