// sepfol: command-line front end.
//
// Exit codes: 0 success or satisfiable, 1 unsatisfiable (or eval false), 2 unknown,
// 3 usage error, 4 parse error, 5 the input is outside the operation's fragment or a budget ran out.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sepfol/analysis.hpp"
#include "sepfol/bounds.hpp"
#include "sepfol/decide.hpp"
#include "sepfol/reductions.hpp"
#include "sepfol/report.hpp"
#include "sepfol/tptp.hpp"
#include "sepfol/transform.hpp"

namespace {

using namespace sepfol;

constexpr const char* kVersion = "sepfol 1.0.0";

enum Exit { kOk = 0, kUnsat = 1, kUnknown = 2, kUsage = 3, kParse = 4, kDomain = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string format = "tptp";
  bool verbose = false;
  Caps caps;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The subject is the first axiom; a file without fof entries is read as a bare formula.
Formula load_formula(const std::string& path) {
  const std::string text = read_input(path);
  if (text.find("fof") == std::string::npos) return parse_formula(text);
  Problem p = parse_tptp(text, path);
  for (const auto& f : p.formulas) {
    if (f.role == Role::Conjecture) throw UsageError("conjectures are not supported; state the sentence as an axiom");
  }
  if (p.formulas.empty()) throw UsageError("no formula in input");
  return p.formulas.front().formula;
}

Json header(const RunConfig& cfg, const std::string& command) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  if (cfg.verbose) j["version"] = kVersion;
  return j;
}

std::string label_line(const Formula& phi) {
  if (!free_vars(phi).empty()) return "% labels: (open formula)\n";
  std::string line = "% labels:";
  for (const auto& n : classify(phi).names()) line += " " + n;
  return line + "\n";
}

Json labels_of(const Formula& phi) {
  if (!free_vars(phi).empty()) return Json::array();
  return classify(phi).names();
}

// Shared output path for every command whose result is a single formula.
int emit_formula(const RunConfig& cfg, const std::string& command, const std::string& label, const Formula& phi,
                 Json extra = Json::object()) {
  if (cfg.format == "json") {
    Json j = header(cfg, command);
    j["formula"] = print_tptp(phi);
    j["labels"] = labels_of(phi);
    j.update(extra);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << label_line(phi) << print_fof(label, Role::Axiom, phi) << "\n";
  }
  return kOk;
}

int verdict_exit(const Verdict& v) {
  if (std::holds_alternative<Sat>(v)) return kOk;
  if (std::holds_alternative<Unsat>(v)) return kUnsat;
  return kUnknown;
}

void print_verdict_text(const Verdict& v) {
  std::cout << "% verdict: " << verdict_name(v);
  if (const auto* sat = std::get_if<Sat>(&v)) {
    std::cout << " (size " << sat->size << ")\n" << print_structure(sat->model) << "\n";
  } else if (const auto* unsat = std::get_if<Unsat>(&v)) {
    std::cout << " (no model up to size " << unsat->bound_checked << ")\n";
  } else {
    std::cout << " (" << to_json(v)["reason"].get<std::string>() << ")\n";
  }
}

int cmd_classify(const RunConfig& cfg, const Formula& phi) {
  const FragmentLabel label = classify(phi);
  if (cfg.format == "json") {
    Json j = header(cfg, "classify");
    j.update(to_json(label));
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  for (const auto& n : label.names()) std::cout << n << "\n";
  if (label.sf_under_alternate_prenexing) std::cout << "% separated under universal-first prenexing\n";
  return kOk;
}

int cmd_bounds(const RunConfig& cfg, const Formula& phi) {
  const Bounds b = compute_bounds(phi, cfg.caps);
  if (cfg.format == "json") {
    Json j = header(cfg, "bounds");
    j["bounds"] = to_json(b);
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "regime " << regime_name(b.regime) << "\n"
            << "m_dnf " << b.m_dnf << "\n"
            << "m_cnf " << b.m_cnf << "\n"
            << "kappa_cnf " << b.kappa_cnf << "\n"
            << "m_star " << b.m_star << "\n";
  for (const auto& [k, count] : b.per_block) std::cout << "block " << k << " " << to_string(count) << "\n";
  std::cout << "domain_bound " << to_string(b.domain_bound) << "\n";
  return kOk;
}

int cmd_to_bsr(const RunConfig& cfg, const Formula& phi, const std::string& encoding) {
  const ClauseSet cs = to_bsr_clauses(phi, encoding == "skolem" ? BsrEncoding::SkolemFn : BsrEncoding::Relational, cfg.caps);
  const Formula closed = cs.to_formula();
  if (cfg.format == "json") {
    Json j = header(cfg, "to-bsr");
    j["encoding"] = encoding;
    j["clauses"] = to_json(cs);
    j["labels"] = labels_of(closed);
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << label_line(closed) << cs.print();
  return kOk;
}

int cmd_elim_eq(const RunConfig& cfg, const Formula& phi, std::optional<std::uint64_t> k) {
  if (k) return emit_formula(cfg, "elim-eq", "equality_free", eliminate_equality_bounded(phi, *k), {{"k", *k}});
  const FragmentLabel label = classify(phi);
  if (label.contains(Fragment::SF)) {
    const Bounds b = compute_bounds(phi, cfg.caps);
    if (!b.domain_bound) throw BudgetExceeded("domain bound overflows; pass --k explicitly");
    const auto bound = b.domain_bound->convert_to<std::uint64_t>();
    return emit_formula(cfg, "elim-eq", "equality_free", eliminate_equality_bounded(phi, bound), {{"k", bound}});
  }
  if (label.contains(Fragment::RelationalMonadicEq))
    return emit_formula(cfg, "elim-eq", "equality_free", eliminate_equality_monadic(phi));
  throw UsageError("no model-size bound is known for this input; pass --k");
}

// SF inputs go straight to the search; the two extensions are reduced first.
int cmd_decide(const RunConfig& cfg, const Formula& phi) {
  const FragmentLabel label = classify(phi);
  Formula subject = phi;
  std::string reduction = "none";
  std::optional<UnaryFunctionElimination> unary;
  if (!label.contains(Fragment::SF)) {
    if (label.contains(Fragment::SFExtendedUnaryFns)) {
      unary = eliminate_unary_functions_traced(phi);
      subject = unary->formula;
      reduction = "unary-functions";
    } else if (label.contains(Fragment::RelationalMonadicEq)) {
      subject = eliminate_equality_monadic(phi);
      reduction = "monadic-equality";
    } else {
      throw NotSF("decide expects an SF sentence or one of its unary-function / monadic-equality extensions");
    }
  }
  Verdict v = decide_sf(subject, cfg.caps);
  if (auto* sat = std::get_if<Sat>(&v); sat && unary) {
    sat->model = transport_unary_model(sat->model, *unary);
    if (!eval(sat->model, {}, phi)) throw std::logic_error("transported model does not satisfy the input");
  }
  if (cfg.format == "json") {
    Json j = header(cfg, "decide");
    j["reduction"] = reduction;
    j.update(to_json(v));
    std::cout << j.dump(2) << "\n";
  } else {
    if (reduction != "none") std::cout << "% reduction: " << reduction << "\n";
    print_verdict_text(v);
  }
  return verdict_exit(v);
}

int cmd_oracle(const RunConfig& cfg, const Formula& phi, int max_size) {
  const Verdict v = oracle_decide(phi, max_size, cfg.caps);
  if (cfg.format == "json") {
    Json j = header(cfg, "oracle");
    j.update(to_json(v));
    std::cout << j.dump(2) << "\n";
  } else {
    print_verdict_text(v);
  }
  return verdict_exit(v);
}

int cmd_eval(const RunConfig& cfg, const Formula& phi, const std::string& model_path) {
  const Structure s = parse_structure(read_input(model_path));
  const bool value = eval(s, {}, phi);
  if (cfg.format == "json") {
    Json j = header(cfg, "eval");
    j["value"] = value;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (value ? "true" : "false") << "\n";
  }
  return value ? kOk : kUnsat;
}

int cmd_gen_blowup(const RunConfig& cfg, int n) {
  const auto [original, blown] = gen_blowup(n, cfg.caps);
  const std::string name = "phi_" + std::to_string(n);
  if (cfg.format == "json") {
    Json j = header(cfg, "gen-blowup");
    j["n"] = n;
    j["formula"] = print_tptp(original);
    j["labels"] = labels_of(original);
    j["transposed"] = print_tptp(blown);
    j["transposed_labels"] = labels_of(blown);
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << label_line(original) << print_fof(name, Role::Axiom, original) << "\n"
            << label_line(blown) << print_fof(name + "_transposed", Role::Axiom, blown) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tools for the separated fragment of first-order logic", "sepfol"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"tptp", "json"}));
  app.add_flag("--verbose", cfg.verbose, "Report the tool version");

  std::string file = "-", mode = "range", encoding = "relational", model;
  std::optional<std::uint64_t> k, cap;
  int max_size = 3, n = 1;

  auto file_arg = [&](CLI::App* sub) { sub->add_option("FILE", file, "Input file, '-' for stdin"); };
  auto* classify_cmd = app.add_subcommand("classify", "Fragment membership");
  auto* transpose_cmd = app.add_subcommand("transpose", "Equivalent exists-forall sentence");
  auto* bounds_cmd = app.add_subcommand("bounds", "Small-model bound");
  auto* skolem_cmd = app.add_subcommand("skolemize", "Range-restricted Skolemization");
  auto* bsr_cmd = app.add_subcommand("to-bsr", "Clause set for EPR provers");
  auto* eq_cmd = app.add_subcommand("elim-eq", "Remove equality");
  auto* fn_cmd = app.add_subcommand("elim-fn", "Remove unary function symbols");
  auto* decide_cmd = app.add_subcommand("decide", "Decide satisfiability");
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate in a finite structure");
  auto* blowup_cmd = app.add_subcommand("gen-blowup", "Formula pair with exponential transposition");
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force model search");
  for (auto* sub : {classify_cmd, transpose_cmd, bounds_cmd, skolem_cmd, bsr_cmd, eq_cmd, fn_cmd, decide_cmd, eval_cmd,
                    oracle_cmd})
    file_arg(sub);
  skolem_cmd->add_option("--mode", mode, "range, skolem, inner or open")
      ->check(CLI::IsMember({"range", "skolem", "inner", "open"}));
  bsr_cmd->add_option("--encoding", encoding, "relational or skolem")->check(CLI::IsMember({"relational", "skolem"}));
  eq_cmd->add_option("--k", k, "Model-size bound")->check(CLI::PositiveNumber);
  decide_cmd->add_option("--cap", cap, "Largest universe size to search")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--model", model, "Structure as JSON")->required();
  blowup_cmd->add_option("N", n, "Number of predicate pairs")->required()->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--max-size", max_size, "Largest universe size")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (const char* env = std::getenv("SEPFOL_CAPS")) cfg.caps = parse_caps(env, cfg.caps);
  } catch (const std::invalid_argument& e) {
    std::cerr << "sepfol: SEPFOL_CAPS: " << e.what() << "\n";
    return kUsage;
  }
  if (cap) cfg.caps.size_cap = *cap;

  try {
    if (blowup_cmd->parsed()) return cmd_gen_blowup(cfg, n);
    const Formula phi = load_formula(file);
    if (classify_cmd->parsed()) return cmd_classify(cfg, phi);
    if (transpose_cmd->parsed()) return emit_formula(cfg, "transpose", "transposed", transpose_all(phi, cfg.caps));
    if (bounds_cmd->parsed()) return cmd_bounds(cfg, phi);
    if (skolem_cmd->parsed()) {
      Formula out;
      if (mode == "range")
        out = multi_block_constraints(phi, cfg.caps);
      else if (mode == "skolem")
        out = skolemize_range_restricted(phi, cfg.caps);
      else if (mode == "inner")
        out = inner_skolemize(phi, cfg.caps);
      else
        out = range_restrict_open(phi, cfg.caps);
      return emit_formula(cfg, "skolemize", "restricted", out, {{"mode", mode}});
    }
    if (bsr_cmd->parsed()) return cmd_to_bsr(cfg, phi, encoding);
    if (eq_cmd->parsed()) return cmd_elim_eq(cfg, phi, k);
    if (fn_cmd->parsed()) return emit_formula(cfg, "elim-fn", "function_free", eliminate_unary_functions(phi));
    if (decide_cmd->parsed()) return cmd_decide(cfg, phi);
    if (eval_cmd->parsed()) return cmd_eval(cfg, phi, model);
    if (oracle_cmd->parsed()) return cmd_oracle(cfg, phi, max_size);
  } catch (const ParseError& e) {
    std::cerr << "sepfol: parse error at " << e.what() << "\n";
    return kParse;
  } catch (const UsageError& e) {
    std::cerr << "sepfol: " << e.what() << "\n";
    return kUsage;
  } catch (const SchemaError& e) {
    std::cerr << "sepfol: bad model file: " << e.what() << "\n";
    return kUsage;
  } catch (const sepfol::Error& e) {
    std::cerr << "sepfol: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}
