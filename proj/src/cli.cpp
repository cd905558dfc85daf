#include "kflag/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kflag/cross_check.hpp"
#include "kflag/errors.hpp"
#include "kflag/expr.hpp"
#include "kflag/flag_engine.hpp"
#include "kflag/groebner.hpp"
#include "kflag/tower_io.hpp"
#include "kflag/weyl.hpp"

namespace kflag {

namespace {

using nlohmann::json;

struct Options {
  std::string tower_path;
  std::string expression;
  std::string output;
  bool json_out = false;
  bool equivariant = false;
  bool type_a = false;
  bool groebner = false;
  std::string family;
  int vars = 0;
  std::vector<int> blocks;
};

PresentationMode mode_of(const Options& o) {
  return o.equivariant ? PresentationMode::Equivariant : PresentationMode::Ordinary;
}

int cmd_present(const Options& o, std::ostream& out) {
  const Tower t = load_tower(o.tower_path);
  const Presentation p = o.equivariant ? equivariant_presentation(t) : ordinary_presentation(t);
  if (o.json_out) {
    out << to_json(p).dump(2) << '\n';
    return kExitOk;
  }
  out << "mode: " << to_string(p.mode) << '\n' << "generators:\n";
  for (const auto& g : p.ring_generators) out << "  " << to_string(g) << '\n';
  out << "relations:\n";
  for (const auto& r : p.relations) out << "  " << to_string(r) << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.type_a && o.groebner) throw ArgumentError("--typeA and --groebner are mutually exclusive");
  const auto start = std::chrono::steady_clock::now();
  const Tower t = load_tower(o.tower_path);
  const ResourceCaps caps = ResourceCaps::from_env();
  if (o.type_a && !t.all_type_a_borel()) {
    throw UnsupportedError("--typeA requires every stage to be a full flag of family A");
  }
  const bool run_engine = o.type_a || (!o.groebner && t.all_type_a_borel());
  const bool run_oracle = !o.type_a;

  RankReport report;
  report.tower = fingerprint(t);
  report.expected = expected_rank(t);
  std::optional<QuotientEngine> engine;
  std::optional<GroebnerBasis> gb;
  if (run_engine) engine = QuotientEngine::build(t, PresentationMode::Ordinary);
  if (run_oracle) gb = buchberger(PolyRingEncoding::for_ordinary_presentation(t), caps);

  json cross = nullptr;
  if (gb) {
    report.computed = quotient_dimension(*gb);
    report.basis_size = gb->polys.size();
  } else {
    report.computed = engine->basis().size();
    report.basis_size = engine->row_count();
  }
  report.pass = report.computed && *report.computed == report.expected;
  if (engine && gb) {
    const std::uint64_t engine_rank = engine->basis().size();
    CrossCheckResult cc;
    if (report.pass) cc = cross_check(*engine, *gb);
    cross = {{"engine_rank", engine_rank},
             {"full_rank", cc.full_rank},
             {"samples", cc.samples},
             {"disagreements", cc.disagreements},
             {"pass", engine_rank == report.expected && cc.pass()}};
    report.pass = report.pass && cross["pass"].get<bool>();
  }
  report.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  if (o.json_out) {
    json j = to_json(report);
    if (!cross.is_null()) j["cross_check"] = cross;
    out << j.dump(2) << '\n';
  } else {
    out << "tower: " << report.tower << '\n'
        << "expected: " << report.expected << '\n'
        << "computed: " << (report.computed ? std::to_string(*report.computed) : "infinite") << '\n';
    if (!cross.is_null()) {
      out << "cross_check: " << (cross["pass"].get<bool>() ? "agree" : "disagree") << " ("
          << cross["samples"].get<std::size_t>() << " samples)\n";
    }
    out << "pass: " << (report.pass ? "true" : "false") << '\n'
        << "basis_size: " << report.basis_size << '\n'
        << "elapsed_ms: " << report.elapsed_ms << '\n';
  }
  return report.pass ? kExitOk : kExitVerification;
}

int cmd_nf(const Options& o, std::ostream& out) {
  const Tower t = load_tower(o.tower_path);
  const PresentationMode mode = mode_of(o);
  const LaurentPoly p = parse_poly(o.expression, VariableTable::from_tower(t, mode));
  const QuotientEngine engine = QuotientEngine::build(t, mode);
  const BasisVector v = engine.normal_form(p);
  if (o.json_out) {
    out << to_json(v).dump() << '\n';
  } else {
    out << to_string(v.expansion()) << '\n';
  }
  return kExitOk;
}

int cmd_mult(const Options& o, std::ostream& out) {
  const Tower t = load_tower(o.tower_path);
  const QuotientEngine engine = QuotientEngine::build(t, mode_of(o));
  const MultTable table = mult_table(engine);
  if (o.json_out) {
    out << to_json(engine, table).dump(2) << '\n';
    return kExitOk;
  }
  const auto& basis = engine.basis();
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      out << '(' << to_string(basis[a]) << ")*(" << to_string(basis[b]) << ") = " << to_string(table[a][b].expansion())
          << '\n';
    }
  }
  return kExitOk;
}

int cmd_weyl(const Options& o, std::ostream& out) {
  const Stage s(parse_family(o.family), o.vars, o.blocks);
  std::vector<std::string> invariants;
  for (const auto& g : invariant_generators(s)) invariants.push_back(to_string(g));
  std::vector<std::string> parabolic;
  for (const auto& g : parabolic_generators(s)) parabolic.push_back(to_string(g));
  if (o.json_out) {
    json j = {{"family", std::string(to_string(s.family()))},
              {"vars", s.vars()},
              {"blocks", s.blocks()},
              {"weyl_order", weyl_order(s)},
              {"coset_rank", coset_rank(s)},
              {"invariant_generators", invariants},
              {"parabolic_generators", parabolic}};
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "family: " << to_string(s.family()) << '\n' << "vars: " << s.vars() << '\n' << "blocks:";
  for (int b : s.blocks()) out << ' ' << b;
  out << '\n' << "weyl_order: " << weyl_order(s) << '\n' << "coset_rank: " << coset_rank(s) << '\n';
  out << "invariant_generators:\n";
  for (const auto& g : invariants) out << "  " << g << '\n';
  out << "parabolic_generators:\n";
  for (const auto& g : parabolic) out << "  " << g << '\n';
  return kExitOk;
}

int exit_code(const Error& e) { return e.category() == ErrorCategory::Input ? kExitInput : kExitComputation; }

void report_error(std::ostream& err, bool as_json, const std::string& kind, const std::string& message, int code) {
  if (as_json) {
    err << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << '\n';
  } else {
    err << "kflag: " << kind << ": " << message << '\n';
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"K-rings of flag Bott towers", "kflag"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json_out, "Machine-readable JSON output");
    sub->add_option("-o,--output", o.output, "Write output to this file");
  };

  CLI::App* present = app.add_subcommand("present", "Print the K-ring presentation of a tower");
  present->add_option("tower", o.tower_path, "Tower spec JSON file")->required();
  present->add_flag("--equivariant", o.equivariant, "Equivariant presentation");
  common(present);

  CLI::App* verify = app.add_subcommand("verify", "Check that the quotient has the expected rank");
  verify->add_option("tower", o.tower_path, "Tower spec JSON file")->required();
  verify->add_flag("--typeA", o.type_a, "Use only the exact type-A engine");
  verify->add_flag("--groebner", o.groebner, "Use only the Groebner oracle over Q");
  common(verify);

  CLI::App* nf = app.add_subcommand("nf", "Normal form of an expression");
  nf->add_option("tower", o.tower_path, "Tower spec JSON file")->required();
  nf->add_option("expr", o.expression, "Polynomial expression")->required();
  nf->add_flag("--equivariant", o.equivariant, "Work over the base representation ring");
  common(nf);

  CLI::App* mult = app.add_subcommand("mult", "Structure constants in the standard-monomial basis");
  mult->add_option("tower", o.tower_path, "Tower spec JSON file")->required();
  mult->add_flag("--equivariant", o.equivariant, "Work over the base representation ring");
  common(mult);

  CLI::App* weyl = app.add_subcommand("weyl", "Weyl group data of a single stage");
  weyl->add_option("family", o.family, "A, C or B_spin")->required();
  weyl->add_option("vars", o.vars, "Number of variables")->required();
  weyl->add_option("blocks", o.blocks, "Block sizes");
  common(weyl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const bool as_json = std::any_of(argv, argv + argc, [](const char* a) { return std::string(a) == "--json"; });
    report_error(err, as_json, "argument_error", e.what(), kExitInput);
    return kExitInput;
  }

  std::ostringstream buffer;
  try {
    int code = kExitOk;
    if (*present) code = cmd_present(o, buffer);
    if (*verify) code = cmd_verify(o, buffer);
    if (*nf) code = cmd_nf(o, buffer);
    if (*mult) code = cmd_mult(o, buffer);
    if (*weyl) code = cmd_weyl(o, buffer);
    if (o.output.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(o.output, std::ios::binary);
      if (!file || !(file << buffer.str())) throw IoError("cannot write " + o.output);
    }
    return code;
  } catch (const SyntaxError& e) {
    if (o.json_out) {
      err << json{{"error",
                   {{"kind", e.kind()},
                    {"message", e.what()},
                    {"exit_code", kExitInput},
                    {"line", e.line()},
                    {"column", e.column()},
                    {"expected", e.expected()}}}}
                 .dump()
          << '\n';
    } else {
      report_error(err, false, e.kind(), e.what(), kExitInput);
    }
    return kExitInput;
  } catch (const Error& e) {
    report_error(err, o.json_out, e.kind(), e.what(), exit_code(e));
    return exit_code(e);
  } catch (const std::bad_alloc&) {
    report_error(err, o.json_out, "resource_error", "out of memory", kExitComputation);
    return kExitComputation;
  }
}

}  // namespace kflag
