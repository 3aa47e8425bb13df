#include "vf/command.hpp"

#include "vf/repro.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace vf {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string variety = "all";
  std::size_t gens = 2;
  unsigned max_deg = 3;
  std::string spec;
  bool json = false;
  std::string example;
  bool all = false;
  std::string phi = "id";
  std::string a = "1";
  std::string b = "0";
};

unsigned degree_cap() {
  const char* env = std::getenv("VF_MAX_DEG");
  if (!env || !*env) return 8;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end || v == 0 || v > 64) throw UsageError(std::string("VF_MAX_DEG must be an integer in [1, 64], got '") + env + "'");
  return static_cast<unsigned>(v);
}

void check_cap(unsigned max_deg) {
  const unsigned cap = degree_cap();
  if (max_deg > cap)
    throw UsageError("degree bound " + std::to_string(max_deg) + " exceeds the cap " + std::to_string(cap) +
                     " (raise VF_MAX_DEG)");
}

JobSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open spec file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("spec file '" + path + "' is not valid JSON: " + e.what());
  }
  JobSpec spec = job_from_json(j);
  check_cap(spec.max_deg);
  return spec;
}

JobSpec job_from_flags(const Options& o) {
  check_cap(o.max_deg);
  JobSpec spec;
  spec.variety = builtin_variety(o.variety);
  spec.generators = o.gens;
  spec.max_deg = o.max_deg;
  spec.system = VerbalSystem(FieldAutomorphism::parse(o.phi), Scalar::parse(o.a, spec.field),
                             Scalar::parse(o.b, spec.field));
  return spec;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

// ---- text forms ----------------------------------------------------------------

void print(std::ostream& out, const BasisReport& r) {
  out << "variety " << r.variety << ", " << r.generators << " generators, degrees 1.." << r.max_deg << "\n";
  out << std::left << std::setw(8) << "degree" << std::setw(6) << "dim" << "basis\n";
  std::size_t total = 0;
  for (std::size_t d = 0; d < r.dims.size(); ++d) {
    out << std::setw(8) << d + 1 << std::setw(6) << r.dims[d] << join(r.basis[d], ", ") << "\n";
    total += r.dims[d];
  }
  out << "total " << total << "\n";
}

void print(std::ostream& out, const ExpandReport& r) {
  out << "variety " << r.variety << ", system " << r.system.to_string() << "\n";
  out << "t        = " << r.source << "\n";
  out << "sigma(t) = " << r.sigma_image << "\n";
  for (std::size_t i = 0; i < r.alpha.size(); ++i) out << "alpha(x" << i + 1 << ") = " << r.alpha[i] << "\n";
  out << "coordinates of alpha(sigma(t)):\n";
  std::size_t w = 0;
  for (const auto& l : r.labels) w = std::max(w, l.size());
  for (std::size_t i = 0; i < r.labels.size(); ++i)
    out << "  " << std::left << std::setw(static_cast<int>(w)) << r.labels[i] << "  " << r.coordinates[i].to_string()
        << "\n";
}

void print(std::ostream& out, const Op2Document& d) {
  out << "variety " << d.variety << ", system " << d.system.to_string() << ", " << d.generators
      << " generators, N = " << d.max_deg << "\n";
  const Op2Report& r = d.report;
  if (r.failed_identity)
    out << "identity " << r.failed_identity->to_string() << " fails at (" << join(r.witness, ", ")
        << "): " << r.witness_value << "\n";
  else
    out << "identities hold for the derived operations\n";
  out << std::left << std::setw(14) << "multidegree" << std::setw(6) << "dim" << std::setw(6) << "rank"
      << "sigma\n";
  for (const auto& s : r.sigma)
    out << std::setw(14) << to_string(s.multidegree) << std::setw(6) << s.dimension << std::setw(6) << s.rank
        << (s.invertible() ? "invertible" : "singular") << "\n";
  out << "Op2 " << (r.passed ? "passed" : "failed") << "\n";
}

void print(std::ostream& out, const InnerDocument& d) {
  out << "variety " << d.variety << ", system " << d.system.to_string() << ", N = " << d.max_deg << "\n";
  out << to_string(d.result.status);
  if (d.result.status == InnerResult::Status::witness) out << ": mu = " << d.result.mu.to_string();
  out << " (" << d.result.detail << ")\n";
}

void print_branch(std::ostream& out, const Branch& b, int indent) {
  out << std::string(static_cast<std::size_t>(indent), ' ') << b.label << "  " << to_string(b.status);
  if (b.infeasible) out << ", infeasible";
  if (b.kernel_contains) out << ", kernel " << (*b.kernel_contains ? "contains V" : "misses V");
  out << "\n";
  const std::string pad(static_cast<std::size_t>(indent) + 4, ' ');
  for (const auto& [v, p] : b.resolved_substitutions()) out << pad << v << " = " << p.to_string() << "\n";
  for (const auto& p : b.vanishing) out << pad << p.to_string() << " = 0\n";
  for (const auto& p : b.nonvanishing) out << pad << p.to_string() << " != 0\n";
  if (!b.note.empty()) out << pad << "note: " << b.note << "\n";
  if (b.is_leaf())
    for (const auto& p : b.residual) out << pad << "residual " << p.to_string() << "\n";
  else if (b.split_kind == "hint")
    out << pad << "split on " << b.split_factors.at(0).to_string() << " = 0 | != 0\n";
  else
    out << pad << "split " << b.split_poly.to_string() << "\n";
  for (const auto& c : b.children) print_branch(out, c, indent + 2);
}

void print(std::ostream& out, const Certificate& c) {
  out << "method " << c.method << ", variety " << c.variety << ", " << c.generators << " generators, N = " << c.bound
      << "\n";
  out << "system " << c.system.to_string() << "\n";
  out << "T generated by " << join(c.ideal_generators, ", ") << " and degree >= " << c.tail << "\n";
  out << "image generated by " << join(c.image_generators, ", ") << "\n";
  if (!c.target.empty()) out << "V = span{" << join(c.target, ", ") << "}\n";
  if (!c.constraints.empty()) {
    out << "constraints:\n";
    for (std::size_t i = 0; i < c.constraints.size(); ++i)
      out << "  " << c.constraint_labels[i] << ": " << c.constraints[i].to_string() << " = 0\n";
  }
  out << "branch tree:\n";
  print_branch(out, c.tree, 2);
  if (!c.witness.empty()) out << "witness " << c.witness << "\n";
  for (const auto& n : c.notes) out << "note: " << n << "\n";
  out << "verdict " << to_string(c.verdict) << "\n";
}

void print(std::ostream& out, const ReproReport& r) {
  for (const auto& e : r.examples) {
    std::size_t ok = 0;
    for (const auto& c : e.checks) ok += c.ok;
    out << std::left << std::setw(13) << e.id << (e.passed ? "ok" : "MISMATCH") << "  " << ok << "/"
        << e.checks.size() << " checks\n";
    for (const auto& c : e.checks)
      if (!c.ok) out << "    " << c.name << ": expected " << c.expected << ", got " << c.actual << "\n";
    if (e.id == "op2_table") {
      for (const auto& row : automorphism_table())
        out << "    " << std::setw(19) << row.variety << std::setw(42) << row.description << row.quotient << "\n";
    }
  }
  if (r.passed) out << "all examples match\n";
  else out << r.mismatches.size() << " mismatches; first: " << r.mismatches.front() << "\n";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verbal operations on truncated free algebras"};
  app.name("vf");
  app.require_subcommand(1, 1);
  Options o;

  auto structure = [&](CLI::App* sub) {
    sub->add_option("--variety", o.variety, "builtin variety")->capture_default_str();
    sub->add_option("--gens", o.gens, "number of generators")->check(CLI::Range(1, 9))->capture_default_str();
    sub->add_option("--max-deg", o.max_deg, "degree bound N")->check(CLI::Range(1, 64))->capture_default_str();
  };
  auto system = [&](CLI::App* sub) {
    sub->add_option("--phi", o.phi, "field automorphism: id, swap:i,j or perm:...")->capture_default_str();
    sub->add_option("--a", o.a, "coefficient of x1x2 in the derived product")->capture_default_str();
    sub->add_option("--b", o.b, "coefficient of x2x1 in the derived product")->capture_default_str();
  };

  CLI::App* basis = app.add_subcommand("basis", "per-degree basis of the truncated free algebra");
  structure(basis);
  CLI::App* expand = app.add_subcommand("expand", "alpha(sigma(t)) for the generic linear alpha");
  expand->add_option("--spec", o.spec, "job spec (JSON)")->required();
  CLI::App* op2 = app.add_subcommand("op2", "check Op2 for a verbal system");
  structure(op2);
  system(op2);
  op2->add_option("--spec", o.spec, "job spec (JSON); overrides the other flags");
  CLI::App* inner = app.add_subcommand("inner", "look for an inner witness x -> mu x");
  structure(inner);
  system(inner);
  inner->add_option("--spec", o.spec, "job spec (JSON); overrides the other flags");
  CLI::App* falsify = app.add_subcommand("falsify", "run a falsifier and print its certificate");
  falsify->add_option("--spec", o.spec, "job spec (JSON)")->required();
  CLI::App* repro_cmd = app.add_subcommand("repro", "rerun the pinned examples against their expected values");
  auto* ex = repro_cmd->add_option("--example", o.example, "example id")->check(CLI::IsMember(example_ids()));
  auto* all = repro_cmd->add_flag("--all", o.all, "every example");
  ex->excludes(all);
  for (CLI::App* sub : {basis, expand, op2, inner, falsify, repro_cmd}) sub->add_flag("--json", o.json, "emit JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (basis->parsed()) {
      const JobSpec spec = job_from_flags(o);
      const BasisReport r = run_basis(spec.variety, spec.generators, spec.max_deg);
      o.json ? emit(out, to_json(r)) : print(out, r);
      return exit_code::ok;
    }
    if (expand->parsed()) {
      const ExpandReport r = run_expand(load_spec(o.spec));
      o.json ? emit(out, to_json(r)) : print(out, r);
      return exit_code::ok;
    }
    if (op2->parsed()) {
      const Op2Document d = run_op2(o.spec.empty() ? job_from_flags(o) : load_spec(o.spec));
      o.json ? emit(out, to_json(d)) : print(out, d);
      return exit_code::ok;
    }
    if (inner->parsed()) {
      const JobSpec spec = o.spec.empty() ? job_from_flags(o) : load_spec(o.spec);
      check_cap(std::max(3u, spec.max_deg));
      const InnerDocument d = run_inner(spec);
      o.json ? emit(out, to_json(d)) : print(out, d);
      return exit_code::ok;
    }
    if (falsify->parsed()) {
      const Certificate c = run_falsify(load_spec(o.spec));
      o.json ? emit(out, to_json(c)) : print(out, c);
      return c.verdict == Verdict::inconclusive ? exit_code::inconclusive : exit_code::ok;
    }
    if (!o.all && o.example.empty()) throw UsageError("repro needs --example ID or --all");
    const ReproReport r = repro(o.all ? example_ids() : std::vector<std::string>{o.example});
    o.json ? emit(out, to_json(r)) : print(out, r);
    return r.passed ? exit_code::ok : exit_code::inconclusive;
  } catch (const std::invalid_argument& e) {
    // ParseError, SchemaError, UsageError and precondition failures.
    err << "vf: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::domain_error& e) {
    err << "vf: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const nlohmann::json::exception& e) {
    err << "vf: malformed spec: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "vf: internal error: " << e.what() << "\n";
    return exit_code::internal;
  }
}

}  // namespace vf
