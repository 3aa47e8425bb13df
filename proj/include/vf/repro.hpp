#pragma once

#include "vf/job.hpp"

#include <functional>
#include <string>
#include <vector>

namespace vf {

/// aut_1_3_4, aut_2_5, aut_6, s_1_3, s_4, op2_table, inner_table.
const std::vector<std::string>& example_ids();
bool is_example_id(const std::string& id);

/// The pinned job of a falsifier example (field Q(t1, t2), lambda = t1,
/// phi = swap where the example uses it). Throws for the two table examples.
JobSpec example_job(const std::string& id);

/// One variety row of the admissibility summary (static text).
struct VarietyTableRow {
  std::string variety;
  std::string description;
  std::string quotient;
};
const std::vector<VarietyTableRow>& automorphism_table();

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct ExampleReport {
  std::string id;
  bool passed = false;
  std::vector<Check> checks;
  /// Certificate, or the table for op2_table / inner_table.
  Json payload;
};

struct ReproReport {
  bool passed = false;
  std::vector<ExampleReport> examples;
  /// "<example>: <check>: expected ... got ..." for every failed check.
  std::vector<std::string> mismatches;
};

struct ReproOptions {
  /// Applied to every computed constraint system before comparison; lets a
  /// test seed a coefficient bug.
  std::function<void(ConstraintSystem&)> tamper;
};

ExampleReport repro_example(const std::string& id, const ReproOptions& options = {});
ReproReport repro(const std::vector<std::string>& ids, const ReproOptions& options = {});

Json to_json(const Check& c);
Json to_json(const ExampleReport& r);
Json to_json(const ReproReport& r);
ReproReport repro_report_from_json(const Json& j);

/// Parses any document the library emits (dispatching on "kind") and
/// serializes it again; throws SchemaError for unknown kinds.
Json reparse(const Json& j);

}  // namespace vf
