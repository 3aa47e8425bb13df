#pragma once

#include "vf/io.hpp"

#include <string>
#include <vector>

namespace vf {

/// One unit of work read from a single JSON document. Element strings are
/// parsed over x1..x{generators} with the scalars of `field`.
struct JobSpec {
  std::string command;  // basis, expand, op2, inner or falsify
  FieldSpec field = FieldSpec::standard(2);
  VarietyPresentation variety = builtin_variety("all");
  std::size_t generators = 2;
  unsigned max_deg = 3;
  VerbalSystem system;

  std::string method = "equation_ideal";  // or smallest_closed
  std::vector<std::string> ideal_generators;
  unsigned tail = 0;
  std::string identity_generator;
  unsigned window = 0;
  std::vector<std::string> target;
  std::vector<std::string> coordinate_basis;
  std::vector<std::string> hints;
  unsigned depth_bound = 16;
};

/// Throws SchemaError / ParseError on malformed input; every element string
/// is parsed once so errors surface here rather than mid-run.
JobSpec job_from_json(const Json& j);
Json to_json(const JobSpec& spec);

BasisReport run_basis(const VarietyPresentation& theta, std::size_t generators, unsigned max_deg);
/// alpha(sigma(t)) for the single ideal generator t; coordinates are read in
/// the coordinate basis when one is given.
ExpandReport run_expand(const JobSpec& spec);
/// Uses max(2, generators, identity arity) generators.
Op2Document run_op2(const JobSpec& spec);
/// Uses max(3, max_deg) as the truncation.
InnerDocument run_inner(const JobSpec& spec);
Certificate run_falsify(const JobSpec& spec);

}  // namespace vf
