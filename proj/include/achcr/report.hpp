#ifndef ACHCR_REPORT_HPP
#define ACHCR_REPORT_HPP

#include "achcr/examples.hpp"
#include "achcr/solver.hpp"
#include "achcr/sphere.hpp"

namespace achcr {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Parsed input: a frame algebra plus run options.
struct AlgebraDocument {
  std::string name;
  CRFrameAlgebra algebra;
  int truncation = 0;  // 0 = default_truncation(n)
  std::vector<std::string> checks;
  std::vector<std::string> notes;  // e.g. conjugate closure applied
};

// JSON text -> document. Labels are T, Z1..Zn, Zb1..Zbn; coefficients
// {"re":"p/q","im":"p/q"}. Malformed input raises ParseError.
AlgebraDocument parse_algebra_document(const std::string& json_text);

// "builtin:<name>" or a path to a JSON file.
AlgebraDocument load_algebra_document(const std::string& spec);

// Exit codes: 0 ok, 2 validation failure, 3 solver assertion, 4 parse.
struct CommandResult {
  int exit_code = 0;
  std::string output;  // JSON (validate/solve/verify) or plain text (sphere-coeff)
};

CommandResult cmd_validate(const std::string& input);
CommandResult cmd_solve(const std::string& input, int truncation = 0);
// checks: subset of {bianchi, divergence, second-obstruction, table1,
// scaling} or {all}; lambda feeds the scaling check.
CommandResult cmd_verify(const std::string& input, std::vector<std::string> checks,
                         const Rational& lambda = Rational(4), int truncation = 0);
CommandResult cmd_sphere_coeff(int n);

}  // namespace achcr

#endif
