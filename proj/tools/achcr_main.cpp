#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "achcr/report.hpp"

namespace {

int emit(const achcr::CommandResult& r, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << r.output;
  } else {
    std::ofstream out(output_path);
    if (!out) {
      std::cerr << "cannot write " << output_path << "\n";
      return 4;
    }
    out << r.output;
  }
  return r.exit_code;
}

std::vector<std::string> split_checks(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal asymptotic Einstein solver for invariant CR structures"};
  app.require_subcommand(1);

  std::string input, output, checks_csv, lambda_str = "4";
  int truncation = 0, n = 0;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("INPUT", input, "builtin:<name> or a JSON document path");
    sub->add_option("--input", input, "same as the positional argument");
    sub->add_option("--output", output, "write the report here instead of stdout");
  };

  CLI::App* validate = app.add_subcommand("validate", "check the structure constants");
  add_input(validate);

  CLI::App* solve = app.add_subcommand("solve", "run the full pipeline and report");
  add_input(solve);
  solve->add_option("--truncation", truncation, "series truncation override");

  CLI::App* verify = app.add_subcommand("verify", "run identity check suites");
  add_input(verify);
  verify->add_option("--truncation", truncation, "series truncation override");
  verify->add_option("--checks", checks_csv,
                     "comma list: bianchi,divergence,second-obstruction,table1,scaling,all");
  verify->add_option("--lambda", lambda_str, "rescaling factor for the scaling check");

  CLI::App* sphere = app.add_subcommand("sphere-coeff",
                                        "sphere deformation coefficients c_l and a");
  sphere->add_option("--n", n, "CR dimension, 1..8")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  auto t0 = std::chrono::steady_clock::now();
  achcr::CommandResult r;
  if (validate->parsed()) {
    if (input.empty()) {
      std::cerr << "validate: missing input\n";
      return 4;
    }
    r = achcr::cmd_validate(input);
  } else if (solve->parsed()) {
    if (input.empty()) {
      std::cerr << "solve: missing input\n";
      return 4;
    }
    r = achcr::cmd_solve(input, truncation);
  } else if (verify->parsed()) {
    if (input.empty()) {
      std::cerr << "verify: missing input\n";
      return 4;
    }
    achcr::Rational lambda;
    try {
      lambda = achcr::parse_rational(lambda_str);
    } catch (const std::exception& e) {
      std::cerr << "bad --lambda: " << e.what() << "\n";
      return 4;
    }
    r = achcr::cmd_verify(input, split_checks(checks_csv), lambda, truncation);
  } else {
    r = achcr::cmd_sphere_coeff(n);
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  // timing goes to stderr so reports stay byte-identical across runs
  std::cerr << "elapsed: " << ms << " ms\n";

  return emit(r, output);
}
