#include "achcr/examples.hpp"

namespace achcr {

namespace {

CRFrameAlgebra deformed_heisenberg2() {
  CRFrameAlgebra A = heisenberg(2);
  InvariantTensor hinv = levi_inverse(levi_form(A));
  InvariantTensor mul(2, {lo(K_H), lo(K_H)});
  mul.set({2, 2}, Scalar(Rational(1, 2)));
  mul.set({2, 3}, Scalar(Rational(1, 4)));
  mul.set({3, 2}, Scalar(Rational(1, 4)));
  return deform(A, contract(mul, hinv, {{1, 0}}));
}

std::vector<ExampleCase> build_registry() {
  std::vector<ExampleCase> out;

  auto flat = [](int n) {
    ExampleCase c;
    c.name = "heisenberg" + std::to_string(n);
    c.algebra = heisenberg(n);
    c.expectations = {{"obstruction", "zero", Provenance::PaperImplied},
                      {"E", "zero", Provenance::PaperImplied},
                      {"phi", "zero", Provenance::PaperImplied}};
    return c;
  };
  out.push_back(flat(1));
  out.push_back(flat(2));

  {
    ExampleCase c;
    c.name = "su2";
    c.algebra = su2();
    c.expectations = {{"obstruction", "zero", Provenance::PaperImplied},
                      {"seed_phi_1_1bar", "-1", Provenance::DerivedByHand},
                      {"identities", "pass", Provenance::PaperImplied}};
    out.push_back(c);
  }
  {
    ExampleCase c;
    c.name = "deformed_heisenberg2";
    c.algebra = deformed_heisenberg2();
    c.expectations = {{"obstruction", "zero", Provenance::PaperImplied},
                      {"identities", "pass", Provenance::PaperImplied}};
    out.push_back(c);
  }
  {
    ExampleCase c;
    c.name = "twisted_heisenberg2";
    c.algebra = twisted_heisenberg(2, Scalar(1));
    c.expectations = {{"obstruction", "record-only", Provenance::RecordOnly},
                      {"identities", "pass", Provenance::PaperImplied}};
    out.push_back(c);
  }
  {
    ExampleCase c;
    c.name = "twisted_heisenberg2_rescaled4";
    c.algebra = rescale(twisted_heisenberg(2, Scalar(1)), Rational(4));
    c.scaling_base = "twisted_heisenberg2";
    c.lambda = Rational(4);
    c.expectations = {{"obstruction_scaling", "pass", Provenance::PaperImplied}};
    out.push_back(c);
  }
  {
    ExampleCase c;
    c.name = "twisted_heisenberg2_rescaled9_4";
    c.algebra = rescale(twisted_heisenberg(2, Scalar(1)), Rational(9, 4));
    c.scaling_base = "twisted_heisenberg2";
    c.lambda = Rational(9, 4);
    c.expectations = {{"obstruction_scaling", "pass", Provenance::PaperImplied}};
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::PaperImplied: return "paper-implied";
    case Provenance::DerivedByHand: return "derived-by-hand";
    case Provenance::RecordOnly: return "record-only";
  }
  return "";
}

const std::vector<ExampleCase>& registry() {
  static const std::vector<ExampleCase> r = build_registry();
  return r;
}

const ExampleCase* find_example(const std::string& name) {
  for (const ExampleCase& c : registry())
    if (c.name == name) return &c;
  return nullptr;
}

CRFrameAlgebra builtin_algebra(const std::string& name) {
  if (const ExampleCase* c = find_example(name)) return c->algebra;
  if (name.rfind("heisenberg", 0) == 0) {
    try {
      size_t pos = 0;
      int n = std::stoi(name.substr(10), &pos);
      if (pos == name.size() - 10 && n >= 1 && n <= 6) return heisenberg(n);
    } catch (const std::exception&) {
    }
  }
  throw BadParameter("unknown builtin: " + name);
}

}  // namespace achcr
