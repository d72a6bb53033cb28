#ifndef ACHCR_EXAMPLES_HPP
#define ACHCR_EXAMPLES_HPP

#include "achcr/algebra.hpp"

namespace achcr {

enum class Provenance { PaperImplied, DerivedByHand, RecordOnly };

std::string to_string(Provenance p);

struct Expectation {
  std::string check;    // "obstruction", "seed_phi_1_1bar", "identities", ...
  std::string outcome;  // "zero", "pass", an exact value, or "record-only"
  Provenance provenance;
};

struct ExampleCase {
  std::string name;
  CRFrameAlgebra algebra;
  std::vector<Expectation> expectations;
  // set on rescaled variants used by the scaling-law check
  std::string scaling_base;
  Rational lambda = 1;
};

// Curated cases driven by the acceptance suite and the CLI: the flat
// models, su2, a constant deformation of heisenberg(2) (integrable), the
// twisted group (nonintegrable, recorded output), and rescaled variants.
const std::vector<ExampleCase>& registry();

const ExampleCase* find_example(const std::string& name);

// Algebra for "builtin:<name>" inputs; registry names plus heisenberg<n>.
CRFrameAlgebra builtin_algebra(const std::string& name);

}  // namespace achcr

#endif
