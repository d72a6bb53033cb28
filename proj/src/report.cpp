#include "achcr/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace achcr {

namespace {

using nlohmann::json;

std::string idx_label(int n, int i) {
  return i == 0 ? "inf" : frame_label(n, i);
}

std::string entry_key(int n, const std::vector<int>& idx) {
  std::string out;
  for (size_t k = 0; k < idx.size(); ++k) {
    if (k) out += ",";
    out += idx_label(n, idx[k]);
  }
  return out;
}

json enc(const Scalar& s) {
  return json{{"re", to_string(s.re)}, {"im", to_string(s.im)}};
}

// nonzero entries only, keyed by comma-joined frame labels
json enc_tensor(const InvariantTensor& t) {
  json out = json::object();
  t.for_each([&](const std::vector<int>& idx) {
    const Scalar& v = t.get(idx);
    if (!v.is_zero()) out[entry_key(t.n(), idx)] = enc(v);
  });
  return out;
}

json enc_series(const RhoSeries& s) {
  json out = json::object();
  for (const auto& [d, t] : s.coeffs())
    if (!t.is_zero()) out[std::to_string(d)] = enc_tensor(t);
  return out;
}

json enc_check(const std::vector<std::string>& witnesses) {
  return json{{"pass", witnesses.empty()}, {"witnesses", witnesses}};
}

std::string finish(const json& j) { return j.dump(2) + "\n"; }

std::string error_output(const std::string& kind, const std::string& message) {
  return finish(json{{"error", {{"kind", kind}, {"message", message}}}});
}

template <typename F>
CommandResult guarded(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    return {4, error_output("parse", e.what())};
  } catch (const SolverAssert& e) {
    return {3, error_output("solver-assert", e.what())};
  } catch (const TruncationError& e) {
    return {3, error_output("solver-assert", e.what())};
  } catch (const NormalFormViolation& e) {
    return {2, error_output("validation", e.what())};
  } catch (const std::invalid_argument& e) {  // BadParameter, BracketConflict, ...
    return {2, error_output("validation", e.what())};
  } catch (const std::domain_error& e) {  // degenerate Levi form etc.
    return {2, error_output("validation", e.what())};
  }
}

Rational parse_rational_field(const json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

Scalar parse_scalar_field(const json& j) {
  if (!j.is_object()) throw ParseError("coefficient must be {\"re\":..,\"im\":..}");
  Scalar out;
  if (j.contains("re")) out.re = parse_rational_field(j.at("re"), "re");
  if (j.contains("im")) out.im = parse_rational_field(j.at("im"), "im");
  return out;
}

int parse_label(int n, const json& j) {
  if (!j.is_string()) throw ParseError("frame label must be a string");
  try {
    return parse_frame_label(n, j.get<std::string>());
  } catch (const BadParameter& e) {
    throw ParseError(e.what());
  }
}

json input_header(const AlgebraDocument& doc) {
  return json{{"name", doc.name}, {"n", doc.algebra.n}};
}

// phi seeded from P, widened when a larger truncation is requested
PhiExpansion seeded_phi(const PseudohermitianData& P, int truncation) {
  PhiExpansion s = seed(P);
  if (truncation == 0) return s;
  if (truncation < default_truncation(P.n))
    throw BadParameter("truncation must be at least " +
                       std::to_string(default_truncation(P.n)) + " for n = " +
                       std::to_string(P.n));
  PhiExpansion wide = zero_phi(P.n, truncation);
  wide.phi.add_coeff(2, s.phi.coeff(2));
  return wide;
}

std::vector<std::string> compare_christoffel(const PseudohermitianData& P,
                                             const PhiExpansion& phi) {
  ACHMetric met = assemble(P, phi);
  RhoSeries diff = christoffel(met, P).Dlow - christoffel_closed_form(P, phi);
  std::vector<std::string> out;
  for (const auto& [d, t] : diff.coeffs())
    if (!t.is_zero())
      out.push_back("connection difference tensor mismatch at degree " + std::to_string(d));
  return out;
}

}  // namespace

AlgebraDocument parse_algebra_document(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }

  AlgebraDocument doc;
  try {
    if (!j.is_object() || !j.contains("n")) throw ParseError("missing field: n");
    if (!j.at("n").is_number_integer()) throw ParseError("n must be an integer");
    int n = j.at("n").get<int>();
    if (n < 1) throw ParseError("n must be positive");

    std::vector<BracketTerm> brackets;
    if (j.contains("brackets")) {
      if (!j.at("brackets").is_array()) throw ParseError("brackets must be an array");
      for (const json& b : j.at("brackets")) {
        if (!b.is_object()) throw ParseError("bracket must be an object");
        BracketTerm t;
        t.x = parse_label(n, b.at("x"));
        t.y = parse_label(n, b.at("y"));
        t.z = parse_label(n, b.at("z"));
        t.c = parse_scalar_field(b.at("c"));
        brackets.push_back(t);
      }
    }

    // reality closure: note any bracket whose conjugate was left implicit
    bool completed = false;
    for (const BracketTerm& t : brackets) {
      int cx = conj_index(n, t.x), cy = conj_index(n, t.y), cz = conj_index(n, t.z);
      bool found = false;
      for (const BracketTerm& s : brackets)
        if ((s.x == cx && s.y == cy && s.z == cz) ||
            (s.x == cy && s.y == cx && s.z == cz)) {
          found = true;
          break;
        }
      if (!found) completed = true;
    }
    if (completed) doc.notes.push_back("conjugate brackets completed by reality");

    doc.name = j.value("name", std::string("document"));
    try {
      doc.algebra = make_algebra(n, brackets);
    } catch (const BracketConflict&) {
      throw;  // a document-level inconsistency, not a parse failure
    }

    if (j.contains("options")) {
      const json& o = j.at("options");
      if (!o.is_object()) throw ParseError("options must be an object");
      if (o.contains("truncation")) {
        if (!o.at("truncation").is_number_integer())
          throw ParseError("options.truncation must be an integer");
        doc.truncation = o.at("truncation").get<int>();
      }
      if (o.contains("checks")) {
        if (!o.at("checks").is_array()) throw ParseError("options.checks must be an array");
        for (const json& c : o.at("checks")) {
          if (!c.is_string()) throw ParseError("options.checks entries must be strings");
          doc.checks.push_back(c.get<std::string>());
        }
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return doc;
}

AlgebraDocument load_algebra_document(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) {
    AlgebraDocument doc;
    doc.name = spec.substr(8);
    doc.algebra = builtin_algebra(doc.name);
    return doc;
  }
  std::ifstream in(spec);
  if (!in) throw ParseError("cannot read input: " + spec);
  std::ostringstream ss;
  ss << in.rdbuf();
  AlgebraDocument doc = parse_algebra_document(ss.str());
  if (doc.name == "document") doc.name = spec;
  return doc;
}

CommandResult cmd_validate(const std::string& input) {
  return guarded([&]() -> CommandResult {
    AlgebraDocument doc = load_algebra_document(input);
    ValidationReport rep = validate(doc.algebra);
    json out{{"input", input_header(doc)},
             {"notes", doc.notes},
             {"validation", {{"ok", rep.ok}, {"violations", rep.violations}}}};
    return {rep.ok ? 0 : 2, finish(out)};
  });
}

CommandResult cmd_solve(const std::string& input, int truncation) {
  return guarded([&]() -> CommandResult {
    AlgebraDocument doc = load_algebra_document(input);
    ValidationReport rep = validate(doc.algebra);
    json out{{"input", input_header(doc)},
             {"notes", doc.notes},
             {"validation", {{"ok", rep.ok}, {"violations", rep.violations}}}};
    if (!rep.ok) return {2, finish(out)};

    int trunc = truncation > 0 ? truncation : doc.truncation;
    PseudohermitianData P = tw_connection(doc.algebra);
    SolveResult r = solve(P, seeded_phi(P, trunc));

    out["pseudohermitian"] = json{{"h", enc_tensor(P.h)},
                                  {"torsion", enc_tensor(P.A_lo)},
                                  {"nijenhuis", enc_tensor(P.N_lo)},
                                  {"curvature", enc_tensor(P.R4)},
                                  {"ricci", enc_tensor(P.Ricci)},
                                  {"scalar_curvature", enc(P.Rscalar)}};
    out["phi"] = enc_series(r.phi.phi);
    out["obstruction"] = enc_tensor(r.obs.O);
    out["E"] = enc_tensor(r.obs.E);
    out["u"] = enc(r.obs.u);
    out["v"] = enc(r.obs.v);
    out["checks"] =
        json{{"solver", enc_check(r.obs.residuals)},
             {"second_obstruction", enc_check(second_obstruction_check(P, r.Ein, r.obs.O))},
             {"divergence", enc_check(divergence_identity(P, r.obs.O))}};

    bool ok = out["checks"]["solver"]["pass"].get<bool>() &&
              out["checks"]["second_obstruction"]["pass"].get<bool>() &&
              out["checks"]["divergence"]["pass"].get<bool>();
    return {ok ? 0 : 3, finish(out)};
  });
}

CommandResult cmd_verify(const std::string& input, std::vector<std::string> checks,
                         const Rational& lambda, int truncation) {
  return guarded([&]() -> CommandResult {
    static const std::vector<std::string> kAll = {
        "bianchi", "divergence", "second-obstruction", "table1", "scaling"};
    if (checks.empty()) checks = {"all"};
    std::vector<std::string> selected;
    for (const std::string& c : checks) {
      if (c == "all") {
        selected = kAll;
        break;
      }
      if (std::find(kAll.begin(), kAll.end(), c) == kAll.end())
        throw ParseError("unknown check: " + c);
      selected.push_back(c);
    }

    AlgebraDocument doc = load_algebra_document(input);
    ValidationReport rep = validate(doc.algebra);
    json out{{"input", input_header(doc)},
             {"notes", doc.notes},
             {"validation", {{"ok", rep.ok}, {"violations", rep.violations}}}};
    if (!rep.ok) return {2, finish(out)};

    int trunc = truncation > 0 ? truncation : doc.truncation;
    PseudohermitianData P = tw_connection(doc.algebra);
    SolveResult r = solve(P, seeded_phi(P, trunc));

    json jc = json::object();
    bool ok = true;
    for (const std::string& c : selected) {
      std::vector<std::string> w;
      if (c == "bianchi")
        w = r.obs.residuals;
      else if (c == "divergence")
        w = divergence_identity(P, r.obs.O);
      else if (c == "second-obstruction")
        w = second_obstruction_check(P, r.Ein, r.obs.O);
      else if (c == "table1")
        w = compare_christoffel(P, r.phi);
      else if (c == "scaling")
        w = scaling_law(doc.algebra, lambda);
      jc[c] = enc_check(w);
      ok = ok && w.empty();
    }
    out["checks"] = jc;
    out["pass"] = ok;
    return {ok ? 0 : 3, finish(out)};
  });
}

CommandResult cmd_sphere_coeff(int n) {
  return guarded([&]() -> CommandResult {
    if (n < 1 || n > 8) throw BadParameter("n must lie in 1..8");
    VariationCoefficients v = leading_recursion(n);
    bool ok = closed_form_check(n).empty();
    std::ostringstream out;
    for (int l = 1; l <= n; ++l)
      out << "c_" << l << " = " << to_string(v.c[l - 1]) << "\n";
    out << "a_" << (n + 1) << " = " << to_string(v.a) << "  " << (ok ? "OK" : "FAIL")
        << "\n";
    return {ok ? 0 : 3, out.str()};
  });
}

}  // namespace achcr
