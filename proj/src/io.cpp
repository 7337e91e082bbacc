#include "schurcomp/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace schurcomp::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParse, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) parse_error(std::string("missing field '") + name + "'");
  return j.at(name);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " is not a number");
  return j.get<double>();
}

Index count(const Json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    parse_error(std::string(what) + " is not an integer");
  }
  const auto v = j.get<long long>();
  if (v < 0) parse_error(std::string(what) + " is negative");
  return static_cast<Index>(v);
}

// Infinite bounds (empty index sets) serialize as null.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json index_list(const std::vector<Index>& v) {
  Json out = Json::array();
  for (Index i : v) out.push_back(i);
  return out;
}

Json to_json(const InequalityCheck& c) {
  Json j;
  j["ok"] = c.ok;
  j["checked"] = c.checked;
  j["worst"] = finite_or_null(c.worst);
  return j;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json data = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) data.push_back(to_json(m(r, c)));
  }
  j["data"] = std::move(data);
  return j;
}

Json to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

ComplexMatrix matrix_from_json(const Json& j) {
  const Index rows = count(field(j, "rows"), "rows");
  const Index cols = count(field(j, "cols"), "cols");
  const Json& data = field(j, "data");
  if (!data.is_array()) parse_error("data is not an array");
  if (static_cast<Index>(data.size()) != rows * cols) {
    parse_error("data has " + std::to_string(data.size()) + " entries, expected " +
                std::to_string(rows * cols));
  }
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const Json& e = data[static_cast<std::size_t>(r * cols + c)];
      if (!e.is_array() || e.size() != 2) parse_error("entries must be [re, im] pairs");
      const double re = number(e[0], "real part");
      const double im = number(e[1], "imaginary part");
      if (!std::isfinite(re) || !std::isfinite(im)) parse_error("non-finite entry");
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

std::string_view to_string(Mode mode) {
  return mode == Mode::kDefinite ? "definite" : "semidefinite";
}

Mode mode_from_string(std::string_view s) {
  if (s == "definite") return Mode::kDefinite;
  if (s == "semidefinite") return Mode::kSemidefinite;
  parse_error("mode must be 'definite' or 'semidefinite', got '" + std::string(s) + "'");
}

Json to_json(const FeasibilityVerdict& v) {
  Json j;
  j["mode"] = to_string(v.mode);
  j["feasible"] = v.feasible;
  j["kappa"] = v.kappa;
  j["k"] = v.k;
  j["r"] = v.r;
  j["p"] = v.p;
  j["rank_condition_ok"] = v.rank_condition_ok;
  j["violated_indices"] = index_list(v.violated_indices);
  j["min_margin"] = finite_or_null(v.min_margin);
  j["zero_tol"] = v.zero_tol;
  return j;
}

Json to_json(const InfeasibilityWitness& w) {
  Json j;
  j["kind"] = w.kind == WitnessKind::kRankObstruction ? "rank_obstruction" : "this_k";
  j["quadratic_form"] = w.quadratic_form;
  j["vector"] = to_json(w.v);
  return j;
}

Json to_json(const EpsilonSchedule& s) {
  Json j;
  j["kappa"] = s.kappa;
  j["mode"] = to_string(s.mode);
  j["epsilons"] = s.epsilons;
  return j;
}

Json to_json(const CompletionCertificate& c) {
  Json j;
  j["n"] = c.n();
  j["m"] = c.m();
  j["k"] = c.k_count;
  j["r"] = c.r;
  j["p"] = c.p;
  j["zero_tol"] = c.zero_tol;
  j["schedule"] = to_json(c.schedule);
  j["A"] = to_json(c.a);
  j["D"] = to_json(c.d);
  j["E"] = to_json(c.e);
  j["K"] = to_json(c.k);
  j["S"] = to_json(c.s);
  j["schur"] = to_json(c.schur);
  return j;
}

CompletionCertificate certificate_from_json(const Json& j) {
  CompletionCertificate c;
  c.k_count = count(field(j, "k"), "k");
  c.r = count(field(j, "r"), "r");
  c.p = count(field(j, "p"), "p");
  c.zero_tol = number(field(j, "zero_tol"), "zero_tol");
  const Json& sched = field(j, "schedule");
  c.schedule.kappa = number(field(sched, "kappa"), "kappa");
  const Json& mode = field(sched, "mode");
  if (!mode.is_string()) parse_error("mode is not a string");
  c.schedule.mode = mode_from_string(mode.get<std::string>());
  const Json& eps = field(sched, "epsilons");
  if (!eps.is_array()) parse_error("epsilons is not an array");
  for (const auto& e : eps) c.schedule.epsilons.push_back(number(e, "epsilon"));
  c.a = matrix_from_json(field(j, "A"));
  c.d = matrix_from_json(field(j, "D"));
  c.e = matrix_from_json(field(j, "E"));
  c.k = matrix_from_json(field(j, "K"));
  c.s = matrix_from_json(field(j, "S"));
  c.schur = matrix_from_json(field(j, "schur"));
  const Index n = c.a.rows();
  const Index m = c.d.rows();
  if (count(field(j, "n"), "n") != n || count(field(j, "m"), "m") != m ||
      c.s.rows() != n + m || c.k.rows() != n || c.k.cols() != m) {
    parse_error("certificate dimensions are inconsistent");
  }
  return c;
}

Json to_json(const SpectrumPrediction& p) {
  Json j;
  Json eigens = Json::array();
  for (const auto& e : p.eigens) {
    Json item;
    item["value"] = to_json(e.value);
    item["origin"] = to_string(e.origin);
    item["case"] = to_string(e.label);
    item["index"] = e.index;
    eigens.push_back(std::move(item));
  }
  j["eigenvalues"] = std::move(eigens);
  j["diagonalizable"] = p.diagonalizable;
  Json chains = Json::array();
  for (const auto& c : p.jordan_chains) {
    Json item;
    item["eigenvalue"] = to_json(c.eigenvalue);
    item["index"] = c.index;
    item["lead"] = to_json(c.lead);
    item["tail"] = to_json(c.tail);
    chains.push_back(std::move(item));
  }
  j["jordan_chains"] = std::move(chains);
  j["warnings"] = p.warnings;
  return j;
}

Json to_json(const SpectrumComparison& c) {
  Json j;
  j["matched"] = c.matched;
  j["max_distance"] = c.max_distance;
  Json pairs = Json::array();
  for (const auto& p : c.pairs) {
    Json item;
    item["predicted"] = to_json(p.predicted);
    item["numeric"] = to_json(p.numeric);
    item["distance"] = p.distance;
    pairs.push_back(std::move(item));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

Json to_json(const RootLocus& locus) {
  Json j;
  j["lambda"] = locus.lambda;
  j["mu"] = locus.mu;
  j["kappa"] = locus.kappa;
  j["mode"] = to_string(locus.mode);
  j["boundaries"] = {{"lower", locus.lower_marker},
                     {"alpha", locus.alpha},
                     {"kappa_sq", locus.kappa_sq}};
  j["case_c_reachable"] = locus.case_c_reachable;
  Json pts = Json::array();
  for (const auto& pt : locus.points) {
    Json item;
    item["epsilon"] = pt.epsilon;
    item["eta_plus"] = to_json(pt.plus);
    item["eta_minus"] = to_json(pt.minus);
    item["case"] = to_string(pt.label);
    pts.push_back(std::move(item));
  }
  j["points"] = std::move(pts);
  return j;
}

Json to_json(const JFrameReport& r) {
  Json j;
  j["is_jframe_matrix"] = r.is_jframe_matrix;
  j["witness_failures"] = r.witness_failures;
  j["k_norm"] = r.k_norm;
  if (r.is_jframe_matrix) {
    j["alpha_plus"] = r.alpha_plus;
    j["beta_plus"] = r.beta_plus;
    j["alpha_minus"] = r.alpha_minus;
    j["beta_minus"] = r.beta_minus;
  }
  if (r.explicit_bounds) {
    const auto& e = *r.explicit_bounds;
    j["explicit"] = {{"alpha_plus", e.alpha_plus},
                     {"beta_plus", e.beta_plus},
                     {"alpha_minus", e.alpha_minus},
                     {"beta_minus", e.beta_minus}};
  }
  if (r.apriori) {
    const auto& a = *r.apriori;
    Json ap;
    ap["beta_minus_upper"] = a.beta_minus_upper;
    ap["alpha_plus_lower"] = a.alpha_plus_lower;
    ap["beta_plus_upper"] = a.beta_plus_upper;
    ap["beta_plus_upper_positive_sv"] = a.beta_plus_upper_positive_sv;
    ap["k_full_row_rank"] = a.k_full_row_rank;
    ap["alpha_plus_upper"] = finite_or_null(a.alpha_plus_upper);
    ap["alpha_minus_upper"] = finite_or_null(a.alpha_minus_upper);
    j["apriori"] = std::move(ap);
  }
  return j;
}

Json to_json(const JFrameFamily& f) {
  Json j;
  j["n"] = f.n;
  j["m"] = f.m;
  Json members = Json::array();
  for (std::size_t i = 0; i < f.vectors.size(); ++i) {
    Json item;
    item["vector"] = to_json(f.vectors[i]);
    item["signature"] = f.signatures[i];
    members.push_back(std::move(item));
  }
  j["members"] = std::move(members);
  return j;
}

JFrameFamily family_from_json(const Json& j) {
  JFrameFamily f;
  f.n = count(field(j, "n"), "n");
  f.m = count(field(j, "m"), "m");
  const Json& members = field(j, "members");
  if (!members.is_array()) parse_error("members is not an array");
  for (const auto& item : members) {
    const Json& vec = field(item, "vector");
    if (!vec.is_array() || static_cast<Index>(vec.size()) != f.n + f.m) {
      parse_error("frame vector has the wrong length");
    }
    ComplexVector v(f.n + f.m);
    for (std::size_t i = 0; i < vec.size(); ++i) {
      if (!vec[i].is_array() || vec[i].size() != 2) parse_error("entries must be [re, im] pairs");
      v(static_cast<Index>(i)) = Complex(number(vec[i][0], "re"), number(vec[i][1], "im"));
    }
    const Json& sig = field(item, "signature");
    if (!sig.is_number_integer() || (sig.get<int>() != 1 && sig.get<int>() != -1)) {
      parse_error("signature must be +1 or -1");
    }
    f.vectors.push_back(std::move(v));
    f.signatures.push_back(sig.get<int>());
  }
  return f;
}

Json to_json(const IdentityReport& r) {
  Json j;
  j["all_ok"] = r.all_ok();
  j["aitken"] = {{"ok", r.aitken_ok}, {"residual", r.aitken_residual}};
  j["determinant"] = {{"ok", r.determinant_ok}, {"relative_residual", r.determinant_residual}};
  j["hermitian_checks"] = r.hermitian_checks;
  if (r.hermitian_checks) {
    j["weyl"] = to_json(r.weyl);
    j["singular_product"] = to_json(r.singular_product);
    j["congruence_bound"] = to_json(r.congruence);
  }
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error("'" + path + "': " + e.what());
  }
}

ComplexMatrix read_matrix_file(const std::string& path) {
  return matrix_from_json(read_json_file(path));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace schurcomp::io
