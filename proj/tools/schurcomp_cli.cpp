#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schurcomp/io.hpp"
#include "schurcomp/schurcomp.hpp"

namespace sc = schurcomp;
namespace io = schurcomp::io;
using io::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

// Infeasibility and "the input is not what the command needs" exit with 2;
// the message says which condition failed.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  double kappa = 1.0;
  std::string mode = "definite";
  double zero_tol = -1.0;
  std::string eps;
  std::string out = "json";
  std::string a_path, d_path, k_path, s_path, cert_path;
  unsigned long long seed = 1;
};

// Matrix argument: a JSON file path, an inline JSON object, or the shorthand
// "diag:v1,v2,...".
sc::ComplexMatrix load_matrix(const std::string& arg, const char* name) {
  if (arg.empty()) throw sc::Error(sc::ErrorCode::kParse, std::string("--") + name + " is required");
  if (arg.rfind("diag:", 0) == 0) {
    std::vector<double> values;
    std::stringstream ss(arg.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        values.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw sc::Error(sc::ErrorCode::kParse, "bad diagonal entry '" + item + "'");
      }
    }
    sc::ComplexMatrix m = sc::ComplexMatrix::Zero(static_cast<sc::Index>(values.size()),
                                                  static_cast<sc::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }
  if (!arg.empty() && arg.front() == '{') {
    try {
      return io::matrix_from_json(Json::parse(arg));
    } catch (const Json::exception& e) {
      throw sc::Error(sc::ErrorCode::kParse, std::string("inline matrix: ") + e.what());
    }
  }
  return io::read_matrix_file(arg);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw sc::Error(sc::ErrorCode::kParse, "bad number '" + item + "'");
    }
  }
  return out;
}

// "start:stop:step" or a comma list.
std::vector<double> parse_grid(const std::string& s) {
  if (s.find(':') == std::string::npos) return parse_list(s);
  std::vector<double> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(parse_list(item).at(0));
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw sc::Error(sc::ErrorCode::kParse, "grid must be start:stop:step with step > 0");
  }
  std::vector<double> grid;
  const double span = parts[1] - parts[0];
  const auto count = static_cast<long>(std::floor(span / parts[2] + 1e-9));
  for (long i = 0; i <= count; ++i) grid.push_back(std::min(parts[0] + i * parts[2], parts[1]));
  return grid;
}

sc::Mode mode_of(const Options& o) { return io::mode_from_string(o.mode); }

void emit(const Json& j) { std::cout << io::dump(j); }

sc::EpsilonSchedule schedule_for(const sc::BlockSpectra& spectra, const Options& o) {
  const sc::Mode mode = mode_of(o);
  const auto verdict = sc::check_feasible(spectra, o.kappa, mode);
  if (!verdict.feasible) {
    throw Infeasible(verdict.rank_condition_ok
                         ? "infeasible: scalar condition kappa^2 lambda_i + mu_i fails"
                         : "infeasible: rank obstruction r>k");
  }
  sc::EpsilonSchedule schedule = sc::default_epsilons(spectra, o.kappa, mode);
  if (!o.eps.empty()) {
    const auto overrides = parse_list(o.eps);
    if (overrides.size() > schedule.epsilons.size()) {
      throw sc::Error(sc::ErrorCode::kScheduleInvalid,
                      "got " + std::to_string(overrides.size()) + " epsilons but r = " +
                          std::to_string(schedule.epsilons.size()));
    }
    for (std::size_t i = 0; i < overrides.size(); ++i) schedule.epsilons[i] = overrides[i];
  }
  return schedule;
}

struct Loaded {
  sc::BlockSpectra spectra;
  sc::CompletionCertificate cert;
};

Loaded load_or_construct(const Options& o) {
  Loaded l;
  if (!o.cert_path.empty()) {
    l.cert = io::certificate_from_json(io::read_json_file(o.cert_path));
    l.spectra = sc::analyze_blocks(l.cert.a, l.cert.d, l.cert.zero_tol);
    return l;
  }
  l.spectra = sc::analyze_blocks(load_matrix(o.a_path, "A"), load_matrix(o.d_path, "D"), o.zero_tol);
  l.cert = sc::build_k(l.spectra, schedule_for(l.spectra, o));
  return l;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(sc::Complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
}

int run_feasibility(const Options& o, bool want_min_kappa) {
  const auto spectra =
      sc::analyze_blocks(load_matrix(o.a_path, "A"), load_matrix(o.d_path, "D"), o.zero_tol);
  const sc::Mode mode = mode_of(o);
  const auto verdict = sc::check_feasible(spectra, o.kappa, mode);
  Json j = io::to_json(verdict);
  if (want_min_kappa) {
    const auto kappa = sc::minimal_kappa(spectra, mode);
    j["minimal_kappa"] = kappa ? Json(*kappa) : Json(nullptr);
  }
  if (!o.k_path.empty()) {
    const auto w = sc::infeasibility_witness(spectra.a, spectra.d, load_matrix(o.k_path, "K"), mode,
                                             spectra.zero_tol);
    j["witness"] = w ? io::to_json(*w) : Json(nullptr);
  }
  if (o.out == "text") {
    std::cout << "feasible: " << (verdict.feasible ? "yes" : "no") << "\n"
              << "mode: " << io::to_string(mode) << ", kappa: " << fmt(o.kappa) << "\n"
              << "k=" << verdict.k << " r=" << verdict.r << " p=" << verdict.p << "\n";
  } else {
    emit(j);
  }
  if (!verdict.feasible) {
    std::cerr << (verdict.rank_condition_ok
                      ? "infeasible: scalar condition kappa^2 lambda_i + mu_i fails"
                      : "infeasible: rank obstruction r>k")
              << "\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int run_construct(const Options& o) {
  const Loaded l = load_or_construct(o);
  if (o.out == "text") {
    std::cout << "epsilons:";
    for (double e : l.cert.schedule.epsilons) std::cout << ' ' << fmt(e);
    std::cout << "\n||K|| = " << fmt(sc::spectral_norm(l.cert.k)) << "\n";
  } else {
    emit(io::to_json(l.cert));
  }
  return kExitOk;
}

int run_spectrum(const Options& o) {
  const Loaded l = load_or_construct(o);
  const auto pred = sc::predict_spectrum(l.cert, l.spectra);
  const double tol = 1e-8 * (1.0 + sc::spectral_norm(l.cert.s));
  const auto cmp = sc::compare_spectra(pred.values(), sc::numeric_spectrum(l.cert.s), tol);
  if (o.out == "text") {
    for (const auto& e : pred.eigens) {
      std::cout << fmt(e.value) << "  " << sc::to_string(e.origin) << "  case "
                << sc::to_string(e.label) << "\n";
    }
    std::cout << "diagonalizable: " << (pred.diagonalizable ? "yes" : "no") << "\n"
              << "numeric match: " << (cmp.matched ? "yes" : "no") << " (max distance "
              << fmt(cmp.max_distance) << ")\n";
  } else {
    Json j;
    j["prediction"] = io::to_json(pred);
    j["comparison"] = io::to_json(cmp);
    j["tolerance"] = tol;
    emit(j);
  }
  if (!cmp.matched) {
    std::cerr << "tolerance violation: predicted and numeric spectra differ by "
              << fmt(cmp.max_distance) << "\n";
    return kExitError;
  }
  return kExitOk;
}

int run_rootlocus(const Options& o, int index, const std::string& grid_spec,
                  std::optional<double> lambda, std::optional<double> mu) {
  const auto grid = parse_grid(grid_spec);
  sc::RootLocus locus;
  if (lambda && mu) {
    locus = sc::root_locus(*lambda, *mu, grid, o.kappa, mode_of(o));
  } else {
    const auto spectra =
        sc::analyze_blocks(load_matrix(o.a_path, "A"), load_matrix(o.d_path, "D"), o.zero_tol);
    locus = sc::root_locus(spectra, index - 1, grid, o.kappa, mode_of(o));
  }
  if (o.out == "json") {
    emit(io::to_json(locus));
  } else {
    std::cout << sc::root_locus_csv(locus);
  }
  return kExitOk;
}

int run_jframe(const Options& o, sc::Index n, sc::Index m, bool synthesize) {
  Json j;
  if (!o.s_path.empty()) {
    const auto s = load_matrix(o.s_path, "S");
    if (n < 0 || m < 0) throw sc::Error(sc::ErrorCode::kParse, "--S needs --n and --m");
    const auto rep = sc::is_jframe_matrix(s, n, m);
    j["report"] = io::to_json(rep);
    emit(j);
    if (!rep.is_jframe_matrix) {
      std::cerr << "not a J-frame matrix\n";
      return kExitInfeasible;
    }
    return kExitOk;
  }
  Loaded l;
  if (o.cert_path.empty()) {
    l.spectra =
        sc::analyze_blocks(load_matrix(o.a_path, "A"), load_matrix(o.d_path, "D"), o.zero_tol);
    const auto ex = sc::jframe_existence(l.spectra.eigs_a, l.spectra.eigs_d, l.spectra.zero_tol);
    Json existence;
    existence["exists"] = ex.exists;
    existence["r"] = ex.r;
    existence["p"] = ex.p;
    existence["violated_indices"] = ex.violated_indices;
    j["existence"] = existence;
    if (!ex.exists) {
      emit(j);
      std::cerr << (ex.r > l.spectra.n() ? "no J-frame: rank obstruction r>n"
                                         : "no J-frame: lambda_i + mu_i <= 0")
                << "\n";
      return kExitInfeasible;
    }
    Options definite = o;
    definite.kappa = 1.0;
    definite.mode = "definite";
    l.cert = sc::build_k(l.spectra, schedule_for(l.spectra, definite));
  } else {
    l = load_or_construct(o);
  }
  j["report"] = io::to_json(sc::frame_bounds(l.cert, l.spectra));
  if (synthesize) j["family"] = io::to_json(sc::synthesize_jframe(l.cert));
  emit(j);
  return kExitOk;
}

int run_verify(const Options& o, const std::string& random_size) {
  sc::ComplexMatrix a, d, k;
  if (!random_size.empty()) {
    const auto dims = parse_list(random_size);
    if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1) {
      throw sc::Error(sc::ErrorCode::kParse, "--random expects n,m");
    }
    const auto n = static_cast<sc::Index>(dims[0]);
    const auto m = static_cast<sc::Index>(dims[1]);
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> g;
    auto draw = [&](sc::Index r, sc::Index c) {
      sc::ComplexMatrix x(r, c);
      for (sc::Index i = 0; i < r; ++i)
        for (sc::Index q = 0; q < c; ++q) x(i, q) = sc::Complex(g(rng), g(rng));
      return x;
    };
    a = sc::hermitian_part(draw(n, n)) + 0.5 * sc::ComplexMatrix::Identity(n, n);
    d = sc::hermitian_part(draw(m, m));
    k = draw(n, m);
  } else if (!o.cert_path.empty()) {
    const auto cert = io::certificate_from_json(io::read_json_file(o.cert_path));
    a = cert.a, d = cert.d, k = cert.k;
  } else {
    a = load_matrix(o.a_path, "A");
    d = load_matrix(o.d_path, "D");
    k = o.k_path.empty() ? sc::ComplexMatrix::Zero(a.rows(), d.rows()) : load_matrix(o.k_path, "K");
  }
  if (k.rows() != a.rows() || k.cols() != d.rows()) {
    throw sc::Error(sc::ErrorCode::kDimensionMismatch, "K must be n x m");
  }
  const auto rep = sc::check_identities(a, -a * k, k.adjoint() * a, d, k);
  emit(io::to_json(rep));
  if (!rep.all_ok()) {
    std::cerr << "tolerance violation: an identity check failed\n";
    return kExitError;
  }
  return kExitOk;
}

int run_demo(const Options& o, double a, double eps) {
  const auto spectra = sc::analyze_blocks(sc::ComplexMatrix::Constant(1, 1, a),
                                          sc::ComplexMatrix::Zero(1, 1), o.zero_tol);
  if (spectra.k() != 1) throw sc::Error(sc::ErrorCode::kNonpositiveLambda, "a must be positive");
  const auto cert = sc::assemble_completion(spectra, {{eps}, o.kappa, sc::Mode::kDefinite});
  const auto pred = sc::predict_spectrum(cert, spectra);
  const auto numeric = sc::numeric_spectrum(cert.s);
  const double center = a / 2;
  const auto probe = sc::jordan_rank_probe(cert.s, center);
  if (o.out == "json") {
    Json j;
    j["a"] = a;
    j["epsilon"] = eps;
    j["alpha"] = sc::alpha_value(a, 0.0);
    j["S"] = io::to_json(cert.s);
    j["prediction"] = io::to_json(pred);
    Json num = Json::array();
    for (const auto& z : numeric) num.push_back(io::to_json(z));
    j["numeric"] = num;
    j["rank_probe"] = {{"eta", center}, {"d1", probe.d1}, {"d2", probe.d2}};
    emit(j);
    return kExitOk;
  }
  std::cout << "S = [[" << fmt(a) << ", " << fmt(cert.s(0, 1).real()) << "], ["
            << fmt(cert.s(1, 0).real()) << ", 0]]\n";
  std::cout << "alpha = " << fmt(sc::alpha_value(a, 0.0)) << ", case "
            << sc::to_string(pred.eigens[0].label) << "\n";
  if (!pred.diagonalizable) {
    std::cout << "double eigenvalue " << fmt(pred.eigens[0].value)
              << " with a Jordan chain of length 2 (jordan: yes)\n";
  } else {
    std::cout << "eigenvalues " << fmt(pred.eigens[0].value) << ", " << fmt(pred.eigens[1].value)
              << " (jordan: no)\n";
  }
  std::cout << "numeric:";
  for (const auto& z : numeric) std::cout << ' ' << fmt(z);
  std::cout << "\nrank probe at " << fmt(center) << ": (" << probe.d1 << ", " << probe.d2 << ")\n";
  return kExitOk;
}

void add_common(CLI::App* cmd, Options& o, bool matrices = true) {
  cmd->add_option("--kappa", o.kappa, "Norm budget for K")->capture_default_str();
  cmd->add_option("--mode", o.mode, "definite or semidefinite")
      ->check(CLI::IsMember({"definite", "semidefinite"}))
      ->capture_default_str();
  cmd->add_option("--zero-tol", o.zero_tol, "Inertia threshold (default 1e-9 max(1, |A|+|D|))");
  cmd->add_option("--out", o.out, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  if (matrices) {
    cmd->add_option("--A", o.a_path, "A: JSON file, inline JSON or diag:v1,v2,...");
    cmd->add_option("--D", o.d_path, "D: JSON file, inline JSON or diag:v1,v2,...");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur complement completion, spectra and J-frames"};
  app.require_subcommand(1);
  Options o;

  auto* feas = app.add_subcommand("feasibility", "Decide whether a completing K exists");
  add_common(feas, o);
  bool want_min_kappa = false;
  feas->add_flag("--min-kappa", want_min_kappa, "Also bisect for the smallest feasible kappa");
  feas->add_option("--K", o.k_path, "Check this K and report a witness if it fails");

  auto* cons = app.add_subcommand("construct", "Build K = U E V* and the certificate");
  add_common(cons, o);
  cons->add_option("--eps", o.eps, "Comma list overriding the leading epsilons");

  auto* spec = app.add_subcommand("spectrum", "Predicted spectrum with a numeric cross-check");
  add_common(spec, o);
  spec->add_option("--eps", o.eps, "Comma list overriding the leading epsilons");
  spec->add_option("--cert", o.cert_path, "Certificate JSON from 'construct'");

  auto* locus = app.add_subcommand("rootlocus", "eta(eps) along a grid");
  add_common(locus, o);
  int index = 1;
  std::string grid = "0:1:0.05";
  std::optional<double> lambda, mu;
  locus->add_option("--index", index, "1-based index i")->capture_default_str();
  locus->add_option("--grid", grid, "start:stop:step or a comma list")->capture_default_str();
  locus->add_option("--lambda", lambda, "lambda_i (instead of --A/--D)");
  locus->add_option("--mu", mu, "mu_i (instead of --A/--D)");

  auto* jf = app.add_subcommand("jframe", "J-frame existence, bounds and synthesis");
  add_common(jf, o);
  sc::Index jn = -1, jm = -1;
  bool synthesize = false;
  jf->add_option("--cert", o.cert_path, "Certificate JSON from 'construct'");
  jf->add_option("--S", o.s_path, "Test an arbitrary S (needs --n, --m)");
  jf->add_option("--n", jn, "Size of the leading block");
  jf->add_option("--m", jm, "Size of the trailing block");
  jf->add_flag("--synthesize", synthesize, "Include the synthesized J-frame");

  auto* ver = app.add_subcommand("verify", "Aitken, determinant and eigenvalue inequality checks");
  add_common(ver, o);
  std::string random_size;
  ver->add_option("--K", o.k_path, "K (defaults to zero)");
  ver->add_option("--cert", o.cert_path, "Certificate JSON from 'construct'");
  ver->add_option("--random", random_size, "Random instance of size n,m");
  ver->add_option("--seed", o.seed, "Seed for --random")->capture_default_str();

  auto* demo = app.add_subcommand("demo", "The 1x1 example S = [[a, -a sqrt(eps)], [a sqrt(eps), 0]]");
  add_common(demo, o, false);
  double demo_a = 2.0, demo_eps = 0.25;
  demo->add_option("--a", demo_a, "a > 0")->capture_default_str();
  demo->add_option("--eps", demo_eps, "epsilon >= 0")->capture_default_str();
  demo->add_option("--seed", o.seed, "Unused; accepted for uniformity");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*feas) return run_feasibility(o, want_min_kappa);
    if (*cons) return run_construct(o);
    if (*spec) return run_spectrum(o);
    if (*locus) {
      if (o.out == "text" || locus->count("--out") == 0) o.out = "csv";
      return run_rootlocus(o, index, grid, lambda, mu);
    }
    if (*jf) return run_jframe(o, jn, jm, synthesize);
    if (*ver) return run_verify(o, random_size);
    if (*demo) {
      if (o.out == "json" && demo->count("--out") == 0) o.out = "text";
      return run_demo(o, demo_a, demo_eps);
    }
  } catch (const Infeasible& e) {
    std::cerr << e.what() << "\n";
    return kExitInfeasible;
  } catch (const sc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == sc::ErrorCode::kInfeasibleInput ? kExitInfeasible : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
