// Batch front-end: expansions, verification suites, auxiliary forms,
// dimension tables, resultants and golden files.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dqm/base_forms.hpp"
#include "dqm/deformations.hpp"
#include "dqm/error.hpp"
#include "dqm/multiplicity.hpp"
#include "dqm/series_json.hpp"
#include "dqm/suites.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dqm;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kCap = 3 };

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::ZeroToPrecision:
    case ErrorCode::DepthInsufficient:
      return kCap;
    case ErrorCode::ConditionViolated:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidIndex:
    case ErrorCode::EmptySpace:
    case ErrorCode::NotHomogeneous:
    case ErrorCode::BothEFree:
    case ErrorCode::DomainMismatch:
      return kUsage;
    default:
      return kFail;
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Usage("cannot write " + out);
  f << text << '\n';
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Usage("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw Usage(path + ": " + e.what());
  }
}

const Field& field_for(unsigned q, std::size_t N) {
  const Field& f = Field::get(q);
  if (N < std::size_t(q) * q) throw Usage("--prec must be at least q^2");
  return f;
}

const std::vector<std::string> kForms = {"g", "h", "delta", "E", "bigE", "bigF", "bigH", "d", "mu"};

USeries expand_named(const std::string& form, unsigned q, std::size_t N, unsigned depth) {
  const Field& f = field_for(q, N);
  BaseFormSet b = compute_base_forms(f, N);
  if (form == "g") return b.g;
  if (form == "h") return b.h;
  if (form == "delta") return b.delta;
  if (form == "E") return b.E;
  if (form == "mu") return mu_continued_fraction(b.g, b.delta, depth ? depth : mu_depth_for(q, N), N);
  DeformationSet d = compute_deformations(b);
  if (form == "bigE") return d.E;
  if (form == "bigF") return d.F;
  if (form == "bigH") return d.H;
  return d.d;
}

std::string dims_output(unsigned q, long mu_max, long nu_max, const std::string& format) {
  DimensionReport rep = dimension_report(q, mu_max, nu_max);
  if (format == "csv") {
    std::string s = rep.to_csv();
    while (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
  }
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"mu", r.mu}, {"nu", r.nu}, {"m", r.m}, {"dim", r.dim}, {"sigma_num", r.sigma_num},
                    {"sigma_den", r.sigma_den}, {"applicable", r.applicable}, {"compatible", r.compatible},
                    {"lower_ok", r.lower_ok}, {"upper_ok", r.upper_ok}, {"positive_ok", r.positive_ok}});
  return json{{"q", q}, {"rows", rows}, {"pass", rep.pass()}}.dump();
}

fs::path fixture_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("DQM_FIXTURE_DIR")) return env;
  return "tests/fixtures";
}

// every golden file for (q, N), by file name
std::vector<std::pair<std::string, std::string>> golden_files(unsigned q, std::size_t N) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& form : kForms) {
    if (form == "mu") continue;
    out.emplace_back(form + ".json", series_to_canonical(expand_named(form, q, N, 0)));
  }
  out.emplace_back("dims.csv", dims_output(q, 40, 3, "csv"));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drinfeld quasi-modular forms: expansions and multiplicity estimates"};
  app.require_subcommand(1);

  unsigned q = 2;
  std::size_t prec = 0;
  std::string out, form, format = "json";
  auto add_q = [&](CLI::App* c) { c->add_option("--q", q, "field size")->check(CLI::PositiveNumber); };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", out, "output file, stdout when absent"); };

  auto* expand = app.add_subcommand("expand", "u-expansion of a named form");
  unsigned depth = 0;
  add_q(expand);
  expand->add_option("--form", form)->required()->check(CLI::IsMember(kForms));
  expand->add_option("--prec", prec)->required();
  expand->add_option("--depth", depth, "continued-fraction depth for mu");
  add_out(expand);

  auto* expand_el = app.add_subcommand("expand-element", "u-expansion of a graded element given as JSON");
  std::string in;
  expand_el->add_option("--in", in)->required();
  expand_el->add_option("--prec", prec)->required();
  add_out(expand_el);

  auto* verify = app.add_subcommand("verify", "run invariant suites");
  SuiteConfig cfg;
  std::string suite = "all";
  verify->add_option("--suite", suite);
  verify->add_option("--q", cfg.q);
  verify->add_option("--prec", cfg.N);
  verify->add_option("--mu-max", cfg.mu_max);
  verify->add_option("--nu-max", cfg.nu_max);
  verify->add_option("--k-max", cfg.k_max);
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--samples", cfg.samples);
  add_out(verify);

  auto* aux = app.add_subcommand("aux", "construct the auxiliary form and its ledger");
  long mu = 0, nu = 0, m = 0;
  AuxOptions aopt;
  std::uint64_t seed = 1;
  add_q(aux);
  aux->add_option("--mu", mu)->required();
  aux->add_option("--nu", nu)->required();
  aux->add_option("--m", m)->required();
  aux->add_option("--prec-slack", aopt.prec_slack);
  aux->add_option("--seed", seed, "accepted for uniformity; the construction is deterministic");
  aux->add_flag("--allow-outside-hypothesis", aopt.allow_outside_hypothesis);
  aux->add_flag("!--no-direct", aopt.direct_expansion, "skip the direct expansion of the specialized form");
  add_out(aux);

  auto* dims = app.add_subcommand("dims", "dimension table of the graded pieces");
  long mu_max = 40, nu_max = 3;
  add_q(dims);
  dims->add_option("--mu-max", mu_max);
  dims->add_option("--nu-max", nu_max);
  dims->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  add_out(dims);

  auto* res = app.add_subcommand("resultant", "resultant in E of two graded elements");
  std::string f_path, fp_path;
  res->add_option("--f", f_path)->required();
  res->add_option("--f-prime", fp_path)->required();
  add_out(res);

  auto* golden = app.add_subcommand("golden", "write or check golden files");
  std::string dir;
  bool write = false, check = false;
  add_q(golden);
  golden->add_option("--prec", prec)->required();
  golden->add_option("--dir", dir, "fixture root, overrides DQM_FIXTURE_DIR");
  auto* wflag = golden->add_flag("--write", write);
  auto* cflag = golden->add_flag("--check", check);
  wflag->excludes(cflag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  try {
    if (*expand) {
      emit(series_to_canonical(expand_named(form, q, prec, depth)), out);
      return kPass;
    }
    if (*expand_el) {
      GradedElement e = element_from_json(read_json(in));
      const Field& f = field_for(e.field().q(), prec);
      Expander X(f, prec);
      json j = {{"element", element_to_json(e)},
                {"numerator", series_to_json(X.expand_numerator(e))},
                {"denominator", bpoly_to_json(e.denominator_poly())}};
      emit(j.dump(), out);
      return kPass;
    }
    if (*verify) {
      field_for(cfg.q, cfg.N);
      std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      json report = json::object(), suites = json::object();
      bool pass = true;
      json first = nullptr;
      for (const auto& n : names) {
        SuiteResult r = run_suite(n, cfg);
        pass &= r.pass;
        if (!r.pass && first.is_null()) first = {{"suite", n}, {"counterexample", r.counterexample}};
        suites[n] = r.to_json();
        std::cerr << n << ": " << (r.pass ? "pass" : "FAIL") << " (" << r.checked << " checks)\n";
      }
      report["config"] = {{"q", cfg.q},           {"prec", cfg.N},       {"mu_max", cfg.mu_max},
                          {"nu_max", cfg.nu_max}, {"k_max", cfg.k_max}, {"seed", cfg.seed},
                          {"samples", cfg.samples}};
      report["suites"] = suites;
      report["pass"] = pass;
      report["first_failure"] = first;
      emit(report.dump(), out);
      return pass ? kPass : kFail;
    }
    if (*aux) {
      AuxFormReport r = construct_aux(Field::get(q), mu, nu, m, aopt);
      emit(r.to_json().dump(), out);
      return r.pass() ? kPass : kFail;
    }
    if (*dims) {
      emit(dims_output(q, mu_max, nu_max, format), out);
      return kPass;
    }
    if (*res) {
      GradedElement f = element_from_json(read_json(f_path));
      GradedElement fp = element_from_json(read_json(fp_path));
      ResultantLedger led = resultant_ledger(f, fp);
      json j = {{"resultant", element_to_json(resultant_in_E(f, fp))},
                {"nu_star", led.nu_star},
                {"w_star", led.w_star},
                {"m_star", led.m_star},
                {"zero", led.zero},
                {"h_power_ok", led.h_power_ok},
                {"phi0_ok", led.phi0_ok},
                {"phi0", led.phi0 ? element_to_json(*led.phi0) : json(nullptr)},
                {"pass", led.pass()}};
      emit(j.dump(), out);
      return led.pass() ? kPass : kFail;
    }
    if (*golden) {
      if (write == check) throw Usage("exactly one of --write, --check");
      field_for(q, prec);
      fs::path base = fixture_root(dir) / "v1" / ("q" + std::to_string(q) + "_N" + std::to_string(prec));
      if (write) fs::create_directories(base);
      int status = kPass;
      for (const auto& [name, text] : golden_files(q, prec)) {
        fs::path p = base / name;
        if (write) {
          emit(text, p.string());
          continue;
        }
        std::string want = fs::exists(p) ? slurp(p.string()) : std::string();
        if (want != text + '\n') {
          std::cerr << "mismatch: " << p.string() << '\n';
          status = kFail;
        }
      }
      return status;
    }
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e.code());
  }
  return kUsage;
}
