#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "dqm/series_json.hpp"
#include "dqm/suites.hpp"

using namespace dqm;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static fs::path p = [] {
    fs::path d = fs::temp_directory_path() / ("dqm_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return p;
}

int run(const std::string& args, const std::string& out_name = "stdout.txt") {
  std::string cmd = std::string(DQM_CLI_PATH) + " " + args + " > " + (scratch() / out_name).string() + " 2> " +
                    (scratch() / "stderr.txt").string();
  int s = std::system(cmd.c_str());
  return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string out(const std::string& name = "stdout.txt") { return slurp(scratch() / name); }

void write(const std::string& name, const nlohmann::json& j) { std::ofstream(scratch() / name) << j.dump(); }

}  // namespace

TEST_CASE("expand") {
  REQUIRE(run("expand --q 3 --form g --prec 50") == 0);
  USeries g = series_from_json(nlohmann::json::parse(out()));
  CHECK(g.precision() == 50);
  CHECK(g.coeff(0) == BPoly::constant(g.field(), 1));
  CHECK(g.coeff(1).is_zero());
  CHECK(g.coeff(2) == -BPoly(bracket(g.field(), 1)));
  CHECK(series_to_canonical(g) + "\n" == out());

  REQUIRE(run("expand --q 2 --form bigE --prec 64") == 0);
  const std::string first = out();
  USeries E = series_from_json(nlohmann::json::parse(first));
  USeries e = E.specialize_t();
  for (std::size_t n = 1; n <= 3; ++n) CHECK(e.coeff(n) == BPoly::constant(E.field(), 1));
  REQUIRE(run("expand --q 2 --form bigE --prec 64") == 0);
  CHECK(out() == first);

  CHECK(run("expand --q 2 --form d --prec 0") == 2);
  CHECK(run("expand --q 2 --form nope --prec 10") == 2);
  CHECK(run("expand --q 6 --form g --prec 50") == 2);
  CHECK(run("expand --q 2 --form mu --prec 64 --depth 1") == 3);
  CHECK(run("expand --q 2 --form mu --prec 64") == 0);
}

TEST_CASE("expand-element") {
  const Field& f = Field::get(2);
  GradedElement x = GradedElement::generator(f, Gen::G) * GradedElement::generator(f, Gen::BoldE) +
                    GradedElement::generator(f, Gen::BoldH).scaled(BPoly::t(f));
  nlohmann::json j = element_to_json(x);
  CHECK(element_from_json(j) == x);
  write("x.json", j);
  REQUIRE(run("expand-element --in " + (scratch() / "x.json").string() + " --prec 30") == 0);
  auto r = nlohmann::json::parse(out());
  Expander X(f, 30);
  CHECK(series_from_json(r.at("numerator")) == X.expand(x));
  CHECK(element_from_json(r.at("element")) == x);

  GradedElement F = GradedElement::bold_F(f);
  write("F.json", element_to_json(F));
  REQUIRE(run("expand-element --in " + (scratch() / "F.json").string() + " --prec 30") == 0);
  r = nlohmann::json::parse(out());
  CHECK(bpoly_from_json(f, r.at("denominator")) == BPoly::t_minus_theta_pow(f, 1).twist(1));

  std::ofstream(scratch() / "bad.json") << "{\"q\":2,\"terms\":[{\"mono\":[1]}]}";
  CHECK(run("expand-element --in " + (scratch() / "bad.json").string() + " --prec 30") == 2);
  CHECK(run("expand-element --in /nonexistent.json --prec 30") == 2);
}

TEST_CASE("verify") {
  CHECK(run("verify --suite tau-eq --q 2 --prec 200") == 0);
  auto rep = nlohmann::json::parse(out());
  CHECK(rep.at("pass") == true);
  CHECK(rep.at("suites").at("tau-eq").at("violations") == 0);

  CHECK(run("verify --suite deg-bounds --q 3 --prec 300") == 0);
  CHECK(run("verify --suite dims --q 2") == 0);
  CHECK(run("verify --suite nope --q 2") == 2);

  REQUIRE(run("verify --suite siegel --q 3 --seed 9") == 0);
  const std::string a = out();
  REQUIRE(run("verify --suite siegel --q 3 --seed 9") == 0);
  CHECK(out() == a);
}

TEST_CASE("aux") {
  REQUIRE(run("aux --q 2 --mu 9 --nu 1 --m 0") == 0);
  const std::string a = out();
  auto j = nlohmann::json::parse(a);
  CHECK(j.at("r") == 145);
  for (const auto& row : j.at("ledger")) CHECK(row.at("pass") == true);
  REQUIRE(run("aux --q 2 --mu 9 --nu 1 --m 0 --out " + (scratch() / "aux.json").string(), "ignored.txt") == 0);
  CHECK(out("aux.json") == a);

  CHECK(run("aux --q 2 --mu 8 --nu 1 --m 0") == 2);
  CHECK(run("aux --q 3 --mu 20 --nu 2 --m 1 --no-direct") == 2);
  REQUIRE(run("aux --q 3 --mu 20 --nu 2 --m 1 --allow-outside-hypothesis --no-direct --seed 3") == 0);
  const std::string b = out();
  REQUIRE(run("aux --q 3 --mu 20 --nu 2 --m 1 --allow-outside-hypothesis --no-direct --seed 3") == 0);
  CHECK(out() == b);
}

TEST_CASE("dims") {
  REQUIRE(run("dims --q 2 --format csv") == 0);
  CHECK(out() == slurp(fs::path(DQM_FIXTURE_DIR) / "v1" / "q2_N64" / "dims.csv"));
  REQUIRE(run("dims --q 3 --mu-max 60 --nu-max 4 --format json") == 0);
  CHECK(nlohmann::json::parse(out()).at("pass") == true);
  CHECK(run("dims --q 2 --format xml") == 2);
}

TEST_CASE("resultant") {
  const Field& f = Field::get(2);
  auto g = GradedElement::generator(f, Gen::G);
  auto gE = g.pow(2) * GradedElement::generator(f, Gen::BoldE);
  auto gh = g * GradedElement::generator(f, Gen::BoldH);
  write("f.json", element_to_json(gE));
  write("fp.json", element_to_json(gE + gh));
  REQUIRE(run("resultant --f " + (scratch() / "f.json").string() + " --f-prime " + (scratch() / "fp.json").string()) ==
          0);
  auto j = nlohmann::json::parse(out());
  CHECK(element_from_json(j.at("resultant")) == g.pow(2) * gh);
  CHECK(j.at("nu_star") == 1);
  write("one.json", element_to_json(gh));
  CHECK(run("resultant --f " + (scratch() / "one.json").string() + " --f-prime " + (scratch() / "one.json").string()) ==
        2);
}

TEST_CASE("golden files") {
  const std::string env = std::string("DQM_FIXTURE_DIR=") + DQM_FIXTURE_DIR + " ";
  CHECK(std::system((env + DQM_CLI_PATH + " golden --q 2 --prec 64 --check").c_str()) == 0);
  CHECK(std::system((env + DQM_CLI_PATH + " golden --q 3 --prec 50 --check").c_str()) == 0);
  fs::path empty = scratch() / "empty";
  fs::create_directories(empty);
  CHECK(run("golden --q 2 --prec 64 --check --dir " + empty.string()) == 1);
  CHECK(run("golden --q 2 --prec 16 --write --dir " + empty.string()) == 0);
  CHECK(run("golden --q 2 --prec 16 --check --dir " + empty.string()) == 0);
  CHECK(run("golden --q 2 --prec 16 --write --check --dir " + empty.string()) == 2);
}
