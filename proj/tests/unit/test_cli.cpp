#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "splitstep/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "splitstep");
  std::ostringstream out, err;
  const int code = splitstep::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("table subcommand") {
  const Outcome csv = invoke({"table", "--rule", "trapezoid"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("iterations,partitions,err1,err2\n", 0) == 0);
  CHECK(csv.out.find("\n2,1,4.5321") != std::string::npos);

  const Outcome text = invoke({"table", "--rule", "trapezoid", "--format", "table"});
  CHECK(text.code == 0);
  CHECK(text.out.find("Trapezoidal") != std::string::npos);

  CHECK(invoke({"table", "--rule", "xyz"}).code == 2);
  CHECK(invoke({"table"}).code == 2);
  CHECK(invoke({"table", "--rule", "bode", "--format", "xml"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("converge defaults reproduce the table") {
  const Outcome table = invoke({"table", "--rule", "simpson"});
  const Outcome converge = invoke({"converge", "--rule", "simpson"});
  CHECK(converge.code == 0);
  CHECK(converge.out == table.out);
  CHECK(invoke({"table", "--rule", "simpson"}).out == table.out);
}

TEST_CASE("converge options") {
  const Outcome custom = invoke({"converge", "--rule", "bode", "--iterations", "2,3", "--partitions", "1,10",
                                 "--lambda1", "1.0", "--lambda2", "2.0", "--T", "0.5"});
  CHECK(custom.code == 0);
  CHECK(custom.out.find("\n3,10,") != std::string::npos);
  CHECK(custom.out.find("\n4,") == std::string::npos);

  CHECK(invoke({"converge", "--partitions", "7"}).code == 2);
  CHECK(invoke({"converge", "--lambda1", "-1"}).code == 2);
  CHECK(invoke({"converge", "--reference", "bogus"}).code == 2);
  CHECK(invoke({"converge", "--reference", "expm", "--iterations", "2", "--partitions", "10"}).code == 0);
}

TEST_CASE("schroedinger subcommand") {
  const Outcome harmonic = invoke({"schroedinger", "--E", "0.5", "--l", "0"});
  CHECK(harmonic.code == 0);
  CHECK(harmonic.out.rfind("r,q,p,H\n", 0) == 0);
  CHECK(harmonic.out.find("# error_vs_analytic=") != std::string::npos);
  CHECK(harmonic.out.find("# energy_drift=") != std::string::npos);

  const Outcome centrifugal = invoke({"schroedinger", "--E", "0.5", "--l", "1", "--partitions", "50"});
  CHECK(centrifugal.code == 0);
  CHECK(centrifugal.out.find("# error_vs_fine_solve=") != std::string::npos);

  const Outcome singular = invoke({"schroedinger", "--l", "1", "--r0", "0"});
  CHECK(singular.code == 2);
  CHECK_FALSE(singular.err.empty());
}

TEST_CASE("check subcommand") {
  CHECK(invoke({"check", "phi"}).code == 0);
  CHECK(invoke({"check", "semigroup"}).code == 0);
  const Outcome laplace = invoke({"check", "laplace"});
  CHECK(laplace.code == 0);
  CHECK(laplace.out.find("expected SingularMatrix") != std::string::npos);
  CHECK(invoke({"check", "nonsense"}).code == 2);
}

TEST_CASE("--out writes a file") {
  const auto path = std::filesystem::temp_directory_path() / "splitstep_cli_test.csv";
  std::filesystem::remove(path);
  const Outcome run = invoke({"table", "--rule", "bode", "--out", path.string()});
  CHECK(run.code == 0);
  CHECK(run.out.empty());
  std::ifstream in(path);
  std::stringstream contents;
  contents << in.rdbuf();
  CHECK(contents.str() == invoke({"table", "--rule", "bode"}).out);
  std::filesystem::remove(path);
}
