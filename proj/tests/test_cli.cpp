#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "neighborly/cli.hpp"

using namespace neighborly;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents = "") {
  const auto dir = std::filesystem::temp_directory_path() / "neighborly_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  if (!contents.empty()) std::ofstream(path) << contents;
  return path;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("bounds prints exact value and decimal, config on stderr") {
  const auto r = run({"bounds", "--formula", "wendel", "--n", "6", "--d", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "1/2 (0.500000000000)\n");
  CHECK(r.err.find("# command=bounds") != std::string::npos);
  CHECK(r.err.find("formula=") != std::string::npos);

  const auto depth = run({"bounds", "--formula", "depth_lower", "--n", "4", "--d", "1", "--a", "1/4"});
  CHECK(depth.out == "35/128 (0.273437500000)\n");
}

TEST_CASE("bounds exit codes") {
  CHECK(run({"bounds", "--formula", "wendel", "--n", "6", "--d", "3", "--bogus"}).code == kExitUsage);
  CHECK(run({"nosuchcommand"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bounds", "--formula", "wendel", "--n", "6", "--d", "0"}).code == kExitUsage);
  CHECK(run({"bounds", "--formula", "nope", "--n", "6", "--d", "3"}).code == kExitUsage);
  const auto odd = run({"bounds", "--formula", "cyclic", "--N", "6", "--n", "5", "--d", "2"});
  CHECK(odd.code == kExitComputation);
  CHECK(odd.err.find("not a nonnegative integer") != std::string::npos);
  const auto flagged = run({"bounds", "--formula", "cyclic", "--N", "7", "--n", "4", "--d", "3"});
  CHECK(flagged.code == kExitOk);
  CHECK(flagged.out.find("[unverified parity]") != std::string::npos);
}

TEST_CASE("bounds batch") {
  const auto in = temp_file("batch.csv",
                            "formula_id,n,d,k,l,a_num,a_den,N\n"
                            "wendel,6,3,,,,,\n"
                            "neighborly_failure,20,16,2,,,,\n"
                            "cyclic,5,2,,,,,6\n"
                            "depth_lower,4,1,,,01,04,\n");
  const auto r = run({"bounds", "--batch", in.string()});
  CHECK(r.code == kExitComputation);
  CHECK(count_lines(r.out) == 5);
  CHECK(r.out.find("depth_lower,4,1,,,1/4,,35/128,") != std::string::npos);
  CHECK(r.out.find("7315/32768") != std::string::npos);
  CHECK(r.out.find("not a nonnegative integer") != std::string::npos);
}

TEST_CASE("thresholds grid to file and plot") {
  const auto csv = temp_file("curve.csv");
  const auto svg = temp_file("curve.svg");
  const auto r = run({"thresholds", "--out", csv.string(), "--plot", svg.string()});
  CHECK(r.code == kExitOk);
  std::ifstream in(csv);
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "alpha,rho_N_prime,rho_D_prime,residual");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 90);
  std::ifstream plot(svg);
  std::string first;
  std::getline(plot, first);
  CHECK(first.rfind("<svg", 0) == 0);
}

TEST_CASE("thresholds single alpha and exponent") {
  const auto r = run({"thresholds", "--alpha", "1.25"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("1.25,0.05214") != std::string::npos);
  const auto c = run({"thresholds", "--alpha", "1.25", "--beta", "0.05"});
  CHECK(c.out.find("1.25,0.05,-") != std::string::npos);
  CHECK(run({"thresholds", "--alpha", "2.5"}).code == kExitUsage);
}

TEST_CASE("oracle on a cloud file") {
  const auto cloud = temp_file("square.csv", "d=2,n=4,exact=1\n0,0\n1,0\n0,1\n1,1\n");
  const auto inside = run({"oracle", "--cloud", cloud.string(), "--query", "1/2,1/3"});
  CHECK(inside.code == kExitOk);
  CHECK(inside.out.find("containment: inside") != std::string::npos);

  const auto face = run({"oracle", "--cloud", cloud.string(), "--subset", "0,3"});
  CHECK(face.out.find("face: no") != std::string::npos);
  CHECK(face.out.find("witness verified: yes") != std::string::npos);

  const auto k = run({"oracle", "--cloud", cloud.string(), "--k", "2"});
  CHECK(k.out.find("neighborly(k=2): no") != std::string::npos);

  CHECK(run({"oracle", "--cloud", cloud.string()}).code == kExitUsage);
  CHECK(run({"oracle", "--cloud", cloud.string(), "--query", "1"}).code == kExitUsage);
  CHECK(run({"oracle", "--query", "0,0"}).code == kExitUsage);
}

TEST_CASE("gale check") {
  const auto r = run({"gale", "--d", "2", "--N", "6", "--seed", "4", "--check"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("d=3,n=6,exact=1", 0) == 0);
  CHECK(r.err.find(" 0 violations") != std::string::npos);
  CHECK(run({"gale"}).code == kExitUsage);
}

TEST_CASE("simulate single config and batch") {
  const auto r = run({"simulate", "--spec", "gaussian", "--d", "3", "--n", "6", "--trials", "2000", "--seed", "7",
                      "--workers", "2"});
  CHECK(r.code == kExitOk);
  CHECK(count_lines(r.out) == 2);
  CHECK(r.out.find("gaussian,3,6,containment,0,2000,7,") != std::string::npos);
  CHECK(r.err.find("# seed=7") != std::string::npos);

  CHECK(run({"simulate", "--d", "3", "--n", "6", "--target", "face_density"}).code == kExitUsage);
  CHECK(run({"simulate", "--spec", "blob", "--d", "3", "--n", "6"}).code == kExitUsage);
  CHECK(run({"simulate", "--d", "3", "--n", "40", "--target", "neighborliness", "--k", "4", "--subset-cap", "100"})
            .code == kExitComputation);

  const auto batch = temp_file("suite.csv",
                               "spec,d,n,target,param,trials,seed\n"
                               "cube,3,6,containment,0,200,1\n"
                               "gaussian,3,40,neighborliness,20,10,2\n");
  const auto b = run({"simulate", "--batch", batch.string()});
  CHECK(b.code == kExitOk);
  CHECK(count_lines(b.out) == 3);
  CHECK(b.out.find("subset budget exceeded") != std::string::npos);
}

TEST_CASE("verify quick") {
  const auto r = run({"verify", "--quick", "--workers", "4"});
  INFO(r.out);
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("verify: all") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("simulate") != std::string::npos);
}
