#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "flagcert/pipeline.hpp"

using namespace flagcert;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(FLAGCERT_TEST_TMP) / name;
  fs::remove_all(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string command = std::string(FLAGCERT_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("enumerate writes paper flag lists") {
  const fs::path dir = scratch("enumerate") / "nested";
  PipelineConfig config;
  config.s = 0;
  config.small_size = 3;
  config.out_dir = dir;
  const std::vector<fs::path> files = cmd_enumerate(config);
  REQUIRE(files.size() == 1);
  CHECK(read_file(files[0]) == "4\n000\n100\n110\n111\n");

  config.s = 1;
  config.small_size = 2;
  const std::vector<fs::path> rooted = cmd_enumerate(config);
  REQUIRE(rooted.size() == 1);
  CHECK(read_file(rooted[0]).substr(0, 2) == "2\n");
}

TEST_CASE("coefficient files are deterministic") {
  PipelineConfig config;
  config.t = 3;
  config.s = 2;
  config.small_size = 3;
  config.out_dir = scratch("coeffs-a");
  const std::vector<fs::path> a = cmd_coeffs(config);
  config.out_dir = scratch("coeffs-b");
  const std::vector<fs::path> b = cmd_coeffs(config);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].filename() == b[i].filename());
    CHECK(read_file(a[i]) == read_file(b[i]));
  }
}

TEST_CASE("certify from a solver file and verify") {
  PipelineConfig config;
  config.t = 3;
  config.s = 1;
  config.small_size = 2;
  config.out_dir = scratch("certify");
  const fs::path solution = config.out_dir / "goodman.sol";
  write_file(solution,
             "0.125 0.375 0.375 0.125\n"
             "2 1 1 1 0.7499999999\n2 1 1 2 -0.75\n2 1 2 2 0.7500000001\n2 2 5 5 0.25\n");
  const CertifyReport report = cmd_certify(config, solution);
  CHECK(report.certificate.bound == make_rational(1, 4));
  const VerifyReport verified = cmd_verify(report.certificate_path);
  CHECK(verified.accepted);
  CHECK(verified.recomputed_bound == make_rational(1, 4));

  write_file(solution, "0 0 0 0\n2 1 1 1 zero\n");
  CHECK_THROWS_AS((void)cmd_certify(config, solution), FlagError);
  CHECK_THROWS_AS((void)cmd_certify(config, config.out_dir / "missing.sol"), FlagError);
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("exit");
  CHECK(run("build-sdp --t 3 --s 1 --l1 2 --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "problem-t3-s1-l2.dat-s"));
  CHECK(run("build-sdp --t 3 --s 2 --l1 2 --out " + dir.string()) == 2);
  CHECK(run("build-sdp --t 3 --s 1 --l1 2 --format xml") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("verify " + (dir / "missing.txt").string()) == 3);

  write_file(dir / "good.txt", write_certificate(fixtures::goodman_certificate()));
  CHECK(run("verify " + (dir / "good.txt").string()) == 0);

  Certificate inflated = fixtures::goodman_certificate();
  inflated.bound += make_rational(1, 7112448000L);
  write_file(dir / "inflated.txt", write_certificate(inflated));
  CHECK(run("verify " + (dir / "inflated.txt").string()) == 1);

  std::string future = write_certificate(fixtures::goodman_certificate());
  future.replace(0, 11, "flagcert v7");
  write_file(dir / "future.txt", future);
  CHECK(run("verify " + (dir / "future.txt").string()) == 1);

  write_file(dir / "bad.sol", "0 0 0 0\n2 1 9 9 1\n");
  CHECK(run("certify --t 3 --s 1 --l1 2 --out " + dir.string() + " --solution " + (dir / "bad.sol").string()) ==
        1);
  CHECK(run("certify --t 3 --s 1 --l1 2 --out " + dir.string() + " --solver-cmd false") == 3);
}
