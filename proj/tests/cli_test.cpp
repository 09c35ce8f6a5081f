// End-to-end checks of the installed binary through a shell. argv[1] is the
// binary path; scratch files land in the working directory ctest gives us.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_binary;
int g_failures = 0;

int run(const std::string& args) {
  const std::string cmd = "\"" + g_binary + "\" " + args;
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

void expect(bool ok, const std::string& what) {
  std::printf("%s: %s\n", ok ? "ok" : "FAILED", what.c_str());
  if (!ok) ++g_failures;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_test <binary>\n");
    return 2;
  }
  g_binary = argv[1];

  expect(run("--help > cli_help.txt 2>&1") == 0, "--help exits 0");

  expect(run("bounds s0 eps=0.1 delta=1e-3 > cli_s0.txt") == 0,
         "bounds s0 exits 0");
  expect(slurp("cli_s0.txt").find("s0 = 6") != std::string::npos,
         "bounds s0 prints the threshold");

  expect(run("bounds nosuch x=1 2> /dev/null") == 2,
         "unknown evaluator exits 2");
  expect(run("bounds thm1 p=0.26 2> /dev/null") == 2,
         "missing parameter exits 2");
  expect(run("--definitely-not-a-flag 2> /dev/null") == 2,
         "unknown flag exits 2");
  expect(run("sweep --config cli_missing.conf 2> /dev/null") == 2,
         "missing config file exits 2");

  write_file("cli_baseline.conf",
             "dist.m = 400\n"
             "mech.eta = 0\n"
             "metrics.trials = 5\n"
             "sweep.variable = c\n"
             "sweep.grid = 0.05, 0.1\n");
  expect(run("verify --config cli_baseline.conf --out cli_verify.txt") == 0,
         "verify on the non-private baseline exits 0");
  const std::string verify_text = slurp("cli_verify.txt");
  expect(verify_text.find("[N/A ]") != std::string::npos,
         "verify reports not-applicable checks");
  expect(verify_text.find("lemma2_sandwich") != std::string::npos,
         "verify covers the tail sandwich");

  expect(run("sweep --config cli_baseline.conf --out cli_sweep.csv") == 0,
         "sweep exits 0");
  expect(slurp("cli_sweep.csv").rfind("# schema=1\n", 0) == 0,
         "sweep CSV carries the schema line");

  expect(run("sweep --config cli_baseline.conf --format svg "
             "--out cli_sweep.svg") == 0,
         "sweep --format svg exits 0");
  expect(slurp("cli_sweep.svg").find("<svg") != std::string::npos,
         "sweep SVG is an svg document");

  write_file("cli_synth.conf", "dist.m = 50\ndist.c = 0.3\n");
  expect(run("gensynth --config cli_synth.conf --out cli_synth.csv") == 0,
         "gensynth exits 0");
  expect(slurp("cli_synth.csv").rfind("f0,", 0) == 0,
         "gensynth CSV starts with the feature columns");

  write_file("cli_impossible.conf",
             "dist.m = 100\n"
             "mech.eta = 0.3\n"
             "metrics.trials = 2\n"
             "sweep.variable = c\n"
             "sweep.grid = 0.001, 0.1\n");
  expect(run("sweep --config cli_impossible.conf --out cli_broken.csv "
             "2> /dev/null") == 1,
         "an unsatisfiable grid point exits 1");

  if (g_failures) {
    std::printf("%d cli checks failed\n", g_failures);
    return 1;
  }
  std::printf("all cli checks passed\n");
  return 0;
}
