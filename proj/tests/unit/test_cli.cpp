#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <json.hpp>

#include "dasr/scoring.hpp"
#include "fixtures.hpp"

using namespace dasr;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + DASR_CLI + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

struct Corpus {
  fixtures::TempDir tmp;
  fs::path ref, hyp;
  Corpus() {
    ref = tmp.path() / "ref";
    hyp = tmp.path() / "sys_a";
    fixtures::copy_tree(fixtures::minicorpus() / "ref", ref);
    fixtures::copy_tree(fixtures::minicorpus() / "hyp" / "sys_a", hyp);
  }
};

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("validate /nonexistent/dir").code == 2);
  CHECK(run("score --ref /nonexistent --hyp /nonexistent").code == 2);
  CHECK(run("score --hyp x").code == 2);
  CHECK(run("--help").code == 0);
  CHECK(run("score --help").code == 0);
}

TEST_CASE("validate") {
  Corpus c;
  auto r = run("validate " + q(c.ref));
  CHECK(r.code == 0);
  write_file(c.ref / "chime6" / "transcriptions" / "dev" / "S02.json", "[{]");
  r = run("validate " + q(c.ref));
  CHECK(r.code == 1);
  CHECK(r.out.find("S02.json") != std::string::npos);
  CHECK(r.out.find("byte ") != std::string::npos);
  r = run("validate --json " + q(c.ref));
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.out).size() == 1);
}

TEST_CASE("prep, stats and score") {
  Corpus c;
  CHECK(run("prep " + q(c.ref)).code == 0);
  CHECK(fs::exists(c.ref / "dipco" / "transcriptions_scoring" / "dev" / "S21.json"));

  auto r = run("stats --json " + q(c.ref));
  CHECK(r.code == 0);
  const auto stats = nlohmann::json::parse(r.out);
  REQUIRE(stats.is_array());
  CHECK(stats.size() == 4);
  CHECK(stats_from_json(stats[0]) == corpus_stats(c.ref)[0]);
  CHECK(run("stats " + q(c.ref)).out.find("chime6") != std::string::npos);

  r = run("score --json --ref " + q(c.ref) + " --hyp " + q(c.hyp));
  CHECK(r.code == 0);
  const auto lib = report_to_json(score_submission(c.ref, c.hyp, {}));
  CHECK(r.out == lib);

  r = run("score --collar inf --json --ref " + q(c.ref) + " --hyp " + q(c.hyp));
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["config"]["collar"] == "inf");
  CHECK(run("score --collar -1 --ref " + q(c.ref) + " --hyp " + q(c.hyp)).code == 2);
  CHECK(run("score --json --csv --ref " + q(c.ref) + " --hyp " + q(c.hyp)).code == 2);

  r = run("score --csv --ref " + q(c.ref) + " --hyp " + q(c.hyp));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("level,", 0) == 0);

  r = run("score-diar --json --ref " + q(c.ref) + " --hyp " + q(c.hyp));
  CHECK(r.code == 0);
  CHECK(r.out == report_to_json(score_diarization(c.ref, c.hyp, {})));
  r = run("score-diar --no-overlap-scoring --der-collar 0 --json --ref " + q(c.ref) + " --hyp " + q(c.hyp));
  CHECK(r.code == 0);
  const auto cfg = nlohmann::json::parse(r.out)["config"];
  CHECK(cfg["der_collar"] == 0.0);
  CHECK(cfg["score_overlap"] == false);
}

TEST_CASE("multiple systems and --out") {
  Corpus c;
  const auto sys_b = c.tmp.path() / "sys_b";
  fixtures::copy_tree(c.ref, sys_b);
  const auto out = c.tmp.path() / "reports";
  const auto r = run("score --ref " + q(c.ref) + " --hyp " + q(c.hyp) + " --hyp " + q(sys_b) + " --out " + q(out));
  CHECK(r.code == 0);
  CHECK(r.out.find("sys_a") != std::string::npos);
  CHECK(r.out.find("sys_b") != std::string::npos);
  for (const char* name : {"sys_a", "sys_b"}) {
    for (const char* ext : {".json", ".csv", ".txt"}) CHECK(fs::exists(out / (std::string(name) + ext)));
  }
  CHECK(report_from_json(read_file(out / "sys_b.json")).macro_tcpwer == 0.0);

  std::string five;
  for (int k = 0; k < 5; ++k) five += " --hyp " + q(k == 0 ? c.hyp : sys_b);
  CHECK(run("score --ref " + q(c.ref) + five).code == 2);
  CHECK(run("score --ref " + q(c.ref) + " --hyp " + q(c.hyp) + " --hyp " + q(c.hyp)).code == 2);
}

TEST_CASE("scoring input errors exit 2") {
  Corpus c;
  fs::remove(c.hyp / "mixer6" / "transcriptions" / "dev" / "M02.json");
  auto r = run("score --ref " + q(c.ref) + " --hyp " + q(c.hyp));
  CHECK(r.code == 2);
  r = run("score --allow-missing --json --ref " + q(c.ref) + " --hyp " + q(c.hyp));
  CHECK(r.code == 0);
  CHECK(run("score --pre-normalized --ref " + q(c.ref) + " --hyp " + q(c.hyp)).code == 2);
}
