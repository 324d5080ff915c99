#include <doctest.h>

#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kData = PAVESCHED_TEST_DATA;
const fs::path kGolden = PAVESCHED_TEST_GOLDEN;

struct Run {
  int status;
  std::string err;
};

struct Workdir {
  fs::path dir;
  Workdir() {
    dir = fs::temp_directory_path() / ("pavesched_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workdir() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run cli(const Workdir& w, const std::string& args) {
  const std::string err = w / "stderr.txt";
  const std::string cmd = std::string(PAVESCHED_CLI) + " " + args + " > " + (w / "stdout.txt") + " 2> " + err;
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(err)};
}

std::string blobs() {
  return "--segments " + (kData / "two_blobs_segments.csv").string() + " --budgets " +
         (kData / "two_blobs_budgets.csv").string();
}

}  // namespace

TEST_CASE("cluster landmark on the 2-blob file matches the golden plan") {
  Workdir w;
  const auto r = cli(w, "cluster --algo landmark --axis 0 " + blobs() + " --out " + (w / "plan.json"));
  REQUIRE(r.status == 0);
  const auto text = slurp(w / "plan.json");
  const auto j = nlohmann::json::parse(text);
  REQUIRE(j["clusters"].size() == 2);
  CHECK(j["clusters"][0]["members"].size() == 3);
  CHECK(j["clusters"][1]["members"].size() == 3);
  CHECK(j["unassigned"].empty());
  CHECK(text == slurp(kGolden / "two_blobs_landmark_plan.json"));
}

TEST_CASE("usage errors exit 2 and write nothing") {
  Workdir w;
  const std::string out = " --out " + (w / "plan.json");
  CHECK(cli(w, "cluster --algo random " + blobs() + out).status == 2);
  CHECK(cli(w, "cluster --algo landmark --seed 3 " + blobs() + out).status == 2);
  CHECK(cli(w, "cluster --algo random --seed 3 --axis 1 " + blobs() + out).status == 2);
  CHECK(cli(w, "cluster --algo landmark --e-low 1 " + blobs() + out).status == 2);
  CHECK(cli(w, "cluster --algo kmeans " + blobs() + out).status == 2);
  CHECK(cli(w, "cluster --algo landmark --segments nope.csv --budgets nope.csv" + out).status == 2);
  CHECK(cli(w, "").status == 2);
  CHECK_FALSE(fs::exists(w / "plan.json"));
}

TEST_CASE("malformed input exits 2 naming the row") {
  Workdir w;
  std::ofstream(w / "bad.csv") << "id,x,y,scheduled_year,cost\na,0,0,2018,1\nb,0,0,2018,10.005\n";
  const auto r = cli(w, "validate --segments " + (w / "bad.csv") + " --budgets " +
                            (kData / "two_blobs_budgets.csv").string());
  CHECK(r.status == 2);
  CHECK(r.err.find("row 3") != std::string::npos);
}

TEST_CASE("conservation mismatch: warning by default, exit 1 when strict") {
  Workdir w;
  const std::string data = "--segments " + (kData / "two_blobs_segments.csv").string() + " --budgets " +
                           (kData / "two_blobs_budgets_mismatch.csv").string();
  const auto strict = cli(w, "cluster --algo landmark --strict " + data + " --out " + (w / "plan.json") +
                                 " --svg " + (w / "plan.svg"));
  CHECK(strict.status == 1);
  CHECK(strict.err.find("conservation") != std::string::npos);
  CHECK_FALSE(fs::exists(w / "plan.json"));
  CHECK_FALSE(fs::exists(w / "plan.svg"));

  const auto lenient = cli(w, "cluster --algo schedule " + data + " --out " + (w / "plan.json"));
  CHECK(lenient.status == 0);
  CHECK(lenient.err.find("conservation") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(w / "plan.json"));
  bool found = false;
  for (const auto& d : j["diagnostics"]) found = found || d["kind"] == "conservation_mismatch";
  CHECK(found);

  CHECK(cli(w, "validate " + data).status == 0);
  CHECK(cli(w, "validate --strict " + data).status == 1);
  CHECK(cli(w, "validate --strict " + data + " --conservation-tolerance 1.00").status == 0);
  CHECK(cli(w, "validate --strict " + blobs()).status == 0);
}

TEST_CASE("metrics, render and compare") {
  Workdir w;
  REQUIRE(cli(w, "cluster --algo schedule --e-low 0.50 --e-high 1.00 " + blobs() + " --out " + (w / "plan.json") +
                     " --svg " + (w / "a.svg") + " --metrics " + (w / "m.json"))
              .status == 0);
  CHECK(cli(w, "metrics --plan " + (w / "plan.json") + " --out " + (w / "m2.json")).status == 0);
  CHECK(slurp(w / "m.json") == slurp(w / "m2.json"));
  CHECK(cli(w, "render --plan " + (w / "plan.json") + " --out " + (w / "b.svg")).status == 0);
  CHECK(slurp(w / "a.svg") == slurp(w / "b.svg"));
  CHECK(cli(w, "compare " + blobs() + " --after " + (w / "plan.json") + " --out " + (w / "cmp.json")).status == 0);
  const auto cmp = nlohmann::json::parse(slurp(w / "cmp.json"));
  CHECK(cmp["dispersion_delta"].get<double>() < 0.0);
  CHECK(cli(w, "compare " + blobs() + " --before " + (w / "plan.json") + " --after " + (w / "plan.json") +
                   " --out " + (w / "same.json"))
            .status == 0);
  CHECK(nlohmann::json::parse(slurp(w / "same.json"))["moved"] == 0);
}

TEST_CASE("random algorithm is reproducible per seed") {
  Workdir w;
  const std::string base = "cluster --algo random " + blobs();
  REQUIRE(cli(w, base + " --seed 5 --out " + (w / "a.json")).status == 0);
  REQUIRE(cli(w, base + " --seed 5 --out " + (w / "b.json")).status == 0);
  CHECK(slurp(w / "a.json") == slurp(w / "b.json"));
}

TEST_CASE("synth") {
  Workdir w;
  const auto r = cli(w, "synth --n 1 --blobs 1 --years 2018 --seed 4 --out-segments " + (w / "s.csv") +
                            " --out-budgets " + (w / "b.csv"));
  REQUIRE(r.status == 0);
  const auto text = slurp(w / "s.csv");
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);

  const std::string big = "synth --n 300 --blobs 3 --growth-rate 0.03 --tolerance-fraction 0.05 --seed 8";
  REQUIRE(cli(w, big + " --out-segments " + (w / "s1.csv") + " --out-budgets " + (w / "b1.csv") +
                     " --out-costs " + (w / "c1.csv"))
              .status == 0);
  REQUIRE(cli(w, big + " --out-segments " + (w / "s2.csv") + " --out-budgets " + (w / "b2.csv")).status == 0);
  CHECK(slurp(w / "s1.csv") == slurp(w / "s2.csv"));
  CHECK(slurp(w / "b1.csv") == slurp(w / "b2.csv"));
  CHECK(slurp(w / "s1.csv").rfind("id,x,y,scheduled_year,Y2018,", 0) == 0);
  CHECK(cli(w, "validate --strict --segments " + (w / "s1.csv") + " --budgets " + (w / "b1.csv") + " --costs " +
                   (w / "c1.csv"))
            .status == 0);
  CHECK(cli(w, "synth --n 0 --out-segments " + (w / "x.csv") + " --out-budgets " + (w / "y.csv")).status == 2);
}
