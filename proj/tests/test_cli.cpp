// Copyright 2026 The hopcurve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

using std::filesystem::path;

namespace {

const char* kCli = HOPCURVE_CLI_PATH;

int run(const std::string& args) {
  const int status = std::system((std::string(kCli) + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  path dir;
  TempDir() {
    dir = std::filesystem::temp_directory_path() /
          ("hopcurve_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

// Short rollouts keep the CLI tests quick; determinism does not depend on
// the rollout length.
const std::string kFast = " --duration 0.4 --settle 0.1 --dt 0.0005 ";

}  // namespace

TEST_CASE("map writes the documented CSV and is byte-identical across reruns and jobs") {
  TempDir tmp;
  const std::string a = tmp / "a.csv";
  const std::string b = tmp / "b.csv";
  const std::string base = "map --env original --grid 5.0 --seed 42" + kFast;
  CHECK(run(base + "--jobs 1 --out " + a) == 0);
  CHECK(run(base + "--jobs 4 --out " + b) == 0);
  const std::string text_a = slurp(a);
  CHECK(text_a == slurp(b));
  CHECK(text_a.rfind("theta0_deg,theta1_deg,reward_mps,failed\n", 0) == 0);
  // 9 x 8 nodes at 5 degrees.
  CHECK(std::count(text_a.begin(), text_a.end(), '\n') == 1 + 9 * 8);

  CHECK(run(base + "--jobs 2 --out " + a) == 0);
  CHECK(text_a == slurp(a));
}

TEST_CASE("map rejects a non-positive grid, naming the flag") {
  TempDir tmp;
  const int status = std::system((std::string(kCli) + " map --env original --grid 0 --out " +
                                  (tmp / "x.csv") + " 2>" + (tmp / "err.txt") + " >/dev/null")
                                     .c_str());
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(slurp(tmp / "err.txt").find("--grid") != std::string::npos);
}

TEST_CASE("unknown flags exit with the configuration code") {
  CHECK(run("map --definitely-not-a-flag 1") == 2);
  CHECK(run("rollout") == 2);  // missing required --params
}

TEST_CASE("map emits an SVG when asked") {
  TempDir tmp;
  const std::string svg = tmp / "l.svg";
  CHECK(run("map --env beginner --grid 10 --seed 1 --out " + (tmp / "l.csv") + " --svg " +
            svg + kFast) == 0);
  const std::string content = slurp(svg);
  CHECK(content.find("<svg") != std::string::npos);
  CHECK(content.find("</svg>") != std::string::npos);
}

TEST_CASE("learn validates the initialization against the box") {
  TempDir tmp;
  CHECK(run("learn --env beginner --init 50,20 --steps 3 --seed 7 --out " +
            (tmp / "t.csv") + kFast) == 2);
}

TEST_CASE("learn writes a bounded, reproducible trace") {
  TempDir tmp;
  const std::string a = tmp / "a.csv";
  const std::string b = tmp / "b.csv";
  const std::string cmd =
      "learn --env beginner --init 18,28 --steps 4 --seed 7" + kFast + "--out ";
  CHECK(run(cmd + a) == 0);
  CHECK(run(cmd + b) == 0);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.rfind("step,theta0_deg,theta1_deg,reward_mps,grad0,grad1,env,rollouts\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') <= 1 + 4);
}

TEST_CASE("rollout prints the reward and dumps the trajectory schema") {
  TempDir tmp;
  const std::string traj = tmp / "traj.csv";
  CHECK(run("rollout --env original --params 20,30 --seed 3 --dump " + traj + kFast) == 0);
  const std::string text = slurp(traj);
  CHECK(text.rfind("t,x,z,vx,vz,hip,ankle,phase,contact_force\n", 0) == 0);
  CHECK((text.find(",S,") != std::string::npos || text.find(",F,") != std::string::npos));
}

TEST_CASE("analyze consumes mapped landscapes and reports funnels") {
  TempDir tmp;
  const std::string b = tmp / "beginner.csv";
  const std::string o = tmp / "original.csv";
  REQUIRE(run("map --env beginner --grid 5 --seed 9 --out " + b + kFast) == 0);
  REQUIRE(run("map --env original --grid 5 --seed 9 --out " + o + kFast) == 0);
  const std::string report = tmp / "report.json";
  const std::string svg = tmp / "overlay.svg";
  CHECK(run("analyze --in " + b + " " + o + " --labels beginner,original --threshold 0.01" +
            " --out " + report + " --svg " + svg) == 0);
  const std::string text = slurp(report);
  CHECK(text.find("\"funnels\"") != std::string::npos);
  CHECK(text.find("\"area_fraction\"") != std::string::npos);
  CHECK(text.find("\"reference_area_fractions\"") != std::string::npos);
  CHECK(slurp(svg).find("<svg") != std::string::npos);

  CHECK(run("analyze --in " + b + " --out " + report) == 2);  // needs two inputs
}

TEST_CASE("curriculum runs from a config file into a run directory") {
  TempDir tmp;
  const std::string cfg_path = tmp / "run.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({
      "master_seed": 5,
      "output_dir": ")" << (tmp / "rundir") << R"(",
      "rollout": {"duration_s": 0.4, "settle_time_s": 0.1, "dt_s": 0.0005},
      "learner": {"max_steps": 3},
      "curriculum": {"environments": ["beginner", "original"],
                     "max_steps_per_env": 2, "stall_window": 2, "probe_next": false},
      "init": {"theta0_deg": 18, "theta1_deg": 28}
    })";
  }
  CHECK(run("curriculum --config " + cfg_path) == 0);
  const path rundir = tmp.dir / "rundir";
  CHECK(std::filesystem::exists(rundir / "trace_beginner.csv"));
  CHECK(std::filesystem::exists(rundir / "trace_original.csv"));
  CHECK(std::filesystem::exists(rundir / "memory.json"));
  CHECK(std::filesystem::exists(rundir / "report.json"));
  CHECK(std::filesystem::exists(rundir / "summary.txt"));
  CHECK(slurp(rundir / "report.json").find("total_rollouts") != std::string::npos);
}

TEST_CASE("config files with unknown keys are rejected") {
  TempDir tmp;
  const std::string cfg_path = tmp / "bad.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({"master_seed": 1, "not_a_key": 2})";
  }
  CHECK(run("curriculum --config " + cfg_path) == 2);
}

TEST_CASE("HOPCURVE_SEED provides the master seed fallback") {
  TempDir tmp;
  const std::string a = tmp / "a.csv";
  const std::string b = tmp / "b.csv";
  const std::string map_args = " map --env original --grid 10" + kFast;
  const std::string env_cmd = "HOPCURVE_SEED=42 " + std::string(kCli);
  CHECK(WEXITSTATUS(std::system(
            (env_cmd + map_args + "--out " + a + " >/dev/null 2>&1").c_str())) == 0);
  CHECK(run("map --env original --grid 10 --seed 42" + kFast + "--out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
}
