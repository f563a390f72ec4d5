#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "ergopt/cli.hpp"
#include "ergopt/io.hpp"

using namespace ergopt;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
  fs::path dir;
  explicit Sandbox(const std::string& name) : dir(fs::temp_directory_path() / ("ergopt_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }

  fs::path write(const std::string& file, const std::string& text) const {
    write_text_file(dir / file, text);
    return dir / file;
  }

  int run(const std::string& args) const {
    const std::string cmd = std::string(ERGOPT_CLI_PATH) + " " + args + " --out " + (dir / "out").string() +
                            " > " + (dir / "stdout.txt").string() + " 2> " + (dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  Json out(const std::string& file) const { return read_json_file(dir / "out" / file); }
};

const char* golden_sft = "2\n11\n10\n";

Json one_sided(int depth, Json entries) {
  return {{"kind", "one_sided"}, {"depth_or_radius", depth}, {"entries", std::move(entries)}};
}

Json entry(Word w, double v) { return {{"word", w}, {"value", v}}; }

}  // namespace

TEST_CASE("cli map-optimize") {
  Sandbox box("map");
  box.write("golden.sft", golden_sft);
  const Json cfg = {{"sft_file", "golden.sft"},
                    {"potential", one_sided(1, Json::array({entry({0}, 0.0), entry({1}, 1.0)}))}};
  const auto path = box.write("cfg.json", cfg.dump());
  REQUIRE(box.run("map-optimize --config " + path.string()) == kExitOk);
  const Json r = box.out("map_result.json");
  CHECK(r["value"].get<double>() == doctest::Approx(0.5));
  CHECK(r["certificate"]["period"] == 2);

  const Json constant = {{"sft", golden_sft},
                         {"potential", one_sided(1, Json::array({entry({0}, 5.0), entry({1}, 5.0)}))}};
  REQUIRE(box.run("map-optimize --config " + box.write("c.json", constant.dump()).string()) == kExitOk);
  CHECK(box.out("map_result.json")["value"].get<double>() == doctest::Approx(5.0));

  const Json malformed = {{"sft", "2\n11\n1x\n"},
                          {"potential", one_sided(1, Json::array({entry({0}, 0.0), entry({1}, 1.0)}))}};
  CHECK(box.run("map-optimize --config " + box.write("m.json", malformed.dump()).string()) == kExitParse);
  CHECK(box.run("map-optimize --config " + box.write("j.json", "{ broken").string()) == kExitParse);
  CHECK(box.run("map-optimize") == kExitParse);
  CHECK(box.run("no-such-command") == kExitParse);
}

TEST_CASE("cli flow-optimize") {
  Sandbox box("flow");
  const Json cfg = {{"sft", "2\n11\n11\n"},
                    {"potential", one_sided(1, Json::array({entry({0}, 0.0), entry({1}, 1.0)}))},
                    {"roof", one_sided(1, Json::array({entry({0}, 1.0), entry({1}, 2.0)}))}};
  REQUIRE(box.run("flow-optimize --config " + box.write("cfg.json", cfg.dump()).string()) == kExitOk);
  const Json r = box.out("flow_result.json");
  CHECK(r["value"].get<double>() == doctest::Approx(0.5));
  CHECK(r["residual"].get<double>() <= 1e-9);
  CHECK(fs::exists(box.dir / "out" / "reduced_potential.json"));

  Json bad = cfg;
  bad["roof"] = one_sided(1, Json::array({entry({0}, 1.0), entry({1}, 0.0)}));
  CHECK(box.run("flow-optimize --config " + box.write("bad.json", bad.dump()).string()) == kExitSolver);
}

TEST_CASE("cli reduce") {
  Sandbox box("reduce");
  Json entries = Json::array();
  double v = 0.1;
  for (Word w : {Word{0, 0, 0}, Word{0, 0, 1}, Word{0, 1, 0}, Word{1, 0, 0}, Word{1, 0, 1}}) {
    entries.push_back(entry(w, v));
    v = v * 3.7 - 1.1;
  }
  const Json cfg = {{"sft", golden_sft},
                    {"potential", {{"kind", "two_sided"}, {"depth_or_radius", 1}, {"entries", entries}}}};
  REQUIRE(box.run("reduce --config " + box.write("cfg.json", cfg.dump()).string()) == kExitOk);
  const Json r = box.out("reduced_potential.json");
  CHECK(r["kind"] == "one_sided");
  CHECK(r["depth_or_radius"] == 3);
  CHECK(r["verification"]["max_average_delta"].get<double>() <= 1e-12);
  CHECK(r["verification"]["orbits"].get<int>() > 0);
}

TEST_CASE("cli lorenz") {
  Sandbox box("lorenz");
  const Json cfg = {{"epsilon_grid", {0.3, 0.1, 0.03}}, {"p_max", 8}, {"family_p_max", 10}};
  REQUIRE(box.run("lorenz --config " + box.write("cfg.json", cfg.dump()).string()) == kExitOk);
  for (const char* f : {"validation.json", "orbits.csv", "curve_bump.csv", "curve_log_singular.csv", "shape.json",
                        "dirac.json", "plot_script.txt"}) {
    CHECK_MESSAGE(fs::exists(box.dir / "out" / f), f);
  }
  CHECK(box.out("validation.json")["passed"] == true);
  CHECK(box.out("shape.json")["curves"].contains("bump"));
  const std::string curve = read_text_file(box.dir / "out" / "curve_bump.csv");
  CHECK(curve.rfind("eps,M_hat,period,itinerary\n", 0) == 0);

  const Json bad = {{"a", 1.0}};
  CHECK(box.run("lorenz --config " + box.write("bad.json", bad.dump()).string()) == kExitValidation);
  const Json bad_grid = {{"epsilon_grid", {0.1, 0.3}}, {"p_max", 6}};
  CHECK(box.run("lorenz --config " + box.write("grid.json", bad_grid.dump()).string()) == kExitParse);
}

TEST_CASE("cli output is deterministic") {
  Sandbox box("determinism");
  box.write("golden.sft", golden_sft);
  const Json cfg = {{"sft_file", "golden.sft"},
                    {"potential", one_sided(2, Json::array({entry({0, 0}, 0.3), entry({0, 1}, -0.2), entry({1, 0}, 0.9)}))}};
  const auto path = box.write("cfg.json", cfg.dump());
  REQUIRE(box.run("map-optimize --seed 3 --config " + path.string()) == kExitOk);
  const std::string first = read_text_file(box.dir / "out" / "map_result.json");
  REQUIRE(box.run("map-optimize --seed 3 --config " + path.string()) == kExitOk);
  CHECK(read_text_file(box.dir / "out" / "map_result.json") == first);
  CHECK(box.out("map_result.json")["seed"] == 3);
}
