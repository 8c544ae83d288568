#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "edgeflow/cli/commands.hpp"
#include "edgeflow/config.hpp"
#include "edgeflow/io/pgm.hpp"

using namespace edgeflow;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / ("edgeflow_" + tag + "_" + std::to_string(++counter));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("pgm round trip preserves every pixel") {
  const fs::path dir = fresh_dir("pgm");
  std::mt19937 rng(64);
  std::uniform_int_distribution<int> px(0, 255);
  for (int trial = 0; trial < 5; ++trial) {
    ImageFrame frame(32 + trial, 24, 0.0);
    for (auto& p : frame.pixels) p = static_cast<uint8_t>(px(rng));
    const fs::path path = dir / ("f" + std::to_string(trial) + ".pgm");
    io::write_pgm(path.string(), frame);
    const ImageFrame back = io::read_pgm(path.string());
    REQUIRE(back.width == frame.width);
    REQUIRE(back.height == frame.height);
    REQUIRE(back.pixels == frame.pixels);
  }
  fs::remove_all(dir);
}

TEST_CASE("pgm reader rejects defects, naming the file") {
  const fs::path dir = fresh_dir("pgmbad");

  spit(dir / "trunc.pgm", "P5\n64 48\n255\nshort");
  CHECK_THROWS_WITH_AS(io::read_pgm((dir / "trunc.pgm").string()),
                       doctest::Contains("trunc.pgm"), IoError);

  spit(dir / "magic.pgm", "P2\n4 4\n255\n");
  CHECK_THROWS_AS(io::read_pgm((dir / "magic.pgm").string()), IoError);

  spit(dir / "deep.pgm", "P5\n4 4\n65535\n" + std::string(32, 'x'));
  CHECK_THROWS_AS(io::read_pgm((dir / "deep.pgm").string()), IoError);

  CHECK_THROWS_AS(io::read_pgm((dir / "missing.pgm").string()), IoError);

  // comments in the header are fine
  spit(dir / "comment.pgm", "P5\n# a comment\n3 3\n255\n" + std::string(9, 'a'));
  CHECK_NOTHROW(io::read_pgm((dir / "comment.pgm").string()));
  fs::remove_all(dir);
}

TEST_CASE("config parsing, serialization and validation") {
  SUBCASE("defaults round trip") {
    const std::string s = serialize_config(default_config());
    std::istringstream in(s);
    const Config parsed = parse_config(in);
    CHECK(serialize_config(parsed) == s);
  }
  SUBCASE("values and comments") {
    std::istringstream in(
        "# camera\nfov_h_deg = 60\nimage_width = 256  # wide\nseed = 99\nkp = 0.5\n");
    const Config cfg = parse_config(in);
    CHECK(cfg.pipeline.intrinsics.fov_horizontal == doctest::Approx(deg2rad(60)));
    CHECK(cfg.pipeline.intrinsics.image_width == 256);
    CHECK(cfg.seed == 99);
    CHECK(cfg.controller.kp == doctest::Approx(0.5));
  }
  SUBCASE("unknown keys are rejected") {
    std::istringstream in("fov_h_deg = 60\nwindowsize = 9\n");
    CHECK_THROWS_WITH_AS(parse_config(in), doctest::Contains("windowsize"), ConfigError);
  }
  SUBCASE("invalid values are rejected") {
    std::istringstream bad_fov("fov_h_deg = 200\n");
    CHECK_THROWS_AS(parse_config(bad_fov), ConfigError);
    std::istringstream bad_num("seed = banana\n");
    CHECK_THROWS_AS(parse_config(bad_num), ConfigError);
    std::istringstream bad_line("just some text\n");
    CHECK_THROWS_AS(parse_config(bad_line), ConfigError);
  }
}

TEST_CASE("replay: directory of identical frames yields zero flow") {
  const fs::path dir = fresh_dir("replay_static");
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> px(0, 255);
  ImageFrame frame(128, 96, 0.0);
  for (auto& p : frame.pixels) p = static_cast<uint8_t>(px(rng));
  char name[32];
  for (int k = 0; k < 8; ++k) {
    std::snprintf(name, sizeof(name), "left_%06d.pgm", k);
    io::write_pgm((dir / name).string(), frame);
  }

  const fs::path out = dir / "out.csv";
  std::ostringstream err;
  REQUIRE(cli::cmd_replay(dir.string(), default_config(), out.string(), err) == cli::kExitOk);

  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == sim::kLogCsvHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    // flow_x and flow_y columns sit at indices 9 and 10
    std::istringstream ls(line);
    std::string field;
    for (int i = 0; i <= 10; ++i) std::getline(ls, field, ',');
    CHECK(field == "0");
    // mono input: the quality column must carry no_height
    CHECK(line.find("no_height") != std::string::npos);
  }
  CHECK(rows == 8);
  fs::remove_all(dir);
}

TEST_CASE("replay: truncated frame exits with code 2 and the filename") {
  const fs::path dir = fresh_dir("replay_bad");
  ImageFrame frame(128, 96, 0.0);
  io::write_pgm((dir / "left_000000.pgm").string(), frame);
  spit(dir / "left_000001.pgm", "P5\n128 96\n255\ntoo short");

  std::ostringstream err;
  const int code = cli::cmd_replay(dir.string(), default_config(), (dir / "o.csv").string(), err);
  CHECK(code == cli::kExitData);
  CHECK(err.str().find("left_000001.pgm") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("replay: dimension mismatch against the configuration exits with code 2") {
  const fs::path dir = fresh_dir("replay_dim");
  io::write_pgm((dir / "left_000000.pgm").string(), ImageFrame(64, 48, 0.0));
  std::ostringstream err;
  const int code = cli::cmd_replay(dir.string(), default_config(), (dir / "o.csv").string(), err);
  CHECK(code == cli::kExitData);
  CHECK(err.str().find("64x48") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("replay: empty directory exits with code 2") {
  const fs::path dir = fresh_dir("replay_empty");
  std::ostringstream err;
  CHECK(cli::cmd_replay(dir.string(), default_config(), (dir / "o.csv").string(), err) ==
        cli::kExitData);
  fs::remove_all(dir);
}

TEST_CASE("simulate twice produces byte-identical CSV; export replays bit-for-bit") {
  const fs::path dir = fresh_dir("roundtrip");
  spit(dir / "scenario.txt",
       "mode = open\ntraj = sinusoid\nduration_s = 1.2\nheight_m = 1.0\nvx = 0.3\nperiod_s = 1.0\n");

  Config cfg = default_config();
  cfg.noise_sigma = 1.5;  // exercise the noisy path end to end
  std::ostringstream err;

  const fs::path csv1 = dir / "run1.csv", csv2 = dir / "run2.csv", csv3 = dir / "replayed.csv";
  const fs::path exported = dir / "frames";
  REQUIRE(cli::cmd_simulate((dir / "scenario.txt").string(), cfg, csv1.string(),
                            exported.string(), err) == cli::kExitOk);
  REQUIRE(cli::cmd_simulate((dir / "scenario.txt").string(), cfg, csv2.string(), "", err) ==
          cli::kExitOk);
  CHECK(slurp(csv1) == slurp(csv2));

  REQUIRE(cli::cmd_replay(exported.string(), cfg, csv3.string(), err) == cli::kExitOk);
  CHECK(slurp(csv1) == slurp(csv3));
  fs::remove_all(dir);
}

TEST_CASE("scenario validation errors exit with code 1") {
  const fs::path dir = fresh_dir("scenario");
  std::ostringstream err;

  spit(dir / "bad_mode.txt", "mode = sideways\n");
  CHECK(cli::cmd_simulate((dir / "bad_mode.txt").string(), default_config(),
                          (dir / "o.csv").string(), "", err) == cli::kExitUsage);

  spit(dir / "bad_key.txt", "mode = open\nwarp_speed = 9\n");
  CHECK(cli::cmd_simulate((dir / "bad_key.txt").string(), default_config(),
                          (dir / "o.csv").string(), "", err) == cli::kExitUsage);

  CHECK(cli::cmd_simulate((dir / "missing.txt").string(), default_config(),
                          (dir / "o.csv").string(), "", err) == cli::kExitUsage);
  fs::remove_all(dir);
}

TEST_CASE("bench: zero frames is a usage error, a short run reports timings") {
  std::ostringstream out, err;
  CHECK(cli::cmd_bench(default_config(), 0, out, err) == cli::kExitUsage);

  out.str("");
  err.str("");
  REQUIRE(cli::cmd_bench(default_config(), 40, out, err) == cli::kExitOk);
  CHECK(out.str().find("mean_ms=") != std::string::npos);
  const cli::BenchResult r = cli::run_bench(default_config(), 40);
  CHECK(r.mean_ms > 0.0);
  CHECK(r.p99_ms >= r.mean_ms * 0.5);
}

TEST_CASE("closed-loop scenario runs through the CLI") {
  const fs::path dir = fresh_dir("closed");
  spit(dir / "scenario.txt",
       "mode = closed\nduration_s = 2\nheight_m = 1.0\n[references]\n0.0 0.0 0.0\n1.0 0.2 0.0\n");
  std::ostringstream err;
  const fs::path out = dir / "log.csv";
  REQUIRE(cli::cmd_simulate((dir / "scenario.txt").string(), default_config(), out.string(), "",
                            err) == cli::kExitOk);
  const std::string csv = slurp(out);
  CHECK(csv.find("0.2") != std::string::npos);  // the reference column changes at t = 1
  fs::remove_all(dir);
}
