#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "gtmp/world_io.hpp"
#include "test_worlds.hpp"

using namespace gtmp;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "gtmp_world_io" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("ASCII PGM with comments: dark is occupied, top row is high y") {
  const fs::path dir = scratch_dir("ascii");
  write_file(dir / "m.pgm", "P2\n# a comment\n3 2\n# another\n15\n0 15 15\n15 15 7\n");
  const OccupancyGrid g = read_pgm(dir / "m.pgm", 0.5, 1.0, 2.0);
  CHECK(g.width() == 3);
  CHECK(g.height() == 2);
  CHECK(g.occupied(0, 1));   // image (row 0, col 0)
  CHECK(!g.occupied(1, 1));
  CHECK(g.occupied(2, 0));   // 7/15 is below mid-gray
  CHECK(!g.occupied(0, 0));
  CHECK(g.cell_at(1.1, 2.6) == 3);
  CHECK(g.extent().upper() == Vector{2.5, 3.0});
}

TEST_CASE("binary PGM round trip") {
  const fs::path dir = scratch_dir("binary");
  std::mt19937_64 rng(2);
  const OccupancyGrid g = gtmp::testing::random_rect_grid(rng, 17, 0.2, 4, 1, 4);
  write_pgm(g, dir / "r.pgm");
  const OccupancyGrid back = read_pgm(dir / "r.pgm", 0.2, 0.0, 0.0);
  CHECK(back.cells() == g.cells());
}

TEST_CASE("16-bit binary PGM uses maxval") {
  const fs::path dir = scratch_dir("wide");
  std::string data = "P5 2 1 1000\n";
  data += std::string{static_cast<char>(0x01), static_cast<char>(0xF4)};  // 500
  data += std::string{static_cast<char>(0x03), static_cast<char>(0xE8)};  // 1000
  write_file(dir / "w.pgm", data);
  const OccupancyGrid g = read_pgm(dir / "w.pgm", 1.0, 0.0, 0.0);
  CHECK(g.occupied(0, 0));
  CHECK(!g.occupied(1, 0));
}

TEST_CASE("malformed PGM files raise IoError") {
  const fs::path dir = scratch_dir("bad");
  CHECK_THROWS_AS(read_pgm(dir / "missing.pgm", 1.0, 0, 0), IoError);
  write_file(dir / "magic.pgm", "P6\n1 1\n255\n0\n");
  CHECK_THROWS_AS(read_pgm(dir / "magic.pgm", 1.0, 0, 0), IoError);
  write_file(dir / "short.pgm", "P2\n2 2\n255\n0 0 0\n");
  CHECK_THROWS_AS(read_pgm(dir / "short.pgm", 1.0, 0, 0), IoError);
  write_file(dir / "dims.pgm", "P2\n-2 2\n255\n");
  CHECK_THROWS_AS(read_pgm(dir / "dims.pgm", 1.0, 0, 0), IoError);
}

TEST_CASE("grid world sidecar round trip") {
  const fs::path dir = scratch_dir("sidecar");
  std::mt19937_64 rng(4);
  const World w = World::from_grid(gtmp::testing::random_rect_grid(rng, 20, 0.5, 3, 2, 5), 0.3);
  save_grid_world(w, dir / "world.json");
  CHECK(fs::exists(dir / "world.pgm"));
  const World back = load_world(dir / "world.json");
  CHECK(back.margin_delta() == 0.3);
  const auto& g0 = std::get<OccupancyGrid>(w.geometry());
  const auto& g1 = std::get<OccupancyGrid>(back.geometry());
  CHECK(g0.cells() == g1.cells());
  CHECK(g1.resolution() == 0.5);
}

TEST_CASE("primitive world JSON") {
  const fs::path dir = scratch_dir("prims");
  write_file(dir / "p.json", R"({"limits": {"lower": [0, 0, 0], "upper": [1, 1, 1]},
    "spheres": [{"center": [0.5, 0.5, 0.5], "radius": 0.1}],
    "boxes": [{"center": [0.2, 0.2, 0.2], "half_extents": [0.05, 0.05, 0.05]}],
    "margin_delta": 0.01})");
  const World w = load_world(dir / "p.json");
  CHECK(w.dim() == 3);
  CHECK(collision_cost(w, Vector{0.5, 0.5, 0.5}) == kInf);
  CHECK(collision_cost(w, Vector{0.2, 0.2, 0.2}) == kInf);
  CHECK(collision_cost(w, Vector{0.8, 0.8, 0.8}) == 0.0);

  CHECK_THROWS_AS(parse_primitive_world("{\"spheres\": []}"), IoError);
  CHECK_THROWS_AS(parse_primitive_world("not json"), IoError);
  CHECK_THROWS_AS(parse_primitive_world(R"({"limits": {"lower": [0], "upper": [1]},
    "spheres": [{"center": [0, 0], "radius": 1}]})"),
                  DimensionError);
}

TEST_CASE("missing world file raises IoError") {
  CHECK_THROWS_AS(load_world("/nonexistent/world.json"), IoError);
}
