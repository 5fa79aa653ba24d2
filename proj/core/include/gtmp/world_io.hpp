#pragma once

#include <filesystem>
#include <string>

#include "gtmp/config_space.hpp"

namespace gtmp {

/// Raised for unreadable or malformed world/map files.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Reads a P2 (ASCII) or P5 (binary) PGM. Samples darker than mid-gray
/// (value*255/maxval < 128) are occupied. Image row 0 is the top of the map.
OccupancyGrid read_pgm(const std::filesystem::path& path, double resolution, double origin_x,
                       double origin_y);

/// Writes a P5 PGM: occupied cells black (0), free cells white (255).
void write_pgm(const OccupancyGrid& grid, const std::filesystem::path& path);

/// Loads a world description.
///   occupancy: {"image": "map.pgm", "resolution": r, "origin": [x, y], "margin_delta": 0.0}
///   primitives: {"limits": {"lower": [...], "upper": [...]},
///                "spheres": [{"center": [...], "radius": r}],
///                "boxes": [{"center": [...], "half_extents": [...]}], "margin_delta": 0.0}
/// Relative image paths resolve against the JSON file's directory.
World load_world(const std::filesystem::path& json_path);

World parse_primitive_world(const std::string& json_text);

/// Writes `<stem>.pgm` and `<stem>.json` sidecar next to each other.
void save_grid_world(const World& world, const std::filesystem::path& json_path);

}  // namespace gtmp
