#include "gtmp/world_io.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

namespace gtmp {

using nlohmann::json;

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  while (true) {
    const int c = in.peek();
    if (c == EOF) break;
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
      continue;
    }
    if (std::isspace(c)) {
      in.get();
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(in.get()));
  }
  return token;
}

long parse_positive(const std::string& token, const char* what) {
  try {
    std::size_t used = 0;
    const long value = std::stol(token, &used);
    if (used != token.size() || value <= 0) throw std::invalid_argument(what);
    return value;
  } catch (const std::exception&) {
    throw IoError(std::string("PGM: invalid ") + what + " '" + token + "'");
  }
}

Vector to_vector(const json& j, const char* what) {
  if (!j.is_array()) throw IoError(std::string("world JSON: '") + what + "' must be an array");
  Vector out;
  for (const auto& v : j) out.push_back(v.get<double>());
  return out;
}

World parse_primitives(const json& doc) {
  if (!doc.contains("limits")) throw IoError("world JSON: missing 'limits'");
  ConfigLimits limits(to_vector(doc.at("limits").at("lower"), "limits.lower"),
                      to_vector(doc.at("limits").at("upper"), "limits.upper"));
  PrimitiveSet prims;
  for (const auto& s : doc.value("spheres", json::array())) {
    prims.spheres.push_back({to_vector(s.at("center"), "center"), s.at("radius").get<double>()});
  }
  for (const auto& b : doc.value("boxes", json::array())) {
    prims.boxes.push_back({to_vector(b.at("center"), "center"), to_vector(b.at("half_extents"), "half_extents")});
  }
  return World(std::move(limits), std::move(prims), doc.value("margin_delta", 0.0));
}

}  // namespace

OccupancyGrid read_pgm(const std::filesystem::path& path, double resolution, double origin_x,
                       double origin_y) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open PGM '" + path.string() + "'");
  const std::string magic = next_token(in);
  if (magic != "P2" && magic != "P5") throw IoError("'" + path.string() + "' is not a P2/P5 PGM");
  const auto width = static_cast<std::size_t>(parse_positive(next_token(in), "width"));
  const auto height = static_cast<std::size_t>(parse_positive(next_token(in), "height"));
  const long maxval = parse_positive(next_token(in), "maxval");
  if (maxval > 65535) throw IoError("PGM: maxval out of range");

  std::vector<long> samples(width * height);
  if (magic == "P2") {
    for (auto& s : samples) {
      const std::string tok = next_token(in);
      if (tok.empty()) throw IoError("PGM: truncated pixel data");
      try {
        s = std::stol(tok);
      } catch (const std::exception&) {
        throw IoError("PGM: bad sample '" + tok + "'");
      }
    }
  } else {
    // next_token consumed exactly one whitespace byte after maxval.
    const std::size_t bytes_per = maxval < 256 ? 1 : 2;
    std::vector<unsigned char> raw(samples.size() * bytes_per);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw IoError("PGM: truncated pixel data");
    for (std::size_t i = 0; i < samples.size(); ++i) {
      samples[i] = bytes_per == 1 ? raw[i] : (static_cast<long>(raw[2 * i]) << 8) | raw[2 * i + 1];
    }
  }

  std::vector<std::uint8_t> cells(width * height);
  for (std::size_t row = 0; row < height; ++row) {
    const std::size_t iy = height - 1 - row;
    for (std::size_t ix = 0; ix < width; ++ix) {
      const long s = samples[row * width + ix];
      cells[iy * width + ix] = (s * 255) / maxval < 128 ? 1 : 0;
    }
  }
  return OccupancyGrid(width, height, std::move(cells), origin_x, origin_y, resolution);
}

void write_pgm(const OccupancyGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write PGM '" + path.string() + "'");
  out << "P5\n" << grid.width() << ' ' << grid.height() << "\n255\n";
  std::vector<char> row(grid.width());
  for (std::size_t r = 0; r < grid.height(); ++r) {
    const std::size_t iy = grid.height() - 1 - r;
    for (std::size_t ix = 0; ix < grid.width(); ++ix) {
      row[ix] = grid.occupied(ix, iy) ? static_cast<char>(0) : static_cast<char>(255);
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

World parse_primitive_world(const std::string& json_text) {
  try {
    return parse_primitives(json::parse(json_text));
  } catch (const json::exception& e) {
    throw IoError(std::string("world JSON: ") + e.what());
  }
}

World load_world(const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw IoError("cannot open world file '" + json_path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
    if (!doc.contains("image")) return parse_primitives(doc);
    std::filesystem::path image = doc.at("image").get<std::string>();
    if (image.is_relative()) image = json_path.parent_path() / image;
    const Vector origin = doc.contains("origin") ? to_vector(doc.at("origin"), "origin") : Vector{0.0, 0.0};
    if (origin.size() != 2) throw IoError("world JSON: 'origin' must have two entries");
    OccupancyGrid grid = read_pgm(image, doc.at("resolution").get<double>(), origin[0], origin[1]);
    return World::from_grid(std::move(grid), doc.value("margin_delta", 0.0));
  } catch (const json::exception& e) {
    throw IoError("world JSON '" + json_path.string() + "': " + e.what());
  }
}

void save_grid_world(const World& world, const std::filesystem::path& json_path) {
  const auto* grid = std::get_if<OccupancyGrid>(&world.geometry());
  if (grid == nullptr) throw std::invalid_argument("save_grid_world: world is not an occupancy grid");
  std::filesystem::path pgm = json_path;
  pgm.replace_extension(".pgm");
  write_pgm(*grid, pgm);
  json doc = {{"image", pgm.filename().string()},
              {"resolution", grid->resolution()},
              {"origin", {grid->origin_x(), grid->origin_y()}},
              {"margin_delta", world.margin_delta()}};
  std::ofstream out(json_path);
  if (!out) throw IoError("cannot write world file '" + json_path.string() + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace gtmp
