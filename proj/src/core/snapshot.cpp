#include "ppe/core/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "ppe/core/errors.hpp"

namespace ppe {
namespace {

void to_little_endian(char* bytes) {
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + 8);
}

}  // namespace

void write_snapshot(std::ostream& os, const Field& f, const std::string& name, double time) {
  const auto& g = f.grid();
  nlohmann::json header = {{"n1", g.n1()}, {"n2", g.n2()},   {"n3", g.n3()},
                           {"a", g.a()},   {"parity", std::string(to_string(f.parity()))},
                           {"name", name}, {"time", time}};
  os << header.dump() << '\n';
  char buf[8];
  for (double v : f.values()) {
    std::memcpy(buf, &v, 8);
    to_little_endian(buf);
    os.write(buf, 8);
  }
  if (!os) throw ConfigError("failed writing snapshot '" + name + "'");
}

void write_snapshot(const std::filesystem::path& path, const Field& f, const std::string& name,
                    double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
  write_snapshot(os, f, name, time);
}

Snapshot read_snapshot(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("snapshot header missing");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad snapshot header: ") + e.what());
  }
  for (const char* key : {"n1", "n2", "n3", "a", "parity", "name", "time"}) {
    if (!header.contains(key)) throw ConfigError(std::string("snapshot header lacks ") + key);
  }
  SpectralGrid g(header["n1"].get<int>(), header["n2"].get<int>(), header["n3"].get<int>(),
                 header["a"].get<double>());
  std::vector<double> values(g.size());
  char buf[8];
  for (double& v : values) {
    if (!is.read(buf, 8)) throw ConfigError("snapshot payload shorter than the grid");
    to_little_endian(buf);
    std::memcpy(&v, buf, 8);
  }
  if (is.peek() != std::char_traits<char>::eof()) {
    throw ConfigError("snapshot payload longer than the grid");
  }
  return Snapshot{Field(g, std::move(values), parity_from_string(header["parity"].get<std::string>())),
                  header["name"].get<std::string>(), header["time"].get<double>()};
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open " + path.string());
  return read_snapshot(is);
}

}  // namespace ppe
