#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ppe/core/field.hpp"

namespace ppe {

/// One field on disk: a single-line JSON header (n1, n2, n3, a, parity,
/// name, time) followed by raw little-endian float64 values, x3 fastest.
struct Snapshot {
  Field field;
  std::string name;
  double time = 0.0;
};

void write_snapshot(std::ostream& os, const Field& f, const std::string& name, double time);
void write_snapshot(const std::filesystem::path& path, const Field& f, const std::string& name,
                    double time);

Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace ppe
