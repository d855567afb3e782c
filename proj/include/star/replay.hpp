#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace star {

std::int64_t wall_clock_ms();

// Append-only record stream. Written out as JSONL, one record per line.
class ReplayLog {
 public:
  void append(nlohmann::json record) { records_.push_back(std::move(record)); }
  const std::vector<nlohmann::json>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;

  // Throws std::runtime_error on unreadable files or malformed lines.
  static ReplayLog read(std::istream& in);
  static ReplayLog read_file(const std::string& path);

 private:
  std::vector<nlohmann::json> records_;
};

}  // namespace star
