#include "star/replay.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

namespace star {

std::int64_t wall_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

void ReplayLog::write(std::ostream& out) const {
  for (const auto& r : records_) out << r.dump() << '\n';
}

void ReplayLog::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ReplayLog ReplayLog::read(std::istream& in) {
  ReplayLog log;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      log.append(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error("line " + std::to_string(n) + ": " + e.what());
    }
  }
  return log;
}

ReplayLog ReplayLog::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read(in);
}

}  // namespace star
