#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdcc {

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hash_hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16) << h;
  return os.str();
}

/// CSV with a header row and a trailing metadata comment carrying the config hash.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  template <typename... Ts>
  void row(const Ts&... vals) {
    std::ostringstream os;
    os << std::setprecision(17);
    bool first = true;
    ((os << (first ? (first = false, "") : ",") << vals), ...);
    rows_.push_back(os.str());
  }

  std::string str(const std::string& config, const std::string& note = "") const {
    std::ostringstream os;
    bool first = true;
    for (const auto& h : header_) {
      os << (first ? (first = false, "") : ",") << h;
    }
    os << "\n";
    for (const auto& r : rows_) os << r << "\n";
    os << "# config_hash=" << hash_hex(fnv1a64(config));
    if (!note.empty()) os << " " << note;
    os << "\n";
    return os.str();
  }

  void write(const std::string& path, const std::string& config,
             const std::string& note = "") const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << str(config, note);
  }

  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::string> rows_;
};

}  // namespace qdcc
