#pragma once

// CSV / JSON writers and run manifests.

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace waveflow {

inline constexpr const char* kToolVersion = "1.0.0";

// %.12g with negative zero printed as 0.
std::string format_number(double v);

// RFC 4180 field quoting: quote when the field holds a comma, quote, CR or LF.
std::string csv_field(std::string_view s);

// Rows are accumulated in memory and written in one go by write().
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> row);
  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// 64-bit FNV-1a, lower-case hex.
std::string fnv1a_hex(std::string_view data);

// Safe file-name fragment: [A-Za-z0-9_-], everything else becomes '_'.
std::string file_stem(std::string_view label);

struct RunManifest {
  std::string config_hash;
  std::string subcommand;
  nlohmann::json parameters;
  std::vector<std::filesystem::path> outputs;
  double duration_s = 0.0;

  nlohmann::json to_json() const;
};

}  // namespace waveflow
