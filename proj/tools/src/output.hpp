#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dimac::cli {

/// Magnitudes below this are rounding noise and print as 0.
inline constexpr double kZeroSnap = 1e-13;

/// Floats in every CSV are written with 12 significant digits.
std::string fmt12(double v);

/// Provenance record written next to every output.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void parameter(const std::string& key, nlohmann::json value);
  /// Records the FNV-1a hash of an input file's bytes.
  void input_file(const std::string& path);
  void seed(std::uint64_t s) { seed_ = s; }
  nlohmann::json to_json() const;

 private:
  std::string command_;
  nlohmann::json parameters_ = nlohmann::json::object();
  nlohmann::json inputs_ = nlohmann::json::object();
  std::optional<std::uint64_t> seed_;
  std::chrono::steady_clock::time_point start_;
};

/// Writes `text` to `path`, or to stdout when `path` is empty.
void emit(const std::string& path, const std::string& text);
/// Writes the manifest as `<out>.manifest.json`; nothing when `out` is empty.
void emit_manifest(const std::string& out, const RunManifest& manifest);
/// `out` without a trailing ".csv" or ".json".
std::string stem(const std::string& out);

}  // namespace dimac::cli
