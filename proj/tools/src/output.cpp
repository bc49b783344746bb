#include "output.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>

#include <fmt/format.h>

#include "dimac/channel_io.hpp"
#include "dimac/errors.hpp"

namespace dimac::cli {

std::string fmt12(double v) { return fmt::format("{:.12g}", std::abs(v) < kZeroSnap ? 0.0 : v); }

RunManifest::RunManifest(std::string command)
    : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

void RunManifest::parameter(const std::string& key, nlohmann::json value) {
  parameters_[key] = std::move(value);
}

void RunManifest::input_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot read '{}'", path));
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  inputs_[path] = fnv1a_hex(bytes);
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command_;
  j["parameters"] = parameters_;
  j["inputs"] = inputs_;
  j["tool_version"] = DIMAC_VERSION;
  j["seed"] = seed_ ? nlohmann::json(*seed_) : nlohmann::json(nullptr);
  j["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  return j;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(fmt::format("cannot write '{}'", path));
  out << text;
}

void emit_manifest(const std::string& out, const RunManifest& manifest) {
  if (out.empty()) return;
  emit(stem(out) + ".manifest.json", manifest.to_json().dump(2) + "\n");
}

std::string stem(const std::string& out) {
  for (const char* ext : {".csv", ".json"}) {
    const std::string e(ext);
    if (out.size() > e.size() && out.compare(out.size() - e.size(), e.size(), e) == 0) {
      return out.substr(0, out.size() - e.size());
    }
  }
  return out;
}

}  // namespace dimac::cli
