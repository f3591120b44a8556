#pragma once

// The JSON document behind `--json`. Field names are frozen in
// schema/run_report.schema.json; bump kSchemaVersion when they change.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace skewpbw::cli {

inline constexpr int kSchemaVersion = 1;

enum class Status { Ok, Failed, Error };

class RunReport {
 public:
  using json = nlohmann::ordered_json;

  explicit RunReport(std::vector<std::string> command)
      : command_(std::move(command)), started_(std::chrono::steady_clock::now()) {}

  /// Records that sampling used this seed.
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  void add_result(std::string name, bool passed, json detail = json::object()) {
    ++checks_;
    if (!passed) ++failures_;
    json r = {{"name", std::move(name)}, {"passed", passed}};
    if (!detail.empty()) r["detail"] = std::move(detail);
    results_.push_back(std::move(r));
  }

  /// Adds counts without a result entry (suites report thousands of checks).
  void add_counts(std::uint64_t checks, std::uint64_t failures) {
    checks_ += checks;
    failures_ += failures;
  }

  json& certificates() { return certificates_; }

  void set_error(std::string kind, std::string message) {
    error_ = json{{"kind", std::move(kind)}, {"message", std::move(message)}};
  }

  json to_json(Status status) const {
    json out;
    out["schema_version"] = kSchemaVersion;
    out["command"] = command_;
    out["seed"] = seed_ ? json(*seed_) : json(nullptr);
    out["status"] = status == Status::Ok ? "ok" : status == Status::Failed ? "failed" : "error";
    out["results"] = results_;
    out["counts"] = {{"checks", checks_}, {"failures", failures_}};
    out["certificates"] = certificates_;
    if (error_) out["error"] = *error_;
    out["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    return out;
  }

  void print(std::ostream& os, Status status) const { os << to_json(status).dump(2) << "\n"; }

 private:
  std::vector<std::string> command_;
  std::chrono::steady_clock::time_point started_;
  std::optional<std::uint64_t> seed_;
  json results_ = json::array();
  json certificates_ = json::object();
  std::optional<json> error_;
  std::uint64_t checks_ = 0;
  std::uint64_t failures_ = 0;
};

}  // namespace skewpbw::cli
