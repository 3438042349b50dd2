// Append-only NDJSON log of command runs.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ddvv {

struct RunRecord {
  std::string timestamp;  // UTC, ISO 8601
  std::string command;
  nlohmann::json config;
  std::string input_hash;  // git blob SHA-1 of the input bytes, empty if none
  nlohmann::json payload;  // deterministic results only
  int exit_status = 0;
};

nlohmann::json to_json(const RunRecord& r);
RunRecord record_from_json(const nlohmann::json& j);

/// Same digest `git hash-object` prints for a file with these bytes.
std::string git_blob_hash(std::string_view content);

std::string utc_timestamp();

/// One line, one write(2) on an O_APPEND descriptor.
void append_record(const std::string& path, const RunRecord& r);

/// Throws InputError naming the offending line.
std::vector<RunRecord> read_log(const std::string& path);

}  // namespace ddvv
