#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lotforge {

enum class RecordKind { Scene, Submission, Assignment };

inline constexpr std::size_t kRecordKindCount = 3;

std::string_view to_string(RecordKind kind);

struct StoreRecord {
  std::string id;  // "<prefix>-<sequence>", never reused
  RecordKind kind = RecordKind::Scene;
  std::string created_at;  // UTC, ISO 8601 with milliseconds
  std::string body;        // canonical document
};

/// Append-only record log, one newline-delimited JSON file per kind under a
/// data directory. Appends are serialized and fsynced before they return;
/// readers work on an immutable snapshot and never block.
class RecordStore {
public:
  /// Loads every log under `directory`, creating it if needed. A torn final
  /// line left by a crash is cut off; any other malformed line throws
  /// Error(Integrity).
  explicit RecordStore(std::filesystem::path directory);
  ~RecordStore();

  RecordStore(const RecordStore&) = delete;
  RecordStore& operator=(const RecordStore&) = delete;

  StoreRecord append(RecordKind kind, std::string body);

  std::optional<StoreRecord> get(std::string_view id) const;
  /// Records of one kind in append order.
  std::vector<StoreRecord> list(RecordKind kind) const;
  std::size_t count(RecordKind kind) const;

  const std::filesystem::path& directory() const { return directory_; }

private:
  using RecordPtr = std::shared_ptr<const StoreRecord>;

  struct Snapshot {
    std::map<std::string, RecordPtr, std::less<>> by_id;
    std::array<std::vector<RecordPtr>, kRecordKindCount> by_kind;
    std::array<std::uint64_t, kRecordKindCount> next_sequence{1, 1, 1};
  };

  std::shared_ptr<const Snapshot> snapshot() const;
  void load(RecordKind kind, Snapshot& snap);

  std::filesystem::path directory_;
  std::array<int, kRecordKindCount> fds_{-1, -1, -1};
  std::mutex write_mutex_;
  std::shared_ptr<const Snapshot> snapshot_;
};

/// Current UTC time as "YYYY-MM-DDTHH:MM:SS.mmmZ".
std::string utc_timestamp();

}  // namespace lotforge
