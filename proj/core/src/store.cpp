#include "lotforge/store.hpp"

#include "lotforge/error.hpp"

#include <nlohmann/json.hpp>

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

namespace lotforge {

namespace {

constexpr std::array<std::string_view, kRecordKindCount> kKindNames = {"scene", "submission", "assignment"};
constexpr std::array<std::string_view, kRecordKindCount> kPrefixes = {"scn", "sub", "asg"};
constexpr std::array<std::string_view, kRecordKindCount> kFiles = {"scenes.ndjson", "submissions.ndjson",
                                                                    "assignments.ndjson"};

std::size_t slot(RecordKind kind) { return static_cast<std::size_t>(kind); }

[[noreturn]] void io_error(const std::string& what, const std::filesystem::path& path) {
  throw Error(ErrorKind::Integrity, what + " " + path.string() + ": " + std::strerror(errno));
}

void fsync_directory(const std::filesystem::path& dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

std::optional<std::uint64_t> sequence_of(std::string_view id, std::string_view prefix) {
  if (id.size() <= prefix.size() + 1 || id.substr(0, prefix.size()) != prefix || id[prefix.size()] != '-') {
    return std::nullopt;
  }
  std::uint64_t n = 0;
  for (char c : id.substr(prefix.size() + 1)) {
    if (c < '0' || c > '9') return std::nullopt;
    n = n * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return n;
}

}  // namespace

std::string_view to_string(RecordKind kind) { return kKindNames[slot(kind)]; }

std::string utc_timestamp() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const std::time_t secs = system_clock::to_time_t(now);
  const auto millis = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  ::gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(millis));
  return buf;
}

RecordStore::RecordStore(std::filesystem::path directory) : directory_(std::move(directory)) {
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec) throw Error(ErrorKind::Integrity, "cannot create data directory " + directory_.string() + ": " + ec.message());

  auto snap = std::make_shared<Snapshot>();
  for (std::size_t k = 0; k < kRecordKindCount; ++k) load(static_cast<RecordKind>(k), *snap);
  fsync_directory(directory_);
  snapshot_ = std::move(snap);
}

RecordStore::~RecordStore() {
  for (int fd : fds_) {
    if (fd >= 0) ::close(fd);
  }
}

void RecordStore::load(RecordKind kind, Snapshot& snap) {
  const std::filesystem::path path = directory_ / kFiles[slot(kind)];
  const int fd = ::open(path.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) io_error("cannot open", path);
  fds_[slot(kind)] = fd;

  std::string text;
  char buf[1 << 16];
  ::lseek(fd, 0, SEEK_SET);
  for (;;) {
    const ssize_t n = ::read(fd, buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      io_error("cannot read", path);
    }
    if (n == 0) break;
    text.append(buf, static_cast<std::size_t>(n));
  }

  const auto last_newline = text.rfind('\n');
  const std::size_t complete = last_newline == std::string::npos ? 0 : last_newline + 1;
  if (complete < text.size()) {
    // A crash mid-append leaves an unterminated tail that was never acknowledged.
    if (::ftruncate(fd, static_cast<off_t>(complete)) != 0) io_error("cannot truncate", path);
    ::fsync(fd);
    text.resize(complete);
  }

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::string_view line(text.data() + start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains("body") ||
        !j["id"].is_string() || !j["body"].is_string()) {
      throw Error(ErrorKind::Integrity,
                  path.string() + ":" + std::to_string(line_no) + ": malformed store record");
    }
    auto rec = std::make_shared<StoreRecord>();
    rec->id = j["id"].get<std::string>();
    rec->kind = kind;
    rec->created_at = j.value("created_at", "");
    rec->body = j["body"].get<std::string>();
    if (auto seq = sequence_of(rec->id, kPrefixes[slot(kind)])) {
      snap.next_sequence[slot(kind)] = std::max(snap.next_sequence[slot(kind)], *seq + 1);
    }
    if (snap.by_id.contains(rec->id)) {
      throw Error(ErrorKind::Integrity, path.string() + ": duplicate record id '" + rec->id + "'");
    }
    snap.by_id.emplace(rec->id, rec);
    snap.by_kind[slot(kind)].push_back(rec);
  }
}

std::shared_ptr<const RecordStore::Snapshot> RecordStore::snapshot() const {
  return std::atomic_load(&snapshot_);
}

StoreRecord RecordStore::append(RecordKind kind, std::string body) {
  std::lock_guard lock(write_mutex_);
  const auto current = snapshot();
  const std::uint64_t seq = current->next_sequence[slot(kind)];

  char id[48];
  std::snprintf(id, sizeof id, "%s-%06llu", kPrefixes[slot(kind)].data(), static_cast<unsigned long long>(seq));
  auto rec = std::make_shared<StoreRecord>();
  rec->id = id;
  rec->kind = kind;
  rec->created_at = utc_timestamp();
  rec->body = std::move(body);

  nlohmann::ordered_json j;
  j["id"] = rec->id;
  j["kind"] = to_string(kind);
  j["created_at"] = rec->created_at;
  j["body"] = rec->body;
  const std::string line = j.dump() + "\n";

  const int fd = fds_[slot(kind)];
  const std::filesystem::path path = directory_ / kFiles[slot(kind)];
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      io_error("cannot append to", path);
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) io_error("cannot sync", path);

  auto next = std::make_shared<Snapshot>(*current);
  next->by_id.emplace(rec->id, rec);
  next->by_kind[slot(kind)].push_back(rec);
  next->next_sequence[slot(kind)] = seq + 1;
  std::atomic_store(&snapshot_, std::shared_ptr<const Snapshot>(std::move(next)));
  return *rec;
}

std::optional<StoreRecord> RecordStore::get(std::string_view id) const {
  const auto snap = snapshot();
  auto it = snap->by_id.find(id);
  if (it == snap->by_id.end()) return std::nullopt;
  return *it->second;
}

std::vector<StoreRecord> RecordStore::list(RecordKind kind) const {
  const auto snap = snapshot();
  std::vector<StoreRecord> out;
  out.reserve(snap->by_kind[slot(kind)].size());
  for (const RecordPtr& r : snap->by_kind[slot(kind)]) out.push_back(*r);
  return out;
}

std::size_t RecordStore::count(RecordKind kind) const { return snapshot()->by_kind[slot(kind)].size(); }

}  // namespace lotforge
