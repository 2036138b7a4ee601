#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dsmeta/date.hpp"
#include "dsmeta/record.hpp"

namespace dsmeta {

inline constexpr std::string_view kPipelineVersion = "dsmeta/1.0.0";

struct StageCounters {
    int64_t pages_seen = 0;
    int64_t pages_failed = 0;
    int64_t entities_extracted = 0;
    int64_t invalid_dropped = 0;
    int64_t duplicates_collapsed = 0;

    bool operator==(const StageCounters&) const = default;
};

struct SnapshotManifest {
    CalendarDate snapshot_date;
    int64_t record_count = 0;
    std::string pipeline_version{kPipelineVersion};
    std::map<std::string, std::string> config_checksums;
    std::string records_sha256;  // set on write, verified on read
    StageCounters counters;
};

// Immutable, dated, sorted collection of canonical records.
struct CorpusSnapshot {
    SnapshotManifest manifest;
    std::vector<DatasetRecord> records;  // sorted by (domain, page_url, entity_index)
};

std::string manifest_path_for(const std::string& snapshot_path);

// One canonical JSON object per line, fixed key order.
std::string serialize_record(const DatasetRecord& record);
DatasetRecord parse_record(const std::string& line, int line_number);

// Refuses to overwrite an existing snapshot (snapshots are immutable).
void write_snapshot(const CorpusSnapshot& snapshot, const std::string& path);

// Verifies the manifest record count and the records checksum; malformed
// lines fail with their line number.
CorpusSnapshot read_snapshot(const std::string& path);

}  // namespace dsmeta
