#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsmeta/date.hpp"

namespace dsmeta {

enum class ContentCategory {
    Tables,
    Structured,
    Documents,
    Images,
    Archives,
    Text,
    Geospatial,
    ComputationalBiology,
    Audio,
    Video,
    Presentations,
    MedicalImaging,
    Other,
};

std::string_view category_name(ContentCategory category);
std::optional<ContentCategory> category_from_name(std::string_view name);

enum class SourceVocabulary { SchemaOrg, Dcat, Mixed };
std::string_view vocabulary_name(SourceVocabulary v);

enum class TriState { True, False, Absent };

struct DownloadEntry {
    std::string download_url;
    std::string raw_format;  // lower-case extension or MIME type, may be empty
    ContentCategory category = ContentCategory::Other;

    bool operator==(const DownloadEntry&) const = default;
};

struct LicenseEntry {
    std::string raw;
    std::string class_id;  // "unknown" when unrecognized
    bool allows_redistribution = false;
    bool allows_commercial = false;

    bool operator==(const LicenseEntry&) const = default;
};

struct TopicScore {
    std::string topic;
    double score = 0.0;

    bool operator==(const TopicScore&) const = default;
};

struct RecordDates {
    std::optional<CalendarDate> created;
    std::optional<CalendarDate> published;
    std::optional<CalendarDate> modified;
    std::optional<CalendarDate> page_modified;

    bool operator==(const RecordDates&) const = default;
};

// The canonical, normalized description of one dataset; the unit of every
// corpus analysis.
struct DatasetRecord {
    std::string id;  // stable fingerprint (dedup key + domain)
    std::string page_url;
    std::string domain;
    std::string tld;
    bool is_government = false;
    std::string language;  // primary subtag or "unknown"
    std::string title;
    std::string description;
    std::vector<std::string> providers;
    std::vector<std::string> keywords;
    std::string url;
    std::string temporal_coverage;
    std::string spatial_coverage;
    std::vector<DownloadEntry> downloads;
    std::vector<LicenseEntry> licenses;
    TriState is_accessible_for_free = TriState::Absent;
    bool is_open = false;
    std::vector<std::string> dois;
    std::vector<std::string> compact_ids;
    RecordDates dates;
    std::optional<CalendarDate> last_updated;
    std::string catalog;
    std::vector<std::string> variables;
    std::vector<std::string> authors;
    std::vector<std::string> same_as;
    std::vector<std::string> alternate_names;
    std::vector<TopicScore> topics;
    SourceVocabulary source_vocabulary = SourceVocabulary::SchemaOrg;
    int entity_index = 0;
    int page_dataset_count = 1;
    int unmapped_count = 0;

    bool operator==(const DatasetRecord&) const = default;
};

}  // namespace dsmeta
