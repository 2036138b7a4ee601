#include "dsmeta/snapshot.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dsmeta/diagnostics.hpp"
#include "dsmeta/sha256.hpp"

namespace dsmeta {

namespace {

using json = nlohmann::ordered_json;

json date_or_null(const std::optional<CalendarDate>& date) {
    if (date) return date->to_iso();
    return nullptr;
}

std::optional<CalendarDate> date_from_json(const json& value, int line_number, const char* field) {
    if (value.is_null()) return std::nullopt;
    if (!value.is_string()) {
        throw InputError("line " + std::to_string(line_number) + ": field \"" + field +
                         "\" must be a date string or null");
    }
    auto date = CalendarDate::from_iso(value.get<std::string>());
    if (!date) {
        throw InputError("line " + std::to_string(line_number) + ": invalid date in \"" + field +
                         "\"");
    }
    return date;
}

json tri_state_to_json(TriState v) {
    switch (v) {
        case TriState::True: return true;
        case TriState::False: return false;
        case TriState::Absent: return nullptr;
    }
    return nullptr;
}

}  // namespace

std::string manifest_path_for(const std::string& snapshot_path) {
    return snapshot_path + ".manifest.json";
}

std::string serialize_record(const DatasetRecord& r) {
    json j;
    j["id"] = r.id;
    j["page_url"] = r.page_url;
    j["domain"] = r.domain;
    j["tld"] = r.tld;
    j["is_government"] = r.is_government;
    j["language"] = r.language;
    j["title"] = r.title;
    j["description"] = r.description;
    j["providers"] = r.providers;
    j["keywords"] = r.keywords;
    j["url"] = r.url;
    j["temporal_coverage"] = r.temporal_coverage;
    j["spatial_coverage"] = r.spatial_coverage;
    json downloads = json::array();
    for (const DownloadEntry& d : r.downloads) {
        json dj;
        dj["download_url"] = d.download_url;
        dj["raw_format"] = d.raw_format;
        dj["category"] = std::string(category_name(d.category));
        downloads.push_back(std::move(dj));
    }
    j["downloads"] = std::move(downloads);
    json licenses = json::array();
    for (const LicenseEntry& l : r.licenses) {
        json lj;
        lj["raw"] = l.raw;
        lj["class"] = l.class_id;
        lj["allows_redistribution"] = l.allows_redistribution;
        lj["allows_commercial"] = l.allows_commercial;
        licenses.push_back(std::move(lj));
    }
    j["licenses"] = std::move(licenses);
    j["is_accessible_for_free"] = tri_state_to_json(r.is_accessible_for_free);
    j["is_open"] = r.is_open;
    j["dois"] = r.dois;
    j["compact_ids"] = r.compact_ids;
    json dates;
    dates["created"] = date_or_null(r.dates.created);
    dates["published"] = date_or_null(r.dates.published);
    dates["modified"] = date_or_null(r.dates.modified);
    dates["page_modified"] = date_or_null(r.dates.page_modified);
    j["dates"] = std::move(dates);
    j["last_updated"] = date_or_null(r.last_updated);
    j["catalog"] = r.catalog;
    j["variables"] = r.variables;
    j["authors"] = r.authors;
    j["same_as"] = r.same_as;
    j["alternate_names"] = r.alternate_names;
    json topics = json::array();
    for (const TopicScore& t : r.topics) {
        json tj;
        tj["topic"] = t.topic;
        tj["score"] = t.score;
        topics.push_back(std::move(tj));
    }
    j["topics"] = std::move(topics);
    j["source_vocabulary"] = std::string(vocabulary_name(r.source_vocabulary));
    j["entity_index"] = r.entity_index;
    j["page_dataset_count"] = r.page_dataset_count;
    j["unmapped_count"] = r.unmapped_count;
    return j.dump();
}

DatasetRecord parse_record(const std::string& line, int line_number) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw InputError("line " + std::to_string(line_number) + ": malformed record JSON");
    }
    auto require = [&](const char* key) -> const json& {
        auto it = j.find(key);
        if (it == j.end()) {
            throw InputError("line " + std::to_string(line_number) + ": missing field \"" + key +
                             "\"");
        }
        return *it;
    };
    auto str = [&](const char* key) { return require(key).get<std::string>(); };

    DatasetRecord r;
    try {
        r.id = str("id");
        r.page_url = str("page_url");
        r.domain = str("domain");
        r.tld = str("tld");
        r.is_government = require("is_government").get<bool>();
        r.language = str("language");
        r.title = str("title");
        r.description = str("description");
        r.providers = require("providers").get<std::vector<std::string>>();
        r.keywords = require("keywords").get<std::vector<std::string>>();
        r.url = str("url");
        r.temporal_coverage = str("temporal_coverage");
        r.spatial_coverage = str("spatial_coverage");
        for (const json& dj : require("downloads")) {
            DownloadEntry d;
            d.download_url = dj.at("download_url").get<std::string>();
            d.raw_format = dj.at("raw_format").get<std::string>();
            auto category = category_from_name(dj.at("category").get<std::string>());
            if (!category) {
                throw InputError("line " + std::to_string(line_number) +
                                 ": unknown download category");
            }
            d.category = *category;
            r.downloads.push_back(std::move(d));
        }
        for (const json& lj : require("licenses")) {
            LicenseEntry l;
            l.raw = lj.at("raw").get<std::string>();
            l.class_id = lj.at("class").get<std::string>();
            l.allows_redistribution = lj.at("allows_redistribution").get<bool>();
            l.allows_commercial = lj.at("allows_commercial").get<bool>();
            r.licenses.push_back(std::move(l));
        }
        const json& free = require("is_accessible_for_free");
        if (free.is_null()) r.is_accessible_for_free = TriState::Absent;
        else r.is_accessible_for_free = free.get<bool>() ? TriState::True : TriState::False;
        r.is_open = require("is_open").get<bool>();
        r.dois = require("dois").get<std::vector<std::string>>();
        r.compact_ids = require("compact_ids").get<std::vector<std::string>>();
        const json& dates = require("dates");
        r.dates.created = date_from_json(dates.at("created"), line_number, "dates.created");
        r.dates.published = date_from_json(dates.at("published"), line_number, "dates.published");
        r.dates.modified = date_from_json(dates.at("modified"), line_number, "dates.modified");
        r.dates.page_modified =
            date_from_json(dates.at("page_modified"), line_number, "dates.page_modified");
        r.last_updated = date_from_json(require("last_updated"), line_number, "last_updated");
        r.catalog = str("catalog");
        r.variables = require("variables").get<std::vector<std::string>>();
        r.authors = require("authors").get<std::vector<std::string>>();
        r.same_as = require("same_as").get<std::vector<std::string>>();
        r.alternate_names = require("alternate_names").get<std::vector<std::string>>();
        for (const json& tj : require("topics")) {
            r.topics.push_back({tj.at("topic").get<std::string>(), tj.at("score").get<double>()});
        }
        std::string vocab_name = str("source_vocabulary");
        if (vocab_name == "schema_org") r.source_vocabulary = SourceVocabulary::SchemaOrg;
        else if (vocab_name == "dcat") r.source_vocabulary = SourceVocabulary::Dcat;
        else if (vocab_name == "mixed") r.source_vocabulary = SourceVocabulary::Mixed;
        else {
            throw InputError("line " + std::to_string(line_number) + ": bad source_vocabulary");
        }
        r.entity_index = require("entity_index").get<int>();
        r.page_dataset_count = require("page_dataset_count").get<int>();
        r.unmapped_count = require("unmapped_count").get<int>();
    } catch (const json::exception& e) {
        throw InputError("line " + std::to_string(line_number) + ": " + e.what());
    }
    return r;
}

void write_snapshot(const CorpusSnapshot& snapshot, const std::string& path) {
    if (std::filesystem::exists(path)) {
        throw InputError("snapshot already exists (snapshots are immutable): " + path);
    }
    if (snapshot.manifest.record_count != static_cast<int64_t>(snapshot.records.size())) {
        throw InputError("manifest mismatch: manifest says " +
                         std::to_string(snapshot.manifest.record_count) + " records, have " +
                         std::to_string(snapshot.records.size()));
    }

    std::string body;
    for (const DatasetRecord& record : snapshot.records) {
        body += serialize_record(record);
        body += '\n';
    }

    json manifest;
    manifest["snapshot_date"] = snapshot.manifest.snapshot_date.to_iso();
    manifest["record_count"] = snapshot.manifest.record_count;
    manifest["pipeline_version"] = snapshot.manifest.pipeline_version;
    manifest["config_checksums"] = snapshot.manifest.config_checksums;
    manifest["records_sha256"] = sha256_hex(body);
    json counters;
    counters["pages_seen"] = snapshot.manifest.counters.pages_seen;
    counters["pages_failed"] = snapshot.manifest.counters.pages_failed;
    counters["entities_extracted"] = snapshot.manifest.counters.entities_extracted;
    counters["invalid_dropped"] = snapshot.manifest.counters.invalid_dropped;
    counters["duplicates_collapsed"] = snapshot.manifest.counters.duplicates_collapsed;
    manifest["counters"] = std::move(counters);

    std::filesystem::path target(path);
    if (target.has_parent_path()) {
        std::filesystem::create_directories(target.parent_path());
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write snapshot: " + path);
        out << body;
    }
    {
        std::ofstream out(manifest_path_for(path), std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write manifest: " + manifest_path_for(path));
        out << manifest.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

CorpusSnapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open snapshot: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string body = ss.str();

    std::ifstream min(manifest_path_for(path), std::ios::binary);
    if (!min) throw InputError("cannot open manifest: " + manifest_path_for(path));
    json manifest = json::parse(min, nullptr, false);
    if (manifest.is_discarded() || !manifest.is_object()) {
        throw InputError("malformed manifest: " + manifest_path_for(path));
    }

    CorpusSnapshot snapshot;
    try {
        auto date = CalendarDate::from_iso(manifest.at("snapshot_date").get<std::string>());
        if (!date) throw InputError("manifest has invalid snapshot_date");
        snapshot.manifest.snapshot_date = *date;
        snapshot.manifest.record_count = manifest.at("record_count").get<int64_t>();
        snapshot.manifest.pipeline_version = manifest.at("pipeline_version").get<std::string>();
        snapshot.manifest.config_checksums =
            manifest.at("config_checksums").get<std::map<std::string, std::string>>();
        snapshot.manifest.records_sha256 = manifest.at("records_sha256").get<std::string>();
        const json& counters = manifest.at("counters");
        snapshot.manifest.counters.pages_seen = counters.at("pages_seen").get<int64_t>();
        snapshot.manifest.counters.pages_failed = counters.at("pages_failed").get<int64_t>();
        snapshot.manifest.counters.entities_extracted =
            counters.at("entities_extracted").get<int64_t>();
        snapshot.manifest.counters.invalid_dropped = counters.at("invalid_dropped").get<int64_t>();
        snapshot.manifest.counters.duplicates_collapsed =
            counters.at("duplicates_collapsed").get<int64_t>();
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed manifest: ") + e.what());
    }

    if (sha256_hex(body) != snapshot.manifest.records_sha256) {
        throw InputError("records checksum mismatch for " + path);
    }

    int line_number = 0;
    size_t start = 0;
    while (start < body.size()) {
        size_t end = body.find('\n', start);
        if (end == std::string::npos) {
            throw InputError("line " + std::to_string(line_number + 1) +
                             ": truncated record (missing newline)");
        }
        ++line_number;
        snapshot.records.push_back(parse_record(body.substr(start, end - start), line_number));
        start = end + 1;
    }

    if (snapshot.manifest.record_count != static_cast<int64_t>(snapshot.records.size())) {
        throw InputError("manifest mismatch: manifest says " +
                         std::to_string(snapshot.manifest.record_count) + " records, file has " +
                         std::to_string(snapshot.records.size()));
    }
    return snapshot;
}

}  // namespace dsmeta
