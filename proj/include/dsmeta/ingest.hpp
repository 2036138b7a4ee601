#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsmeta/diagnostics.hpp"

namespace dsmeta {

struct FetchPoliteness {
    int delay_ms = 0;
    int max_pages = 0;  // 0 = unlimited
    bool respect_robots = true;
};

struct IngestSource {
    enum class Kind { Directory, UrlList };

    Kind kind = Kind::Directory;
    std::string path;
    std::string url_map;  // directory mode: defaults to <path>/url-map.tsv
    FetchPoliteness politeness;
};

struct PageInput {
    std::string page_url;
    std::string html;
    std::string fetch_date;           // ISO date of retrieval (empty for files)
    std::string http_last_modified;   // Last-Modified header when fetched
};

// Loads pages in deterministic order (sorted file paths / list order).
// Fetch failures and robots-excluded URLs are skipped with diagnostics;
// missing directories or unreadable lists are fatal.
std::vector<PageInput> ingest(const IngestSource& source, Diagnostics& diags);

// Minimal robots.txt rules for User-agent: * (Disallow prefixes only).
class RobotsRules {
public:
    static RobotsRules parse(std::string_view body);
    bool allows(std::string_view path) const;

private:
    std::vector<std::string> disallow_;
};

}  // namespace dsmeta
