#include "dsmeta/ingest.hpp"

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "dsmeta/url.hpp"
#include "dsmeta/util.hpp"

namespace dsmeta {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string today_utc_iso() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", tm_utc.tm_year + 1900, tm_utc.tm_mon + 1,
                  tm_utc.tm_mday);
    return buf;
}

std::vector<PageInput> ingest_directory(const IngestSource& source, Diagnostics& diags) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(source.path)) {
        throw InputError("source directory not found: " + source.path);
    }
    std::string map_path =
        source.url_map.empty() ? source.path + "/url-map.tsv" : source.url_map;
    std::ifstream map_in(map_path);
    if (!map_in) {
        throw InputError("directory sources require a url map; cannot read " + map_path);
    }

    std::vector<std::pair<std::string, std::string>> entries;  // file path -> URL
    std::string line;
    int line_number = 0;
    while (std::getline(map_in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = trim(line);
        if (sv.empty() || sv[0] == '#') continue;
        std::vector<std::string> cols = split(line, '\t');
        if (cols.size() != 2) {
            throw InputError(map_path + " line " + std::to_string(line_number) +
                             ": expected 2 tab-separated columns");
        }
        entries.emplace_back(cols[0], cols[1]);
    }
    std::sort(entries.begin(), entries.end());

    std::vector<PageInput> pages;
    pages.reserve(entries.size());
    for (const auto& [file, url] : entries) {
        fs::path full = fs::path(source.path) / file;
        PageInput page;
        page.page_url = url;
        try {
            page.html = read_file(full.string());
        } catch (const InputError& e) {
            diags.warn("ingest", url, e.what());
            continue;
        }
        pages.push_back(std::move(page));
    }
    return pages;
}

struct HostClient {
    std::unique_ptr<httplib::Client> client;
    bool robots_loaded = false;
    RobotsRules robots;
};

std::vector<PageInput> ingest_url_list(const IngestSource& source, Diagnostics& diags) {
    std::ifstream in(source.path);
    if (!in) throw InputError("cannot read url list: " + source.path);

    std::vector<std::string> urls;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = trim(line);
        if (sv.empty() || sv[0] == '#') continue;
        urls.emplace_back(sv);
    }

    std::map<std::string, HostClient> hosts;
    std::vector<PageInput> pages;
    std::string fetch_date = today_utc_iso();
    int fetched = 0;

    for (const std::string& raw_url : urls) {
        if (source.politeness.max_pages > 0 && fetched >= source.politeness.max_pages) {
            diags.info("ingest", raw_url, "max-pages limit reached; remaining URLs skipped");
            break;
        }
        auto url = parse_url(raw_url);
        if (!url || (url->scheme != "http" && url->scheme != "https")) {
            diags.warn("ingest", raw_url, "not a fetchable http(s) URL; skipped");
            continue;
        }
        std::string origin = url->scheme + "://" + url->host;
        if (!url->port.empty()) origin += ":" + url->port;

        HostClient& host = hosts[origin];
        if (!host.client) {
            host.client = std::make_unique<httplib::Client>(origin);
            host.client->set_follow_location(true);
        }
        if (source.politeness.respect_robots && !host.robots_loaded) {
            host.robots_loaded = true;
            if (auto res = host.client->Get("/robots.txt"); res && res->status == 200) {
                host.robots = RobotsRules::parse(res->body);
            }
        }
        std::string path = url->path.empty() ? "/" : url->path;
        if (!url->query.empty()) path += "?" + url->query;
        if (source.politeness.respect_robots && !host.robots.allows(path)) {
            diags.info("ingest", raw_url, "excluded by robots.txt");
            continue;
        }

        if (source.politeness.delay_ms > 0 && fetched > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(source.politeness.delay_ms));
        }
        auto res = host.client->Get(path);
        ++fetched;
        if (!res) {
            diags.warn("ingest", raw_url, "fetch failed (connection error); skipped");
            continue;
        }
        if (res->status != 200) {
            diags.warn("ingest", raw_url,
                       "fetch failed (HTTP " + std::to_string(res->status) + "); skipped");
            continue;
        }
        PageInput page;
        page.page_url = url->to_string();
        page.html = res->body;
        page.fetch_date = fetch_date;
        if (res->has_header("Last-Modified")) {
            page.http_last_modified = res->get_header_value("Last-Modified");
        }
        pages.push_back(std::move(page));
    }
    return pages;
}

}  // namespace

RobotsRules RobotsRules::parse(std::string_view body) {
    RobotsRules rules;
    bool in_star_group = false;
    bool seen_star_group = false;
    size_t start = 0;
    while (start <= body.size()) {
        size_t end = body.find('\n', start);
        std::string_view line =
            end == std::string_view::npos ? body.substr(start) : body.substr(start, end - start);
        size_t comment = line.find('#');
        if (comment != std::string_view::npos) line = line.substr(0, comment);
        line = trim(line);
        size_t colon = line.find(':');
        if (colon != std::string_view::npos) {
            std::string key = to_lower_ascii(trim(line.substr(0, colon)));
            std::string_view value = trim(line.substr(colon + 1));
            if (key == "user-agent") {
                in_star_group = (value == "*");
                if (in_star_group) seen_star_group = true;
            } else if (key == "disallow" && in_star_group && !value.empty()) {
                rules.disallow_.emplace_back(value);
            }
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    (void)seen_star_group;
    return rules;
}

bool RobotsRules::allows(std::string_view path) const {
    for (const std::string& prefix : disallow_) {
        if (path.rfind(prefix, 0) == 0) return false;
    }
    return true;
}

std::vector<PageInput> ingest(const IngestSource& source, Diagnostics& diags) {
    if (source.kind == IngestSource::Kind::Directory) {
        return ingest_directory(source, diags);
    }
    return ingest_url_list(source, diags);
}

}  // namespace dsmeta
