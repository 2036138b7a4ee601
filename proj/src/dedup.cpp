#include "dsmeta/dedup.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dsmeta/sha256.hpp"
#include "dsmeta/util.hpp"

namespace dsmeta {

namespace {

std::string key_material(const DatasetRecord& record) {
    std::string material = case_fold(collapse_whitespace(record.title));
    material += '\x1F';
    if (!record.providers.empty()) material += record.providers.front();
    material += '\x1F';
    std::set<std::string> urls;
    for (const DownloadEntry& d : record.downloads) {
        if (!d.download_url.empty()) urls.insert(d.download_url);
    }
    for (const std::string& url : urls) {
        material += url;
        material += '\x1E';
    }
    return material;
}

bool record_order(const DatasetRecord& a, const DatasetRecord& b) {
    if (a.domain != b.domain) return a.domain < b.domain;
    if (a.page_url != b.page_url) return a.page_url < b.page_url;
    return a.entity_index < b.entity_index;
}

}  // namespace

std::string dataset_key(const DatasetRecord& record) {
    return sha256_hex(key_material(record));
}

std::string record_id(const DatasetRecord& record) {
    return sha256_hex(key_material(record) + '\x1F' + record.domain);
}

std::vector<DatasetRecord> filter_invalid(std::vector<DatasetRecord> records,
                                          int64_t* dropped_count) {
    std::vector<DatasetRecord> kept;
    kept.reserve(records.size());
    int64_t dropped = 0;
    for (DatasetRecord& record : records) {
        if (trim(record.title).empty() || trim(record.description).empty()) {
            ++dropped;
            continue;
        }
        kept.push_back(std::move(record));
    }
    if (dropped_count) *dropped_count = dropped;
    return kept;
}

std::vector<DatasetRecord> dedup_within_site(std::vector<DatasetRecord> records,
                                             int64_t* collapsed_count) {
    // Group positions by (domain, key); the grouping never crosses domains.
    std::map<std::pair<std::string, std::string>, std::vector<size_t>> groups;
    for (size_t i = 0; i < records.size(); ++i) {
        groups[{records[i].domain, dataset_key(records[i])}].push_back(i);
    }

    int64_t collapsed = 0;
    std::vector<DatasetRecord> survivors;
    survivors.reserve(groups.size());
    for (auto& [key, positions] : groups) {
        size_t best = positions[0];
        for (size_t idx : positions) {
            const DatasetRecord& cand = records[idx];
            const DatasetRecord& cur = records[best];
            bool cand_single = cand.page_dataset_count == 1;
            bool cur_single = cur.page_dataset_count == 1;
            if (cand_single != cur_single) {
                if (cand_single) best = idx;
                continue;
            }
            if (cand.page_url != cur.page_url) {
                if (cand.page_url < cur.page_url) best = idx;
                continue;
            }
            if (cand.entity_index < cur.entity_index) best = idx;
        }
        collapsed += static_cast<int64_t>(positions.size()) - 1;
        survivors.push_back(std::move(records[best]));
    }

    std::sort(survivors.begin(), survivors.end(), record_order);
    if (collapsed_count) *collapsed_count = collapsed;
    return survivors;
}

std::vector<CrossSiteCollision> cross_site_key_collisions(
    const std::vector<DatasetRecord>& records) {
    std::map<std::string, std::set<std::string>> by_key;
    for (const DatasetRecord& record : records) {
        by_key[dataset_key(record)].insert(record.domain);
    }
    std::vector<CrossSiteCollision> out;
    for (auto& [key, domains] : by_key) {
        if (domains.size() < 2) continue;
        CrossSiteCollision collision;
        collision.key = key;
        collision.domains.assign(domains.begin(), domains.end());
        out.push_back(std::move(collision));
    }
    return out;
}

}  // namespace dsmeta
