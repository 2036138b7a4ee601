#pragma once

#include <string>
#include <vector>

#include "dsmeta/record.hpp"

namespace dsmeta {

// Fingerprint over the key properties: normalized title + first provider +
// sorted set of download URLs. Equal keys identify the same dataset.
std::string dataset_key(const DatasetRecord& record);

// Stable record id: digest of the dataset key plus the domain.
std::string record_id(const DatasetRecord& record);

// Drops records lacking a non-empty title or description.
std::vector<DatasetRecord> filter_invalid(std::vector<DatasetRecord> records,
                                          int64_t* dropped_count);

// Collapses duplicate keys within each domain, preferring records from pages
// that contain exactly one dataset; ties break to the lexicographically
// smallest page URL (then entity index). Output is sorted by
// (domain, page_url, entity_index).
std::vector<DatasetRecord> dedup_within_site(std::vector<DatasetRecord> records,
                                             int64_t* collapsed_count);

// Keys that appear under more than one domain (reported, never collapsed).
struct CrossSiteCollision {
    std::string key;
    std::vector<std::string> domains;
};

std::vector<CrossSiteCollision> cross_site_key_collisions(
    const std::vector<DatasetRecord>& records);

}  // namespace dsmeta
