#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dsmeta/record.hpp"

namespace dsmeta {

struct LicenseClass {
    std::string class_id = "unknown";
    bool allows_redistribution = false;
    bool allows_commercial = false;

    bool operator==(const LicenseClass&) const = default;
};

struct LicenseRule {
    std::string pattern;  // lower-case substring
    LicenseClass result;
};

class LicenseTable {
public:
    void add_rule(LicenseRule rule) { rules_.push_back(std::move(rule)); }
    // First matching rule wins; unmatched values classify as unknown.
    LicenseClass classify(std::string_view raw) const;
    size_t size() const { return rules_.size(); }

private:
    std::vector<LicenseRule> rules_;
};

class PrefixRegistry {
public:
    void add(const std::string& prefix, const std::string& provider);
    bool contains(std::string_view prefix) const;
    const std::string* provider(std::string_view prefix) const;
    size_t size() const { return entries_.size(); }

private:
    std::map<std::string, std::string, std::less<>> entries_;
};

class FormatBuckets {
public:
    void add(const std::string& key, ContentCategory category);
    // Total: every format maps to exactly one category (Other by default).
    ContentCategory bucket(std::string_view raw_format) const;
    size_t size() const { return map_.size(); }

private:
    std::map<std::string, ContentCategory, std::less<>> map_;
};

class GovernmentPatterns {
public:
    void add(std::string pattern);
    bool matches(const std::vector<std::string>& host_labels) const;

private:
    std::vector<std::string> tlds_;          // e.g. "gov"
    std::vector<std::string> second_level_;  // e.g. "gouv" from "gouv.*"
};

class PublicSuffixList {
public:
    void add_rule(std::string rule);
    // Longest-match public suffix plus one label; the whole host when it is
    // itself a suffix or has a single label.
    std::string registrable_domain(const std::string& host) const;
    std::string public_suffix(const std::string& host) const;

private:
    std::set<std::string> rules_;
    std::set<std::string> wildcard_;   // "*.ck" stored as "ck"
    std::set<std::string> exception_;  // "!www.ck" stored as "www.ck"
};

struct TopicPhrase {
    std::string topic;
    std::string phrase;  // lower-case
    double weight = 1.0;
};

struct TopicLexicon {
    std::vector<TopicPhrase> phrases;
    double title_weight = 3.0;
    double description_weight = 2.0;
    double keywords_weight = 2.0;
    double page_text_weight = 1.0;
    double threshold = 0.05;

    // Sum of phrase weights per topic, in first-seen topic order.
    std::vector<std::pair<std::string, double>> topic_totals() const;
};

struct PropertyMapping {
    std::string canonical;                    // e.g. "title"
    std::vector<std::string> source_iris;     // expanded absolute IRIs, in order
};

class PropertyMappingTable {
public:
    void add(PropertyMapping mapping);
    const std::vector<PropertyMapping>& mappings() const { return mappings_; }
    // Canonical property that an IRI feeds, nullptr when unmapped.
    const std::string* canonical_for(std::string_view iri) const;

private:
    std::vector<PropertyMapping> mappings_;
    std::map<std::string, std::string, std::less<>> iri_to_canonical_;
};

struct NormalizationConfig {
    PropertyMappingTable mappings;
    LicenseTable licenses;
    PrefixRegistry prefixes;
    FormatBuckets buckets;
    GovernmentPatterns government;
    std::set<std::string> semantic_web_formats;
    TopicLexicon lexicon;
    PublicSuffixList suffixes;

    // file name -> sha256, for snapshot manifests.
    std::map<std::string, std::string> file_checksums;

    // Loads every table from a config directory; throws ConfigError on any
    // missing file or invariant violation.
    static NormalizationConfig load(const std::string& dir);
};

// Expands a config predicate token (so:name, dcat:keyword, purl:title, full
// IRI, ...) to the list of absolute IRIs it covers.
std::vector<std::string> expand_predicate_alias(const std::string& token);

}  // namespace dsmeta
