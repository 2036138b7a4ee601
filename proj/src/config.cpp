#include "dsmeta/config.hpp"

#include <algorithm>
#include <fstream>

#include "dsmeta/diagnostics.hpp"
#include "dsmeta/sha256.hpp"
#include "dsmeta/triples.hpp"
#include "dsmeta/util.hpp"

namespace dsmeta {

namespace {

std::vector<std::vector<std::string>> read_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = trim(line);
        if (sv.empty() || sv[0] == '#') continue;
        rows.push_back(split(line, '\t'));
    }
    return rows;
}

bool parse_bool_flag(const std::string& path, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError(path + ": expected true/false, got \"" + v + "\"");
}

bool valid_prefix_token(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == '_';
        if (!ok) return false;
    }
    return true;
}

}  // namespace

LicenseClass LicenseTable::classify(std::string_view raw) const {
    std::string needle = to_lower_ascii(collapse_whitespace(raw));
    if (!needle.empty()) {
        for (const LicenseRule& rule : rules_) {
            if (needle.find(rule.pattern) != std::string::npos) return rule.result;
        }
    }
    return LicenseClass{};
}

void PrefixRegistry::add(const std::string& prefix, const std::string& provider) {
    if (!valid_prefix_token(prefix)) {
        throw ConfigError("invalid identifier prefix \"" + prefix + "\"");
    }
    if (!entries_.emplace(prefix, provider).second) {
        throw ConfigError("duplicate identifier prefix \"" + prefix + "\"");
    }
}

bool PrefixRegistry::contains(std::string_view prefix) const {
    return entries_.find(prefix) != entries_.end();
}

const std::string* PrefixRegistry::provider(std::string_view prefix) const {
    auto it = entries_.find(prefix);
    return it == entries_.end() ? nullptr : &it->second;
}

void FormatBuckets::add(const std::string& key, ContentCategory category) {
    if (!map_.emplace(key, category).second) {
        throw ConfigError("duplicate format-bucket key \"" + key + "\"");
    }
}

ContentCategory FormatBuckets::bucket(std::string_view raw_format) const {
    if (raw_format.empty()) return ContentCategory::Other;
    auto it = map_.find(raw_format);
    if (it != map_.end()) return it->second;
    // MIME types also match on their subtype ("application/x-zip" -> "zip").
    size_t slash = raw_format.find('/');
    if (slash != std::string_view::npos) {
        std::string_view subtype = raw_format.substr(slash + 1);
        if (subtype.rfind("x-", 0) == 0) subtype.remove_prefix(2);
        it = map_.find(subtype);
        if (it != map_.end()) return it->second;
    }
    return ContentCategory::Other;
}

void GovernmentPatterns::add(std::string pattern) {
    if (pattern.size() > 2 && pattern.ends_with(".*")) {
        second_level_.push_back(pattern.substr(0, pattern.size() - 2));
    } else {
        tlds_.push_back(std::move(pattern));
    }
}

bool GovernmentPatterns::matches(const std::vector<std::string>& labels) const {
    if (labels.empty()) return false;
    const std::string& last = labels.back();
    if (std::find(tlds_.begin(), tlds_.end(), last) != tlds_.end()) return true;
    // Second-level patterns need the label right before the TLD and a host of
    // at least three labels, so bare two-label hosts (go.com) never match.
    if (labels.size() >= 3) {
        const std::string& second = labels[labels.size() - 2];
        if (std::find(second_level_.begin(), second_level_.end(), second) != second_level_.end()) {
            return true;
        }
    }
    return false;
}

void PublicSuffixList::add_rule(std::string rule) {
    if (rule.rfind("!", 0) == 0) {
        exception_.insert(rule.substr(1));
    } else if (rule.rfind("*.", 0) == 0) {
        wildcard_.insert(rule.substr(2));
    } else {
        rules_.insert(std::move(rule));
    }
}

std::string PublicSuffixList::public_suffix(const std::string& host) const {
    std::vector<std::string> labels = split(host, '.');
    size_t n = labels.size();
    if (n == 0) return host;

    auto join_from = [&](size_t start) {
        std::string out;
        for (size_t i = start; i < n; ++i) {
            if (!out.empty()) out += '.';
            out += labels[i];
        }
        return out;
    };

    // Longest listed suffix wins; exceptions shorten a wildcard match.
    for (size_t start = 0; start < n; ++start) {
        std::string candidate = join_from(start);
        if (exception_.count(candidate)) {
            return join_from(start + 1);
        }
        if (rules_.count(candidate)) return candidate;
        if (start + 1 < n && wildcard_.count(join_from(start + 1))) return candidate;
    }
    return labels.back();  // default rule: the TLD itself
}

std::string PublicSuffixList::registrable_domain(const std::string& host) const {
    std::string suffix = public_suffix(host);
    if (suffix.size() >= host.size()) return host;
    // host = <prefix>.<suffix>; keep one more label than the suffix.
    std::string_view prefix(host.data(), host.size() - suffix.size() - 1);
    size_t dot = prefix.find_last_of('.');
    std::string label = std::string(dot == std::string_view::npos ? prefix : prefix.substr(dot + 1));
    return label + "." + suffix;
}

std::vector<std::pair<std::string, double>> TopicLexicon::topic_totals() const {
    std::vector<std::pair<std::string, double>> totals;
    for (const TopicPhrase& p : phrases) {
        auto it = std::find_if(totals.begin(), totals.end(),
                               [&](const auto& t) { return t.first == p.topic; });
        if (it == totals.end()) {
            totals.emplace_back(p.topic, p.weight);
        } else {
            it->second += p.weight;
        }
    }
    return totals;
}

void PropertyMappingTable::add(PropertyMapping mapping) {
    for (const std::string& iri : mapping.source_iris) {
        auto [it, inserted] = iri_to_canonical_.emplace(iri, mapping.canonical);
        if (!inserted && it->second != mapping.canonical) {
            throw ConfigError("source predicate \"" + iri + "\" mapped to both \"" + it->second +
                              "\" and \"" + mapping.canonical + "\"");
        }
    }
    mappings_.push_back(std::move(mapping));
}

const std::string* PropertyMappingTable::canonical_for(std::string_view iri) const {
    auto it = iri_to_canonical_.find(iri);
    return it == iri_to_canonical_.end() ? nullptr : &it->second;
}

std::vector<std::string> expand_predicate_alias(const std::string& token) {
    auto with_suffix = [&](std::initializer_list<std::string_view> bases,
                           std::string_view local) {
        std::vector<std::string> out;
        for (std::string_view base : bases) out.push_back(std::string(base) + std::string(local));
        return out;
    };
    size_t colon = token.find(':');
    if (colon != std::string::npos) {
        std::string prefix = token.substr(0, colon);
        std::string local = token.substr(colon + 1);
        if (prefix == "so") return with_suffix({vocab::kSchemaHttp, vocab::kSchemaHttps}, local);
        if (prefix == "dcat") return with_suffix({vocab::kDcat}, local);
        if (prefix == "purl") return with_suffix({vocab::kDcTerms, vocab::kDcElements}, local);
        if (prefix == "rdfs") return with_suffix({vocab::kRdfs}, local);
        if (prefix == "owl") return with_suffix({vocab::kOwl}, local);
        if (prefix == "rdf") return with_suffix({"http://www.w3.org/1999/02/22-rdf-syntax-ns#"}, local);
    }
    if (looks_like_absolute_iri(token)) return {token};
    throw ConfigError("unknown predicate alias \"" + token + "\"");
}

NormalizationConfig NormalizationConfig::load(const std::string& dir) {
    NormalizationConfig config;
    auto path_of = [&dir](const char* name) { return dir + "/" + name; };
    auto checksum = [&](const char* name) {
        try {
            config.file_checksums[name] = sha256_file_hex(path_of(name));
        } catch (const InputError& e) {
            throw ConfigError(e.what());
        }
    };

    {
        const char* name = "property-mappings.tsv";
        for (const auto& row : read_tsv(path_of(name))) {
            if (row.size() != 2) throw ConfigError(std::string(name) + ": expected 2 columns");
            PropertyMapping mapping;
            mapping.canonical = row[0];
            for (const std::string& token : split(row[1], ',')) {
                for (std::string& iri : expand_predicate_alias(std::string(trim(token)))) {
                    mapping.source_iris.push_back(std::move(iri));
                }
            }
            if (mapping.source_iris.empty()) {
                throw ConfigError(std::string(name) + ": property \"" + mapping.canonical +
                                  "\" has no source predicates");
            }
            config.mappings.add(std::move(mapping));
        }
        checksum(name);
    }

    {
        const char* name = "license-classes.tsv";
        for (const auto& row : read_tsv(path_of(name))) {
            if (row.size() != 4) throw ConfigError(std::string(name) + ": expected 4 columns");
            LicenseRule rule;
            rule.pattern = to_lower_ascii(row[0]);
            rule.result.class_id = row[1];
            rule.result.allows_redistribution = parse_bool_flag(name, row[2]);
            rule.result.allows_commercial = parse_bool_flag(name, row[3]);
            config.licenses.add_rule(std::move(rule));
        }
        checksum(name);
    }

    {
        const char* name = "identifier-prefixes.tsv";
        for (const auto& row : read_tsv(path_of(name))) {
            if (row.size() != 2) throw ConfigError(std::string(name) + ": expected 2 columns");
            config.prefixes.add(row[0], row[1]);
        }
        checksum(name);
    }

    {
        const char* name = "format-buckets.tsv";
        for (const auto& row : read_tsv(path_of(name))) {
            if (row.size() != 2) throw ConfigError(std::string(name) + ": expected 2 columns");
            auto category = category_from_name(row[1]);
            if (!category) {
                throw ConfigError(std::string(name) + ": unknown category \"" + row[1] + "\"");
            }
            config.buckets.add(to_lower_ascii(row[0]), *category);
        }
        checksum(name);
    }

    {
        const char* name = "government-patterns.tsv";
        for (const auto& row : read_tsv(path_of(name))) {
            if (row.size() != 1) throw ConfigError(std::string(name) + ": expected 1 column");
            config.government.add(to_lower_ascii(row[0]));
        }
        checksum(name);
    }

    {
        const char* name = "semantic-web-formats.tsv";
        for (const auto& row : read_tsv(path_of(name))) {
            if (row.size() != 1) throw ConfigError(std::string(name) + ": expected 1 column");
            config.semantic_web_formats.insert(to_lower_ascii(row[0]));
        }
        checksum(name);
    }

    {
        const char* name = "topic-lexicon.tsv";
        for (const auto& row : read_tsv(path_of(name))) {
            if (row.size() == 3 && row[0] == "@weight") {
                double w = std::stod(row[2]);
                if (w <= 0) throw ConfigError(std::string(name) + ": weights must be positive");
                if (row[1] == "title") config.lexicon.title_weight = w;
                else if (row[1] == "description") config.lexicon.description_weight = w;
                else if (row[1] == "keywords") config.lexicon.keywords_weight = w;
                else if (row[1] == "page_text") config.lexicon.page_text_weight = w;
                else throw ConfigError(std::string(name) + ": unknown field \"" + row[1] + "\"");
                continue;
            }
            if (row.size() == 2 && row[0] == "@threshold") {
                config.lexicon.threshold = std::stod(row[1]);
                continue;
            }
            if (row.size() != 3) throw ConfigError(std::string(name) + ": expected 3 columns");
            TopicPhrase phrase;
            phrase.topic = row[0];
            phrase.phrase = to_lower_ascii(collapse_whitespace(row[1]));
            phrase.weight = std::stod(row[2]);
            if (phrase.weight <= 0) {
                throw ConfigError(std::string(name) + ": weights must be positive");
            }
            if (phrase.phrase.empty()) {
                throw ConfigError(std::string(name) + ": empty phrase for topic " + phrase.topic);
            }
            config.lexicon.phrases.push_back(std::move(phrase));
        }
        checksum(name);
    }

    {
        const char* name = "public-suffixes.tsv";
        for (const auto& row : read_tsv(path_of(name))) {
            if (row.size() != 1) throw ConfigError(std::string(name) + ": expected 1 column");
            config.suffixes.add_rule(to_lower_ascii(row[0]));
        }
        checksum(name);
    }

    return config;
}

std::string_view category_name(ContentCategory category) {
    switch (category) {
        case ContentCategory::Tables: return "Tables";
        case ContentCategory::Structured: return "Structured";
        case ContentCategory::Documents: return "Documents";
        case ContentCategory::Images: return "Images";
        case ContentCategory::Archives: return "Archives";
        case ContentCategory::Text: return "Text";
        case ContentCategory::Geospatial: return "Geospatial";
        case ContentCategory::ComputationalBiology: return "ComputationalBiology";
        case ContentCategory::Audio: return "Audio";
        case ContentCategory::Video: return "Video";
        case ContentCategory::Presentations: return "Presentations";
        case ContentCategory::MedicalImaging: return "MedicalImaging";
        case ContentCategory::Other: return "Other";
    }
    return "Other";
}

std::optional<ContentCategory> category_from_name(std::string_view name) {
    static const ContentCategory all[] = {
        ContentCategory::Tables,      ContentCategory::Structured,
        ContentCategory::Documents,   ContentCategory::Images,
        ContentCategory::Archives,    ContentCategory::Text,
        ContentCategory::Geospatial,  ContentCategory::ComputationalBiology,
        ContentCategory::Audio,       ContentCategory::Video,
        ContentCategory::Presentations, ContentCategory::MedicalImaging,
        ContentCategory::Other,
    };
    for (ContentCategory c : all) {
        if (category_name(c) == name) return c;
    }
    return std::nullopt;
}

std::string_view vocabulary_name(SourceVocabulary v) {
    switch (v) {
        case SourceVocabulary::SchemaOrg: return "schema_org";
        case SourceVocabulary::Dcat: return "dcat";
        case SourceVocabulary::Mixed: return "mixed";
    }
    return "schema_org";
}

}  // namespace dsmeta
