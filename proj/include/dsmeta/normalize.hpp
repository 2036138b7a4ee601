#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsmeta/config.hpp"
#include "dsmeta/diagnostics.hpp"
#include "dsmeta/mapping.hpp"
#include "dsmeta/record.hpp"

namespace dsmeta {

struct DomainInfo {
    std::string domain;  // registrable domain
    std::string tld;     // final host label
    bool is_government = false;
};

// Throws InputError when the URL has no parseable host.
DomainInfo classify_domain(const std::string& page_url, const PublicSuffixList& suffixes,
                           const GovernmentPatterns& government);

// Accepts ISO-8601 dates and date-times, YYYY, YYYY-MM, slashed dates
// (month-first, with a day-first fallback when the month is impossible),
// DD.MM.YYYY, and English month-name forms.
std::optional<CalendarDate> parse_date(std::string_view raw);

// Max over the populated metadata dates; the page date is only a fallback.
std::optional<CalendarDate> resolve_last_updated(const RecordDates& dates);

// One entry per distribution; format from fileFormat/encodingFormat/
// encodingType, else the download URL's file extension. Entries with neither
// URL nor format are dropped with a diagnostic. Categories are not yet set.
std::vector<DownloadEntry> normalize_downloads(const std::vector<RawProperty>& distributions,
                                               const std::string& page_url, Diagnostics& diags);

bool is_semantic_web_format(std::string_view raw_format,
                            const std::set<std::string>& semantic_web_formats);

struct IdentifierSet {
    std::vector<std::string> dois;
    std::vector<std::string> compact_ids;
};

IdentifierSet extract_identifiers(const RawDatasetRecord& raw, const PrefixRegistry& registry);

// Scans one text value; appends matches (used by extract_identifiers and the
// test oracles).
void scan_identifiers(std::string_view text, const PrefixRegistry& registry, IdentifierSet& out);

std::vector<LicenseEntry> normalize_licenses(const RawDatasetRecord& raw,
                                             const LicenseTable& table);

bool compute_openness(const std::vector<LicenseEntry>& licenses, TriState is_accessible_for_free);

std::vector<std::string> resolve_provider(const std::vector<RawProperty>& values,
                                          Diagnostics& diags, const std::string& context);

// Canonical provider-name form: case fold, whitespace collapse, legal-suffix
// strip (Inc., Ltd., GmbH, LLC, ...).
std::string canonical_provider_name(std::string_view raw);

std::string detect_language(const std::string& html_lang, const std::string& content_language,
                            const std::vector<std::string>& literal_tags);

std::string primary_language_subtag(std::string_view tag);

TriState parse_tri_state(const std::vector<RawProperty>& values);

}  // namespace dsmeta
