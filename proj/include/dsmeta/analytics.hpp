#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dsmeta/snapshot.hpp"

namespace dsmeta {

struct PowerLawFit {
    double exponent = 0.0;  // density exponent alpha
    double stderr_value = 0.0;
    double xmin = 0.0;
    size_t tail_size = 0;
    double loglog_ccdf_slope = 0.0;  // least-squares comparison fit
};

// Continuous maximum-likelihood (Hill) estimate over the tail at or above the
// empirical quantile xmin. Throws InputError when the tail has fewer than 10
// points or no spread.
PowerLawFit fit_power_law(const std::vector<uint64_t>& sizes, double xmin_quantile = 0.5);

struct DomainDistribution {
    std::vector<std::pair<std::string, int64_t>> counts;  // count desc, domain asc
    std::vector<std::pair<std::string, int64_t>> top;     // first top_k rows
    double top_share = 0.0;
    std::optional<PowerLawFit> power_law;
    std::string power_law_note;  // set when the fit is not applicable
};

DomainDistribution domain_size_distribution(const CorpusSnapshot& snapshot, int top_k = 10);

struct PageCardinalityStats {
    double single_page_fraction = 0.0;  // records on single-dataset pages
    int64_t gt10_count = 0;             // records on pages with more than ten
};

PageCardinalityStats page_cardinality_stats(const CorpusSnapshot& snapshot);

struct TldStats {
    std::vector<std::pair<std::string, int64_t>> tld_counts;  // count desc, tld asc
    int64_t government_count = 0;
};

TldStats tld_and_government(const CorpusSnapshot& snapshot);

struct LanguageRow {
    std::string language;
    int64_t count = 0;
    double share = 0.0;
    std::optional<double> change;  // vs the comparison snapshot, when given
};

std::vector<LanguageRow> language_breakdown(const CorpusSnapshot& snapshot,
                                            const CorpusSnapshot* older = nullptr);

struct VocabularyShare {
    int64_t schema_org = 0;
    int64_t dcat = 0;
    int64_t mixed = 0;
    double dcat_share = 0.0;  // dcat + mixed over total
};

VocabularyShare vocabulary_share(const CorpusSnapshot& snapshot);

struct PropertyCoverageRow {
    std::string property;
    int64_t count = 0;
    double percentage = 0.0;  // 0..100
};

std::vector<PropertyCoverageRow> property_coverage(const CorpusSnapshot& snapshot);

struct FormatRow {
    ContentCategory category = ContentCategory::Other;
    int64_t dataset_count = 0;  // datasets with >= 1 download in the category
    double share = 0.0;         // over download-bearing datasets
};

struct FormatStats {
    int64_t download_bearing = 0;
    std::vector<FormatRow> rows;  // count desc, category order asc
    int64_t semantic_web_count = 0;
    double semantic_web_share = 0.0;  // over download-bearing datasets
};

FormatStats format_stats(const CorpusSnapshot& snapshot,
                         const std::set<std::string>& semantic_web_formats);

struct IdentifierStats {
    int64_t doi_datasets = 0;
    double doi_share = 0.0;  // over all records
    std::vector<std::pair<std::string, int64_t>> doi_by_domain;
    int64_t compact_id_datasets = 0;
    double compact_id_share = 0.0;
    std::vector<std::pair<std::string, int64_t>> compact_by_domain;
};

IdentifierStats identifier_stats(const CorpusSnapshot& snapshot, int top_k = 10);

struct ProviderStats {
    int64_t provider_bearing = 0;  // records with a provider
    int64_t provider_count = 0;    // distinct providers
    int top_k = 20;
    double top_share = 0.0;  // top-k providers' records over provider-bearing
    double small_provider_fraction = 0.0;  // providers with < 10 datasets
    std::vector<std::pair<std::string, int64_t>> top_providers;
};

ProviderStats provider_stats(const CorpusSnapshot& snapshot, int top_k = 20);

struct OpennessStats {
    int64_t total = 0;
    int64_t with_license = 0;
    double license_coverage = 0.0;  // with_license / total
    int64_t recognized = 0;
    double recognized_share = 0.0;  // recognized / with_license
    int64_t open_count = 0;         // open among recognized-license records
    double open_share = 0.0;        // open_count / recognized
    int64_t commercial_count = 0;   // commercial among those open records
    double commercial_share = 0.0;  // commercial_count / open_count
    int64_t free_bit_true = 0;      // is_accessible_for_free == true, whole corpus
};

OpennessStats openness_stats(const CorpusSnapshot& snapshot);

struct RecencyStats {
    CalendarDate reference;
    std::array<int64_t, 12> monthly{};  // bin 0 = the reference month
    std::array<int64_t, 5> yearly{};    // bin 0 = within the past 365 days
    int64_t known_dates = 0;
    double known_date_share = 0.0;
    double within_past_year_share = 0.0;  // yearly bin 0 over known dates
};

RecencyStats recency_histograms(const CorpusSnapshot& snapshot, const CalendarDate& reference);

struct ChurnStats {
    int64_t old_total = 0;
    int64_t new_total = 0;
    int64_t retained = 0;
    int64_t disappeared = 0;
    int64_t added = 0;
    double retention_share = 0.0;  // retained / old_total
};

// Set comparison over distinct page URLs.
ChurnStats compute_churn(const CorpusSnapshot& old_snapshot, const CorpusSnapshot& new_snapshot);

struct UsageTopicRow {
    std::string topic;
    int64_t datasets = 0;
    double share = 0.0;  // over distinct matched datasets
};

struct UsageStats {
    int64_t log_lines = 0;
    int64_t distinct_ids = 0;
    int64_t unknown_ids = 0;
    int64_t matched = 0;
    std::vector<UsageTopicRow> rows;
};

// Joins result-log dataset ids with snapshot topics. Throws InputError on an
// empty log.
UsageStats usage_topic_distribution(const std::vector<std::string>& log_ids,
                                    const CorpusSnapshot& snapshot);

struct AnalyticsReport {
    CalendarDate snapshot_date;
    CalendarDate reference_date;
    int64_t record_count = 0;
    DomainDistribution domains;
    PageCardinalityStats page_cardinality;
    TldStats tlds;
    std::vector<LanguageRow> languages;
    VocabularyShare vocabulary;
    std::vector<PropertyCoverageRow> coverage;
    FormatStats formats;
    IdentifierStats identifiers;
    ProviderStats providers;
    OpennessStats openness;
    RecencyStats recency;
    std::optional<ChurnStats> churn;  // when a comparison snapshot was given
    int64_t cross_site_collisions = 0;
};

AnalyticsReport compute_report(const CorpusSnapshot& snapshot, const CorpusSnapshot* older,
                               const CalendarDate& reference_date,
                               const std::set<std::string>& semantic_web_formats, int top_k = 10);

}  // namespace dsmeta
