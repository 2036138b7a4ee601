#include "dsmeta/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "dsmeta/dedup.hpp"
#include "dsmeta/diagnostics.hpp"
#include "dsmeta/normalize.hpp"

namespace dsmeta {

namespace {

std::vector<std::pair<std::string, int64_t>> sorted_counts(
    const std::map<std::string, int64_t>& counts) {
    std::vector<std::pair<std::string, int64_t>> out(counts.begin(), counts.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

double ratio(int64_t num, int64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<uint64_t>& sizes, double xmin_quantile) {
    if (sizes.empty()) throw InputError("power-law fit: no sizes given");
    std::vector<uint64_t> sorted = sizes;
    std::sort(sorted.begin(), sorted.end());
    size_t index = static_cast<size_t>(xmin_quantile * static_cast<double>(sorted.size() - 1));
    double xmin = static_cast<double>(sorted[index]);
    if (xmin <= 0) throw InputError("power-law fit: xmin must be positive");

    std::vector<double> tail;
    for (uint64_t v : sorted) {
        if (static_cast<double>(v) >= xmin) tail.push_back(static_cast<double>(v));
    }
    constexpr size_t kMinTail = 10;
    if (tail.size() < kMinTail) {
        throw InputError("power-law fit needs at least " + std::to_string(kMinTail) +
                         " tail points, have " + std::to_string(tail.size()));
    }

    double log_sum = 0.0;
    for (double v : tail) log_sum += std::log(v / xmin);
    if (log_sum <= 1e-12) {
        throw InputError("power-law fit: degenerate tail (no spread above xmin)");
    }

    PowerLawFit fit;
    fit.xmin = xmin;
    fit.tail_size = tail.size();
    double n = static_cast<double>(tail.size());
    fit.exponent = 1.0 + n / log_sum;
    fit.stderr_value = (fit.exponent - 1.0) / std::sqrt(n);

    // Comparison fit: least-squares slope of the empirical CCDF in log-log
    // space (expected slope is 1 - alpha).
    std::sort(tail.begin(), tail.end(), std::greater<double>());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < tail.size(); ++i) {
        double x = std::log(tail[i]);
        double y = std::log(static_cast<double>(i + 1) / n);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    fit.loglog_ccdf_slope = denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
    return fit;
}

DomainDistribution domain_size_distribution(const CorpusSnapshot& snapshot, int top_k) {
    if (snapshot.records.empty()) {
        throw InputError("domain distribution: snapshot is empty");
    }
    std::map<std::string, int64_t> counts;
    for (const DatasetRecord& r : snapshot.records) counts[r.domain] += 1;

    DomainDistribution out;
    out.counts = sorted_counts(counts);
    int64_t total = static_cast<int64_t>(snapshot.records.size());
    int64_t top_sum = 0;
    for (size_t i = 0; i < out.counts.size() && i < static_cast<size_t>(top_k); ++i) {
        out.top.push_back(out.counts[i]);
        top_sum += out.counts[i].second;
    }
    out.top_share = ratio(top_sum, total);

    std::vector<uint64_t> sizes;
    for (const auto& [domain, count] : out.counts) sizes.push_back(static_cast<uint64_t>(count));
    try {
        out.power_law = fit_power_law(sizes);
    } catch (const InputError& e) {
        out.power_law_note = e.what();
    }
    return out;
}

PageCardinalityStats page_cardinality_stats(const CorpusSnapshot& snapshot) {
    std::unordered_map<std::string, int64_t> per_page;
    for (const DatasetRecord& r : snapshot.records) per_page[r.page_url] += 1;

    PageCardinalityStats out;
    int64_t single = 0;
    for (const DatasetRecord& r : snapshot.records) {
        int64_t page_size = per_page[r.page_url];
        if (page_size == 1) ++single;
        if (page_size > 10) ++out.gt10_count;
    }
    out.single_page_fraction = ratio(single, static_cast<int64_t>(snapshot.records.size()));
    return out;
}

TldStats tld_and_government(const CorpusSnapshot& snapshot) {
    TldStats out;
    std::map<std::string, int64_t> counts;
    for (const DatasetRecord& r : snapshot.records) {
        counts[r.tld] += 1;
        if (r.is_government) ++out.government_count;
    }
    out.tld_counts = sorted_counts(counts);
    return out;
}

std::vector<LanguageRow> language_breakdown(const CorpusSnapshot& snapshot,
                                            const CorpusSnapshot* older) {
    std::map<std::string, int64_t> counts;
    for (const DatasetRecord& r : snapshot.records) counts[r.language] += 1;
    std::map<std::string, int64_t> old_counts;
    if (older) {
        for (const DatasetRecord& r : older->records) old_counts[r.language] += 1;
    }

    int64_t total = static_cast<int64_t>(snapshot.records.size());
    std::vector<LanguageRow> rows;
    for (const auto& [language, count] : sorted_counts(counts)) {
        LanguageRow row;
        row.language = language;
        row.count = count;
        row.share = ratio(count, total);
        if (older) {
            auto it = old_counts.find(language);
            if (it != old_counts.end() && it->second > 0) {
                row.change = static_cast<double>(count - it->second) /
                             static_cast<double>(it->second);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

VocabularyShare vocabulary_share(const CorpusSnapshot& snapshot) {
    VocabularyShare out;
    for (const DatasetRecord& r : snapshot.records) {
        switch (r.source_vocabulary) {
            case SourceVocabulary::SchemaOrg: ++out.schema_org; break;
            case SourceVocabulary::Dcat: ++out.dcat; break;
            case SourceVocabulary::Mixed: ++out.mixed; break;
        }
    }
    out.dcat_share = ratio(out.dcat + out.mixed, static_cast<int64_t>(snapshot.records.size()));
    return out;
}

std::vector<PropertyCoverageRow> property_coverage(const CorpusSnapshot& snapshot) {
    struct Probe {
        const char* name;
        bool (*populated)(const DatasetRecord&);
    };
    static const Probe probes[] = {
        {"description", [](const DatasetRecord& r) { return !r.description.empty(); }},
        {"title", [](const DatasetRecord& r) { return !r.title.empty(); }},
        {"provider", [](const DatasetRecord& r) { return !r.providers.empty(); }},
        {"keywords", [](const DatasetRecord& r) { return !r.keywords.empty(); }},
        {"url", [](const DatasetRecord& r) { return !r.url.empty(); }},
        {"temporal_coverage", [](const DatasetRecord& r) { return !r.temporal_coverage.empty(); }},
        {"data_download", [](const DatasetRecord& r) { return !r.downloads.empty(); }},
        {"spatial_coverage", [](const DatasetRecord& r) { return !r.spatial_coverage.empty(); }},
        {"date_modified", [](const DatasetRecord& r) { return r.dates.modified.has_value(); }},
        {"license", [](const DatasetRecord& r) { return !r.licenses.empty(); }},
        {"date_published", [](const DatasetRecord& r) { return r.dates.published.has_value(); }},
        {"catalog", [](const DatasetRecord& r) { return !r.catalog.empty(); }},
        {"variable", [](const DatasetRecord& r) { return !r.variables.empty(); }},
        {"authors", [](const DatasetRecord& r) { return !r.authors.empty(); }},
        {"same_as", [](const DatasetRecord& r) { return !r.same_as.empty(); }},
        {"date_created", [](const DatasetRecord& r) { return r.dates.created.has_value(); }},
        {"alternate_name", [](const DatasetRecord& r) { return !r.alternate_names.empty(); }},
        {"is_accessible_for_free",
         [](const DatasetRecord& r) { return r.is_accessible_for_free != TriState::Absent; }},
    };

    int64_t total = static_cast<int64_t>(snapshot.records.size());
    std::vector<PropertyCoverageRow> rows;
    for (const Probe& probe : probes) {
        PropertyCoverageRow row;
        row.property = probe.name;
        for (const DatasetRecord& r : snapshot.records) {
            if (probe.populated(r)) ++row.count;
        }
        row.percentage = 100.0 * ratio(row.count, total);
        rows.push_back(std::move(row));
    }
    return rows;
}

FormatStats format_stats(const CorpusSnapshot& snapshot,
                         const std::set<std::string>& semantic_web_formats) {
    FormatStats out;
    std::map<std::string, int64_t> category_counts;
    for (const DatasetRecord& r : snapshot.records) {
        if (r.downloads.empty()) continue;
        ++out.download_bearing;
        std::set<ContentCategory> seen;
        bool semantic = false;
        for (const DownloadEntry& d : r.downloads) {
            seen.insert(d.category);
            if (is_semantic_web_format(d.raw_format, semantic_web_formats)) semantic = true;
        }
        for (ContentCategory c : seen) category_counts[std::string(category_name(c))] += 1;
        if (semantic) ++out.semantic_web_count;
    }
    for (const auto& [name, count] : sorted_counts(category_counts)) {
        FormatRow row;
        row.category = *category_from_name(name);
        row.dataset_count = count;
        row.share = ratio(count, out.download_bearing);
        out.rows.push_back(row);
    }
    out.semantic_web_share = ratio(out.semantic_web_count, out.download_bearing);
    return out;
}

IdentifierStats identifier_stats(const CorpusSnapshot& snapshot, int top_k) {
    IdentifierStats out;
    std::map<std::string, int64_t> doi_domains;
    std::map<std::string, int64_t> compact_domains;
    for (const DatasetRecord& r : snapshot.records) {
        if (!r.dois.empty()) {
            ++out.doi_datasets;
            doi_domains[r.domain] += 1;
        }
        if (!r.compact_ids.empty()) {
            ++out.compact_id_datasets;
            compact_domains[r.domain] += 1;
        }
    }
    int64_t total = static_cast<int64_t>(snapshot.records.size());
    out.doi_share = ratio(out.doi_datasets, total);
    out.compact_id_share = ratio(out.compact_id_datasets, total);
    auto take = [top_k](const std::map<std::string, int64_t>& m) {
        auto rows = sorted_counts(m);
        if (rows.size() > static_cast<size_t>(top_k)) rows.resize(static_cast<size_t>(top_k));
        return rows;
    };
    out.doi_by_domain = take(doi_domains);
    out.compact_by_domain = take(compact_domains);
    return out;
}

ProviderStats provider_stats(const CorpusSnapshot& snapshot, int top_k) {
    ProviderStats out;
    out.top_k = top_k;
    std::map<std::string, int64_t> counts;
    for (const DatasetRecord& r : snapshot.records) {
        if (r.providers.empty()) continue;
        ++out.provider_bearing;
        counts[r.providers.front()] += 1;
    }
    out.provider_count = static_cast<int64_t>(counts.size());

    auto rows = sorted_counts(counts);
    int64_t top_sum = 0;
    for (size_t i = 0; i < rows.size() && i < static_cast<size_t>(top_k); ++i) {
        out.top_providers.push_back(rows[i]);
        top_sum += rows[i].second;
    }
    out.top_share = ratio(top_sum, out.provider_bearing);

    int64_t small = 0;
    for (const auto& [provider, count] : counts) {
        if (count < 10) ++small;
    }
    out.small_provider_fraction = ratio(small, out.provider_count);
    return out;
}

OpennessStats openness_stats(const CorpusSnapshot& snapshot) {
    OpennessStats out;
    out.total = static_cast<int64_t>(snapshot.records.size());
    for (const DatasetRecord& r : snapshot.records) {
        if (r.is_accessible_for_free == TriState::True) ++out.free_bit_true;
        if (r.licenses.empty()) continue;
        ++out.with_license;
        bool recognized = std::any_of(r.licenses.begin(), r.licenses.end(),
                                      [](const LicenseEntry& l) { return l.class_id != "unknown"; });
        if (!recognized) continue;
        ++out.recognized;
        if (!r.is_open) continue;
        ++out.open_count;
        bool commercial = std::any_of(r.licenses.begin(), r.licenses.end(),
                                      [](const LicenseEntry& l) { return l.allows_commercial; });
        if (commercial) ++out.commercial_count;
    }
    out.license_coverage = ratio(out.with_license, out.total);
    out.recognized_share = ratio(out.recognized, out.with_license);
    out.open_share = ratio(out.open_count, out.recognized);
    out.commercial_share = ratio(out.commercial_count, out.open_count);
    return out;
}

RecencyStats recency_histograms(const CorpusSnapshot& snapshot, const CalendarDate& reference) {
    RecencyStats out;
    out.reference = reference;
    int64_t within_year = 0;
    for (const DatasetRecord& r : snapshot.records) {
        if (!r.last_updated) continue;
        ++out.known_dates;
        const CalendarDate& d = *r.last_updated;
        if (d > reference) continue;

        int month_bin = (reference.year - d.year) * 12 + (reference.month - d.month);
        if (month_bin >= 0 && month_bin < 12) out.monthly[static_cast<size_t>(month_bin)] += 1;

        int64_t days = reference.to_days() - d.to_days();
        int64_t year_bin = days / 365;
        if (year_bin >= 0 && year_bin < 5) out.yearly[static_cast<size_t>(year_bin)] += 1;
        if (year_bin == 0) ++within_year;
    }
    out.known_date_share = ratio(out.known_dates, static_cast<int64_t>(snapshot.records.size()));
    out.within_past_year_share = ratio(within_year, out.known_dates);
    return out;
}

ChurnStats compute_churn(const CorpusSnapshot& old_snapshot, const CorpusSnapshot& new_snapshot) {
    std::unordered_set<std::string> old_urls;
    for (const DatasetRecord& r : old_snapshot.records) old_urls.insert(r.page_url);
    std::unordered_set<std::string> new_urls;
    for (const DatasetRecord& r : new_snapshot.records) new_urls.insert(r.page_url);

    ChurnStats out;
    out.old_total = static_cast<int64_t>(old_urls.size());
    out.new_total = static_cast<int64_t>(new_urls.size());
    for (const std::string& url : old_urls) {
        if (new_urls.count(url)) ++out.retained;
        else ++out.disappeared;
    }
    out.added = out.new_total - out.retained;
    out.retention_share = ratio(out.retained, out.old_total);
    return out;
}

UsageStats usage_topic_distribution(const std::vector<std::string>& log_ids,
                                    const CorpusSnapshot& snapshot) {
    if (log_ids.empty()) throw InputError("usage log is empty");

    UsageStats out;
    out.log_lines = static_cast<int64_t>(log_ids.size());
    std::unordered_map<std::string, const DatasetRecord*> by_id;
    for (const DatasetRecord& r : snapshot.records) by_id.emplace(r.id, &r);

    std::unordered_set<std::string> seen;
    std::map<std::string, int64_t> topic_counts;
    for (const std::string& id : log_ids) {
        if (!seen.insert(id).second) continue;  // distinct-dataset semantics
        auto it = by_id.find(id);
        if (it == by_id.end()) {
            ++out.unknown_ids;
            continue;
        }
        ++out.matched;
        for (const TopicScore& t : it->second->topics) topic_counts[t.topic] += 1;
    }
    out.distinct_ids = static_cast<int64_t>(seen.size());

    for (const auto& [topic, count] : sorted_counts(topic_counts)) {
        UsageTopicRow row;
        row.topic = topic;
        row.datasets = count;
        row.share = ratio(count, out.matched);
        out.rows.push_back(std::move(row));
    }
    return out;
}

AnalyticsReport compute_report(const CorpusSnapshot& snapshot, const CorpusSnapshot* older,
                               const CalendarDate& reference_date,
                               const std::set<std::string>& semantic_web_formats, int top_k) {
    AnalyticsReport report;
    report.snapshot_date = snapshot.manifest.snapshot_date;
    report.reference_date = reference_date;
    report.record_count = static_cast<int64_t>(snapshot.records.size());
    report.domains = domain_size_distribution(snapshot, top_k);
    report.page_cardinality = page_cardinality_stats(snapshot);
    report.tlds = tld_and_government(snapshot);
    report.languages = language_breakdown(snapshot, older);
    report.vocabulary = vocabulary_share(snapshot);
    report.coverage = property_coverage(snapshot);
    report.formats = format_stats(snapshot, semantic_web_formats);
    report.identifiers = identifier_stats(snapshot, top_k);
    report.providers = provider_stats(snapshot);
    report.openness = openness_stats(snapshot);
    report.recency = recency_histograms(snapshot, reference_date);
    if (older) report.churn = compute_churn(*older, snapshot);
    report.cross_site_collisions =
        static_cast<int64_t>(cross_site_key_collisions(snapshot.records).size());
    return report;
}

}  // namespace dsmeta
