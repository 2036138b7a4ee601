#include "dsmeta/report.hpp"

#include <filesystem>
#include <fstream>

#include "dsmeta/diagnostics.hpp"
#include "dsmeta/util.hpp"

namespace dsmeta {

namespace {

std::string pct(double share) { return format_double(100.0 * share, 2) + "%"; }

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write report file: " + path);
    out << body;
}

}  // namespace

std::string render_markdown(const AnalyticsReport& r) {
    std::string md;
    auto line = [&md](const std::string& s) {
        md += s;
        md += '\n';
    };

    line("# Corpus report");
    line("");
    line("- Snapshot date: " + r.snapshot_date.to_iso());
    line("- Reference date: " + r.reference_date.to_iso());
    line("- Records: " + std::to_string(r.record_count));
    line("");

    line("## Datasets per domain");
    line("");
    line("Base: all " + std::to_string(r.record_count) + " records.");
    line("");
    line("| Rank | Domain | Datasets | Share |");
    line("|---|---|---|---|");
    for (size_t i = 0; i < r.domains.top.size(); ++i) {
        const auto& [domain, count] = r.domains.top[i];
        line("| " + std::to_string(i + 1) + " | " + domain + " | " + std::to_string(count) + " | " +
             pct(static_cast<double>(count) / static_cast<double>(r.record_count)) + " |");
    }
    line("");
    line("Top-" + std::to_string(r.domains.top.size()) + " domains hold " +
         pct(r.domains.top_share) + " of the corpus (" + std::to_string(r.domains.counts.size()) +
         " domains total).");
    line("");
    if (r.domains.power_law) {
        const PowerLawFit& fit = *r.domains.power_law;
        line("Power-law fit of domain sizes: alpha = " + format_double(fit.exponent, 4) + " +/- " +
             format_double(fit.stderr_value, 4) + " (xmin = " + format_double(fit.xmin, 1) +
             ", tail = " + std::to_string(fit.tail_size) +
             ", log-log CCDF slope = " + format_double(fit.loglog_ccdf_slope, 4) + ").");
    } else {
        line("Power-law fit not applicable: " + r.domains.power_law_note);
    }
    line("");
    line("Datasets from single-dataset pages: " + pct(r.page_cardinality.single_page_fraction) +
         "; datasets from pages with more than ten datasets: " +
         std::to_string(r.page_cardinality.gt10_count) + ".");
    line("");

    line("## Top-level domains");
    line("");
    line("| TLD | Datasets |");
    line("|---|---|");
    size_t tld_rows = std::min<size_t>(r.tlds.tld_counts.size(), 20);
    for (size_t i = 0; i < tld_rows; ++i) {
        line("| " + r.tlds.tld_counts[i].first + " | " +
             std::to_string(r.tlds.tld_counts[i].second) + " |");
    }
    line("");
    line("Government-domain datasets: " + std::to_string(r.tlds.government_count) + ".");
    line("");

    line("## Languages");
    line("");
    line("| Language | Datasets | Share | Change |");
    line("|---|---|---|---|");
    for (const LanguageRow& row : r.languages) {
        std::string change = row.change ? pct(*row.change) : "-";
        line("| " + row.language + " | " + std::to_string(row.count) + " | " + pct(row.share) +
             " | " + change + " |");
    }
    line("");

    line("## Vocabulary");
    line("");
    line("schema.org: " + std::to_string(r.vocabulary.schema_org) +
         ", DCAT: " + std::to_string(r.vocabulary.dcat) +
         ", mixed: " + std::to_string(r.vocabulary.mixed) + "; DCAT share (incl. mixed): " +
         pct(r.vocabulary.dcat_share) + ".");
    line("");

    line("## Property coverage");
    line("");
    line("Base: all records.");
    line("");
    line("| Property | Datasets | Coverage |");
    line("|---|---|---|");
    for (const PropertyCoverageRow& row : r.coverage) {
        line("| " + row.property + " | " + std::to_string(row.count) + " | " +
             format_double(row.percentage, 2) + "% |");
    }
    line("");

    line("## Download formats");
    line("");
    line("Base: " + std::to_string(r.formats.download_bearing) +
         " download-bearing datasets (a dataset counts once per category).");
    line("");
    line("| Category | Datasets | Share |");
    line("|---|---|---|");
    for (const FormatRow& row : r.formats.rows) {
        line("| " + std::string(category_name(row.category)) + " | " +
             std::to_string(row.dataset_count) + " | " + pct(row.share) + " |");
    }
    line("");
    line("Semantic-web formats: " + std::to_string(r.formats.semantic_web_count) + " datasets (" +
         pct(r.formats.semantic_web_share) + " of download-bearing).");
    line("");

    line("## Identifiers");
    line("");
    line("DOIs: " + std::to_string(r.identifiers.doi_datasets) + " datasets (" +
         pct(r.identifiers.doi_share) + " of the corpus). Compact identifiers: " +
         std::to_string(r.identifiers.compact_id_datasets) + " datasets (" +
         pct(r.identifiers.compact_id_share) + ").");
    line("");
    line("| Domain | Datasets with DOIs |");
    line("|---|---|");
    for (const auto& [domain, count] : r.identifiers.doi_by_domain) {
        line("| " + domain + " | " + std::to_string(count) + " |");
    }
    line("");
    line("| Domain | Datasets with compact ids |");
    line("|---|---|");
    for (const auto& [domain, count] : r.identifiers.compact_by_domain) {
        line("| " + domain + " | " + std::to_string(count) + " |");
    }
    line("");

    line("## Providers");
    line("");
    line("Base: " + std::to_string(r.providers.provider_bearing) +
         " provider-bearing datasets; " + std::to_string(r.providers.provider_count) +
         " distinct providers.");
    line("");
    line("| Provider | Datasets |");
    line("|---|---|");
    for (const auto& [provider, count] : r.providers.top_providers) {
        line("| " + provider + " | " + std::to_string(count) + " |");
    }
    line("");
    line("Top-" + std::to_string(r.providers.top_k) + " providers hold " +
         pct(r.providers.top_share) + " of provider-bearing datasets; " +
         pct(r.providers.small_provider_fraction) +
         " of providers are small (fewer than 10 datasets).");
    line("");

    line("## Openness");
    line("");
    line("License coverage: " + pct(r.openness.license_coverage) + " (" +
         std::to_string(r.openness.with_license) + " of " + std::to_string(r.openness.total) +
         "). Recognized licenses: " + pct(r.openness.recognized_share) +
         " of license-bearing datasets.");
    line("Open datasets (free-access bit or redistribution license), over recognized-license "
         "datasets: " +
         pct(r.openness.open_share) + ". Commercial reuse allowed among those open: " +
         pct(r.openness.commercial_share) + ".");
    line("Free-access bit set to true: " + std::to_string(r.openness.free_bit_true) +
         " datasets.");
    line("");

    line("## Recency of updates");
    line("");
    line("Known last-updated dates: " + std::to_string(r.recency.known_dates) + " (" +
         pct(r.recency.known_date_share) + " of the corpus); " +
         pct(r.recency.within_past_year_share) + " of dated datasets updated within the past "
         "year.");
    line("");
    line("| Months ago | Datasets |");
    line("|---|---|");
    for (size_t i = 0; i < r.recency.monthly.size(); ++i) {
        line("| " + std::to_string(i) + " | " + std::to_string(r.recency.monthly[i]) + " |");
    }
    line("");
    line("| Years ago | Datasets |");
    line("|---|---|");
    for (size_t i = 0; i < r.recency.yearly.size(); ++i) {
        line("| " + std::to_string(i) + " | " + std::to_string(r.recency.yearly[i]) + " |");
    }
    line("");

    if (r.churn) {
        line("## Churn");
        line("");
        line("Old snapshot URLs: " + std::to_string(r.churn->old_total) + ", new: " +
             std::to_string(r.churn->new_total) + ". Retained: " +
             std::to_string(r.churn->retained) + " (" + pct(r.churn->retention_share) +
             "), disappeared: " + std::to_string(r.churn->disappeared) +
             ", new: " + std::to_string(r.churn->added) + ".");
        line("");
    }

    line("Cross-site duplicate keys (reported, never collapsed): " +
         std::to_string(r.cross_site_collisions) + ".");
    return md;
}

namespace {

std::string domains_csv(const AnalyticsReport& r) {
    std::string out = "domain,datasets\n";
    for (const auto& [domain, count] : r.domains.counts) {
        out += csv_escape(domain) + "," + std::to_string(count) + "\n";
    }
    return out;
}

std::string top_domains_csv(const AnalyticsReport& r) {
    std::string out = "rank,domain,datasets,share\n";
    for (size_t i = 0; i < r.domains.top.size(); ++i) {
        const auto& [domain, count] = r.domains.top[i];
        out += std::to_string(i + 1) + "," + csv_escape(domain) + "," + std::to_string(count) +
               "," +
               format_double(static_cast<double>(count) / static_cast<double>(r.record_count), 6) +
               "\n";
    }
    return out;
}

std::string power_law_csv(const AnalyticsReport& r) {
    std::string out = "exponent,stderr,xmin,tail_size,loglog_ccdf_slope,top_share,note\n";
    if (r.domains.power_law) {
        const PowerLawFit& fit = *r.domains.power_law;
        out += format_double(fit.exponent, 6) + "," + format_double(fit.stderr_value, 6) + "," +
               format_double(fit.xmin, 2) + "," + std::to_string(fit.tail_size) + "," +
               format_double(fit.loglog_ccdf_slope, 6) + "," +
               format_double(r.domains.top_share, 6) + ",\n";
    } else {
        out += ",,,,," + format_double(r.domains.top_share, 6) + "," +
               csv_escape(r.domains.power_law_note) + "\n";
    }
    return out;
}

std::string page_cardinality_csv(const AnalyticsReport& r) {
    return "single_page_fraction,gt10_count\n" +
           format_double(r.page_cardinality.single_page_fraction, 6) + "," +
           std::to_string(r.page_cardinality.gt10_count) + "\n";
}

std::string tlds_csv(const AnalyticsReport& r) {
    std::string out = "tld,datasets\n";
    for (const auto& [tld, count] : r.tlds.tld_counts) {
        out += csv_escape(tld) + "," + std::to_string(count) + "\n";
    }
    out += "government_total," + std::to_string(r.tlds.government_count) + "\n";
    return out;
}

std::string languages_csv(const AnalyticsReport& r) {
    std::string out = "language,datasets,share,change\n";
    for (const LanguageRow& row : r.languages) {
        out += csv_escape(row.language) + "," + std::to_string(row.count) + "," +
               format_double(row.share, 6) + ",";
        if (row.change) out += format_double(*row.change, 6);
        out += "\n";
    }
    return out;
}

std::string vocabulary_csv(const AnalyticsReport& r) {
    return "schema_org,dcat,mixed,dcat_share\n" + std::to_string(r.vocabulary.schema_org) + "," +
           std::to_string(r.vocabulary.dcat) + "," + std::to_string(r.vocabulary.mixed) + "," +
           format_double(r.vocabulary.dcat_share, 6) + "\n";
}

std::string coverage_csv(const AnalyticsReport& r) {
    std::string out = "property,datasets,percentage\n";
    for (const PropertyCoverageRow& row : r.coverage) {
        out += csv_escape(row.property) + "," + std::to_string(row.count) + "," +
               format_double(row.percentage, 2) + "\n";
    }
    return out;
}

std::string formats_csv(const AnalyticsReport& r) {
    std::string out = "category,datasets,share\n";
    for (const FormatRow& row : r.formats.rows) {
        out += std::string(category_name(row.category)) + "," + std::to_string(row.dataset_count) +
               "," + format_double(row.share, 6) + "\n";
    }
    out += "semantic_web," + std::to_string(r.formats.semantic_web_count) + "," +
           format_double(r.formats.semantic_web_share, 6) + "\n";
    out += "download_bearing_total," + std::to_string(r.formats.download_bearing) + ",\n";
    return out;
}

std::string identifiers_csv(const AnalyticsReport& r) {
    std::string out = "metric,datasets,share\n";
    out += "doi," + std::to_string(r.identifiers.doi_datasets) + "," +
           format_double(r.identifiers.doi_share, 6) + "\n";
    out += "compact_id," + std::to_string(r.identifiers.compact_id_datasets) + "," +
           format_double(r.identifiers.compact_id_share, 6) + "\n";
    return out;
}

std::string by_domain_csv(const std::vector<std::pair<std::string, int64_t>>& rows,
                          const char* header) {
    std::string out = std::string(header) + "\n";
    for (const auto& [domain, count] : rows) {
        out += csv_escape(domain) + "," + std::to_string(count) + "\n";
    }
    return out;
}

std::string providers_csv(const AnalyticsReport& r) {
    std::string out = "provider,datasets\n";
    for (const auto& [provider, count] : r.providers.top_providers) {
        out += csv_escape(provider) + "," + std::to_string(count) + "\n";
    }
    out += "\nprovider_bearing," + std::to_string(r.providers.provider_bearing) + "\n";
    out += "distinct_providers," + std::to_string(r.providers.provider_count) + "\n";
    out += "top_share," + format_double(r.providers.top_share, 6) + "\n";
    out += "small_provider_fraction," + format_double(r.providers.small_provider_fraction, 6) +
           "\n";
    return out;
}

std::string openness_csv(const AnalyticsReport& r) {
    std::string out = "metric,value\n";
    out += "total," + std::to_string(r.openness.total) + "\n";
    out += "with_license," + std::to_string(r.openness.with_license) + "\n";
    out += "license_coverage," + format_double(r.openness.license_coverage, 6) + "\n";
    out += "recognized," + std::to_string(r.openness.recognized) + "\n";
    out += "recognized_share," + format_double(r.openness.recognized_share, 6) + "\n";
    out += "open," + std::to_string(r.openness.open_count) + "\n";
    out += "open_share," + format_double(r.openness.open_share, 6) + "\n";
    out += "commercial," + std::to_string(r.openness.commercial_count) + "\n";
    out += "commercial_share," + format_double(r.openness.commercial_share, 6) + "\n";
    out += "free_bit_true," + std::to_string(r.openness.free_bit_true) + "\n";
    return out;
}

std::string recency_csv(const AnalyticsReport& r) {
    std::string out = "bin,months_ago,datasets\n";
    for (size_t i = 0; i < r.recency.monthly.size(); ++i) {
        out += "monthly," + std::to_string(i) + "," + std::to_string(r.recency.monthly[i]) + "\n";
    }
    for (size_t i = 0; i < r.recency.yearly.size(); ++i) {
        out += "yearly," + std::to_string(i) + "," + std::to_string(r.recency.yearly[i]) + "\n";
    }
    out += "known_dates," + std::to_string(r.recency.known_dates) + "," +
           format_double(r.recency.known_date_share, 6) + "\n";
    out += "within_past_year_share,," + format_double(r.recency.within_past_year_share, 6) + "\n";
    return out;
}

std::string churn_csv(const ChurnStats& churn) {
    std::string out = "old_total,new_total,retained,disappeared,new,retention_share\n";
    out += std::to_string(churn.old_total) + "," + std::to_string(churn.new_total) + "," +
           std::to_string(churn.retained) + "," + std::to_string(churn.disappeared) + "," +
           std::to_string(churn.added) + "," + format_double(churn.retention_share, 6) + "\n";
    return out;
}

}  // namespace

void write_report(const AnalyticsReport& report, const std::string& dir,
                  const ReportOptions& options) {
    std::filesystem::create_directories(dir);
    auto path = [&dir](const char* name) { return dir + "/" + name; };

    if (options.markdown) {
        write_file(path("report.md"), render_markdown(report));
    }
    if (options.csv) {
        write_file(path("domains.csv"), domains_csv(report));
        write_file(path("top_domains.csv"), top_domains_csv(report));
        write_file(path("power_law.csv"), power_law_csv(report));
        write_file(path("page_cardinality.csv"), page_cardinality_csv(report));
        write_file(path("tlds.csv"), tlds_csv(report));
        write_file(path("languages.csv"), languages_csv(report));
        write_file(path("vocabulary.csv"), vocabulary_csv(report));
        write_file(path("property_coverage.csv"), coverage_csv(report));
        write_file(path("formats.csv"), formats_csv(report));
        write_file(path("identifiers.csv"), identifiers_csv(report));
        write_file(path("dois_by_domain.csv"),
                   by_domain_csv(report.identifiers.doi_by_domain, "domain,datasets_with_dois"));
        write_file(path("compact_ids_by_domain.csv"),
                   by_domain_csv(report.identifiers.compact_by_domain,
                                 "domain,datasets_with_compact_ids"));
        write_file(path("providers.csv"), providers_csv(report));
        write_file(path("openness.csv"), openness_csv(report));
        write_file(path("recency.csv"), recency_csv(report));
        if (report.churn) {
            write_file(path("churn.csv"), churn_csv(*report.churn));
        }
    }
}

}  // namespace dsmeta
