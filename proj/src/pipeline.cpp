#include "dsmeta/pipeline.hpp"

#include <atomic>
#include <thread>

#include "dsmeta/dedup.hpp"
#include "dsmeta/extract.hpp"
#include "dsmeta/mapping.hpp"
#include "dsmeta/normalize.hpp"
#include "dsmeta/topics.hpp"
#include "dsmeta/util.hpp"

namespace dsmeta {

namespace {

std::string first_display_text(const RawDatasetRecord& raw, std::string_view canonical) {
    const std::vector<RawProperty>* values = raw.values_for(canonical);
    if (!values) return "";
    for (const RawProperty& prop : *values) {
        std::string text = collapse_whitespace(prop.value.display_text());
        if (!text.empty()) return text;
    }
    return "";
}

std::vector<std::string> display_list(const RawDatasetRecord& raw, std::string_view canonical) {
    std::vector<std::string> out;
    const std::vector<RawProperty>* values = raw.values_for(canonical);
    if (!values) return out;
    for (const RawProperty& prop : *values) {
        std::string text = collapse_whitespace(prop.value.display_text());
        if (!text.empty() && std::find(out.begin(), out.end(), text) == out.end()) {
            out.push_back(std::move(text));
        }
    }
    return out;
}

std::vector<std::string> keyword_list(const RawDatasetRecord& raw) {
    std::vector<std::string> out;
    const std::vector<RawProperty>* values = raw.values_for("keywords");
    if (!values) return out;
    for (const RawProperty& prop : *values) {
        std::string text = prop.value.display_text();
        // A single literal often carries a comma-separated keyword list.
        for (const std::string& part : split(text, ',')) {
            std::string keyword = collapse_whitespace(part);
            if (!keyword.empty() && std::find(out.begin(), out.end(), keyword) == out.end()) {
                out.push_back(std::move(keyword));
            }
        }
    }
    return out;
}

std::optional<CalendarDate> first_parseable_date(const RawDatasetRecord& raw,
                                                 std::string_view canonical, Diagnostics& diags) {
    const std::vector<RawProperty>* values = raw.values_for(canonical);
    if (!values) return std::nullopt;
    for (const RawProperty& prop : *values) {
        std::string text = std::string(trim(prop.value.display_text()));
        if (text.empty()) continue;
        if (auto date = parse_date(text)) return date;
        diags.info("normalize", raw.page_url,
                   "unparseable " + std::string(canonical) + " date \"" + text + "\"");
    }
    return std::nullopt;
}

}  // namespace

std::vector<DatasetRecord> process_page(const PageInput& page, const NormalizationConfig& config,
                                        Diagnostics& diags) {
    DomainInfo domain_info;
    try {
        domain_info = classify_domain(page.page_url, config.suffixes, config.government);
    } catch (const InputError& e) {
        diags.warn("pipeline", page.page_url, e.what());
        return {};
    }

    html::Document doc = html::Document::parse(page.html);
    PageSignals signals = collect_page_signals(doc, page.page_url);
    TripleGraph graph = extract_structured_data(doc, page.page_url, diags);
    std::vector<EntitySubgraph> entities = select_dataset_entities(graph);

    std::vector<std::string> literal_tags;
    for (const Triple& t : graph.triples) {
        if (!t.object_is_node && !t.object_language.empty()) {
            literal_tags.push_back(t.object_language);
        }
    }
    std::string language =
        detect_language(signals.html_lang, signals.content_language, literal_tags);

    std::string page_modified_raw =
        !page.http_last_modified.empty() ? page.http_last_modified : signals.page_modified_raw;
    std::optional<CalendarDate> page_modified;
    if (!page_modified_raw.empty()) {
        page_modified = parse_date(page_modified_raw);
        if (!page_modified) {
            diags.info("normalize", page.page_url,
                       "unparseable page-modified date \"" + page_modified_raw + "\"");
        }
    }

    std::vector<DatasetRecord> records;
    records.reserve(entities.size());
    for (size_t i = 0; i < entities.size(); ++i) {
        RawDatasetRecord raw =
            map_entity_to_record(entities[i], page.page_url, static_cast<int>(i), config.mappings);

        DatasetRecord record;
        record.page_url = page.page_url;
        record.domain = domain_info.domain;
        record.tld = domain_info.tld;
        record.is_government = domain_info.is_government;
        record.language = language;
        record.title = first_display_text(raw, "title");
        record.description = first_display_text(raw, "description");
        if (const std::vector<RawProperty>* values = raw.values_for("provider")) {
            record.providers = resolve_provider(*values, diags, page.page_url);
        }
        record.keywords = keyword_list(raw);
        record.url = first_display_text(raw, "url");
        record.temporal_coverage = first_display_text(raw, "temporal_coverage");
        record.spatial_coverage = first_display_text(raw, "spatial_coverage");
        if (const std::vector<RawProperty>* values = raw.values_for("data_download")) {
            record.downloads = normalize_downloads(*values, page.page_url, diags);
            for (DownloadEntry& d : record.downloads) {
                d.category = config.buckets.bucket(d.raw_format);
            }
        }
        record.licenses = normalize_licenses(raw, config.licenses);
        if (const std::vector<RawProperty>* values = raw.values_for("is_accessible_for_free")) {
            record.is_accessible_for_free = parse_tri_state(*values);
        }
        record.is_open = compute_openness(record.licenses, record.is_accessible_for_free);
        IdentifierSet ids = extract_identifiers(raw, config.prefixes);
        record.dois = std::move(ids.dois);
        record.compact_ids = std::move(ids.compact_ids);
        record.dates.created = first_parseable_date(raw, "date_created", diags);
        record.dates.published = first_parseable_date(raw, "date_published", diags);
        record.dates.modified = first_parseable_date(raw, "date_modified", diags);
        record.dates.page_modified = page_modified;
        record.last_updated = resolve_last_updated(record.dates);
        record.catalog = first_display_text(raw, "catalog");
        record.variables = display_list(raw, "variable");
        record.authors = display_list(raw, "authors");
        record.same_as = display_list(raw, "same_as");
        record.alternate_names = display_list(raw, "alternate_name");
        record.source_vocabulary = raw.source_vocabulary;
        record.entity_index = static_cast<int>(i);
        record.page_dataset_count = static_cast<int>(entities.size());
        for (const auto& [predicate, count] : raw.unmapped) record.unmapped_count += count;

        record.topics = assign_topics(record, signals.visible_text, config.lexicon);
        record.id = record_id(record);
        records.push_back(std::move(record));
    }
    return records;
}

CorpusSnapshot build_snapshot(const std::vector<PageInput>& pages,
                              const NormalizationConfig& config, const BuildOptions& options,
                              Diagnostics& diags) {
    std::vector<std::vector<DatasetRecord>> per_page(pages.size());
    std::vector<Diagnostics> per_page_diags(pages.size());

    int jobs = options.jobs > 1 ? options.jobs : 1;
    if (jobs > 1 && pages.size() > 1) {
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= pages.size()) break;
                per_page[i] = process_page(pages[i], config, per_page_diags[i]);
            }
        };
        std::vector<std::thread> threads;
        int thread_count = std::min<int>(jobs, static_cast<int>(pages.size()));
        threads.reserve(static_cast<size_t>(thread_count));
        for (int t = 0; t < thread_count; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    } else {
        for (size_t i = 0; i < pages.size(); ++i) {
            per_page[i] = process_page(pages[i], config, per_page_diags[i]);
        }
    }

    CorpusSnapshot snapshot;
    snapshot.manifest.snapshot_date = options.snapshot_date;
    snapshot.manifest.config_checksums = config.file_checksums;
    StageCounters& counters = snapshot.manifest.counters;
    counters.pages_seen = static_cast<int64_t>(pages.size());

    std::vector<DatasetRecord> records;
    for (size_t i = 0; i < pages.size(); ++i) {
        for (const Diagnostic& d : per_page_diags[i].items()) {
            diags.add(d.severity, d.stage, d.context, d.message);
        }
        if (per_page[i].empty() && !per_page_diags[i].empty()) {
            // Only count pages that failed outright (no records, has warnings).
            bool failed = std::any_of(
                per_page_diags[i].items().begin(), per_page_diags[i].items().end(),
                [](const Diagnostic& d) { return d.stage == "pipeline"; });
            if (failed) ++counters.pages_failed;
        }
        counters.entities_extracted += static_cast<int64_t>(per_page[i].size());
        for (DatasetRecord& r : per_page[i]) records.push_back(std::move(r));
    }

    records = filter_invalid(std::move(records), &counters.invalid_dropped);
    records = dedup_within_site(std::move(records), &counters.duplicates_collapsed);

    snapshot.manifest.record_count = static_cast<int64_t>(records.size());
    snapshot.records = std::move(records);
    return snapshot;
}

}  // namespace dsmeta
