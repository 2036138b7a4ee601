#pragma once

#include <string>
#include <vector>

#include "dsmeta/config.hpp"
#include "dsmeta/diagnostics.hpp"
#include "dsmeta/ingest.hpp"
#include "dsmeta/snapshot.hpp"

namespace dsmeta {

struct BuildOptions {
    CalendarDate snapshot_date;
    int jobs = 1;
};

// extract -> map -> normalize -> topics for one page. Pages whose URL has no
// parseable host yield no records (with a diagnostic).
std::vector<DatasetRecord> process_page(const PageInput& page, const NormalizationConfig& config,
                                        Diagnostics& diags);

// Full pipeline: per-page processing, then filter_invalid and
// dedup_within_site, with stage counters recorded in the manifest.
CorpusSnapshot build_snapshot(const std::vector<PageInput>& pages,
                              const NormalizationConfig& config, const BuildOptions& options,
                              Diagnostics& diags);

}  // namespace dsmeta
