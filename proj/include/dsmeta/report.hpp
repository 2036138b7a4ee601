#pragma once

#include <string>

#include "dsmeta/analytics.hpp"

namespace dsmeta {

struct ReportOptions {
    bool markdown = true;
    bool csv = true;
};

std::string render_markdown(const AnalyticsReport& report);

// Writes report.md and one CSV per table into the directory.
void write_report(const AnalyticsReport& report, const std::string& dir,
                  const ReportOptions& options);

}  // namespace dsmeta
