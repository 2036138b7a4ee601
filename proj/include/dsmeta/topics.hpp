#pragma once

#include <string>
#include <vector>

#include "dsmeta/config.hpp"
#include "dsmeta/record.hpp"

namespace dsmeta {

// Weighted-lexicon topic scores. A topic's raw score sums
// phrase-weight x field-multiplier x occurrence-count over title,
// description, keywords, and page text; scores are normalized to shares of
// the total matched weight. Topics at or above the lexicon threshold are
// returned sorted by descending score (ties by topic id).
std::vector<TopicScore> assign_topics(const DatasetRecord& record, const std::string& page_text,
                                      const TopicLexicon& lexicon);

// Word-boundary occurrence count of a lower-case phrase in lower-case text.
int count_phrase_occurrences(std::string_view text, std::string_view phrase);

}  // namespace dsmeta
