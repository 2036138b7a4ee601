#include "dsmeta/topics.hpp"

#include <algorithm>
#include <map>

#include "dsmeta/util.hpp"

namespace dsmeta {

namespace {

bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           static_cast<unsigned char>(c) >= 0x80;
}

}  // namespace

int count_phrase_occurrences(std::string_view text, std::string_view phrase) {
    if (phrase.empty() || text.size() < phrase.size()) return 0;
    int count = 0;
    size_t pos = 0;
    while ((pos = text.find(phrase, pos)) != std::string_view::npos) {
        bool left_ok = pos == 0 || !is_word_char(text[pos - 1]);
        size_t end = pos + phrase.size();
        bool right_ok = end == text.size() || !is_word_char(text[end]);
        if (left_ok && right_ok) ++count;
        pos += 1;
    }
    return count;
}

std::vector<TopicScore> assign_topics(const DatasetRecord& record, const std::string& page_text,
                                      const TopicLexicon& lexicon) {
    std::string title = to_lower_ascii(record.title);
    std::string description = to_lower_ascii(record.description);
    std::string keywords;
    for (const std::string& k : record.keywords) {
        keywords += to_lower_ascii(k);
        keywords += '\n';
    }
    std::string page = to_lower_ascii(page_text);

    struct Field {
        const std::string* text;
        double multiplier;
    };
    const Field fields[] = {
        {&title, lexicon.title_weight},
        {&description, lexicon.description_weight},
        {&keywords, lexicon.keywords_weight},
        {&page, lexicon.page_text_weight},
    };

    std::map<std::string, double> raw_scores;
    for (const TopicPhrase& entry : lexicon.phrases) {
        double contribution = 0.0;
        for (const Field& field : fields) {
            int n = count_phrase_occurrences(*field.text, entry.phrase);
            if (n > 0) contribution += entry.weight * field.multiplier * n;
        }
        if (contribution > 0.0) raw_scores[entry.topic] += contribution;
    }
    if (raw_scores.empty()) return {};

    double total = 0.0;
    for (const auto& [topic, score] : raw_scores) total += score;

    std::vector<TopicScore> out;
    for (const auto& [topic, score] : raw_scores) {
        double share = score / total;
        if (share >= lexicon.threshold) out.push_back({topic, share});
    }
    std::sort(out.begin(), out.end(), [](const TopicScore& a, const TopicScore& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.topic < b.topic;
    });
    return out;
}

}  // namespace dsmeta
