#include "dsmeta/normalize.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "dsmeta/url.hpp"
#include "dsmeta/util.hpp"

namespace dsmeta {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(char c) { return is_digit(c) || is_alpha(c); }

int month_from_name(std::string_view token) {
    static const std::array<std::string_view, 12> names = {
        "january", "february", "march",     "april",   "may",      "june",
        "july",    "august",   "september", "october", "november", "december"};
    std::string t = to_lower_ascii(token);
    while (!t.empty() && (t.back() == '.' || t.back() == ',')) t.pop_back();
    for (int i = 0; i < 12; ++i) {
        if (t == names[i] || (t.size() == 3 && names[i].substr(0, 3) == t)) return i + 1;
        if (t.size() == 4 && names[i] == "september" && t == "sept") return 9;
    }
    return 0;
}

std::optional<CalendarDate> make_date(int y, int m, int d) {
    CalendarDate date{y, m, d};
    if (y < 1000 || y > 2999 || !date.is_valid()) return std::nullopt;
    return date;
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

// Strips a leading weekday name ("Tue, 15 Jan 2020 ..." header style).
std::string_view strip_weekday(std::string_view s) {
    static const std::array<std::string_view, 7> days = {"monday", "tuesday", "wednesday",
                                                         "thursday", "friday", "saturday", "sunday"};
    size_t comma = s.find(',');
    size_t space = s.find(' ');
    size_t cut = std::min(comma, space);
    if (cut == std::string_view::npos || cut == 0) return s;
    std::string head = to_lower_ascii(s.substr(0, cut));
    for (std::string_view day : days) {
        if (head == day || (head.size() == 3 && day.substr(0, 3) == head)) {
            std::string_view rest = s.substr(cut);
            while (!rest.empty() && (rest[0] == ',' || rest[0] == ' ')) rest.remove_prefix(1);
            return rest;
        }
    }
    return s;
}

std::optional<CalendarDate> parse_numeric_separated(std::string_view s, char sep) {
    std::vector<std::string> parts = split(s, sep);
    if (parts.size() == 2 && sep == '-') {
        // YYYY-MM
        if (parts[0].size() == 4 && all_digits(parts[0]) && all_digits(parts[1]) &&
            parts[1].size() <= 2) {
            return make_date(to_int(parts[0]), to_int(parts[1]), 1);
        }
        return std::nullopt;
    }
    if (parts.size() != 3) return std::nullopt;
    for (const std::string& p : parts) {
        if (!all_digits(p)) return std::nullopt;
    }
    int a = to_int(parts[0]);
    int b = to_int(parts[1]);
    int c = to_int(parts[2]);
    if (parts[0].size() == 4) {
        // Year first: ISO-like regardless of separator.
        return make_date(a, b, c);
    }
    if (parts[2].size() == 4) {
        if (sep == '.') {
            // Dotted dates are day-first by convention.
            if (auto d = make_date(c, b, a)) return d;
            return make_date(c, a, b);
        }
        // Slashed (and dashed) dates resolve month-first; fall back to
        // day-first only when the month position is impossible.
        if (a <= 12) {
            if (auto d = make_date(c, a, b)) return d;
        }
        return make_date(c, b, a);
    }
    return std::nullopt;
}

std::optional<CalendarDate> parse_month_name_date(std::string_view s) {
    std::vector<std::string> tokens = split_whitespace(s);
    if (tokens.size() < 2 || tokens.size() > 4) return std::nullopt;

    // "March 5, 2019" / "Mar 5 2019" / "5 March 2019" / "March 2019"
    int month = month_from_name(tokens[0]);
    if (month > 0) {
        if (tokens.size() == 2) {
            std::string_view year = tokens[1];
            if (year.size() == 4 && all_digits(year)) return make_date(to_int(year), month, 1);
            return std::nullopt;
        }
        std::string day_token = tokens[1];
        while (!day_token.empty() && (day_token.back() == ',' || day_token.back() == '.')) {
            day_token.pop_back();
        }
        std::string_view year = tokens[2];
        if (all_digits(day_token) && year.size() == 4 && all_digits(year)) {
            return make_date(to_int(year), month, to_int(day_token));
        }
        return std::nullopt;
    }

    if (tokens.size() >= 3) {
        month = month_from_name(tokens[1]);
        std::string day_token = tokens[0];
        while (!day_token.empty() && (day_token.back() == '.' || day_token.back() == ',')) {
            day_token.pop_back();
        }
        std::string_view year = tokens[2];
        if (month > 0 && all_digits(day_token) && year.size() == 4 && all_digits(year)) {
            return make_date(to_int(year), month, to_int(day_token));
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<CalendarDate> parse_date(std::string_view raw) {
    std::string_view s = trim(raw);
    if (s.empty()) return std::nullopt;
    s = strip_weekday(s);

    // ISO date-time: cut at 'T' (or at the space before a time-of-day).
    size_t t_pos = s.find('T');
    if (t_pos != std::string_view::npos && t_pos >= 8) s = s.substr(0, t_pos);
    else {
        size_t sp = s.find(' ');
        if (sp != std::string_view::npos && sp >= 8 && sp + 1 < s.size() && is_digit(s[sp + 1]) &&
            s.find(':') != std::string_view::npos) {
            s = s.substr(0, sp);
        }
    }
    s = trim(s);

    if (s.size() == 4 && all_digits(s)) return make_date(to_int(s), 1, 1);

    if (s.find('-') != std::string_view::npos && all_digits(s.substr(0, 1))) {
        if (auto d = parse_numeric_separated(s, '-')) return d;
    }
    if (s.find('/') != std::string_view::npos) {
        if (auto d = parse_numeric_separated(s, '/')) return d;
    }
    if (s.find('.') != std::string_view::npos) {
        if (auto d = parse_numeric_separated(s, '.')) return d;
    }
    return parse_month_name_date(s);
}

std::optional<CalendarDate> resolve_last_updated(const RecordDates& dates) {
    std::optional<CalendarDate> best;
    for (const auto& candidate : {dates.created, dates.published, dates.modified}) {
        if (candidate && (!best || *candidate > *best)) best = candidate;
    }
    if (best) return best;
    return dates.page_modified;
}

DomainInfo classify_domain(const std::string& page_url, const PublicSuffixList& suffixes,
                           const GovernmentPatterns& government) {
    auto url = parse_url(page_url);
    if (!url || url->host.empty()) {
        throw InputError("unparseable host in URL: " + page_url);
    }
    DomainInfo info;
    info.domain = suffixes.registrable_domain(url->host);
    std::vector<std::string> labels = url->host_labels();
    info.tld = labels.back();
    info.is_government = government.matches(labels);
    return info;
}

namespace {

std::string normalize_format_token(std::string_view value) {
    std::string_view v = trim(value);
    size_t semi = v.find(';');
    if (semi != std::string_view::npos) v = trim(v.substr(0, semi));
    std::string out = to_lower_ascii(v);
    if (!out.empty() && out[0] == '.') out.erase(0, 1);
    return out;
}

// "extract a file extension from the data-download URL"
std::string extension_from_url(const std::string& url_text) {
    std::string_view path = url_text;
    size_t hash = path.find('#');
    if (hash != std::string_view::npos) path = path.substr(0, hash);
    size_t query = path.find('?');
    if (query != std::string_view::npos) path = path.substr(0, query);
    size_t slash = path.find_last_of('/');
    std::string_view segment = slash == std::string_view::npos ? path : path.substr(slash + 1);
    size_t dot = segment.find_last_of('.');
    if (dot == std::string_view::npos || dot + 1 >= segment.size()) return "";
    std::string_view ext = segment.substr(dot + 1);
    if (ext.size() > 12) return "";
    bool has_letter = false;
    for (char c : ext) {
        if (!is_alnum(c) && c != '+') return "";
        if (is_alpha(c)) has_letter = true;
    }
    if (!has_letter) return "";
    return to_lower_ascii(ext);
}

const RawValue* first_property(const RawValue& node,
                               std::initializer_list<std::string_view> names) {
    for (std::string_view name : names) {
        if (const RawValue* v = node.property(name)) return v;
    }
    return nullptr;
}

}  // namespace

std::vector<DownloadEntry> normalize_downloads(const std::vector<RawProperty>& distributions,
                                               const std::string& page_url, Diagnostics& diags) {
    std::vector<DownloadEntry> out;
    for (const RawProperty& prop : distributions) {
        const RawValue& value = prop.value;
        DownloadEntry entry;
        std::string explicit_format;

        if (value.kind == RawValue::Kind::Literal) {
            entry.download_url = std::string(trim(value.text));
        } else {
            if (const RawValue* url = first_property(
                    value, {"contentUrl", "downloadURL", "accessURL", "url"})) {
                entry.download_url = std::string(trim(url->display_text()));
            }
            if (const RawValue* fmt = first_property(
                    value, {"fileFormat", "encodingFormat", "encodingType", "mediaType", "format"})) {
                explicit_format = fmt->display_text();
            }
        }

        if (!explicit_format.empty()) {
            entry.raw_format = normalize_format_token(explicit_format);
        } else if (!entry.download_url.empty()) {
            entry.raw_format = extension_from_url(entry.download_url);
        }

        if (entry.download_url.empty() && entry.raw_format.empty()) {
            diags.warn("normalize", page_url, "distribution with neither URL nor format dropped");
            continue;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

bool is_semantic_web_format(std::string_view raw_format,
                            const std::set<std::string>& semantic_web_formats) {
    if (raw_format.empty()) return false;
    std::string key(raw_format);
    if (semantic_web_formats.count(key)) return true;
    size_t slash = key.find('/');
    if (slash != std::string::npos) {
        std::string subtype = key.substr(slash + 1);
        if (subtype.rfind("x-", 0) == 0) subtype.erase(0, 2);
        if (semantic_web_formats.count(subtype)) return true;
    }
    return false;
}

namespace {

void push_unique(std::vector<std::string>& list, const std::string& value) {
    if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(value);
}

bool is_doi_suffix_char(char c) {
    return c > 0x20 && c != '"' && c != '<' && c != '>' && static_cast<unsigned char>(c) < 0x7F;
}

std::string strip_trailing_punctuation(std::string s) {
    while (!s.empty()) {
        char c = s.back();
        if (c == '.' || c == ',' || c == ';' || c == ':' || c == ')' || c == ']' || c == '}' ||
            c == '\'' || c == '"') {
            s.pop_back();
        } else {
            break;
        }
    }
    return s;
}

void scan_dois(std::string_view text, IdentifierSet& out) {
    size_t pos = 0;
    while ((pos = text.find("10.", pos)) != std::string_view::npos) {
        if (pos > 0) {
            char before = text[pos - 1];
            if (is_alnum(before) || before == '.') {
                pos += 3;
                continue;
            }
        }
        size_t digits_start = pos + 3;
        size_t i = digits_start;
        while (i < text.size() && is_digit(text[i])) ++i;
        size_t digit_count = i - digits_start;
        if (digit_count < 4 || digit_count > 9 || i >= text.size() || text[i] != '/') {
            pos += 3;
            continue;
        }
        size_t suffix_start = ++i;
        while (i < text.size() && is_doi_suffix_char(text[i])) ++i;
        if (i == suffix_start) {
            pos += 3;
            continue;
        }
        std::string doi = strip_trailing_punctuation(std::string(text.substr(pos, i - pos)));
        if (doi.find('/') != std::string::npos && doi.back() != '/') {
            push_unique(out.dois, doi);
        }
        pos = i;
    }
}

bool is_accession_char(char c) {
    return is_alnum(c) || c == '.' || c == '_' || c == '-' || c == '/';
}

void scan_compact_ids(std::string_view text, const PrefixRegistry& registry, IdentifierSet& out) {
    // identifiers.org path form: /identifiers.org/<prefix>:<acc> or /<prefix>/<acc>
    size_t site = text.find("identifiers.org/");
    if (site != std::string_view::npos) {
        std::string_view rest = text.substr(site + 16);
        size_t sep = rest.find_first_of(":/");
        if (sep != std::string_view::npos && sep > 0) {
            std::string prefix = to_lower_ascii(rest.substr(0, sep));
            std::string_view acc_part = rest.substr(sep + 1);
            size_t end = 0;
            while (end < acc_part.size() && is_accession_char(acc_part[end])) ++end;
            std::string accession = strip_trailing_punctuation(std::string(acc_part.substr(0, end)));
            if (registry.contains(prefix) && !accession.empty()) {
                push_unique(out.compact_ids, prefix + ":" + accession);
            } else if (prefix == "doi" && !accession.empty()) {
                scan_dois(accession, out);
            }
        }
    }

    // Bare prefix:accession form.
    size_t pos = 0;
    while ((pos = text.find(':', pos)) != std::string_view::npos) {
        size_t start = pos;
        while (start > 0 && (is_alnum(text[start - 1]) || text[start - 1] == '.' ||
                             text[start - 1] == '_')) {
            --start;
        }
        if (start == pos) {
            ++pos;
            continue;
        }
        if (start > 0 && (text[start - 1] == '/' || text[start - 1] == ':')) {
            // Inside a URL path or scheme: handled by the URL form above.
            ++pos;
            continue;
        }
        std::string prefix = to_lower_ascii(text.substr(start, pos - start));
        size_t acc_start = pos + 1;
        size_t end = acc_start;
        while (end < text.size() && is_accession_char(text[end])) ++end;
        std::string accession = strip_trailing_punctuation(std::string(text.substr(acc_start, end - acc_start)));
        if (!accession.empty()) {
            if (registry.contains(prefix)) {
                push_unique(out.compact_ids, prefix + ":" + accession);
            } else if (prefix == "doi") {
                scan_dois(accession, out);
            }
        }
        pos = end > pos ? end : pos + 1;
    }
}

void collect_texts(const RawValue& value, std::vector<std::string>& texts) {
    if (!value.text.empty()) texts.push_back(value.text);
    for (const RawProperty& prop : value.properties) collect_texts(prop.value, texts);
}

}  // namespace

void scan_identifiers(std::string_view text, const PrefixRegistry& registry, IdentifierSet& out) {
    scan_dois(text, out);
    scan_compact_ids(text, registry, out);
}

IdentifierSet extract_identifiers(const RawDatasetRecord& raw, const PrefixRegistry& registry) {
    IdentifierSet out;
    for (std::string_view canonical : {"identifier", "url", "same_as", "alternate_name"}) {
        const std::vector<RawProperty>* values = raw.values_for(canonical);
        if (!values) continue;
        for (const RawProperty& prop : *values) {
            std::vector<std::string> texts;
            collect_texts(prop.value, texts);
            for (const std::string& text : texts) scan_identifiers(text, registry, out);
        }
    }
    return out;
}

std::vector<LicenseEntry> normalize_licenses(const RawDatasetRecord& raw,
                                             const LicenseTable& table) {
    std::vector<std::string> raw_values;

    if (const std::vector<RawProperty>* values = raw.values_for("license")) {
        for (const RawProperty& prop : *values) {
            std::string text = std::string(trim(prop.value.display_text()));
            if (!text.empty()) raw_values.push_back(std::move(text));
        }
    }
    // Licenses may also sit on the distributions themselves.
    if (const std::vector<RawProperty>* downloads = raw.values_for("data_download")) {
        for (const RawProperty& prop : *downloads) {
            if (prop.value.kind != RawValue::Kind::Node) continue;
            if (const RawValue* license = prop.value.property("license")) {
                std::string text = std::string(trim(license->display_text()));
                if (!text.empty()) raw_values.push_back(std::move(text));
            }
        }
    }

    std::vector<LicenseEntry> out;
    for (const std::string& value : raw_values) {
        bool duplicate = std::any_of(out.begin(), out.end(),
                                     [&](const LicenseEntry& e) { return e.raw == value; });
        if (duplicate) continue;
        LicenseClass cls = table.classify(value);
        LicenseEntry entry;
        entry.raw = value;
        entry.class_id = cls.class_id;
        entry.allows_redistribution = cls.allows_redistribution;
        entry.allows_commercial = cls.allows_commercial;
        out.push_back(std::move(entry));
    }
    return out;
}

bool compute_openness(const std::vector<LicenseEntry>& licenses, TriState is_accessible_for_free) {
    if (is_accessible_for_free == TriState::True) return true;
    return std::any_of(licenses.begin(), licenses.end(),
                       [](const LicenseEntry& e) { return e.allows_redistribution; });
}

std::string canonical_provider_name(std::string_view raw) {
    std::string name = case_fold(collapse_whitespace(raw));
    static const std::array<std::string_view, 10> suffixes = {
        "inc.", "inc", "incorporated", "ltd.", "ltd", "llc.", "llc", "l.l.c.", "gmbh", "corp.",
    };
    for (std::string_view suffix : suffixes) {
        if (name.size() <= suffix.size()) continue;
        if (!name.ends_with(suffix)) continue;
        size_t cut = name.size() - suffix.size();
        // Require a separator before the suffix so "zinc" stays intact.
        if (name[cut - 1] != ' ' && name[cut - 1] != ',') continue;
        name.erase(cut);
        while (!name.empty() && (name.back() == ' ' || name.back() == ',')) name.pop_back();
        break;
    }
    return name;
}

std::vector<std::string> resolve_provider(const std::vector<RawProperty>& values,
                                          Diagnostics& diags, const std::string& context) {
    std::vector<std::string> out;
    for (const RawProperty& prop : values) {
        std::string text;
        if (prop.value.kind == RawValue::Kind::Literal) {
            text = prop.value.text;
        } else if (const RawValue* name =
                       first_property(prop.value, {"name", "legalName", "title"})) {
            text = name->display_text();
        } else {
            diags.warn("normalize", context, "provider entity without a name skipped");
            continue;
        }
        std::string canonical = canonical_provider_name(text);
        if (!canonical.empty()) push_unique(out, canonical);
    }
    return out;
}

std::string primary_language_subtag(std::string_view tag) {
    std::string_view t = trim(tag);
    size_t cut = t.find_first_of("-_,; ");
    if (cut != std::string_view::npos) t = t.substr(0, cut);
    if (t.empty() || t.size() > 8) return "";
    for (char c : t) {
        if (!is_alpha(c)) return "";
    }
    return to_lower_ascii(t);
}

std::string detect_language(const std::string& html_lang, const std::string& content_language,
                            const std::vector<std::string>& literal_tags) {
    std::string lang = primary_language_subtag(html_lang);
    if (!lang.empty()) return lang;
    lang = primary_language_subtag(content_language);
    if (!lang.empty()) return lang;

    std::map<std::string, int> counts;
    for (const std::string& tag : literal_tags) {
        std::string sub = primary_language_subtag(tag);
        if (!sub.empty()) counts[sub] += 1;
    }
    std::string best;
    int best_count = 0;
    for (const auto& [sub, count] : counts) {
        if (count > best_count) {  // ties break to the lexicographically smallest
            best = sub;
            best_count = count;
        }
    }
    if (!best.empty()) return best;
    return "unknown";
}

TriState parse_tri_state(const std::vector<RawProperty>& values) {
    for (const RawProperty& prop : values) {
        std::string text = to_lower_ascii(collapse_whitespace(prop.value.display_text()));
        if (prop.value.kind == RawValue::Kind::Node && !prop.value.text.empty()) {
            // schema.org/True style IRI values
            std::string_view local = vocab::schema_local_name(prop.value.text);
            if (local == "True") return TriState::True;
            if (local == "False") return TriState::False;
        }
        if (text == "true" || text == "yes" || text == "1") return TriState::True;
        if (text == "false" || text == "no" || text == "0") return TriState::False;
    }
    return TriState::Absent;
}

}  // namespace dsmeta
