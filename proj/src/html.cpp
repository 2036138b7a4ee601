#include "dsmeta/html.hpp"

#include <array>
#include <unordered_map>
#include <unordered_set>

#include "dsmeta/util.hpp"

namespace dsmeta::html {

namespace {

const std::unordered_set<std::string>& void_elements() {
    static const std::unordered_set<std::string> set = {
        "area", "base", "br",    "col",  "embed",  "hr",  "img", "input",
        "link", "meta", "param", "source", "track", "wbr",
    };
    return set;
}

const std::unordered_set<std::string>& rawtext_elements() {
    static const std::unordered_set<std::string> set = {"script", "style", "textarea", "title"};
    return set;
}

// Elements whose start tag implicitly closes an open <p>.
const std::unordered_set<std::string>& p_closers() {
    static const std::unordered_set<std::string> set = {
        "address", "article", "aside",      "blockquote", "div",    "dl",   "fieldset",
        "figcaption", "figure", "footer",   "form",       "h1",     "h2",   "h3",
        "h4",      "h5",      "h6",         "header",     "hr",     "main", "nav",
        "ol",      "p",       "pre",        "section",    "table",  "ul",
    };
    return set;
}

bool is_ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

const std::unordered_map<std::string, std::string>& named_entities() {
    static const std::unordered_map<std::string, std::string> map = {
        {"amp", "&"},      {"lt", "<"},       {"gt", ">"},      {"quot", "\""},
        {"apos", "'"},     {"nbsp", "\xC2\xA0"}, {"copy", "\xC2\xA9"}, {"reg", "\xC2\xAE"},
        {"mdash", "\xE2\x80\x94"}, {"ndash", "\xE2\x80\x93"}, {"hellip", "\xE2\x80\xA6"},
        {"lsquo", "\xE2\x80\x98"}, {"rsquo", "\xE2\x80\x99"}, {"ldquo", "\xE2\x80\x9C"},
        {"rdquo", "\xE2\x80\x9D"}, {"deg", "\xC2\xB0"},       {"eacute", "\xC3\xA9"},
        {"egrave", "\xC3\xA8"},    {"agrave", "\xC3\xA0"},    {"uuml", "\xC3\xBC"},
        {"ouml", "\xC3\xB6"},      {"auml", "\xC3\xA4"},      {"szlig", "\xC3\x9F"},
        {"ccedil", "\xC3\xA7"},    {"ntilde", "\xC3\xB1"},    {"times", "\xC3\x97"},
        {"middot", "\xC2\xB7"},    {"bull", "\xE2\x80\xA2"},
    };
    return map;
}

void append_codepoint_utf8(std::string& out, unsigned long cp) {
    if (cp == 0 || cp > 0x10FFFF) {
        out += "\xEF\xBF\xBD";  // replacement character
        return;
    }
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

}  // namespace

std::string decode_entities(std::string_view s) {
    if (s.find('&') == std::string_view::npos) return std::string(s);
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c != '&') {
            out.push_back(c);
            ++i;
            continue;
        }
        size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out.push_back(c);
            ++i;
            continue;
        }
        std::string_view body = s.substr(i + 1, semi - i - 1);
        if (!body.empty() && body[0] == '#') {
            unsigned long cp = 0;
            bool ok = body.size() > 1;
            if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
                for (size_t k = 2; k < body.size() && ok; ++k) {
                    char h = body[k];
                    cp <<= 4;
                    if (h >= '0' && h <= '9') cp |= static_cast<unsigned>(h - '0');
                    else if (h >= 'a' && h <= 'f') cp |= static_cast<unsigned>(h - 'a' + 10);
                    else if (h >= 'A' && h <= 'F') cp |= static_cast<unsigned>(h - 'A' + 10);
                    else ok = false;
                }
            } else {
                for (size_t k = 1; k < body.size() && ok; ++k) {
                    char d = body[k];
                    if (d < '0' || d > '9') {
                        ok = false;
                    } else {
                        cp = cp * 10 + static_cast<unsigned>(d - '0');
                    }
                }
            }
            if (ok) {
                append_codepoint_utf8(out, cp);
                i = semi + 1;
                continue;
            }
        } else {
            auto it = named_entities().find(std::string(body));
            if (it != named_entities().end()) {
                out += it->second;
                i = semi + 1;
                continue;
            }
        }
        out.push_back(c);
        ++i;
    }
    return out;
}

const std::string* Node::attr(std::string_view attr_name) const {
    for (const auto& [k, v] : attrs) {
        if (k == attr_name) return &v;
    }
    return nullptr;
}

bool Node::has_attr(std::string_view attr_name) const {
    return attr(attr_name) != nullptr;
}

class Parser {
public:
    explicit Parser(std::string_view input) : in_(input) {
        doc_.nodes_.emplace_back();
        doc_.nodes_[0].type = Node::Type::Document;
        stack_.push_back(0);
    }

    Document run() {
        while (pos_ < in_.size()) {
            step();
        }
        flush_text();
        return std::move(doc_);
    }

private:
    void step() {
        char c = in_[pos_];
        if (c != '<') {
            text_ += c;
            ++pos_;
            return;
        }
        if (pos_ + 1 >= in_.size()) {
            text_ += c;
            ++pos_;
            return;
        }
        char next = in_[pos_ + 1];
        if (next == '!') {
            flush_text();
            parse_markup_declaration();
        } else if (next == '?') {
            flush_text();
            skip_until('>');
        } else if (next == '/') {
            flush_text();
            parse_end_tag();
        } else if (is_ascii_alpha(next)) {
            flush_text();
            parse_start_tag();
        } else {
            text_ += c;
            ++pos_;
        }
    }

    void parse_markup_declaration() {
        if (in_.compare(pos_, 4, "<!--") == 0) {
            size_t end = in_.find("-->", pos_ + 4);
            std::string_view body =
                end == std::string_view::npos ? in_.substr(pos_ + 4) : in_.substr(pos_ + 4, end - pos_ - 4);
            int id = add_node(Node::Type::Comment);
            doc_.nodes_[id].text = std::string(body);
            pos_ = end == std::string_view::npos ? in_.size() : end + 3;
        } else {
            // DOCTYPE, CDATA and friends: skipped.
            skip_until('>');
        }
    }

    void skip_until(char terminator) {
        size_t end = in_.find(terminator, pos_);
        pos_ = end == std::string_view::npos ? in_.size() : end + 1;
    }

    void parse_end_tag() {
        size_t i = pos_ + 2;
        size_t start = i;
        while (i < in_.size() && in_[i] != '>' && !is_ws(in_[i])) ++i;
        std::string name = to_lower_ascii(in_.substr(start, i - start));
        while (i < in_.size() && in_[i] != '>') ++i;
        pos_ = i < in_.size() ? i + 1 : in_.size();
        if (name.empty()) return;

        // Close up to the matching open element; ignore stray end tags.
        for (size_t depth = stack_.size(); depth > 1; --depth) {
            if (doc_.nodes_[stack_[depth - 1]].name == name) {
                stack_.resize(depth - 1);
                return;
            }
        }
    }

    void parse_start_tag() {
        size_t i = pos_ + 1;
        size_t start = i;
        while (i < in_.size() && in_[i] != '>' && in_[i] != '/' && !is_ws(in_[i])) ++i;
        std::string name = to_lower_ascii(in_.substr(start, i - start));

        std::vector<std::pair<std::string, std::string>> attrs;
        bool self_closing = false;
        while (i < in_.size()) {
            while (i < in_.size() && is_ws(in_[i])) ++i;
            if (i >= in_.size()) break;
            if (in_[i] == '>') {
                ++i;
                break;
            }
            if (in_[i] == '/') {
                ++i;
                if (i < in_.size() && in_[i] == '>') {
                    self_closing = true;
                    ++i;
                    break;
                }
                continue;
            }
            size_t attr_start = i;
            while (i < in_.size() && in_[i] != '=' && in_[i] != '>' && in_[i] != '/' && !is_ws(in_[i])) ++i;
            std::string attr_name = to_lower_ascii(in_.substr(attr_start, i - attr_start));
            std::string attr_value;
            while (i < in_.size() && is_ws(in_[i])) ++i;
            if (i < in_.size() && in_[i] == '=') {
                ++i;
                while (i < in_.size() && is_ws(in_[i])) ++i;
                if (i < in_.size() && (in_[i] == '"' || in_[i] == '\'')) {
                    char quote = in_[i];
                    ++i;
                    size_t vstart = i;
                    while (i < in_.size() && in_[i] != quote) ++i;
                    attr_value = decode_entities(in_.substr(vstart, i - vstart));
                    if (i < in_.size()) ++i;
                } else {
                    size_t vstart = i;
                    while (i < in_.size() && in_[i] != '>' && !is_ws(in_[i])) ++i;
                    attr_value = decode_entities(in_.substr(vstart, i - vstart));
                }
            }
            if (!attr_name.empty()) attrs.emplace_back(std::move(attr_name), std::move(attr_value));
        }
        pos_ = i;
        if (name.empty()) return;

        apply_implied_end_tags(name);

        int id = add_node(Node::Type::Element);
        doc_.nodes_[id].name = name;
        doc_.nodes_[id].attrs = std::move(attrs);

        bool is_void = void_elements().count(name) > 0;
        if (!is_void && !self_closing) {
            stack_.push_back(id);
            if (rawtext_elements().count(name)) {
                consume_rawtext(name, id);
            }
        }
    }

    void consume_rawtext(const std::string& name, int element_id) {
        std::string close = "</" + name;
        size_t end = pos_;
        while (true) {
            end = in_.find('<', end);
            if (end == std::string_view::npos) {
                end = in_.size();
                break;
            }
            if (end + close.size() <= in_.size() && iequals(in_.substr(end, close.size()), close)) {
                break;
            }
            ++end;
        }
        std::string_view body = in_.substr(pos_, end - pos_);
        if (!body.empty()) {
            int id = add_node(Node::Type::Text);
            doc_.nodes_[id].text = std::string(body);  // raw: scripts keep their bytes
        }
        pos_ = end;
        if (pos_ < in_.size()) {
            parse_end_tag_expected(name);
        } else {
            stack_.pop_back();
        }
        (void)element_id;
    }

    void parse_end_tag_expected(const std::string& name) {
        // pos_ is at "</name"; reuse the generic end-tag path.
        parse_end_tag();
        (void)name;
    }

    void apply_implied_end_tags(const std::string& incoming) {
        auto current = [&]() -> const std::string& { return doc_.nodes_[stack_.back()].name; };
        while (stack_.size() > 1) {
            const std::string& open = current();
            bool close = false;
            if (open == "p" && p_closers().count(incoming)) close = true;
            else if (open == "li" && incoming == "li") close = true;
            else if ((open == "dd" || open == "dt") && (incoming == "dd" || incoming == "dt")) close = true;
            else if ((open == "td" || open == "th") &&
                     (incoming == "td" || incoming == "th" || incoming == "tr")) close = true;
            else if (open == "tr" && incoming == "tr") close = true;
            else if (open == "option" && (incoming == "option" || incoming == "optgroup")) close = true;
            else if ((open == "thead" || open == "tbody" || open == "tfoot") &&
                     (incoming == "thead" || incoming == "tbody" || incoming == "tfoot")) close = true;
            if (!close) break;
            stack_.pop_back();
        }
    }

    void flush_text() {
        if (text_.empty()) return;
        int id = add_node(Node::Type::Text);
        doc_.nodes_[id].text = decode_entities(text_);
        text_.clear();
    }

    int add_node(Node::Type type) {
        int id = static_cast<int>(doc_.nodes_.size());
        doc_.nodes_.emplace_back();
        doc_.nodes_[id].type = type;
        doc_.nodes_[id].parent = stack_.back();
        doc_.nodes_[stack_.back()].children.push_back(id);
        return id;
    }

    std::string_view in_;
    size_t pos_ = 0;
    std::string text_;
    std::vector<int> stack_;
    Document doc_;
};

Document Document::parse(std::string_view input) {
    return Parser(input).run();
}

std::string Document::text_content(int id) const {
    std::string out;
    std::vector<int> work{id};
    // Depth-first, preserving document order.
    std::function<void(int)> visit = [&](int n) {
        const Node& node = nodes_[n];
        if (node.type == Node::Type::Text) {
            out += node.text;
            return;
        }
        if (node.type == Node::Type::Element && (node.name == "script" || node.name == "style")) {
            return;
        }
        for (int child : node.children) visit(child);
    };
    visit(id);
    return out;
}

void Document::for_each_element(const std::function<void(int, const Node&)>& fn) const {
    for (int i = 0; i < size(); ++i) {
        if (nodes_[i].type == Node::Type::Element) fn(i, nodes_[i]);
    }
}

int Document::element_by_id(std::string_view id_value) const {
    for (int i = 0; i < size(); ++i) {
        if (nodes_[i].type != Node::Type::Element) continue;
        const std::string* v = nodes_[i].attr("id");
        if (v && *v == id_value) return i;
    }
    return -1;
}

std::string Document::language_of(int id) const {
    for (int n = id; n >= 0; n = nodes_[n].parent) {
        if (nodes_[n].type != Node::Type::Element) continue;
        const std::string* v = nodes_[n].attr("lang");
        if (v && !v->empty()) return *v;
    }
    return "";
}

}  // namespace dsmeta::html
