#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dsmeta/extract.hpp"
#include "dsmeta/util.hpp"

namespace dsmeta::detail {

namespace {

// Vocabulary IRI from an itemtype, per the Microdata-to-RDF mapping: up to and
// including the last '#', else up to and including the last '/'.
std::string vocab_from_type(const std::string& type_iri) {
    size_t hash = type_iri.find_last_of('#');
    if (hash != std::string::npos) return type_iri.substr(0, hash + 1);
    size_t scheme = type_iri.find("//");
    size_t slash = type_iri.find_last_of('/');
    if (slash != std::string::npos && (scheme == std::string::npos || slash > scheme + 1)) {
        return type_iri.substr(0, slash + 1);
    }
    return type_iri + "/";
}

class MicrodataEmitter {
public:
    MicrodataEmitter(const html::Document& doc, GraphBuilder& builder)
        : doc_(doc), builder_(builder) {}

    void run() {
        doc_.for_each_element([&](int id, const html::Node& node) {
            if (node.has_attr("itemscope") && !node.has_attr("itemprop")) {
                process_item(id, "");
            }
        });
    }

private:
    std::string process_item(int element, const std::string& inherited_vocab) {
        const html::Node& node = doc_.node(element);

        std::string subject;
        if (const std::string* itemid = node.attr("itemid"); itemid && !trim(*itemid).empty()) {
            subject = builder_.resolve_iri(*itemid);
        } else {
            subject = builder_.fresh_blank();
        }

        std::string vocabulary = inherited_vocab;
        if (const std::string* itemtype = node.attr("itemtype")) {
            std::vector<std::string> types = split_whitespace(*itemtype);
            for (size_t i = 0; i < types.size(); ++i) {
                if (!looks_like_absolute_iri(types[i])) {
                    builder_.diags().info("extract", builder_.page_url(),
                                          "itemtype \"" + types[i] + "\" is not an absolute IRI");
                    continue;
                }
                builder_.add_node_triple(subject, std::string(vocab::kRdfType), types[i],
                                         Origin::Microdata);
                if (i == 0) vocabulary = vocab_from_type(types[i]);
            }
        }

        std::unordered_set<int> visited_refs;
        emit_properties(element, element, subject, vocabulary, visited_refs);

        if (const std::string* itemref = node.attr("itemref")) {
            for (const std::string& ref_id : split_whitespace(*itemref)) {
                int target = doc_.element_by_id(ref_id);
                if (target < 0) {
                    builder_.diags().info("extract", builder_.page_url(),
                                          "itemref target \"" + ref_id + "\" not found");
                    continue;
                }
                if (!visited_refs.insert(target).second) continue;
                emit_property_element(target, subject, vocabulary, visited_refs);
            }
        }
        return subject;
    }

    // Walks children of `root`, attaching itemprop values to `subject` and
    // stopping at nested itemscopes.
    void emit_properties(int root, int item_element, const std::string& subject,
                         const std::string& vocabulary, std::unordered_set<int>& visited_refs) {
        for (int child : doc_.node(root).children) {
            const html::Node& node = doc_.node(child);
            if (node.type != html::Node::Type::Element) continue;
            emit_property_element(child, subject, vocabulary, visited_refs);
        }
        (void)item_element;
    }

    void emit_property_element(int element, const std::string& subject,
                               const std::string& vocabulary,
                               std::unordered_set<int>& visited_refs) {
        const html::Node& node = doc_.node(element);
        const std::string* itemprop = node.attr("itemprop");

        if (itemprop) {
            bool nested_item = node.has_attr("itemscope");
            std::string value_node;
            std::string literal;
            std::string language;
            bool is_node = false;

            if (nested_item) {
                value_node = process_item(element, vocabulary);
                is_node = true;
            } else {
                extract_value(element, &literal, &value_node, &is_node);
                if (!is_node) language = doc_.language_of(element);
            }

            for (const std::string& name : split_whitespace(*itemprop)) {
                std::string predicate;
                if (looks_like_absolute_iri(name)) {
                    predicate = name;
                } else if (!vocabulary.empty()) {
                    predicate = vocabulary + name;
                } else {
                    builder_.diags().info("extract", builder_.page_url(),
                                          "itemprop \"" + name + "\" has no vocabulary; dropped");
                    continue;
                }
                if (is_node) {
                    builder_.add_node_triple(subject, predicate, value_node, Origin::Microdata);
                } else {
                    builder_.add_literal_triple(subject, predicate, literal, language, "",
                                                Origin::Microdata);
                }
            }
            if (nested_item) return;  // nested item owns its subtree
        } else if (node.has_attr("itemscope")) {
            return;  // unrelated nested item; handled by the top-level scan
        }

        for (int child : node.children) {
            if (doc_.node(child).type == html::Node::Type::Element) {
                emit_property_element(child, subject, vocabulary, visited_refs);
            }
        }
    }

    void extract_value(int element, std::string* literal, std::string* node_value, bool* is_node) {
        const html::Node& node = doc_.node(element);
        const std::string& tag = node.name;
        auto iri_attr = [&](const char* attr_name) -> bool {
            const std::string* v = node.attr(attr_name);
            if (!v) return false;
            *node_value = builder_.resolve_iri(*v);
            *is_node = true;
            return true;
        };

        if (tag == "meta") {
            if (const std::string* content = node.attr("content")) {
                *literal = *content;
                return;
            }
        } else if (tag == "a" || tag == "area" || tag == "link") {
            if (iri_attr("href")) return;
        } else if (tag == "audio" || tag == "embed" || tag == "iframe" || tag == "img" ||
                   tag == "source" || tag == "track" || tag == "video") {
            if (iri_attr("src")) return;
        } else if (tag == "object") {
            if (iri_attr("data")) return;
        } else if (tag == "data" || tag == "meter") {
            if (const std::string* v = node.attr("value")) {
                *literal = *v;
                return;
            }
        } else if (tag == "time") {
            if (const std::string* v = node.attr("datetime")) {
                *literal = *v;
                return;
            }
        }
        if (const std::string* content = node.attr("content")) {
            // Non-standard but widespread: content attribute wins over text.
            *literal = *content;
            return;
        }
        *literal = collapse_whitespace(doc_.text_content(element));
    }

    const html::Document& doc_;
    GraphBuilder& builder_;
};

}  // namespace

void extract_microdata(const html::Document& doc, GraphBuilder& builder) {
    MicrodataEmitter(doc, builder).run();
}

}  // namespace dsmeta::detail
