#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dsmeta::html {

// Minimal error-tolerant tag-soup DOM. Nodes live in one arena, in document
// order; node 0 is the synthetic document root.
struct Node {
    enum class Type { Document, Element, Text, Comment };

    Type type = Type::Element;
    std::string name;  // lowercase tag name (elements only)
    std::vector<std::pair<std::string, std::string>> attrs;
    std::string text;  // text/comment content, entity-decoded
    int parent = -1;
    std::vector<int> children;

    const std::string* attr(std::string_view attr_name) const;
    bool has_attr(std::string_view attr_name) const;
};

class Document {
public:
    const Node& node(int id) const { return nodes_[id]; }
    const Node& root() const { return nodes_[0]; }
    int size() const { return static_cast<int>(nodes_.size()); }

    // Concatenated text of all descendant text nodes, skipping script/style.
    std::string text_content(int id) const;

    // Elements in document order.
    void for_each_element(const std::function<void(int, const Node&)>& fn) const;

    // First element with the given id attribute, -1 when absent.
    int element_by_id(std::string_view id_value) const;

    // Nearest lang attribute at or above the node; empty when none.
    std::string language_of(int id) const;

    static Document parse(std::string_view input);

private:
    std::vector<Node> nodes_;
    friend class Parser;
};

std::string decode_entities(std::string_view s);

}  // namespace dsmeta::html
