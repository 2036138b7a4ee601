#include "dsmeta/extract.hpp"

#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "dsmeta/util.hpp"

namespace dsmeta {

namespace detail {

namespace {

size_t triple_hash(const Triple& t) {
    std::hash<std::string> h;
    size_t seed = h(t.subject);
    auto mix = [&seed](size_t v) { seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2); };
    mix(h(t.predicate));
    mix(h(t.object));
    mix(h(t.object_language));
    mix(h(t.object_datatype));
    mix(static_cast<size_t>(t.object_is_node));
    mix(static_cast<size_t>(t.origin));
    return seed;
}

}  // namespace

bool GraphBuilder::seen(const Triple& t) {
    size_t hv = triple_hash(t);
    for (size_t i = 0; i < hashes_.size(); ++i) {
        if (hashes_[i] == hv && graph_.triples[i] == t) return true;
    }
    hashes_.push_back(hv);
    return false;
}

void GraphBuilder::add_node_triple(std::string subject, std::string predicate, std::string object,
                                   Origin origin) {
    Triple t;
    t.subject = std::move(subject);
    t.predicate = std::move(predicate);
    t.object_is_node = true;
    t.object = std::move(object);
    t.origin = origin;
    if (seen(t)) {
        hashes_.pop_back();
        return;
    }
    graph_.triples.push_back(std::move(t));
}

void GraphBuilder::add_literal_triple(std::string subject, std::string predicate, std::string text,
                                      std::string language, std::string datatype, Origin origin) {
    Triple t;
    t.subject = std::move(subject);
    t.predicate = std::move(predicate);
    t.object_is_node = false;
    t.object = std::move(text);
    t.object_language = std::move(language);
    t.object_datatype = std::move(datatype);
    t.origin = origin;
    if (seen(t)) {
        hashes_.pop_back();
        return;
    }
    graph_.triples.push_back(std::move(t));
}

std::string GraphBuilder::resolve_iri(std::string_view ref) const {
    if (auto resolved = resolve_reference(base_, ref)) return *resolved;
    return std::string(trim(ref));
}

}  // namespace detail

PageSignals collect_page_signals(const html::Document& doc, const std::string& page_url) {
    PageSignals signals;
    signals.base_url = page_url;

    bool base_seen = false;
    doc.for_each_element([&](int id, const html::Node& node) {
        if (!base_seen && node.name == "base") {
            if (const std::string* href = node.attr("href"); href && !href->empty()) {
                if (auto base = parse_url(page_url)) {
                    if (auto resolved = resolve_reference(*base, *href)) signals.base_url = *resolved;
                }
                base_seen = true;
            }
        }
        if (node.name == "html" && signals.html_lang.empty()) {
            if (const std::string* lang = node.attr("lang")) signals.html_lang = *lang;
        }
        if (node.name == "meta") {
            const std::string* equiv = node.attr("http-equiv");
            const std::string* content = node.attr("content");
            if (equiv && content) {
                if (iequals(*equiv, "content-language") && signals.content_language.empty()) {
                    signals.content_language = *content;
                } else if (iequals(*equiv, "last-modified") && signals.page_modified_raw.empty()) {
                    signals.page_modified_raw = *content;
                }
            }
        }
        (void)id;
    });

    signals.visible_text = collapse_whitespace(doc.text_content(0));
    return signals;
}

TripleGraph extract_structured_data(const html::Document& doc, const std::string& page_url,
                                    Diagnostics& diags) {
    TripleGraph graph;
    graph.page_url = page_url;

    PageSignals signals = collect_page_signals(doc, page_url);
    auto base = parse_url(signals.base_url);
    if (!base) base = parse_url(page_url);
    if (!base) {
        diags.warn("extract", page_url, "page URL is not an absolute URL");
        base = Url{};
    }

    detail::GraphBuilder builder(graph, *base, diags);
    detail::extract_jsonld(doc, builder);
    detail::extract_microdata(doc, builder);
    detail::extract_rdfa(doc, builder);
    return graph;
}

TripleGraph extract_structured_data(std::string_view html_text, const std::string& page_url,
                                    Diagnostics& diags) {
    if (html_text.empty()) {
        diags.warn("extract", page_url, "empty document");
        TripleGraph graph;
        graph.page_url = page_url;
        return graph;
    }
    html::Document doc = html::Document::parse(html_text);
    return extract_structured_data(doc, page_url, diags);
}

std::vector<EntitySubgraph> select_dataset_entities(const TripleGraph& graph) {
    // Index triples by subject, preserving order.
    std::unordered_map<std::string, std::vector<size_t>> by_subject;
    for (size_t i = 0; i < graph.triples.size(); ++i) {
        by_subject[graph.triples[i].subject].push_back(i);
    }

    // Roots in order of their first triple.
    std::vector<std::string> roots;
    std::unordered_set<std::string> root_set;
    for (const Triple& t : graph.triples) {
        if (t.predicate == vocab::kRdfType && t.object_is_node && vocab::is_dataset_class(t.object) &&
            !root_set.count(t.subject)) {
            roots.push_back(t.subject);
            root_set.insert(t.subject);
        }
    }
    // Re-order by first appearance as a subject.
    std::unordered_map<std::string, size_t> first_index;
    for (size_t i = 0; i < graph.triples.size(); ++i) {
        first_index.emplace(graph.triples[i].subject, i);
    }
    std::sort(roots.begin(), roots.end(), [&](const std::string& a, const std::string& b) {
        return first_index[a] < first_index[b];
    });

    std::vector<EntitySubgraph> out;
    out.reserve(roots.size());
    for (const std::string& root : roots) {
        std::unordered_set<std::string> reachable{root};
        std::vector<std::string> queue{root};
        while (!queue.empty()) {
            std::string node = std::move(queue.back());
            queue.pop_back();
            auto it = by_subject.find(node);
            if (it == by_subject.end()) continue;
            for (size_t idx : it->second) {
                const Triple& t = graph.triples[idx];
                if (t.object_is_node && !reachable.count(t.object)) {
                    reachable.insert(t.object);
                    queue.push_back(t.object);
                }
            }
        }
        EntitySubgraph sub;
        sub.root = root;
        for (const Triple& t : graph.triples) {
            if (reachable.count(t.subject)) sub.triples.push_back(t);
        }
        out.push_back(std::move(sub));
    }
    return out;
}

}  // namespace dsmeta
