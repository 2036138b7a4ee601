#pragma once

#include <string>
#include <vector>

#include "dsmeta/diagnostics.hpp"
#include "dsmeta/html.hpp"
#include "dsmeta/triples.hpp"
#include "dsmeta/url.hpp"

namespace dsmeta {

// Page-level signals the later stages need (language, page date, topic text).
struct PageSignals {
    std::string base_url;  // page URL, overridden by <base href> when present
    std::string html_lang;
    std::string content_language;
    std::string page_modified_raw;  // <meta http-equiv="last-modified"> or HTTP header
    std::string visible_text;       // whitespace-collapsed body text
};

PageSignals collect_page_signals(const html::Document& doc, const std::string& page_url);

// Parses all three embedded-metadata syntaxes into one graph. Blank nodes are
// numbered _:b0, _:b1, ... in processing order (JSON-LD blocks in document
// order, then Microdata items, then RDFa), so a page's graph is a pure
// function of its bytes and URL.
TripleGraph extract_structured_data(std::string_view html_text, const std::string& page_url,
                                    Diagnostics& diags);

TripleGraph extract_structured_data(const html::Document& doc, const std::string& page_url,
                                    Diagnostics& diags);

// One subgraph per node typed so:Dataset or dcat:Dataset (either URI scheme),
// in order of first appearance; each subgraph is the reachable closure.
std::vector<EntitySubgraph> select_dataset_entities(const TripleGraph& graph);

namespace detail {

// Shared state for the per-syntax emitters.
class GraphBuilder {
public:
    GraphBuilder(TripleGraph& graph, const Url& base, Diagnostics& diags)
        : graph_(graph), base_(base), diags_(diags) {}

    std::string fresh_blank() { return "_:b" + std::to_string(graph_.blank_counter++); }

    void add_node_triple(std::string subject, std::string predicate, std::string object,
                         Origin origin);
    void add_literal_triple(std::string subject, std::string predicate, std::string text,
                            std::string language, std::string datatype, Origin origin);

    // Resolves a possibly-relative IRI against the page base.
    std::string resolve_iri(std::string_view ref) const;

    const Url& base() const { return base_; }
    Diagnostics& diags() { return diags_; }
    const std::string& page_url() const { return graph_.page_url; }

private:
    bool seen(const Triple& t);

    TripleGraph& graph_;
    const Url& base_;
    Diagnostics& diags_;
    std::vector<size_t> hashes_;  // dedup of identical triples per origin
};

void extract_jsonld(const html::Document& doc, GraphBuilder& builder);
void extract_microdata(const html::Document& doc, GraphBuilder& builder);
void extract_rdfa(const html::Document& doc, GraphBuilder& builder);

}  // namespace detail

}  // namespace dsmeta
