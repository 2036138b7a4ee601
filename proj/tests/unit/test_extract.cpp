#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "dsmeta/extract.hpp"

using namespace dsmeta;

namespace {

// Independent reachability oracle: breadth-first over node links.
std::set<std::string> reachable_nodes(const TripleGraph& graph, const std::string& root) {
    std::set<std::string> seen{root};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Triple& t : graph.triples) {
            if (seen.count(t.subject) && t.object_is_node && !seen.count(t.object)) {
                seen.insert(t.object);
                changed = true;
            }
        }
    }
    return seen;
}

TripleGraph extract(const std::string& html_text,
                    const std::string& url = "https://example.com/page") {
    Diagnostics diags;
    return extract_structured_data(html_text, url, diags);
}

}  // namespace

TEST_CASE("single json-ld dataset block") {
    TripleGraph g = extract(
        "<html><head><script type=\"application/ld+json\">"
        "{\"@context\":\"https://schema.org\",\"@type\":\"Dataset\",\"name\":\"T\"}"
        "</script></head></html>");
    REQUIRE(g.triples.size() == 2);
    CHECK(g.triples[0].subject == "_:b0");
    CHECK(g.triples[0].predicate == vocab::kRdfType);
    CHECK(g.triples[0].object == "http://schema.org/Dataset");
    CHECK(g.triples[1].subject == "_:b0");
    CHECK(vocab::is_schema_term(g.triples[1].predicate, "name"));
    CHECK(g.triples[1].object == "T");
    CHECK(g.triples[1].origin == Origin::JsonLd);
}

TEST_CASE("page with no structured data yields empty graph") {
    TripleGraph g = extract("<html><body><h1>Nothing here</h1></body></html>");
    CHECK(g.triples.empty());
}

TEST_CASE("malformed json-ld block is skipped with diagnostic, rest continues") {
    Diagnostics diags;
    TripleGraph g = extract_structured_data(
        std::string_view(
            "<script type=\"application/ld+json\">{not json]</script>"
            "<script type=\"application/ld+json\">"
            "{\"@context\":\"https://schema.org\",\"@type\":\"Dataset\",\"name\":\"ok\"}"
            "</script>"),
        "https://example.com/p", diags);
    CHECK(g.triples.size() == 2);
    CHECK(diags.size() == 1);
}

// Hand-expanded per the two W3C extraction algorithms: the JSON-LD node gets
// _:b0 and its two triples; the Microdata item gets the next blank id.
TEST_CASE("json-ld and microdata datasets on one page are distinct roots") {
    TripleGraph g = extract(
        "<html><head><script type=\"application/ld+json\">"
        "{\"@context\":\"https://schema.org\",\"@type\":\"Dataset\",\"name\":\"A\"}"
        "</script></head><body>"
        "<div itemscope itemtype=\"https://schema.org/Dataset\">"
        "<span itemprop=\"name\">B</span></div>"
        "</body></html>");
    REQUIRE(g.triples.size() == 4);
    CHECK(g.triples[0] ==
          Triple{"_:b0", std::string(vocab::kRdfType), true, "http://schema.org/Dataset", "", "",
                 Origin::JsonLd});
    CHECK(g.triples[1] ==
          Triple{"_:b0", "http://schema.org/name", false, "A", "", "", Origin::JsonLd});
    CHECK(g.triples[2] ==
          Triple{"_:b1", std::string(vocab::kRdfType), true, "https://schema.org/Dataset", "", "",
                 Origin::Microdata});
    CHECK(g.triples[3] ==
          Triple{"_:b1", "https://schema.org/name", false, "B", "", "", Origin::Microdata});

    auto entities = select_dataset_entities(g);
    REQUIRE(entities.size() == 2);
    CHECK(entities[0].root == "_:b0");
    CHECK(entities[1].root == "_:b1");
}

TEST_CASE("rdfa lite dataset") {
    TripleGraph g = extract(
        "<div vocab=\"https://schema.org/\" typeof=\"Dataset\">"
        "<span property=\"name\">R</span>"
        "<a property=\"url\" href=\"/data\">link</a>"
        "</div>");
    REQUIRE(g.triples.size() == 3);
    CHECK(g.triples[0].object == "https://schema.org/Dataset");
    CHECK(g.triples[1].object == "R");
    CHECK(g.triples[1].origin == Origin::Rdfa);
    CHECK(g.triples[2].object == "https://example.com/data");
    CHECK(g.triples[2].object_is_node);
}

TEST_CASE("relative IRIs resolve against base element when present") {
    TripleGraph g = extract(
        "<html><head><base href=\"https://cdn.example.org/root/\"></head><body>"
        "<div itemscope itemtype=\"https://schema.org/Dataset\">"
        "<a itemprop=\"url\" href=\"x.csv\">x</a></div></body></html>");
    REQUIRE(g.triples.size() == 2);
    CHECK(g.triples[1].object == "https://cdn.example.org/root/x.csv");
}

TEST_CASE("determinism: identical bytes give identical graphs") {
    std::string page =
        "<script type=\"application/ld+json\">"
        "{\"@context\":\"https://schema.org\",\"@type\":\"Dataset\",\"name\":\"T\","
        "\"publisher\":{\"@type\":\"Organization\",\"name\":\"Org\"}}</script>"
        "<div itemscope itemtype=\"http://schema.org/Dataset\"><span itemprop=\"name\">M</span></div>";
    TripleGraph a = extract(page);
    TripleGraph b = extract(page);
    REQUIRE(a.triples.size() == b.triples.size());
    for (size_t i = 0; i < a.triples.size(); ++i) CHECK(a.triples[i] == b.triples[i]);
}

TEST_CASE("syntax isolation: removing microdata leaves json-ld triples unchanged") {
    std::string jsonld_part =
        "<script type=\"application/ld+json\">"
        "{\"@context\":\"https://schema.org\",\"@type\":\"Dataset\",\"name\":\"T\"}</script>";
    std::string microdata_part =
        "<div itemscope itemtype=\"https://schema.org/Dataset\"><span itemprop=\"name\">M</span></div>";
    TripleGraph full = extract("<body>" + microdata_part + jsonld_part + "</body>");
    TripleGraph jsonld_only = extract("<body>" + jsonld_part + "</body>");

    std::vector<Triple> full_jsonld;
    for (const Triple& t : full.triples) {
        if (t.origin == Origin::JsonLd) full_jsonld.push_back(t);
    }
    std::vector<Triple> only_jsonld;
    for (const Triple& t : jsonld_only.triples) {
        if (t.origin == Origin::JsonLd) only_jsonld.push_back(t);
    }
    CHECK(full_jsonld == only_jsonld);
}

TEST_CASE("scheme tolerance: http and https Dataset types select identically") {
    std::string http_page =
        "<div itemscope itemtype=\"http://schema.org/Dataset\"><span itemprop=\"name\">X</span></div>";
    std::string https_page =
        "<div itemscope itemtype=\"https://schema.org/Dataset\"><span itemprop=\"name\">X</span></div>";
    CHECK(select_dataset_entities(extract(http_page)).size() == 1);
    CHECK(select_dataset_entities(extract(https_page)).size() == 1);
}

TEST_CASE("selection includes related entities (publisher organization)") {
    TripleGraph g = extract(
        "<script type=\"application/ld+json\">"
        "{\"@context\":\"https://schema.org\",\"@type\":\"Dataset\",\"name\":\"T\","
        "\"publisher\":{\"@type\":\"Organization\",\"name\":\"USGS\"}}</script>");
    auto entities = select_dataset_entities(g);
    REQUIRE(entities.size() == 1);
    bool has_org_name = false;
    for (const Triple& t : entities[0].triples) {
        if (!t.object_is_node && t.object == "USGS") has_org_name = true;
    }
    CHECK(has_org_name);
    // Closure matches the oracle.
    auto oracle = reachable_nodes(g, entities[0].root);
    for (const Triple& t : entities[0].triples) CHECK(oracle.count(t.subject) == 1);
    size_t oracle_triples = 0;
    for (const Triple& t : g.triples) {
        if (oracle.count(t.subject)) ++oracle_triples;
    }
    CHECK(entities[0].triples.size() == oracle_triples);
}

TEST_CASE("non-dataset types yield no entities") {
    TripleGraph g = extract(
        "<script type=\"application/ld+json\">"
        "{\"@context\":\"https://schema.org\",\"@type\":\"Article\",\"name\":\"T\"}</script>");
    CHECK(select_dataset_entities(g).empty());
}

TEST_CASE("three roots, one shared publisher node appears in both subgraphs") {
    // JSON-LD @graph with a shared node reference.
    TripleGraph g = extract(
        "<script type=\"application/ld+json\">"
        "{\"@context\":\"https://schema.org\",\"@graph\":["
        "{\"@type\":\"Dataset\",\"name\":\"d1\",\"publisher\":{\"@id\":\"https://org.example/p\"}},"
        "{\"@type\":\"Dataset\",\"name\":\"d2\",\"publisher\":{\"@id\":\"https://org.example/p\"}},"
        "{\"@type\":\"Dataset\",\"name\":\"d3\"},"
        "{\"@id\":\"https://org.example/p\",\"@type\":\"Organization\",\"name\":\"Shared\"}"
        "]}</script>");
    auto entities = select_dataset_entities(g);
    REQUIRE(entities.size() == 3);
    auto has_shared = [](const EntitySubgraph& e) {
        return std::any_of(e.triples.begin(), e.triples.end(), [](const Triple& t) {
            return !t.object_is_node && t.object == "Shared";
        });
    };
    CHECK(has_shared(entities[0]));
    CHECK(has_shared(entities[1]));
    CHECK(!has_shared(entities[2]));

    // Reachability closure equals the oracle for every root.
    for (const auto& entity : entities) {
        auto oracle = reachable_nodes(g, entity.root);
        size_t oracle_triples = 0;
        for (const Triple& t : g.triples) {
            if (oracle.count(t.subject)) ++oracle_triples;
        }
        CHECK(entity.triples.size() == oracle_triples);
    }
}

TEST_CASE("microdata itemref pulls referenced properties") {
    TripleGraph g = extract(
        "<div itemscope itemtype=\"https://schema.org/Dataset\" itemref=\"extra\" id=\"it\">"
        "<span itemprop=\"name\">N</span></div>"
        "<p id=\"extra\"><span itemprop=\"description\">D</span></p>");
    bool has_description = false;
    for (const Triple& t : g.triples) {
        if (t.predicate == "https://schema.org/description" && t.object == "D") has_description = true;
    }
    CHECK(has_description);
}

TEST_CASE("literal language tags come from lang attributes") {
    TripleGraph g = extract(
        "<html lang=\"es\"><body>"
        "<div itemscope itemtype=\"https://schema.org/Dataset\">"
        "<span itemprop=\"name\">Datos</span></div></body></html>");
    REQUIRE(g.triples.size() == 2);
    CHECK(g.triples[1].object_language == "es");
}

TEST_CASE("dcat json-ld context maps terms") {
    TripleGraph g = extract(
        "<script type=\"application/ld+json\">"
        "{\"@context\":\"https://www.w3.org/ns/dcat.jsonld\","
        "\"@type\":\"dcat:Dataset\",\"title\":\"T\",\"keyword\":[\"a\",\"b\"]}</script>");
    auto entities = select_dataset_entities(g);
    REQUIRE(entities.size() == 1);
    bool has_title = false;
    bool has_keyword = false;
    for (const Triple& t : g.triples) {
        if (t.predicate == "http://purl.org/dc/terms/title") has_title = true;
        if (t.predicate == "http://www.w3.org/ns/dcat#keyword") has_keyword = true;
    }
    CHECK(has_title);
    CHECK(has_keyword);
}

TEST_CASE("page signals") {
    auto doc = html::Document::parse(
        "<html lang=\"en-GB\"><head>"
        "<meta http-equiv=\"Content-Language\" content=\"en\">"
        "<meta http-equiv=\"Last-Modified\" content=\"2020-01-15\">"
        "</head><body><p>Visible   text</p><script>ignored()</script></body></html>");
    PageSignals s = collect_page_signals(doc, "https://example.com/");
    CHECK(s.html_lang == "en-GB");
    CHECK(s.content_language == "en");
    CHECK(s.page_modified_raw == "2020-01-15");
    CHECK(s.visible_text == "Visible text");
}
