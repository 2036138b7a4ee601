#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dsmeta {

enum class Origin { JsonLd, Microdata, Rdfa };

std::string_view origin_name(Origin origin);

struct Triple {
    std::string subject;    // node id: absolute IRI or _:b<N>
    std::string predicate;  // absolute IRI
    bool object_is_node = false;
    std::string object;  // node id, or literal text
    std::string object_language;  // BCP-47 tag for literals
    std::string object_datatype;  // datatype IRI for literals
    Origin origin = Origin::JsonLd;

    bool operator==(const Triple&) const = default;
};

struct TripleGraph {
    std::string page_url;
    std::vector<Triple> triples;
    int blank_counter = 0;
};

// One dataset entity: a Dataset-typed root plus everything reachable from it.
struct EntitySubgraph {
    std::string root;
    std::vector<Triple> triples;
};

namespace vocab {

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kSchemaHttp = "http://schema.org/";
inline constexpr std::string_view kSchemaHttps = "https://schema.org/";
inline constexpr std::string_view kDcat = "http://www.w3.org/ns/dcat#";
inline constexpr std::string_view kDcTerms = "http://purl.org/dc/terms/";
inline constexpr std::string_view kDcElements = "http://purl.org/dc/elements/1.1/";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

// True when iri is the schema.org term, accepting both URI schemes.
bool is_schema_term(std::string_view iri, std::string_view term);

// True for http(s)://schema.org/... IRIs.
bool is_schema_iri(std::string_view iri);

// Local name of a schema.org IRI, empty when not schema.org.
std::string_view schema_local_name(std::string_view iri);

bool is_dataset_class(std::string_view iri);

}  // namespace vocab

}  // namespace dsmeta
