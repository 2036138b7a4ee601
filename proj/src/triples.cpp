#include "dsmeta/triples.hpp"

namespace dsmeta {

std::string_view origin_name(Origin origin) {
    switch (origin) {
        case Origin::JsonLd: return "jsonld";
        case Origin::Microdata: return "microdata";
        case Origin::Rdfa: return "rdfa";
    }
    return "unknown";
}

namespace vocab {

bool is_schema_iri(std::string_view iri) {
    return iri.rfind(kSchemaHttp, 0) == 0 || iri.rfind(kSchemaHttps, 0) == 0;
}

std::string_view schema_local_name(std::string_view iri) {
    if (iri.rfind(kSchemaHttp, 0) == 0) return iri.substr(kSchemaHttp.size());
    if (iri.rfind(kSchemaHttps, 0) == 0) return iri.substr(kSchemaHttps.size());
    return {};
}

bool is_schema_term(std::string_view iri, std::string_view term) {
    return schema_local_name(iri) == term;
}

bool is_dataset_class(std::string_view iri) {
    if (is_schema_term(iri, "Dataset")) return true;
    return iri == "http://www.w3.org/ns/dcat#Dataset" || iri == "https://www.w3.org/ns/dcat#Dataset";
}

}  // namespace vocab

}  // namespace dsmeta
