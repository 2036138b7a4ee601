#pragma once

#include <map>
#include <string>
#include <vector>

#include "dsmeta/config.hpp"
#include "dsmeta/record.hpp"
#include "dsmeta/triples.hpp"

namespace dsmeta {

struct RawProperty;

// One extracted value: a literal or a nested entity (with its own properties,
// resolved up to a fixed depth).
struct RawValue {
    enum class Kind { Literal, Node };

    Kind kind = Kind::Literal;
    std::string text;      // literal text, or the node's IRI (empty for blanks)
    std::string language;  // literal language tag
    std::vector<std::string> types;  // node type IRIs
    std::vector<RawProperty> properties;

    // First literal/IRI text of the named schema.org-or-other property.
    const RawValue* property(std::string_view local_name) const;
    // Flat text view of this value (literal text, node IRI, or its name).
    std::string display_text() const;
};

struct RawProperty {
    std::string predicate;  // absolute IRI
    RawValue value;
};

// Values of one canonical property, tagged with the source predicate that
// produced each (table order first, then document order).
struct CanonicalValues {
    std::string canonical;
    std::vector<RawProperty> values;
};

struct RawDatasetRecord {
    std::string page_url;
    int entity_index = 0;
    SourceVocabulary source_vocabulary = SourceVocabulary::SchemaOrg;
    std::vector<CanonicalValues> properties;
    std::map<std::string, int> unmapped;  // predicate IRI -> occurrence count

    const std::vector<RawProperty>* values_for(std::string_view canonical) const;
    bool has_values(std::string_view canonical) const;
};

RawDatasetRecord map_entity_to_record(const EntitySubgraph& entity, const std::string& page_url,
                                      int entity_index, const PropertyMappingTable& table);

}  // namespace dsmeta
