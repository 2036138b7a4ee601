#include "dsmeta/mapping.hpp"

#include <unordered_map>
#include <unordered_set>

#include "dsmeta/util.hpp"

namespace dsmeta {

namespace {

constexpr int kMaxNestingDepth = 4;

using SubjectIndex = std::unordered_map<std::string, std::vector<const Triple*>>;

RawValue to_raw_value(const Triple& triple, const SubjectIndex& index, int depth,
                      std::unordered_set<std::string>& visiting) {
    RawValue value;
    if (!triple.object_is_node) {
        value.kind = RawValue::Kind::Literal;
        value.text = triple.object;
        value.language = triple.object_language;
        return value;
    }

    value.kind = RawValue::Kind::Node;
    if (triple.object.rfind("_:", 0) != 0) value.text = triple.object;

    if (depth >= kMaxNestingDepth || visiting.count(triple.object)) return value;
    auto it = index.find(triple.object);
    if (it == index.end()) return value;

    visiting.insert(triple.object);
    for (const Triple* t : it->second) {
        if (t->predicate == vocab::kRdfType && t->object_is_node) {
            value.types.push_back(t->object);
            continue;
        }
        RawProperty prop;
        prop.predicate = t->predicate;
        prop.value = to_raw_value(*t, index, depth + 1, visiting);
        value.properties.push_back(std::move(prop));
    }
    visiting.erase(triple.object);
    return value;
}

// schema.org (http or https) and DCAT (also either scheme) namespace tests
// for the vocabulary-share classification.
bool is_schema_namespace(std::string_view iri) {
    return vocab::is_schema_iri(iri);
}

bool is_dcat_family_namespace(std::string_view iri) {
    return iri.rfind(vocab::kDcat, 0) == 0 || iri.rfind("https://www.w3.org/ns/dcat#", 0) == 0 ||
           iri.rfind(vocab::kDcTerms, 0) == 0 || iri.rfind("https://purl.org/dc/terms/", 0) == 0 ||
           iri.rfind(vocab::kDcElements, 0) == 0 ||
           iri.rfind("https://purl.org/dc/elements/1.1/", 0) == 0;
}

}  // namespace

const RawValue* RawValue::property(std::string_view local_name) const {
    for (const RawProperty& prop : properties) {
        std::string_view iri = prop.predicate;
        size_t cut = iri.find_last_of("/#");
        std::string_view local = cut == std::string_view::npos ? iri : iri.substr(cut + 1);
        if (local == local_name) return &prop.value;
    }
    return nullptr;
}

std::string RawValue::display_text() const {
    if (kind == Kind::Literal) return text;
    if (const RawValue* name = property("name")) return name->display_text();
    if (const RawValue* title = property("title")) return title->display_text();
    return text;  // node IRI, possibly empty
}

const std::vector<RawProperty>* RawDatasetRecord::values_for(std::string_view canonical) const {
    for (const CanonicalValues& cv : properties) {
        if (cv.canonical == canonical) return &cv.values;
    }
    return nullptr;
}

bool RawDatasetRecord::has_values(std::string_view canonical) const {
    const std::vector<RawProperty>* values = values_for(canonical);
    return values && !values->empty();
}

RawDatasetRecord map_entity_to_record(const EntitySubgraph& entity, const std::string& page_url,
                                      int entity_index, const PropertyMappingTable& table) {
    RawDatasetRecord record;
    record.page_url = page_url;
    record.entity_index = entity_index;

    SubjectIndex index;
    for (const Triple& t : entity.triples) {
        index[t.subject].push_back(&t);
    }

    bool saw_schema = false;
    bool saw_dcat = false;

    auto root_it = index.find(entity.root);
    std::vector<const Triple*> empty;
    const std::vector<const Triple*>& root_triples =
        root_it == index.end() ? empty : root_it->second;

    for (const Triple* t : root_triples) {
        if (t->predicate == vocab::kRdfType && t->object_is_node) {
            if (is_schema_namespace(t->object)) saw_schema = true;
            if (is_dcat_family_namespace(t->object)) saw_dcat = true;
        }
    }

    // Table order outer, document order inner.
    for (const PropertyMapping& mapping : table.mappings()) {
        CanonicalValues cv;
        cv.canonical = mapping.canonical;
        for (const std::string& iri : mapping.source_iris) {
            for (const Triple* t : root_triples) {
                if (t->predicate != iri) continue;
                std::unordered_set<std::string> visiting{entity.root};
                RawProperty prop;
                prop.predicate = t->predicate;
                prop.value = to_raw_value(*t, index, 0, visiting);
                cv.values.push_back(std::move(prop));
                if (is_schema_namespace(iri)) saw_schema = true;
                if (is_dcat_family_namespace(iri)) saw_dcat = true;
            }
        }
        record.properties.push_back(std::move(cv));
    }

    // Provider falls back to creator only when publisher/provider are absent.
    auto* provider_values = const_cast<std::vector<RawProperty>*>(record.values_for("provider"));
    if (provider_values && provider_values->empty()) {
        for (const Triple* t : root_triples) {
            if (!vocab::is_schema_term(t->predicate, "creator")) continue;
            std::unordered_set<std::string> visiting{entity.root};
            RawProperty prop;
            prop.predicate = t->predicate;
            prop.value = to_raw_value(*t, index, 0, visiting);
            provider_values->push_back(std::move(prop));
        }
    }

    // Unlisted predicates are retained as counts only.
    for (const Triple* t : root_triples) {
        if (t->predicate == vocab::kRdfType) continue;
        if (table.canonical_for(t->predicate)) continue;
        record.unmapped[t->predicate] += 1;
    }

    if (saw_schema && saw_dcat) record.source_vocabulary = SourceVocabulary::Mixed;
    else if (saw_dcat) record.source_vocabulary = SourceVocabulary::Dcat;
    else record.source_vocabulary = SourceVocabulary::SchemaOrg;

    return record;
}

}  // namespace dsmeta
