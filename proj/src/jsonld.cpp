#include <json.hpp>

#include <map>
#include <string>

#include "dsmeta/extract.hpp"
#include "dsmeta/util.hpp"

namespace dsmeta::detail {

namespace {

using json = nlohmann::ordered_json;

struct TermDef {
    std::string iri;
    bool id_type = false;  // "@type": "@id"
};

struct Context {
    std::string vocabulary;
    std::string language;
    std::map<std::string, TermDef> terms;
    std::map<std::string, std::string> prefixes;
};

bool is_known_schema_context(std::string_view url) {
    std::string u = to_lower_ascii(url);
    if (u.rfind("http://", 0) == 0) u.erase(0, 7);
    else if (u.rfind("https://", 0) == 0) u.erase(0, 8);
    if (u.rfind("www.", 0) == 0) u.erase(0, 4);
    return u == "schema.org" || u == "schema.org/" || u == "schema.org/docs/jsonldcontext.json" ||
           u == "schema.org/docs/jsonldcontext.jsonld";
}

bool is_known_dcat_context(std::string_view url) {
    std::string u = to_lower_ascii(url);
    if (u.rfind("http://", 0) == 0) u.erase(0, 7);
    else if (u.rfind("https://", 0) == 0) u.erase(0, 8);
    return u == "www.w3.org/ns/dcat" || u == "www.w3.org/ns/dcat.jsonld" ||
           u == "www.w3.org/ns/dcat2.jsonld" || u == "www.w3.org/ns/dcat#";
}

void apply_schema_context(Context& ctx) {
    // The published schema.org context maps terms into the http:// namespace.
    ctx.vocabulary = std::string(vocab::kSchemaHttp);
    ctx.prefixes["schema"] = std::string(vocab::kSchemaHttp);
}

void apply_dcat_context(Context& ctx) {
    ctx.prefixes["dcat"] = std::string(vocab::kDcat);
    ctx.prefixes["dct"] = std::string(vocab::kDcTerms);
    ctx.prefixes["dcterms"] = std::string(vocab::kDcTerms);
    ctx.prefixes["foaf"] = "http://xmlns.com/foaf/0.1/";
    ctx.vocabulary = std::string(vocab::kDcat);
    auto dct_term = [&ctx](const char* term, const char* iri_suffix, bool id_type = false) {
        ctx.terms[term] = {std::string(vocab::kDcTerms) + iri_suffix, id_type};
    };
    auto dcat_term = [&ctx](const char* term, const char* iri_suffix, bool id_type = false) {
        ctx.terms[term] = {std::string(vocab::kDcat) + iri_suffix, id_type};
    };
    dct_term("title", "title");
    dct_term("description", "description");
    dct_term("issued", "issued");
    dct_term("modified", "modified");
    dct_term("publisher", "publisher");
    dct_term("license", "license", true);
    dct_term("identifier", "identifier");
    dct_term("language", "language");
    dct_term("spatial", "spatial");
    dct_term("temporal", "temporal");
    dcat_term("keyword", "keyword");
    dcat_term("theme", "theme", true);
    dcat_term("distribution", "distribution");
    dcat_term("accessURL", "accessURL", true);
    dcat_term("downloadURL", "downloadURL", true);
    dcat_term("landingPage", "landingPage", true);
    dcat_term("mediaType", "mediaType");
    dcat_term("byteSize", "byteSize");
}

class JsonLdEmitter {
public:
    JsonLdEmitter(GraphBuilder& builder) : builder_(builder) {}

    void process_block(const json& doc) {
        Context ctx;
        if (doc.is_array()) {
            for (const auto& item : doc) {
                if (item.is_object()) process_top(item, ctx);
            }
            return;
        }
        if (doc.is_object()) {
            process_top(doc, ctx);
            return;
        }
        builder_.diags().warn("extract", builder_.page_url(),
                              "json-ld block is neither an object nor an array; skipped");
    }

private:
    void process_top(const json& obj, Context ctx) {
        merge_context(obj, ctx);
        if (obj.contains("@graph") && obj["@graph"].is_array()) {
            for (const auto& node : obj["@graph"]) {
                if (node.is_object()) process_node(node, ctx);
            }
            // A top-level object that carries @graph may still be a node itself;
            // dataset markup in the wild does not do this, so we stop here.
            return;
        }
        process_node(obj, ctx);
    }

    void merge_context(const json& obj, Context& ctx) {
        auto it = obj.find("@context");
        if (it == obj.end()) return;
        apply_context_value(*it, ctx);
    }

    void apply_context_value(const json& value, Context& ctx) {
        if (value.is_array()) {
            for (const auto& part : value) apply_context_value(part, ctx);
            return;
        }
        if (value.is_string()) {
            std::string url = value.get<std::string>();
            if (is_known_schema_context(url)) {
                apply_schema_context(ctx);
            } else if (is_known_dcat_context(url)) {
                apply_dcat_context(ctx);
            } else {
                builder_.diags().warn("extract", builder_.page_url(),
                                      "unsupported remote json-ld context \"" + url +
                                          "\"; remote fetching is disabled");
            }
            return;
        }
        if (!value.is_object()) return;
        for (const auto& [key, def] : value.items()) {
            if (key == "@vocab" && def.is_string()) {
                ctx.vocabulary = def.get<std::string>();
            } else if (key == "@language" && def.is_string()) {
                ctx.language = def.get<std::string>();
            } else if (key == "@base") {
                // Base overrides are ignored; IRIs resolve against the page URL.
            } else if (def.is_string()) {
                std::string iri = def.get<std::string>();
                if (!iri.empty() && (iri.back() == '/' || iri.back() == '#')) {
                    ctx.prefixes[key] = iri;
                } else {
                    ctx.terms[key] = {iri, false};
                }
            } else if (def.is_object()) {
                TermDef term;
                if (def.contains("@id") && def["@id"].is_string()) {
                    term.iri = def["@id"].get<std::string>();
                }
                if (def.contains("@type") && def["@type"].is_string() &&
                    def["@type"].get<std::string>() == "@id") {
                    term.id_type = true;
                }
                if (!term.iri.empty()) ctx.terms[key] = term;
            }
        }
    }

    // Expands a key or type token to an absolute IRI; empty when unknown.
    std::string expand(const std::string& token, const Context& ctx, bool* id_type = nullptr) const {
        if (token.empty() || token[0] == '@') return "";
        auto term = ctx.terms.find(token);
        if (term != ctx.terms.end()) {
            if (id_type) *id_type = term->second.id_type;
            std::string iri = term->second.iri;
            size_t colon = iri.find(':');
            if (colon != std::string::npos) {
                auto prefix = ctx.prefixes.find(iri.substr(0, colon));
                if (prefix != ctx.prefixes.end()) return prefix->second + iri.substr(colon + 1);
            }
            return iri;
        }
        size_t colon = token.find(':');
        if (colon != std::string::npos) {
            auto prefix = ctx.prefixes.find(token.substr(0, colon));
            if (prefix != ctx.prefixes.end()) return prefix->second + token.substr(colon + 1);
            if (looks_like_absolute_iri(token)) return token;
            return "";
        }
        if (!ctx.vocabulary.empty()) return ctx.vocabulary + token;
        return "";
    }

    std::string node_id(const json& obj, const Context& ctx) {
        auto it = obj.find("@id");
        if (it != obj.end() && it->is_string()) {
            std::string expanded = reference_id(it->get<std::string>(), ctx);
            if (!expanded.empty()) return expanded;
        }
        return builder_.fresh_blank();
    }

    // Expands an @id value: blank labels are remapped per block, CURIEs use
    // context prefixes, everything else resolves against the page URL.
    std::string reference_id(const std::string& value, const Context& ctx) {
        if (value.rfind("_:", 0) == 0) {
            auto found = blank_labels_.find(value);
            if (found != blank_labels_.end()) return found->second;
            std::string fresh = builder_.fresh_blank();
            blank_labels_[value] = fresh;
            return fresh;
        }
        size_t colon = value.find(':');
        if (colon != std::string::npos) {
            auto prefix = ctx.prefixes.find(value.substr(0, colon));
            if (prefix != ctx.prefixes.end()) return prefix->second + value.substr(colon + 1);
        }
        return builder_.resolve_iri(value);
    }

    std::string process_node(const json& obj, Context ctx) {
        merge_context(obj, ctx);
        std::string subject = node_id(obj, ctx);

        if (auto it = obj.find("@type"); it != obj.end()) {
            auto emit_type = [&](const json& t) {
                if (!t.is_string()) return;
                std::string iri = expand(t.get<std::string>(), ctx);
                if (iri.empty() && looks_like_absolute_iri(t.get<std::string>())) {
                    iri = t.get<std::string>();
                }
                if (!iri.empty()) {
                    builder_.add_node_triple(subject, std::string(vocab::kRdfType), iri,
                                             Origin::JsonLd);
                }
            };
            if (it->is_array()) {
                for (const auto& t : *it) emit_type(t);
            } else {
                emit_type(*it);
            }
        }

        for (const auto& [key, value] : obj.items()) {
            if (!key.empty() && key[0] == '@') continue;
            bool id_type = false;
            std::string predicate = expand(key, ctx, &id_type);
            if (predicate.empty()) {
                if (looks_like_absolute_iri(key)) {
                    predicate = key;
                } else {
                    builder_.diags().info("extract", builder_.page_url(),
                                          "json-ld term \"" + key + "\" has no vocabulary; dropped");
                    continue;
                }
            }
            emit_values(subject, predicate, value, ctx, id_type);
        }
        return subject;
    }

    void emit_values(const std::string& subject, const std::string& predicate, const json& value,
                     const Context& ctx, bool id_type) {
        if (value.is_null()) return;
        if (value.is_array()) {
            for (const auto& item : value) emit_values(subject, predicate, item, ctx, id_type);
            return;
        }
        if (value.is_object()) {
            if (auto it = value.find("@list"); it != value.end() && it->is_array()) {
                // Lists are flattened to repeated values.
                for (const auto& item : *it) emit_values(subject, predicate, item, ctx, id_type);
                return;
            }
            if (auto it = value.find("@value"); it != value.end()) {
                std::string text = it->is_string() ? it->get<std::string>() : it->dump();
                std::string language = ctx.language;
                std::string datatype;
                if (auto lang = value.find("@language"); lang != value.end() && lang->is_string()) {
                    language = lang->get<std::string>();
                }
                if (auto dt = value.find("@type"); dt != value.end() && dt->is_string()) {
                    datatype = expand(dt->get<std::string>(), ctx);
                    if (datatype.empty()) datatype = dt->get<std::string>();
                }
                builder_.add_literal_triple(subject, predicate, text, language, datatype,
                                            Origin::JsonLd);
                return;
            }
            if (value.size() == 1 && value.contains("@id") && value["@id"].is_string()) {
                std::string target = reference_id(value["@id"].get<std::string>(), ctx);
                builder_.add_node_triple(subject, predicate, target, Origin::JsonLd);
                return;
            }
            Context child_ctx = ctx;
            std::string child = process_node(value, child_ctx);
            builder_.add_node_triple(subject, predicate, child, Origin::JsonLd);
            return;
        }
        if (value.is_string()) {
            std::string text = value.get<std::string>();
            if (id_type) {
                builder_.add_node_triple(subject, predicate, reference_id(text, ctx), Origin::JsonLd);
            } else {
                builder_.add_literal_triple(subject, predicate, text, ctx.language, "",
                                            Origin::JsonLd);
            }
            return;
        }
        if (value.is_boolean()) {
            builder_.add_literal_triple(subject, predicate, value.get<bool>() ? "true" : "false", "",
                                        std::string(vocab::kXsd) + "boolean", Origin::JsonLd);
            return;
        }
        if (value.is_number_integer() || value.is_number_unsigned()) {
            builder_.add_literal_triple(subject, predicate, value.dump(), "",
                                        std::string(vocab::kXsd) + "integer", Origin::JsonLd);
            return;
        }
        if (value.is_number_float()) {
            builder_.add_literal_triple(subject, predicate, value.dump(), "",
                                        std::string(vocab::kXsd) + "double", Origin::JsonLd);
            return;
        }
    }

    GraphBuilder& builder_;
    std::map<std::string, std::string> blank_labels_;
};

bool is_jsonld_script(const html::Node& node) {
    if (node.name != "script") return false;
    const std::string* type = node.attr("type");
    if (!type) return false;
    std::string t = to_lower_ascii(*type);
    size_t semi = t.find(';');
    if (semi != std::string::npos) t = std::string(trim(t.substr(0, semi)));
    else t = std::string(trim(t));
    return t == "application/ld+json";
}

}  // namespace

void extract_jsonld(const html::Document& doc, GraphBuilder& builder) {
    doc.for_each_element([&](int id, const html::Node& node) {
        if (!is_jsonld_script(node)) return;
        std::string body;
        for (int child : node.children) {
            if (doc.node(child).type == html::Node::Type::Text) body += doc.node(child).text;
        }
        if (trim(body).empty()) return;
        json parsed = json::parse(body, nullptr, false);
        if (parsed.is_discarded()) {
            builder.diags().warn("extract", builder.page_url(),
                                 "malformed json-ld block skipped");
            return;
        }
        JsonLdEmitter emitter(builder);
        emitter.process_block(parsed);
        (void)id;
    });
}

}  // namespace dsmeta::detail
