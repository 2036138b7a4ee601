#include <map>
#include <string>
#include <vector>

#include "dsmeta/extract.hpp"
#include "dsmeta/util.hpp"

namespace dsmeta::detail {

namespace {

// Subset of the RDFa initial context, enough for real-world dataset markup.
const std::map<std::string, std::string>& initial_prefixes() {
    static const std::map<std::string, std::string> map = {
        {"schema", "http://schema.org/"},
        {"dc", "http://purl.org/dc/terms/"},
        {"dcterms", "http://purl.org/dc/terms/"},
        {"dct", "http://purl.org/dc/terms/"},
        {"dc11", "http://purl.org/dc/elements/1.1/"},
        {"dcat", "http://www.w3.org/ns/dcat#"},
        {"foaf", "http://xmlns.com/foaf/0.1/"},
        {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
        {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
        {"owl", "http://www.w3.org/2002/07/owl#"},
        {"og", "http://ogp.me/ns#"},
        {"xsd", "http://www.w3.org/2001/XMLSchema#"},
        {"skos", "http://www.w3.org/2004/02/skos/core#"},
        {"prov", "http://www.w3.org/ns/prov#"},
    };
    return map;
}

struct EvalContext {
    std::string vocabulary;
    std::map<std::string, std::string> prefixes = initial_prefixes();
    std::string subject;
};

class RdfaEmitter {
public:
    RdfaEmitter(const html::Document& doc, GraphBuilder& builder) : doc_(doc), builder_(builder) {}

    void run() {
        EvalContext ctx;
        ctx.subject = builder_.page_url();
        for (int child : doc_.root().children) {
            if (doc_.node(child).type == html::Node::Type::Element) walk(child, ctx);
        }
    }

private:
    // Expands an RDFa term: absolute IRI, CURIE, or bare term against vocab.
    std::string expand(const std::string& token, const EvalContext& ctx) const {
        if (token.empty()) return "";
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

    void walk(int element, EvalContext ctx) {
        const html::Node& node = doc_.node(element);

        if (const std::string* v = node.attr("vocab"); v && !trim(*v).empty()) {
            ctx.vocabulary = std::string(trim(*v));
        }
        if (const std::string* p = node.attr("prefix")) {
            std::vector<std::string> tokens = split_whitespace(*p);
            for (size_t i = 0; i + 1 < tokens.size(); i += 2) {
                std::string name = tokens[i];
                if (!name.empty() && name.back() == ':') name.pop_back();
                if (!name.empty()) ctx.prefixes[name] = tokens[i + 1];
            }
        }

        const std::string* property = node.attr("property");
        const std::string* typeof_attr = node.attr("typeof");
        const std::string* resource = node.attr("resource");

        if (property && !typeof_attr) {
            std::string object_node;
            bool is_node = false;
            std::string literal;
            std::string language;
            bool descend_with_same_subject = true;

            if (resource && !trim(*resource).empty()) {
                object_node = builder_.resolve_iri(*resource);
                is_node = true;
            } else if (const std::string* content = node.attr("content")) {
                literal = *content;
                language = doc_.language_of(element);
            } else if (const std::string* href = node.attr("href")) {
                object_node = builder_.resolve_iri(*href);
                is_node = true;
            } else if (const std::string* src = node.attr("src")) {
                object_node = builder_.resolve_iri(*src);
                is_node = true;
            } else if (node.name == "time" && node.attr("datetime")) {
                literal = *node.attr("datetime");
            } else {
                literal = collapse_whitespace(doc_.text_content(element));
                language = doc_.language_of(element);
            }

            for (const std::string& token : split_whitespace(*property)) {
                std::string predicate = expand(token, ctx);
                if (predicate.empty()) continue;
                if (is_node) {
                    builder_.add_node_triple(ctx.subject, predicate, object_node, Origin::Rdfa);
                } else {
                    builder_.add_literal_triple(ctx.subject, predicate, literal, language, "",
                                                Origin::Rdfa);
                }
            }
            if (descend_with_same_subject) descend(element, ctx);
            return;
        }

        if (typeof_attr) {
            // New node; with property present it also hangs off the parent subject.
            std::string new_subject;
            if (resource && !trim(*resource).empty()) {
                new_subject = builder_.resolve_iri(*resource);
            } else if (const std::string* href = node.attr("href")) {
                new_subject = builder_.resolve_iri(*href);
            } else {
                new_subject = builder_.fresh_blank();
            }
            for (const std::string& token : split_whitespace(*typeof_attr)) {
                std::string type_iri = expand(token, ctx);
                if (!type_iri.empty()) {
                    builder_.add_node_triple(new_subject, std::string(vocab::kRdfType), type_iri,
                                             Origin::Rdfa);
                }
            }
            if (property) {
                for (const std::string& token : split_whitespace(*property)) {
                    std::string predicate = expand(token, ctx);
                    if (!predicate.empty()) {
                        builder_.add_node_triple(ctx.subject, predicate, new_subject, Origin::Rdfa);
                    }
                }
            }
            ctx.subject = new_subject;
            descend(element, ctx);
            return;
        }

        if (resource && !trim(*resource).empty()) {
            // resource without property re-anchors the subject for children.
            ctx.subject = builder_.resolve_iri(*resource);
        }
        descend(element, ctx);
    }

    void descend(int element, const EvalContext& ctx) {
        for (int child : doc_.node(element).children) {
            if (doc_.node(child).type == html::Node::Type::Element) walk(child, ctx);
        }
    }

    const html::Document& doc_;
    GraphBuilder& builder_;
};

}  // namespace

void extract_rdfa(const html::Document& doc, GraphBuilder& builder) {
    RdfaEmitter(doc, builder).run();
}

}  // namespace dsmeta::detail
