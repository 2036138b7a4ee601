#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dsmeta {

struct Url {
    std::string scheme;  // lowercase
    std::string host;    // lowercase
    std::string port;
    std::string path;
    std::string query;     // without '?'
    std::string fragment;  // without '#'

    bool is_absolute() const { return !scheme.empty() && !host.empty(); }
    std::string to_string() const;

    // Host labels, e.g. "www.data.gov" -> {www, data, gov}.
    std::vector<std::string> host_labels() const;
};

std::optional<Url> parse_url(std::string_view raw);

// Resolves a possibly-relative reference against an absolute base
// (RFC 3986 section 5). Returns the reference unchanged when it is already
// absolute; empty optional when resolution is impossible.
std::optional<std::string> resolve_reference(const Url& base, std::string_view reference);

bool looks_like_absolute_iri(std::string_view s);

}  // namespace dsmeta
