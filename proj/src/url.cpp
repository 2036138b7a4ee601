#include "dsmeta/url.hpp"

#include "dsmeta/util.hpp"

namespace dsmeta {

namespace {

bool is_scheme_char(char c, bool first) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return true;
    if (first) return false;
    return (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
}

// RFC 3986 5.2.4 remove_dot_segments.
std::string remove_dot_segments(std::string_view path) {
    std::string input(path);
    std::string output;
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0) {
            input.erase(0, 3);
        } else if (input.rfind("./", 0) == 0) {
            input.erase(0, 2);
        } else if (input.rfind("/./", 0) == 0) {
            input.erase(0, 2);
        } else if (input == "/.") {
            input = "/";
        } else if (input.rfind("/../", 0) == 0) {
            input.erase(0, 3);
            size_t pos = output.find_last_of('/');
            output.erase(pos == std::string::npos ? 0 : pos);
        } else if (input == "/..") {
            input = "/";
            size_t pos = output.find_last_of('/');
            output.erase(pos == std::string::npos ? 0 : pos);
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            size_t start = input[0] == '/' ? 1 : 0;
            size_t pos = input.find('/', start);
            if (pos == std::string::npos) {
                output += input;
                input.clear();
            } else {
                output += input.substr(0, pos);
                input.erase(0, pos);
            }
        }
    }
    return output;
}

std::string merge_paths(const Url& base, std::string_view ref_path) {
    if (!base.host.empty() && base.path.empty()) {
        return "/" + std::string(ref_path);
    }
    size_t pos = base.path.find_last_of('/');
    if (pos == std::string::npos) return std::string(ref_path);
    return base.path.substr(0, pos + 1) + std::string(ref_path);
}

}  // namespace

std::string Url::to_string() const {
    std::string out = scheme + "://" + host;
    if (!port.empty()) out += ":" + port;
    out += path;
    if (!query.empty()) out += "?" + query;
    if (!fragment.empty()) out += "#" + fragment;
    return out;
}

std::vector<std::string> Url::host_labels() const {
    return split(host, '.');
}

std::optional<Url> parse_url(std::string_view raw) {
    std::string_view s = trim(raw);
    if (s.empty()) return std::nullopt;

    Url url;
    size_t colon = s.find(':');
    if (colon == std::string_view::npos || colon == 0) return std::nullopt;
    for (size_t i = 0; i < colon; ++i) {
        if (!is_scheme_char(s[i], i == 0)) return std::nullopt;
    }
    url.scheme = to_lower_ascii(s.substr(0, colon));
    s.remove_prefix(colon + 1);

    if (s.rfind("//", 0) != 0) return std::nullopt;
    s.remove_prefix(2);

    size_t authority_end = s.find_first_of("/?#");
    std::string_view authority = s.substr(0, authority_end);
    s = authority_end == std::string_view::npos ? std::string_view{} : s.substr(authority_end);

    // Drop userinfo if present.
    size_t at = authority.find('@');
    if (at != std::string_view::npos) authority = authority.substr(at + 1);
    size_t port_sep = authority.rfind(':');
    if (port_sep != std::string_view::npos && authority.find(']') == std::string_view::npos) {
        url.port = std::string(authority.substr(port_sep + 1));
        authority = authority.substr(0, port_sep);
    }
    if (authority.empty()) return std::nullopt;
    url.host = to_lower_ascii(authority);
    if (!url.host.empty() && url.host.back() == '.') url.host.pop_back();

    size_t frag = s.find('#');
    if (frag != std::string_view::npos) {
        url.fragment = std::string(s.substr(frag + 1));
        s = s.substr(0, frag);
    }
    size_t q = s.find('?');
    if (q != std::string_view::npos) {
        url.query = std::string(s.substr(q + 1));
        s = s.substr(0, q);
    }
    url.path = remove_dot_segments(s);
    return url;
}

bool looks_like_absolute_iri(std::string_view s) {
    size_t colon = s.find(':');
    if (colon == std::string_view::npos || colon == 0) return false;
    for (size_t i = 0; i < colon; ++i) {
        if (!is_scheme_char(s[i], i == 0)) return false;
    }
    return true;
}

std::optional<std::string> resolve_reference(const Url& base, std::string_view reference) {
    std::string_view ref = trim(reference);
    if (ref.empty()) return base.to_string();
    if (looks_like_absolute_iri(ref)) {
        // Already absolute (possibly a non-http IRI like urn: or doi:).
        if (auto parsed = parse_url(ref)) return parsed->to_string();
        return std::string(ref);
    }
    if (!base.is_absolute()) return std::nullopt;

    Url out;
    out.scheme = base.scheme;
    if (ref.rfind("//", 0) == 0) {
        // Network-path reference.
        if (auto parsed = parse_url(base.scheme + ":" + std::string(ref))) return parsed->to_string();
        return std::nullopt;
    }
    out.host = base.host;
    out.port = base.port;

    size_t frag = ref.find('#');
    if (frag != std::string_view::npos) {
        out.fragment = std::string(ref.substr(frag + 1));
        ref = ref.substr(0, frag);
    }
    size_t q = ref.find('?');
    if (q != std::string_view::npos) {
        out.query = std::string(ref.substr(q + 1));
        ref = ref.substr(0, q);
    }

    if (ref.empty()) {
        out.path = base.path;
        if (out.query.empty() && frag == std::string_view::npos) out.query = base.query;
        else if (q == std::string_view::npos) out.query = base.query;
    } else if (ref[0] == '/') {
        out.path = remove_dot_segments(ref);
    } else {
        out.path = remove_dot_segments(merge_paths(base, ref));
    }
    return out.to_string();
}

}  // namespace dsmeta
