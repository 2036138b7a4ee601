#include <doctest.h>

#include "dsmeta/url.hpp"

using namespace dsmeta;

TEST_CASE("absolute URL parsing") {
    auto url = parse_url("https://Catalog.Data.gov/dataset/x?q=1#frag");
    REQUIRE(url.has_value());
    CHECK(url->scheme == "https");
    CHECK(url->host == "catalog.data.gov");
    CHECK(url->path == "/dataset/x");
    CHECK(url->query == "q=1");
    CHECK(url->fragment == "frag");
    CHECK(url->to_string() == "https://catalog.data.gov/dataset/x?q=1#frag");
}

TEST_CASE("invalid URLs rejected") {
    CHECK(!parse_url("not a url").has_value());
    CHECK(!parse_url("/relative/path").has_value());
    CHECK(!parse_url("").has_value());
    CHECK(!parse_url("http://").has_value());
}

TEST_CASE("relative reference resolution") {
    auto base = parse_url("https://example.com/data/page.html");
    REQUIRE(base.has_value());
    CHECK(resolve_reference(*base, "file.csv") == "https://example.com/data/file.csv");
    CHECK(resolve_reference(*base, "/abs/file.csv") == "https://example.com/abs/file.csv");
    CHECK(resolve_reference(*base, "../up.csv") == "https://example.com/up.csv");
    CHECK(resolve_reference(*base, "//other.org/x") == "https://other.org/x");
    CHECK(resolve_reference(*base, "https://doi.org/10.5061/dryad.abc12") ==
          "https://doi.org/10.5061/dryad.abc12");
    CHECK(resolve_reference(*base, "#frag") == "https://example.com/data/page.html#frag");
}

TEST_CASE("host labels") {
    auto url = parse_url("https://www.data.gouv.fr/fr/datasets/x");
    REQUIRE(url.has_value());
    CHECK(url->host_labels() == std::vector<std::string>{"www", "data", "gouv", "fr"});
}
