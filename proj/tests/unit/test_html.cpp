#include <doctest.h>

#include "dsmeta/html.hpp"

using namespace dsmeta;

TEST_CASE("basic tree construction") {
    auto doc = html::Document::parse("<html><body><div id='a'>Hello <b>world</b></div></body></html>");
    int div = doc.element_by_id("a");
    REQUIRE(div >= 0);
    CHECK(doc.node(div).name == "div");
    CHECK(doc.text_content(div) == "Hello world");
}

TEST_CASE("attributes, quoting, entities") {
    auto doc = html::Document::parse(
        "<div data-x=\"a&amp;b\" data-y='q' checked empty=>text &lt;&#65;&gt;</div>");
    int div = -1;
    doc.for_each_element([&](int id, const html::Node& n) {
        if (n.name == "div") div = id;
    });
    REQUIRE(div >= 0);
    const html::Node& n = doc.node(div);
    CHECK(*n.attr("data-x") == "a&b");
    CHECK(*n.attr("data-y") == "q");
    CHECK(n.has_attr("checked"));
    CHECK(doc.text_content(div) == "text <A>");
}

TEST_CASE("script content is raw text") {
    auto doc = html::Document::parse(
        "<script type=\"application/ld+json\">{\"a\": \"x < y & z\"}</script>");
    int script = -1;
    doc.for_each_element([&](int id, const html::Node& n) {
        if (n.name == "script") script = id;
    });
    REQUIRE(script >= 0);
    REQUIRE(doc.node(script).children.size() == 1);
    CHECK(doc.node(doc.node(script).children[0]).text == "{\"a\": \"x < y & z\"}");
}

TEST_CASE("tolerates unclosed and misnested tags") {
    auto doc = html::Document::parse("<ul><li>one<li>two</ul><p>para<div>block</div>");
    int count_li = 0;
    doc.for_each_element([&](int, const html::Node& n) {
        if (n.name == "li") ++count_li;
    });
    CHECK(count_li == 2);
    // second li must not be nested inside the first
    int first_li = -1;
    doc.for_each_element([&](int id, const html::Node& n) {
        if (n.name == "li" && first_li < 0) first_li = id;
    });
    CHECK(doc.text_content(first_li) == "one");
}

TEST_CASE("comments and doctype are skipped") {
    auto doc = html::Document::parse("<!DOCTYPE html><!-- note --><p>x</p>");
    CHECK(doc.text_content(0) == "x");
}

TEST_CASE("lang attribute inheritance") {
    auto doc = html::Document::parse("<html lang='en-US'><body><p id='p'>x</p></body></html>");
    int p = doc.element_by_id("p");
    REQUIRE(p >= 0);
    CHECK(doc.language_of(p) == "en-US");
}

TEST_CASE("empty and garbage input") {
    auto doc = html::Document::parse("");
    CHECK(doc.size() == 1);
    auto doc2 = html::Document::parse("<<<>>> & < not a tag");
    CHECK(doc2.size() >= 1);
}
