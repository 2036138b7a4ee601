#include <doctest.h>

#include "dsmeta/date.hpp"
#include "dsmeta/sha256.hpp"
#include "dsmeta/util.hpp"

using namespace dsmeta;

TEST_CASE("whitespace collapse and trim") {
    CHECK(collapse_whitespace("  a \t b\n c  ") == "a b c");
    CHECK(collapse_whitespace("") == "");
    CHECK(collapse_whitespace("   ") == "");
    CHECK(trim("  x  ") == "x");
}

TEST_CASE("case folding") {
    CHECK(case_fold("CEICdata.com") == "ceicdata.com");
    CHECK(case_fold("ÉCOLE") == "école");
    CHECK(case_fold("Ünïver") == "ünïver");
}

TEST_CASE("split") {
    auto parts = split("a,b,,c", ',');
    REQUIRE(parts.size() == 4);
    CHECK(parts[2] == "");
    CHECK(split_whitespace(" one\ttwo  three ") ==
          std::vector<std::string>{"one", "two", "three"});
}

TEST_CASE("format_double is locale independent") {
    CHECK(format_double(0.65, 4) == "0.6500");
    CHECK(format_double(2.0 / 3.0, 2) == "0.67");
}

TEST_CASE("calendar date basics") {
    CalendarDate d{2020, 3, 26};
    CHECK(d.to_iso() == "2020-03-26");
    CHECK(CalendarDate::from_iso("2020-03-26") == d);
    CHECK(!CalendarDate::from_iso("2019-02-29").has_value());
    CHECK(CalendarDate::from_iso("2020-02-29").has_value());
    CHECK(CalendarDate{2020, 1, 2} > CalendarDate{2019, 12, 31});
    // 1970-01-01 epoch
    CHECK(CalendarDate{1970, 1, 1}.to_days() == 0);
    CHECK(CalendarDate{1970, 1, 2}.to_days() == 1);
    CHECK(CalendarDate{2020, 3, 26}.to_days() - CalendarDate{2019, 3, 26}.to_days() == 366);
}

TEST_CASE("sha256 known vector") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
