#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hyperdyn/suites.hpp"

using namespace hyperdyn;

namespace {

std::string golden(const std::string& id) {
    std::ifstream in(std::string(HYPERDYN_GOLDEN_DIR) + "/" + id + ".csv", std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_SUITE("suites") {

TEST_CASE("every suite matches its golden table and passes") {
    for (const auto& id : suite_ids()) {
        CAPTURE(id);
        const auto rows = run_suite(id);
        CHECK_FALSE(rows.empty());
        for (const auto& row : rows) {
            CAPTURE(row.instance);
            CHECK(row.pass);
            CHECK(row.proposition == id);
        }
        CHECK(suite_csv(rows) == golden(id));
    }
}

TEST_CASE("the all suite aggregates with a pass count") {
    const auto rows = run_suite("all");
    REQUIRE_FALSE(rows.empty());
    const auto& total = rows.back();
    CHECK(total.proposition == "all");
    std::size_t count = 0;
    for (const auto& id : suite_ids()) {
        count += run_suite(id).size();
    }
    CHECK(rows.size() == count + 1);
    CHECK(total.relation_observed == std::to_string(count) + "/" + std::to_string(count) + " passed");
}

TEST_CASE("unknown suites are rejected") {
    CHECK_THROWS_AS(run_suite("prop-nonexistent"), InputError);
}

TEST_CASE("suite csv quoting") {
    const std::string csv = suite_csv({{"p", "a,b", "Holds", "Holds", "x", "y", true}});
    CHECK(csv == "proposition,instance,base_verdict,lifted_verdict,relation_expected,relation_observed,pass\n"
                 "p,\"a,b\",Holds,Holds,x,y,true\n");
}

TEST_CASE("the random corpus is pinned") {
    const auto corpus = random_corpus();
    REQUIRE(corpus.size() == 50);
    for (const auto& s : corpus) {
        CHECK(s.space.size() <= 7);
        CHECK(s.family.period() <= 3);
    }
}

}  // TEST_SUITE
