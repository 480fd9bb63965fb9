#include "doctest.h"

#include "deldyn.h"

#include <string>
#include <vector>

namespace {

// Takes ownership of the C string.
std::string take(char* s) {
    REQUIRE(s != nullptr);
    std::string out(s);
    deldyn_string_free(s);
    return out;
}

struct Handle {
    deldyn_diagram* d = nullptr;
    ~Handle() { deldyn_diagram_free(d); }
};

}  // namespace

TEST_CASE("capi: parse, serialize, classify") {
    const char* text = R"x({
      "components": ["B3", "B3"],
      "generators": ["(1 4)(2 5)(3 6)"],
      "mu": [1]
    })x";
    Handle h;
    REQUIRE(deldyn_diagram_parse(text, &h.d) == DELDYN_OK);

    char* out = nullptr;
    REQUIRE(deldyn_diagram_serialize(h.d, &out) == DELDYN_OK);
    std::string serialized = take(out);
    CHECK(serialized.find("\"B3\"") != std::string::npos);

    // emitted files parse back
    Handle h2;
    CHECK(deldyn_diagram_parse(serialized.c_str(), &h2.d) == DELDYN_OK);

    REQUIRE(deldyn_classify(h.d, 1, &out) == DELDYN_OK);
    std::string json = take(out);
    CHECK(json.find("\"type\": \"B3\"") != std::string::npos);
    REQUIRE(deldyn_classify(h.d, 0, &out) == DELDYN_OK);
    CHECK(take(out).find("type: B3") != std::string::npos);
}

TEST_CASE("capi: parse failures set the thread error message") {
    deldyn_diagram* d = nullptr;
    CHECK(deldyn_diagram_parse("{not json", &d) == DELDYN_ERR_INPUT);
    CHECK(std::string(deldyn_last_error()).find("parse error") != std::string::npos);

    CHECK(deldyn_diagram_parse(R"x({"components": ["A9"], "generators": ["(1 2)"], "mu": []})x",
                               &d) == DELDYN_ERR_INPUT);
    CHECK(std::string(deldyn_last_error()).find("generators") != std::string::npos);

    CHECK(deldyn_diagram_parse(nullptr, &d) == DELDYN_ERR_INPUT);
}

TEST_CASE("capi: table, special, oppinv") {
    char* out = nullptr;
    REQUIRE(deldyn_table(4, 0, &out) == DELDYN_OK);
    CHECK(take(out).find("B2  special: 1") != std::string::npos);
    CHECK(deldyn_table(0, 1, &out) == DELDYN_ERR_INPUT);

    REQUIRE(deldyn_special("D5", 0, &out) == DELDYN_OK);
    CHECK(take(out) == "D5: special nodes 1 4 5\n");
    CHECK(deldyn_special("H3", 0, &out) == DELDYN_ERR_INPUT);

    REQUIRE(deldyn_oppinv("A3", 1, &out) == DELDYN_OK);
    CHECK(take(out).find("\"tau\": \"(1 3)\"") != std::string::npos);
}

TEST_CASE("capi: isom with and without a local restriction") {
    const char* text = R"x({
      "components": ["B3", "B3"],
      "generators": ["(1 4)(2 5)(3 6)"],
      "mu": [1]
    })x";
    Handle h;
    REQUIRE(deldyn_diagram_parse(text, &h.d) == DELDYN_OK);

    char* out = nullptr;
    int found = -1;
    REQUIRE(deldyn_isom(h.d, h.d, nullptr, 1, &out, &found) == DELDYN_OK);
    take(out);
    CHECK(found == 1);

    REQUIRE(deldyn_isom(h.d, h.d, "(1 4)(2 5)(3 6)", 0, &out, &found) == DELDYN_OK);
    CHECK(take(out).find("local: (1 4)(2 5)(3 6)") != std::string::npos);
    CHECK(found == 1);

    CHECK(deldyn_isom(h.d, h.d, "(1 99)", 0, &out, &found) == DELDYN_ERR_INPUT);
}

TEST_CASE("capi: deligne pipeline") {
    Handle h;
    REQUIRE(deldyn_diagram_parse(R"x({"components": ["B3"], "generators": [], "mu": [1]})x",
                                 &h.d) == DELDYN_OK);
    char* out = nullptr;
    int ok = 0;
    REQUIRE(deldyn_deligne(h.d, 1, 1, &out, &ok) == DELDYN_OK);
    CHECK(ok == 1);
    CHECK(take(out).find("\"abelian_dim\": 2") != std::string::npos);

    // not symplectic: an input error, not a report
    Handle bad;
    REQUIRE(deldyn_diagram_parse(
                R"x({"components": ["D4"], "generators": ["(1 3 4)"], "mu": [1]})x", &bad.d) ==
            DELDYN_OK);
    CHECK(deldyn_deligne(bad.d, 1, 1, &out, &ok) == DELDYN_ERR_INPUT);
}

TEST_CASE("capi: hyperadjoint and goursat") {
    char* out = nullptr;
    REQUIRE(deldyn_hyperadjoint("B2+T3:10", 1, &out) == DELDYN_OK);
    CHECK(take(out).find("\"index\": 2") != std::string::npos);
    CHECK(deldyn_hyperadjoint("B2+T3", 1, &out) == DELDYN_ERR_INPUT);
    CHECK(deldyn_hyperadjoint(nullptr, 1, &out) == DELDYN_ERR_INPUT);

    int ok = 0;
    REQUIRE(deldyn_goursat(4, 0, &out, &ok) == DELDYN_OK);
    CHECK(take(out).find("OK") != std::string::npos);
    CHECK(ok == 1);
    CHECK(deldyn_goursat(13, 0, &out, &ok) == DELDYN_ERR_INPUT);
}

TEST_CASE("capi: campaign with progress callback") {
    struct Counter {
        long long calls = 0;
        long long last_done = -1, total = -1;
    } counter;
    auto cb = [](long long done, long long total, void* user) {
        auto* c = static_cast<Counter*>(user);
        ++c->calls;
        c->last_done = done;
        c->total = total;
    };
    char* out = nullptr;
    int found = -1;
    REQUIRE(deldyn_campaign(2, 2, "A", 2, 1, cb, &counter, 1, &out, &found) == DELDYN_OK);
    std::string json = take(out);
    CHECK(found == 0);
    CHECK(counter.calls > 0);
    CHECK(counter.last_done == counter.total);
    CHECK(json.find("\"ok\": true") != std::string::npos);

    CHECK(deldyn_campaign(2, 2, "AX", 2, 1, nullptr, nullptr, 1, &out, &found) ==
          DELDYN_ERR_INPUT);
}
