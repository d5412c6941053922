// Exercises the shared library strictly through its C interface.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "freesl/freesl.h"

#include <doctest.h>
#include <json.hpp>

#include <string>

namespace {

struct Report {
    freesl_status status;
    nlohmann::json body;
    int ok;
};

template <class Fn>
Report call(Fn&& fn)
{
    char* text = nullptr;
    int ok = -1;
    const freesl_status st = fn(&text, &ok);
    Report r{st, nullptr, ok};
    if (text) {
        r.body = nlohmann::json::parse(text);
        freesl_string_free(text);
    }
    return r;
}

freesl_spec* parse(const char* json)
{
    freesl_spec* s = nullptr;
    REQUIRE(freesl_spec_parse(json, &s) == FREESL_OK);
    return s;
}

} // namespace

TEST_CASE("error codes")
{
    freesl_spec* s = nullptr;
    CHECK(freesl_spec_parse(R"({"m":1,"a":["0"],"k":[1],"S":[]})", &s) == FREESL_ERR_INPUT);
    CHECK(std::string(freesl_last_error()).size() > 0);
    CHECK(freesl_spec_parse("{not json", &s) == FREESL_ERR_INPUT);
    CHECK(freesl_spec_parse(nullptr, &s) == FREESL_ERR_NULL);
    freesl_spec* small = parse(R"({"m":1,"a":["1"],"k":[3],"S":[]})");
    const Report r = call([&](char** t, int* ok) { return freesl_oracle(small, 2, t, ok); });
    CHECK(r.status == FREESL_ERR_GUARD);
    freesl_spec_free(small);
    freesl_spec_free(nullptr);
    CHECK(std::string(freesl_version()).size() > 0);
}

TEST_CASE("realize, verify and dual through the C API")
{
    freesl_spec* s = parse(R"({"m":2,"a":["1","1"],"k":[2,2],"S":[]})");
    freesl_module* mod = nullptr;
    REQUIRE(freesl_realize(s, &mod) == FREESL_OK);
    const Report v = call([&](char** t, int* ok) { return freesl_verify(mod, t, ok); });
    CHECK(v.status == FREESL_OK);
    CHECK(v.ok == 1);
    CHECK(v.body["checked"] == 64);
    CHECK(v.body["failed"].empty());

    freesl_module *d1 = nullptr, *d2 = nullptr;
    REQUIRE(freesl_dual(mod, &d1) == FREESL_OK);
    REQUIRE(freesl_dual(d1, &d2) == FREESL_OK);
    const Report j1 = call([&](char** t, int*) { return freesl_module_to_json(mod, t); });
    const Report j2 = call([&](char** t, int*) { return freesl_module_to_json(d2, t); });
    CHECK(j1.body == j2.body);
    CHECK(j1.body["pairs"][0]["A"]["size"] == 4);

    freesl_module* reparsed = nullptr;
    REQUIRE(freesl_module_parse(j1.body.dump().c_str(), &reparsed) == FREESL_OK);
    const Report j3 = call([&](char** t, int*) { return freesl_module_to_json(reparsed, t); });
    CHECK(j3.body == j1.body);

    for (freesl_module* m : {mod, d1, d2, reparsed})
        freesl_module_free(m);
    freesl_spec_free(s);
}

TEST_CASE("analyses through the C API")
{
    freesl_spec* s = parse(R"({"m":2,"a":["1","1"],"k":[2,2],"S":[]})");
    const Report endo = call([&](char** t, int* ok) { return freesl_endo(s, 1, t, ok); });
    CHECK(endo.ok == 1);
    CHECK(endo.body["dim"] == 4);
    CHECK(endo.body["s"] == 2);
    CHECK(endo.body["idempotents"] == 4);

    const Report dec = call([&](char** t, int* ok) { return freesl_decompose(s, t, ok); });
    CHECK(dec.ok == 1);
    CHECK(dec.body["components"] == 2);
    CHECK(dec.body["reassembly_matches"] == true);

    freesl_spec* x = parse(R"({"m":2,"a":["1","1"],"k":[2,1],"S":[1]})");
    freesl_spec* y = parse(R"({"m":2,"a":["-1/4","1"],"k":[2,1],"S":[]})");
    const Report iso = call([&](char** t, int* ok) { return freesl_iso(x, y, 2, 0, t, ok); });
    CHECK(iso.ok == 1);
    CHECK(iso.body["isomorphic"] == true);
    CHECK(iso.body["method"] == "theorem");
    CHECK(iso.body["witness_support"] == nlohmann::json::array({1}));

    const Report cls = call([&](char** t, int* ok) {
        return freesl_classify(R"([{"m":2,"a":["1","1"],"k":[2,1],"S":[1]},
                                   {"m":2,"a":["-1/4","1"],"k":[2,1],"S":[]},
                                   {"m":2,"a":["1","1"],"k":[2,1],"S":[]}])",
                               t, ok);
    });
    CHECK(cls.ok == 1);
    CHECK(cls.body["classes"].size() == 2);

    const Report orc = call([&](char** t, int* ok) { return freesl_oracle(s, 0, t, ok); });
    CHECK(orc.ok == 1);
    CHECK(orc.body["N"] == 12);

    for (freesl_spec* p : {s, x, y})
        freesl_spec_free(p);
}
