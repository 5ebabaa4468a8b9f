#include "support.hpp"

#include <gtest/gtest.h>

using namespace cac;

TEST(CodeJson, P73Layout) {
    const auto j = to_json(construct(73));
    EXPECT_EQ(j["format"], "cac-v1");
    EXPECT_EQ(j["p"], 73);
    EXPECT_EQ(j["weight"], 3);
    EXPECT_EQ(j["codewords"].size(), 17u);
    const json meta = {{"equi", 16}, {"nonequi", 1},        {"m_e", 16}, {"upper_bound", 17},     {"optimal", true},
                       {"primitive_root", 5}, {"o_p_2", 9}, {"ell", 4},  {"O_p", 4}, {"generator_coset", 1}};
    EXPECT_EQ(j["meta"], meta);
}

TEST(CodeJson, CanonicalText) {
    const auto a = dump(to_json(construct(331)));
    const auto b = dump(to_json(construct(331)));
    EXPECT_EQ(a, b);
    // Keys are sorted, so "codewords" precedes "format".
    EXPECT_LT(a.find("\"codewords\""), a.find("\"format\""));
    EXPECT_EQ(a.back(), '\n');
}

TEST(CodeJson, RoundTrip) {
    for (const u64 p : {5u, 31u, 73u, 127u, 331u}) {
        const auto code = construct(p);
        const auto text = dump(to_json(code));
        const auto back = code_from_string(text);
        EXPECT_EQ(back.p, code.p);
        EXPECT_EQ(back.codewords, code.codewords);
        EXPECT_EQ(back.meta.optimal, code.meta.optimal);
        EXPECT_EQ(back.meta.generator_coset, code.meta.generator_coset);
        EXPECT_EQ(dump(to_json(back)), text);
    }
}

TEST(CodeJson, LargeNumbersAsStrings) {
    EXPECT_TRUE(json_uint(u64{1} << 53).is_number());
    EXPECT_TRUE(json_uint((u64{1} << 53) + 1).is_string());
    EXPECT_EQ(json_uint(u64{9007199254740993}), "9007199254740993");
    EXPECT_EQ(read_uint(json("9007199254740993"), "x"), u64{9007199254740993});
    EXPECT_EQ(read_uint(json(12), "x"), 12u);
    EXPECT_THROW(read_uint(json(-1), "x"), FormatError);
    EXPECT_THROW(read_uint(json("12a"), "x"), FormatError);
    EXPECT_THROW(read_uint(json("99999999999999999999999"), "x"), FormatError);
}

TEST(CodeJson, AcceptsUnsortedAndTranslatedInput) {
    const auto code = code_from_string(R"({"format":"cac-v1","p":13,"codewords":[[2,1,0],["5","12","8"]]})");
    EXPECT_EQ(code.codewords[0].points(), (std::array<Residue, 3>{0, 1, 2}));
    EXPECT_EQ(code.codewords[1].points(), (std::array<Residue, 3>{5, 8, 12}));
    EXPECT_TRUE(verify(code).ok());
}

TEST(CodeJson, MalformedInput) {
    EXPECT_THROW(code_from_string("not json"), FormatError);
    EXPECT_THROW(code_from_string("[]"), FormatError);
    EXPECT_THROW(code_from_string(R"({"format":"cac-v2","p":13,"codewords":[]})"), FormatError);
    EXPECT_THROW(code_from_string(R"({"format":"cac-v1","codewords":[]})"), FormatError);
    EXPECT_THROW(code_from_string(R"({"format":"cac-v1","p":13,"codewords":[[0,1]]})"), FormatError);
    EXPECT_THROW(code_from_string(R"({"format":"cac-v1","p":13,"codewords":[[0,1,13]]})"), FormatError);
    EXPECT_THROW(code_from_string(R"({"format":"cac-v1","p":13,"codewords":[[0,1,1]]})"), FormatError);
    EXPECT_THROW(code_from_string(R"({"format":"cac-v1","p":13,"weight":4,"codewords":[]})"), FormatError);
}

TEST(MatrixJson, P31) {
    const auto j = to_json(cyclotomic_matrix(build_context(31)));
    EXPECT_EQ(j, json::parse(R"({"p":31,"g":3,"ell":3,"rows":[[3,4,2],[4,2,4],[2,4,4]]})"));
}

TEST(SquaresJson, MemberCap) {
    const auto s = square_set(build_context(31), 0);
    EXPECT_EQ(to_json(s, std::nullopt), json::parse(R"({"p":31,"k":0,"count":6,"members":[0,2,5,9,16,28]})"));
    EXPECT_FALSE(to_json(s, 5).contains("members"));
    EXPECT_EQ(to_json(s, 5)["count"], 6);
}

TEST(ContextJson, Examples) {
    const auto j73 = context_json(build_context(73));
    EXPECT_EQ(j73["ell"], 4);
    EXPECT_EQ(j73["O_p"], 4);
    EXPECT_EQ(j73["m_e"], 16);
    EXPECT_EQ(j73["upper_bound"], 17);
    EXPECT_EQ(j73["known_optimal"], 17);

    const auto j331 = context_json(build_context(331));
    EXPECT_EQ(j331["ell"], 11);
    EXPECT_EQ(j331["L_order"], 30);

    EXPECT_TRUE(context_json(build_context(127))["known_optimal"].is_null());
}

TEST(OracleJson, P31) {
    const auto j = to_json(oracle::exhaustive_max_cac(31), 31);
    EXPECT_EQ(j["max"], 7);
    EXPECT_EQ(j["witness"].size(), 7u);
}

TEST(SimulateJson, Fields) {
    const auto stats = random_trials(construct(73), 3, 100, 42);
    const auto j = to_json(stats, 73);
    EXPECT_EQ(j["success_rate"], 1.0);
    EXPECT_EQ(j["seed"], 42);
    EXPECT_EQ(j["active"], 3);
    EXPECT_EQ(j["trials"], 100);
}
