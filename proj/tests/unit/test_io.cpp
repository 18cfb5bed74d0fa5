#include "fixtures.hpp"

#include <bac/generate.hpp>
#include <bac/io.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

using namespace bac;
using namespace bac::testing;

TEST(Io, FixturesMatchBuiltInstances)
{
    EXPECT_EQ(load_instance(data_path("linsum.wcsp")), linsum_instance());
    const Instance e64 = load_instance(data_path("wipeout.wcsp"));
    std::vector<Value> t{1, 0, 0};
    EXPECT_EQ(total_cost(e64, t), total_cost(wipeout_instance(), t));
    for (Value a = 0; a <= 3; ++a)
        for (Value b = 0; b <= 2; ++b)
            for (Value c = 0; c <= 2; ++c) {
                t = {a, b, c};
                ASSERT_EQ(total_cost(e64, t), total_cost(wipeout_instance(), t));
            }
    const Instance e29 = load_instance(data_path("acpair.wcsp"));
    EXPECT_EQ(e29.valuation().top(), 4);
    EXPECT_EQ(e29.num_functions(), 3u);
}

TEST(Io, RoundTripGeneratedInstances)
{
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Instance inst = generate_suite_instance(seed);
        const std::string text = emit_instance(inst);
        const Instance back = parse_instance_text(text);
        ASSERT_EQ(back, inst) << seed;
        ASSERT_EQ(emit_instance(back), text) << seed;
    }
    SatelliteParams sp;
    const Instance sat = generate_satellite(sp);
    EXPECT_EQ(parse_instance_text(emit_instance(sat)), sat);
    const Instance chain = generate_spacer_chain({});
    EXPECT_EQ(parse_instance_text(emit_instance(chain)), chain);
}

TEST(Io, CommentsBlankLinesAndInfiniteTop)
{
    const Instance inst = parse_instance_text("# header\n\nwcsp t  # trailing\nk inf\nw0 3\nvar 0 -5 5\n"
                                              "var 1 0 9\nfun funceq 0 1 7 1 5\n");
    EXPECT_TRUE(inst.valuation().is_infinite());
    EXPECT_EQ(inst.w_zero(), 3);
    EXPECT_EQ(inst.domain(0), (Interval{-5, 5}));
    const auto& fe = std::get<FunctionalEq>(inst.function(0).kind());
    EXPECT_EQ(fe.support, (AffineMap{1, 5}));
    EXPECT_EQ(parse_instance_text(emit_instance(inst)), inst);
}

TEST(Io, SemiconvexTagValidated)
{
    const std::string ok = "wcsp t\nk 3\nvar 0 0 2\nvar 1 0 3\nfun ext 2 0 1 0 1\n0 1 2\ntag semiconvex 0 asc\n";
    const Instance inst = parse_instance_text(ok);
    const auto& e = std::get<Extensional>(inst.function(0).kind());
    ASSERT_TRUE(e.semiconvex.has_value());
    EXPECT_EQ(e.semiconvex->wrt, 0);
    EXPECT_EQ(parse_instance_text(emit_instance(inst)), inst);
}

TEST(Io, SaveAndLoad)
{
    const auto path = std::filesystem::temp_directory_path() / "bac_io_roundtrip.wcsp";
    const Instance inst = generate_suite_instance(5);
    save_instance(inst, path.string());
    EXPECT_EQ(load_instance(path.string()), inst);
    std::filesystem::remove(path);
}

TEST(Io, MissingFile)
{
    try {
        load_instance("/nonexistent/file.wcsp");
        FAIL();
    }
    catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 0u);
    }
}

struct BadCase
{
    const char* file;
    std::size_t line;
};

class NegativeCorpus : public ::testing::TestWithParam<BadCase>
{};

TEST_P(NegativeCorpus, RejectedWithLine)
{
    const auto& c = GetParam();
    const std::string path = data_path(std::string("bad/") + c.file + ".wcsp");
    try {
        load_instance(path);
        FAIL() << c.file << " parsed";
    }
    catch (const ParseError& e) {
        EXPECT_EQ(e.line(), c.line) << e.what();
        EXPECT_NE(std::string(e.what()).find(path + ":" + std::to_string(c.line) + ": "), std::string::npos);
    }
}

INSTANTIATE_TEST_SUITE_P(Files,
                         NegativeCorpus,
                         ::testing::Values(BadCase{"cost_above_k", 5},
                                           BadCase{"duplicate_header", 2},
                                           BadCase{"duplicate_tuple", 6},
                                           BadCase{"empty_domain", 3},
                                           BadCase{"fun_before_k", 4},
                                           BadCase{"inf_w0", 3},
                                           BadCase{"missing_header", 1},
                                           BadCase{"missing_tuple_lines", 6},
                                           BadCase{"not_an_integer", 3},
                                           BadCase{"spacer_order", 5},
                                           BadCase{"sparse_ids", 4},
                                           BadCase{"tag_not_semiconvex", 8},
                                           BadCase{"tag_without_ext", 4},
                                           BadCase{"tuple_out_of_domain", 5},
                                           BadCase{"unknown_directive", 4},
                                           BadCase{"unknown_variable", 5},
                                           BadCase{"zero_alpha", 5}),
                         [](const auto& info) { return std::string(info.param.file); });
