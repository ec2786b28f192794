#include <gtest/gtest.h>

#include "latllt/error.hpp"
#include "latllt/pmf_io.hpp"
#include "latllt/rng.hpp"

using namespace latllt;

TEST(PmfJson, ParsesDocument) {
    const auto pmf = parse_pmf_json(R"({"v0": 0.5, "D": 2, "probs": {"-1": 0.25, "0": 0.5, "3": 0.25}})");
    EXPECT_EQ(pmf.v0(), 0.5);
    EXPECT_EQ(pmf.span(), 2.0);
    EXPECT_EQ(pmf.mass(-1), 0.25);
    EXPECT_EQ(pmf.mass(3), 0.25);
}

TEST(PmfJson, RoundTrip) {
    const LatticePmf pmf(-1.25, 0.5, {{0, 0.1}, {1, 0.2}, {4, 0.7}});
    const auto back = parse_pmf_json(to_pmf_json(pmf));
    EXPECT_EQ(back.v0(), pmf.v0());
    EXPECT_EQ(back.span(), pmf.span());
    EXPECT_EQ(back.to_map(), pmf.to_map());
}

TEST(PmfJson, Errors) {
    const auto code = [](const char* text) {
        try {
            parse_pmf_json(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::EmptyGrid; // sentinel: no error
    };
    EXPECT_EQ(code("{"), ErrorCode::InvalidInput);
    EXPECT_EQ(code("[1, 2]"), ErrorCode::InvalidInput);
    EXPECT_EQ(code(R"({"D": 1, "probs": {"0": 1}})"), ErrorCode::InvalidInput);
    EXPECT_EQ(code(R"({"v0": 0, "D": 1, "probs": {"x": 1}})"), ErrorCode::InvalidInput);
    EXPECT_EQ(code(R"({"v0": 0, "D": 1, "probs": {"1.5": 1}})"), ErrorCode::InvalidInput);
    EXPECT_EQ(code(R"({"v0": 0, "D": 1, "probs": {"0": "1"}})"), ErrorCode::InvalidInput);
    EXPECT_EQ(code(R"({"v0": 0, "D": 1, "probs": {"0": 0.5, "1": 0.499}})"), ErrorCode::SumNotOne);
    EXPECT_EQ(code(R"({"v0": 0, "D": 1, "probs": {"1": 0.5, "+1": 0.5}})"), ErrorCode::InvalidInput);
    EXPECT_THROW(load_pmf_json("/nonexistent/pmf.json"), Error);
}

TEST(Rng, ReferenceOutputs) {
    // SplitMix64 from state 0 and xoshiro256** seeded through it are both fixed
    // sequences; pin the first outputs so a change of generator is caught.
    std::uint64_t state = 0;
    EXPECT_EQ(splitmix64(state), 0xe220a8397b1dcdafULL);
    Xoshiro256 a(12345);
    Xoshiro256 b(12345);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(Rng, UniformAndCoinRanges) {
    Xoshiro256 rng(1);
    int ones = 0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        ones += rng.coin();
    }
    EXPECT_NEAR(ones / 100000.0, 0.5, 0.01);
}

TEST(DiscreteSampler, SkipsZeroWeights) {
    const double w[] = {0.0, 0.3, 0.0, 0.7, 0.0};
    const DiscreteSampler pick(w);
    Xoshiro256 rng(8);
    for (int i = 0; i < 10000; ++i) {
        const auto k = pick(rng);
        ASSERT_TRUE(k == 1 || k == 3);
    }
}
