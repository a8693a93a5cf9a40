#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sanas/complexity.hpp"
#include "sanas/errors.hpp"
#include "sanas/genome.hpp"
#include "sanas/rng.hpp"
#include "sanas/search_space.hpp"

using namespace sanas;

namespace {

GeneArray fill_genes(int res, int depth, int code) {
    GeneArray genes{};
    genes[0] = res;
    for (int b = 0; b < kBlockCount; ++b) {
        genes[depth_position(b)] = depth;
        for (int l = 0; l < kMaxLayers; ++l) {
            genes[kernel_position(b, l)] = code;
            genes[expansion_position(b, l)] = code;
        }
    }
    return genes;
}

} // namespace

TEST_CASE("minimal and maximal designs match the layer-table oracle") {
    const BackboneSpec spec;
    const Genome lo = canonicalize(fill_genes(0, kMinDepth, 1));
    const auto c_lo = complexity(lo);
    // frozen: ten layers of (3x3, x3) at 192px on the default backbone
    CHECK(c_lo.madds == 86494016);
    CHECK(c_lo.params == 1942528);
    const auto o_lo = oracle::complexity_by_layers(lo, spec);
    CHECK(c_lo.madds == o_lo.madds);
    CHECK(c_lo.params == o_lo.params);
    CHECK(o_lo.layers == 13);

    const Genome hi = canonicalize(fill_genes(kResolutionLevels - 1, kMaxDepth, kCodeCount));
    const auto c_hi = complexity(hi);
    const auto o_hi = oracle::complexity_by_layers(hi, spec);
    CHECK(c_hi.madds == o_hi.madds);
    CHECK(c_hi.params == o_hi.params);
    CHECK(c_hi.madds > c_lo.madds);
    CHECK(c_hi.params > c_lo.params);
}

TEST_CASE("random designs match the layer-table oracle exactly") {
    const BackboneSpec spec;
    SearchSpace space = SearchSpace::full();
    RandomEngine rng(21);
    for (int i = 0; i < 500; ++i) {
        const Genome g = space.sample(rng);
        const auto c = complexity(g, spec);
        const auto o = oracle::complexity_by_layers(g, spec);
        CHECK(c.madds == o.madds);
        CHECK(c.params == o.params);
        const double cpu = 3.0e-8 * double(o.madds) + 0.25 * o.layers;
        const double gpu = 6.0e-8 * double(o.madds) + 0.5 * o.layers;
        CHECK(c.latency_cpu_ms == doctest::Approx(cpu).epsilon(1e-12));
        CHECK(c.latency_gpu_ms == doctest::Approx(gpu).epsilon(1e-12));
    }
}

TEST_CASE("resolution scales every spatial term, parameters none") {
    const BackboneSpec spec;
    GeneArray genes = fill_genes(0, 3, 2);
    const auto at192 = complexity(canonicalize(genes));
    genes[0] = 16;  // 256 px: every feature map side scales by 4/3 exactly
    const auto at256 = complexity(canonicalize(genes));
    const std::uint64_t classifier = std::uint64_t(spec.head_channels) * spec.class_count;
    CHECK((at256.madds - classifier) * 9 == (at192.madds - classifier) * 16);
    CHECK(at256.params == at192.params);
}

TEST_CASE("per-gene monotonicity") {
    SearchSpace space = SearchSpace::full();
    RandomEngine rng(22);
    for (int i = 0; i < 200; ++i) {
        Genome g = space.sample(rng);
        const auto base = complexity(g);

        GeneArray raw = g.genes;
        raw[0] = g.resolution_index() < 16 ? g.resolution_index() + 1 : 15;
        const auto res_step = complexity(canonicalize(raw));
        if (raw[0] > g.resolution_index()) CHECK(res_step.madds > base.madds);
        else CHECK(res_step.madds < base.madds);
        CHECK(res_step.params == base.params);

        const int b = rng.below_int(kBlockCount);
        if (g.depth(b) < kMaxDepth) {
            raw = g.genes;
            raw[depth_position(b)] = g.depth(b) + 1;
            const auto deeper = complexity(canonicalize(raw));  // new layer gets code 1 via promotion
            CHECK(deeper.madds > base.madds);
            CHECK(deeper.params > base.params);
            CHECK(deeper.latency_cpu_ms > base.latency_cpu_ms);
        }
        const int l = rng.below_int(g.depth(b));
        if (g.kernel_code(b, l) < kCodeCount) {
            raw = g.genes;
            raw[kernel_position(b, l)] += 1;
            const auto wider = complexity(canonicalize(raw));
            CHECK(wider.madds > base.madds);
            CHECK(wider.params > base.params);
        }
        if (g.expansion_code(b, l) < kCodeCount) {
            raw = g.genes;
            raw[expansion_position(b, l)] += 1;
            const auto fatter = complexity(canonicalize(raw));
            CHECK(fatter.madds > base.madds);
            CHECK(fatter.params > base.params);
        }
    }
}

TEST_CASE("named component access") {
    const auto c = complexity(canonicalize(fill_genes(2, 3, 2)));
    CHECK(complexity_component(c, "madds") == double(c.madds));
    CHECK(complexity_component(c, "params") == double(c.params));
    CHECK(complexity_component(c, "latency_cpu") == c.latency_cpu_ms);
    CHECK(complexity_component(c, "latency_gpu") == c.latency_gpu_ms);
    CHECK_THROWS_AS(complexity_component(c, "flops"), InvalidConfig);
    CHECK_THROWS_AS(complexity_component(c, ""), InvalidConfig);
}

TEST_CASE("padding violations are rejected") {
    Genome g = canonicalize(fill_genes(0, 2, 1));
    g.genes[kernel_position(0, 3)] = 2;  // dead slot written behind canonicalize's back
    CHECK_THROWS_AS(complexity(g), NonCanonical);
}

TEST_CASE("backbone validation") {
    BackboneSpec spec;
    spec.stem_channels = 0;
    CHECK_THROWS_AS(spec.validate(), InvalidConfig);
    spec = BackboneSpec();
    spec.block_channels[3] = -4;
    CHECK_THROWS_AS(spec.validate(), InvalidConfig);
    spec = BackboneSpec();
    spec.class_count = 0;
    CHECK_THROWS_AS(spec.validate(), InvalidConfig);
    BackboneSpec().validate();  // defaults are fine

    // a thinner backbone costs less everywhere
    BackboneSpec thin;
    thin.head_channels = 640;
    const Genome g = canonicalize(fill_genes(4, 3, 2));
    CHECK(complexity(g, thin).madds < complexity(g).madds);
    CHECK(complexity(g, thin).params < complexity(g).params);
}
