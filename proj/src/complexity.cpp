#include "sanas/complexity.hpp"

#include <string>

#include "sanas/errors.hpp"

namespace sanas {

namespace {

constexpr std::uint64_t halve_up(std::uint64_t n) { return (n + 1) / 2; }

} // namespace

void BackboneSpec::validate() const {
    if (stem_channels <= 0) throw InvalidConfig("stem channels must be positive");
    for (int c : block_channels)
        if (c <= 0) throw InvalidConfig("block channels must be positive");
    if (head_channels <= 0) throw InvalidConfig("head channels must be positive");
    if (class_count <= 0) throw InvalidConfig("class count must be positive");
}

ComplexityVector complexity(const Genome& g, const BackboneSpec& spec) {
    spec.validate();
    if (!is_canonical(g)) throw NonCanonical("complexity requires canonical padding");

    std::uint64_t madds = 0;
    std::uint64_t params = 0;

    std::uint64_t side = static_cast<std::uint64_t>(g.resolution_px());
    const std::uint64_t stem = static_cast<std::uint64_t>(spec.stem_channels);

    side = halve_up(side);  // stem conv is stride 2
    madds += side * side * 9 * 3 * stem;
    params += 9 * 3 * stem;

    std::uint64_t in_ch = stem;
    int layers = 1;
    for (int b = 0; b < kBlockCount; ++b) {
        const std::uint64_t out_ch = static_cast<std::uint64_t>(spec.block_channels[b]);
        for (int l = 0; l < g.depth(b); ++l) {
            const std::uint64_t k = static_cast<std::uint64_t>(g.kernel_size(b, l));
            const std::uint64_t mid = in_ch * static_cast<std::uint64_t>(g.expansion_ratio(b, l));
            const std::uint64_t in_side = side;
            if (l == 0 && spec.block_stride2[b]) side = halve_up(side);

            madds += in_side * in_side * in_ch * mid;  // 1×1 expand
            madds += side * side * k * k * mid;        // k×k depthwise
            madds += side * side * mid * out_ch;       // 1×1 project
            params += in_ch * mid + k * k * mid + mid * out_ch;

            in_ch = out_ch;
            ++layers;
        }
    }

    const std::uint64_t head = static_cast<std::uint64_t>(spec.head_channels);
    const std::uint64_t classes = static_cast<std::uint64_t>(spec.class_count);
    madds += side * side * in_ch * head;
    params += in_ch * head;
    ++layers;
    madds += head * classes;
    params += head * classes;
    ++layers;

    ComplexityVector out;
    out.madds = madds;
    out.params = params;
    out.latency_cpu_ms = spec.latency.cpu.per_madd * static_cast<double>(madds) +
                         spec.latency.cpu.per_layer * layers;
    out.latency_gpu_ms = spec.latency.gpu.per_madd * static_cast<double>(madds) +
                         spec.latency.gpu.per_layer * layers;
    return out;
}

double complexity_component(const ComplexityVector& v, const std::string& name) {
    if (name == "madds") return static_cast<double>(v.madds);
    if (name == "params") return static_cast<double>(v.params);
    if (name == "latency_cpu") return v.latency_cpu_ms;
    if (name == "latency_gpu") return v.latency_gpu_ms;
    throw InvalidConfig("unknown complexity coordinate: " + name);
}

} // namespace sanas
