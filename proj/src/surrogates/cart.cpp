#include <algorithm>
#include <numeric>
#include <vector>

#include "sanas/surrogates.hpp"

namespace sanas {

namespace {

constexpr int kMaxTreeDepth = 12;
constexpr std::size_t kMinSplitSize = 4;

struct SplitChoice {
    bool found = false;
    int feature = 0;
    double threshold = 0;
    double gain = 0;
};

double sse(double sum, double sumsq, double n) { return sumsq - sum * sum / n; }

// Best variance-reduction split; ties resolved toward the lowest feature
// index, then the lowest threshold (the scan visits candidates in exactly
// that order and replaces only on strict improvement).
SplitChoice best_split(const std::vector<const Genome*>& genomes, const std::vector<double>& y,
                       const std::vector<std::size_t>& idx) {
    const double n = static_cast<double>(idx.size());
    double sum = 0, sumsq = 0;
    for (std::size_t i : idx) {
        sum += y[i];
        sumsq += y[i] * y[i];
    }
    const double parent_sse = sse(sum, sumsq, n);

    SplitChoice best;
    std::vector<std::size_t> order(idx);
    for (int f = 0; f < kGeneCount; ++f) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return genomes[a]->genes[f] < genomes[b]->genes[f];
        });
        double lsum = 0, lsumsq = 0;
        for (std::size_t k = 0; k + 1 < order.size(); ++k) {
            const double t = y[order[k]];
            lsum += t;
            lsumsq += t * t;
            const int v = genomes[order[k]]->genes[f];
            const int v_next = genomes[order[k + 1]]->genes[f];
            if (v == v_next) continue;
            const double ln = static_cast<double>(k + 1);
            const double rn = n - ln;
            const double gain = parent_sse - sse(lsum, lsumsq, ln) - sse(sum - lsum, sumsq - lsumsq, rn);
            if (gain > best.gain + 1e-12 || (!best.found && gain > 1e-12)) {
                best.found = true;
                best.feature = f;
                best.threshold = 0.5 * (v + v_next);
                best.gain = gain;
            }
        }
    }
    return best;
}

} // namespace

namespace surrogate_detail {

double predict_cart_one(const CartParams& p, const Genome& g) {
    int node = 0;
    while (p.nodes[static_cast<std::size_t>(node)].feature >= 0) {
        const auto& n = p.nodes[static_cast<std::size_t>(node)];
        node = g.genes[n.feature] <= n.threshold ? n.left : n.right;
    }
    return p.nodes[static_cast<std::size_t>(node)].value;
}

} // namespace surrogate_detail

FittedPredictor fit_cart(const TrainingSet& ts) {
    ts.validate(2);
    std::vector<const Genome*> genomes;
    genomes.reserve(ts.genomes.size());
    for (const auto& g : ts.genomes) genomes.push_back(&g);

    CartParams tree;
    struct Pending {
        std::vector<std::size_t> idx;
        int depth;
        int slot;
    };
    std::vector<Pending> stack;
    {
        std::vector<std::size_t> all(ts.genomes.size());
        std::iota(all.begin(), all.end(), 0);
        tree.nodes.emplace_back();
        stack.push_back({std::move(all), 0, 0});
    }

    while (!stack.empty()) {
        Pending task = std::move(stack.back());
        stack.pop_back();

        double mean = 0;
        for (std::size_t i : task.idx) mean += ts.targets[i];
        mean /= static_cast<double>(task.idx.size());
        CartNode& node = tree.nodes[static_cast<std::size_t>(task.slot)];
        node.value = mean;

        if (task.depth >= kMaxTreeDepth || task.idx.size() < kMinSplitSize) continue;
        const SplitChoice split = best_split(genomes, ts.targets, task.idx);
        if (!split.found) continue;

        std::vector<std::size_t> left, right;
        for (std::size_t i : task.idx) {
            if (genomes[i]->genes[split.feature] <= split.threshold) left.push_back(i);
            else right.push_back(i);
        }

        const int left_slot = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        const int right_slot = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        // re-fetch: emplace_back may have reallocated
        CartNode& parent = tree.nodes[static_cast<std::size_t>(task.slot)];
        parent.feature = split.feature;
        parent.threshold = split.threshold;
        parent.left = left_slot;
        parent.right = right_slot;
        stack.push_back({std::move(right), task.depth + 1, right_slot});
        stack.push_back({std::move(left), task.depth + 1, left_slot});
    }

    FittedPredictor out;
    out.id = ModelId::CART;
    out.training_fingerprint = ts.fingerprint();
    out.params = std::move(tree);
    return out;
}

} // namespace sanas
