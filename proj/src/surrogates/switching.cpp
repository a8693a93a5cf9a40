#include <array>
#include <numeric>

#include "sanas/errors.hpp"
#include "sanas/metrics.hpp"
#include "sanas/rng.hpp"
#include "sanas/surrogates.hpp"

namespace sanas {

namespace {

constexpr std::array<ModelId, 4> kModelOrder{ModelId::MLP, ModelId::CART, ModelId::RBF, ModelId::GP};

// tau of a held-out fold; a degenerate ranking counts as zero correlation.
double fold_tau(const std::vector<double>& pred, const std::vector<double>& truth) {
    try {
        return kendall_tau(pred, truth);
    } catch (const AllTied&) {
        return 0.0;
    }
}

} // namespace

SwitchResult adaptive_switch(const TrainingSet& ts, std::uint64_t seed, int folds) {
    ts.validate(20);
    if (folds < 2) throw InvalidConfig("cross-validation needs at least 2 folds");
    const std::size_t n = ts.genomes.size();

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    {
        RandomEngine rng(derive_seed(seed, "cv-partition"));
        rng.shuffle(perm);
    }
    // Contiguous chunks of the shuffled order; the first n % folds chunks get
    // one extra element.
    std::vector<std::vector<std::size_t>> fold_idx(static_cast<std::size_t>(folds));
    {
        const std::size_t base = n / static_cast<std::size_t>(folds);
        const std::size_t extra = n % static_cast<std::size_t>(folds);
        std::size_t at = 0;
        for (std::size_t f = 0; f < static_cast<std::size_t>(folds); ++f) {
            const std::size_t take = base + (f < extra ? 1 : 0);
            fold_idx[f].assign(perm.begin() + static_cast<std::ptrdiff_t>(at),
                               perm.begin() + static_cast<std::ptrdiff_t>(at + take));
            at += take;
        }
    }

    SwitchResult result;
    result.scores.resize(kModelOrder.size());
    for (std::size_t mi = 0; mi < kModelOrder.size(); ++mi) {
        CvScore score;
        score.id = kModelOrder[mi];
        double tau_sum = 0.0, rmse_sum = 0.0;
        int used_folds = 0;
        try {
            for (std::size_t f = 0; f < fold_idx.size(); ++f) {
                if (fold_idx[f].empty()) continue;
                TrainingSet train;
                std::vector<Genome> held_genomes;
                std::vector<double> held_targets;
                for (std::size_t g = 0; g < fold_idx.size(); ++g) {
                    for (std::size_t i : fold_idx[g]) {
                        if (g == f) {
                            held_genomes.push_back(ts.genomes[i]);
                            held_targets.push_back(ts.targets[i]);
                        } else {
                            train.genomes.push_back(ts.genomes[i]);
                            train.targets.push_back(ts.targets[i]);
                        }
                    }
                }
                const auto fitted =
                    fit_model(score.id, train, derive_seed(seed, to_string(score.id), f));
                const auto pred = fitted.predict(held_genomes);
                tau_sum += fold_tau(pred, held_targets);
                rmse_sum += rmse(pred, held_targets);
                ++used_folds;
            }
            score.mean_tau = tau_sum / used_folds;
            score.mean_rmse = rmse_sum / used_folds;
            score.available = true;
        } catch (const Error&) {
            score.available = false;
        }
        result.scores[mi] = score;
    }

    int winner = -1;
    for (std::size_t mi = 0; mi < result.scores.size(); ++mi) {
        const auto& s = result.scores[mi];
        if (!s.available) continue;
        if (winner < 0) {
            winner = static_cast<int>(mi);
            continue;
        }
        const auto& w = result.scores[static_cast<std::size_t>(winner)];
        if (s.mean_tau > w.mean_tau ||
            (s.mean_tau == w.mean_tau && s.mean_rmse < w.mean_rmse)) {
            winner = static_cast<int>(mi);  // remaining ties keep the earlier model
        }
    }
    if (winner < 0) throw AllModelsFailed();

    result.model = fit_model(kModelOrder[static_cast<std::size_t>(winner)], ts,
                             derive_seed(seed, "refit", static_cast<std::uint64_t>(winner)));
    return result;
}

} // namespace sanas
