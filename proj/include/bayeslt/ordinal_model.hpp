#ifndef BAYESLT_ORDINAL_MODEL_HPP
#define BAYESLT_ORDINAL_MODEL_HPP

#include "bayeslt/mcmc.hpp"
#include "bayeslt/statfn.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace bayeslt::ordinal {

/// Remaps level k to K + 1 - k so that, after ingestion, a higher level
/// always means a more positive perception. Applying it twice is the
/// identity.
int apply_reverse_scale(int level, int K);

struct ItemDef {
    std::string id;
    bool reverse_scale = false;
};

struct Response {
    std::string participant;
    std::string group;   ///< group label, e.g. a study condition
    std::string item_id;
    int level = 0;       ///< 1..K, already reverse-mapped at ingestion
};

struct PaddingAction {
    std::string group;
    std::string item_id;
    int level = 0;
    int count_added = 0;
};

/// Group x item x participant ordinal responses on a common K-level scale.
/// Aggregated counts are the representation the likelihood consumes; the raw
/// response list is kept for provenance and round-trips.
struct OrdinalDataset {
    int K = 5;
    std::vector<std::string> groups;  ///< sorted unique labels
    std::vector<ItemDef> items;       ///< scale order; first item anchors
    std::vector<Response> responses;
    std::vector<PaddingAction> padding_log;
    std::vector<int> compressed_levels; ///< original labels removed by `compress`

    static OrdinalDataset build(int K, std::vector<ItemDef> items,
                                std::vector<Response> responses);

    std::size_t group_index(const std::string& label) const;
    std::size_t item_index(const std::string& id) const;

    /// Response counts per level for one (group, item) cell, padding
    /// included; counts[k-1] is the number of responses at level k.
    std::vector<int> counts(std::size_t group, std::size_t item) const;

    /// (group, item, level) triples with zero responses.
    std::vector<std::tuple<std::size_t, std::size_t, int>> empty_levels() const;

    void validate() const;
};

enum class PaddingStrategy { none, compress, pad_empty_only, pad_all_levels, pad_proportional };

PaddingStrategy padding_strategy_from_string(const std::string& name);
const char* to_string(PaddingStrategy s);

/// Empty-level mitigation. `pad_empty_only` (the default pipeline choice)
/// adds one observation to each empty level; `pad_all_levels` adds one to
/// every level; `pad_proportional` fills empty levels and then spends the
/// remaining budget (at most K additions per cell) keeping the observed
/// frequencies close to the original; `compress` relabels away levels that
/// are empty in every cell; `none` passes the data through and records a
/// warning naming the empty levels. Synthetic observations are attributed to
/// pseudo participants named "+pad<n>".
OrdinalDataset pad_empty_levels(const OrdinalDataset& dataset, PaddingStrategy strategy,
                                std::vector<std::string>* warnings = nullptr);

/// Latent t parameters per group, shared across all items of the scale.
struct GroupLatents {
    std::vector<std::string> groups;
    std::vector<statfn::TDistParams> params; ///< aligned with `groups`

    const statfn::TDistParams& for_group(const std::string& label) const;
};

/// Per-item threshold vectors. The outer thresholds of the anchor item
/// (first in scale order) are fixed at 1.5 and K - 0.5 and never sampled.
struct ThresholdSet {
    int K = 5;
    std::vector<std::string> item_ids;
    std::vector<std::vector<double>> thresholds; ///< [item][k-1], k in 1..K-1

    static ThresholdSet equally_spaced(int K, const std::vector<std::string>& item_ids);
    double anchor_lo() const { return 1.5; }
    double anchor_hi() const { return K - 0.5; }
    void validate() const;
};

/// Level probabilities p_k = Psi(theta_k) - Psi(theta_{k-1}) with
/// theta_0 = -inf and theta_K = +inf. When thresholds are inverted some p_k
/// is negative; the vector is then flagged invalid and the draw's likelihood
/// must be treated as zero.
struct LevelProbabilities {
    std::vector<double> p;
    bool valid = false;
};

LevelProbabilities level_probabilities(const statfn::TDistParams& latents,
                                       std::span<const double> thresholds);

/// Sum over responses of log p_k, computed from each response's group
/// latents and its item's thresholds; -inf on any invalid probability
/// vector.
double log_likelihood(const OrdinalDataset& dataset, const GroupLatents& latents,
                      const ThresholdSet& thresholds);

struct OrdinalPriors {
    statfn::Prior mu_prior = statfn::Prior::normal(3.0, 5.0);
    statfn::Prior tau_prior = statfn::Prior::uniform(5e-3, 50.0);
    statfn::Prior nu_prior = statfn::Prior::exponential(30.0);
    double threshold_sd = 10.0;

    /// Prior for the k-th threshold (k in 1..K-1): normal centered at the
    /// equal-spacing value k + 0.5.
    statfn::Prior threshold_prior(int k) const;
    void validate() const;
};

/// Data-scale priors: mu_g ~ normal((1+K)/2, K), tau_g ~ uniform(K/1000,
/// 10 K), nu_g ~ exponential(30), free thresholds ~ normal(k + 0.5, 2 K).
OrdinalPriors default_ordinal_priors(const OrdinalDataset& dataset);

/// Parameter layout of the joint model. Names are mu_<group>, tau_<group>,
/// nu_<group>, then theta_<item>_<k>; the anchor item's outer thresholds are
/// declared fixed.
struct OrdinalParameterLayout {
    std::vector<std::string> groups;
    std::vector<std::string> item_ids;
    int K = 5;

    std::size_t n_params() const;
    std::size_t mu_index(std::size_t g) const;
    std::size_t tau_index(std::size_t g) const;
    std::size_t nu_index(std::size_t g) const;
    std::size_t theta_index(std::size_t item, int k) const; ///< k in 1..K-1

    GroupLatents latents_from(std::span<const double> x) const;
    ThresholdSet thresholds_from(std::span<const double> x) const;
};

/// Joint sampler-ready model over all groups and items. `fixed_nu` pins
/// every group's normality parameter (used by the grid oracle).
mcmc::Model build_model(const OrdinalDataset& dataset, const OrdinalPriors& priors);
mcmc::Model build_model(const OrdinalDataset& dataset, const OrdinalPriors& priors,
                        double fixed_nu);
OrdinalParameterLayout layout_for(const OrdinalDataset& dataset);

} // namespace bayeslt::ordinal

#endif
