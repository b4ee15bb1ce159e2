#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pemant/common.hpp"

namespace pemant::metrics {

struct PredictionPair {
    std::string household_id;
    long long observed = 0;
    long long predicted = 0;
};

// Non-empty, household ids unique. Validated by the metric entry points.
using PredictionSet = std::vector<PredictionPair>;

double mae(const PredictionSet& preds);
double rmse(const PredictionSet& preds);

// Mean of 2|y - yhat| / (|y| + |yhat|), with the 0/0 term defined as 0,
// reported multiplied by 100.
double smape_percent(const PredictionSet& preds);

// Fraction of pairs with |y - yhat| <= tol.
double acc_within(const PredictionSet& preds, long long tol);

// --- ordinal agreement ------------------------------------------------------

struct OrdinalPair {
    long long human = 0;
    long long agent = 0;
};

// Quadratic weighted kappa over categories 1..k. Weights are (i-j)^2 and the
// expected matrix is the outer product of the marginals scaled to the total
// count. Throws DataError when the expected disagreement is zero (degenerate
// marginals) or a response falls outside 1..k.
double qwk(const std::vector<OrdinalPair>& pairs, int k);

// Sum over k of |CDF_u(k) - CDF_v(k)| for two histograms over 1..K. Both
// histograms must sum to 1 within 1e-9.
double wasserstein_ordinal(const std::vector<double>& hist_u, const std::vector<double>& hist_v);

// Histogram over categories 1..k from raw responses (counts normalized to 1).
std::vector<double> likert_histogram(const std::vector<long long>& responses, int k);

// Spearman rank correlation with average ranks for ties. Throws DataError on
// size mismatch, fewer than 2 points, or a constant column.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

// --- structural correlation alignment ----------------------------------------

// One population: per-respondent covariate columns and opinion columns, all
// aligned by index. Column order is canonicalized by name.
struct AlignmentInput {
    std::map<std::string, std::vector<double>> covariates;
    std::map<std::string, std::vector<double>> opinions;
};

struct AlignmentResult {
    double value = 0.0;
    std::vector<std::string> dropped_pairs;  // "covariate:opinion" with a constant column
    std::vector<double> rho_obs;
    std::vector<double> rho_sim;
    std::vector<std::string> pair_names;
};

// Spearman correlation between the two vectors of per-(covariate, opinion)
// Spearman correlations. Pairs with a constant column in either population are
// dropped from both; fewer than 3 surviving pairs is a DataError.
AlignmentResult structural_alignment(const AlignmentInput& obs, const AlignmentInput& sim);

// --- report -------------------------------------------------------------------

struct PerceptionVariableMetrics {
    std::string variable;
    std::size_t n = 0;
    std::size_t non_responses = 0;
    double exact_acc = 0.0;
    double acc_within_1 = 0.0;
    double mae = 0.0;
    std::optional<double> qwk;  // absent when degenerate
    double wasserstein = 0.0;
};

struct PerceptionBlock {
    std::vector<PerceptionVariableMetrics> variables;
    // Open aggregation question: both weightings are reported.
    double exact_acc_pooled = 0.0;
    double exact_acc_mean_of_variables = 0.0;
    double acc_within_1_pooled = 0.0;
    double acc_within_1_mean_of_variables = 0.0;
    double mae_pooled = 0.0;
    double mae_mean_of_variables = 0.0;
    std::optional<double> structural_alignment;
    std::vector<std::string> alignment_dropped_pairs;
};

struct MetricsReport {
    std::size_t n = 0;
    std::size_t excluded = 0;
    double mae = 0.0;
    double rmse = 0.0;
    double smape_percent = 0.0;
    double acc_within_2 = 0.0;
    std::optional<PerceptionBlock> perception;

    std::string to_json() const;        // stable key order
    std::string to_table() const;       // human-readable
};

MetricsReport compute_report(const PredictionSet& preds, std::size_t excluded);

}  // namespace pemant::metrics
