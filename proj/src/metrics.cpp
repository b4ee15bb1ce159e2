#include "pemant/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pemant::metrics {

namespace {

void validate(const PredictionSet& preds) {
    if (preds.empty()) throw DataError("metric over empty prediction set");
    std::set<std::string> ids;
    for (const auto& p : preds) {
        if (!ids.insert(p.household_id).second)
            throw DataError("duplicate household id in prediction set: " + p.household_id);
    }
}

}  // namespace

double mae(const PredictionSet& preds) {
    validate(preds);
    double sum = 0.0;
    for (const auto& p : preds) sum += std::abs(static_cast<double>(p.observed - p.predicted));
    return sum / static_cast<double>(preds.size());
}

double rmse(const PredictionSet& preds) {
    validate(preds);
    double sum = 0.0;
    for (const auto& p : preds) {
        const double d = static_cast<double>(p.observed - p.predicted);
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(preds.size()));
}

double smape_percent(const PredictionSet& preds) {
    validate(preds);
    double sum = 0.0;
    for (const auto& p : preds) {
        const double y = static_cast<double>(p.observed);
        const double yh = static_cast<double>(p.predicted);
        const double denom = std::abs(y) + std::abs(yh);
        if (denom != 0.0) sum += 2.0 * std::abs(y - yh) / denom;
        // y == yhat == 0 contributes 0: a perfect prediction.
    }
    return 100.0 * sum / static_cast<double>(preds.size());
}

double acc_within(const PredictionSet& preds, long long tol) {
    validate(preds);
    if (tol < 0) throw DataError("acc_within tolerance must be >= 0");
    std::size_t hits = 0;
    for (const auto& p : preds) {
        if (std::abs(p.observed - p.predicted) <= tol) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(preds.size());
}

double qwk(const std::vector<OrdinalPair>& pairs, int k) {
    if (pairs.size() < 2) throw DataError("qwk needs at least 2 pairs");
    if (k < 2) throw DataError("qwk needs at least 2 categories");
    std::vector<std::vector<double>> observed(k, std::vector<double>(k, 0.0));
    std::vector<double> marg_h(k, 0.0), marg_a(k, 0.0);
    for (const auto& p : pairs) {
        if (p.human < 1 || p.human > k || p.agent < 1 || p.agent > k)
            throw DataError("qwk response outside 1..k");
        observed[p.human - 1][p.agent - 1] += 1.0;
        marg_h[p.human - 1] += 1.0;
        marg_a[p.agent - 1] += 1.0;
    }
    const double n = static_cast<double>(pairs.size());
    double num = 0.0, den = 0.0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const double w = static_cast<double>((i - j) * (i - j));
            num += w * observed[i][j];
            den += w * marg_h[i] * marg_a[j] / n;
        }
    }
    if (den == 0.0) throw DataError("qwk undefined: zero expected disagreement");
    return 1.0 - num / den;
}

double wasserstein_ordinal(const std::vector<double>& hist_u, const std::vector<double>& hist_v) {
    if (hist_u.size() != hist_v.size() || hist_u.empty())
        throw DataError("wasserstein histograms must share a nonzero size");
    auto check = [](const std::vector<double>& h, const char* which) {
        double s = 0.0;
        for (double v : h) {
            if (v < 0.0) throw DataError(std::string("wasserstein ") + which + " histogram has a negative mass");
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-9)
            throw DataError(std::string("wasserstein ") + which + " histogram does not normalize to 1");
    };
    check(hist_u, "first");
    check(hist_v, "second");
    double cdf_u = 0.0, cdf_v = 0.0, dist = 0.0;
    for (std::size_t i = 0; i < hist_u.size(); ++i) {
        cdf_u += hist_u[i];
        cdf_v += hist_v[i];
        dist += std::abs(cdf_u - cdf_v);
    }
    return dist;
}

std::vector<double> likert_histogram(const std::vector<long long>& responses, int k) {
    if (responses.empty()) throw DataError("histogram over empty response set");
    std::vector<double> h(k, 0.0);
    for (long long r : responses) {
        if (r < 1 || r > k) throw DataError("likert response outside 1..k");
        h[r - 1] += 1.0;
    }
    for (double& v : h) v /= static_cast<double>(responses.size());
    return h;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    if (va == 0.0 || vb == 0.0) throw DataError("correlation undefined for a constant column");
    return cov / std::sqrt(va * vb);
}

bool is_constant(const std::vector<double>& v) {
    for (double x : v)
        if (x != v.front()) return false;
    return true;
}

}  // namespace

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw DataError("spearman size mismatch");
    if (a.size() < 2) throw DataError("spearman needs at least 2 points");
    return pearson(average_ranks(a), average_ranks(b));
}

AlignmentResult structural_alignment(const AlignmentInput& obs, const AlignmentInput& sim) {
    AlignmentResult out;
    for (const auto& [cov_name, cov_obs] : obs.covariates) {
        auto cov_sim_it = sim.covariates.find(cov_name);
        if (cov_sim_it == sim.covariates.end()) continue;
        for (const auto& [op_name, op_obs] : obs.opinions) {
            auto op_sim_it = sim.opinions.find(op_name);
            if (op_sim_it == sim.opinions.end()) continue;
            const std::string pair_name = cov_name + ":" + op_name;
            const auto& cov_sim = cov_sim_it->second;
            const auto& op_sim = op_sim_it->second;
            if (cov_obs.size() != op_obs.size() || cov_sim.size() != op_sim.size())
                throw DataError("structural alignment: column length mismatch for " + pair_name);
            if (cov_obs.size() < 2 || cov_sim.size() < 2 || is_constant(cov_obs) ||
                is_constant(op_obs) || is_constant(cov_sim) || is_constant(op_sim)) {
                out.dropped_pairs.push_back(pair_name);
                continue;
            }
            out.pair_names.push_back(pair_name);
            out.rho_obs.push_back(spearman(cov_obs, op_obs));
            out.rho_sim.push_back(spearman(cov_sim, op_sim));
        }
    }
    if (out.rho_obs.size() < 3)
        throw DataError("structural alignment needs at least 3 surviving covariate-opinion pairs");
    out.value = spearman(out.rho_obs, out.rho_sim);
    return out;
}

MetricsReport compute_report(const PredictionSet& preds, std::size_t excluded) {
    MetricsReport r;
    r.n = preds.size();
    r.excluded = excluded;
    r.mae = mae(preds);
    r.rmse = rmse(preds);
    r.smape_percent = smape_percent(preds);
    r.acc_within_2 = acc_within(preds, 2);
    return r;
}

std::string MetricsReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["n"] = n;
    j["excluded"] = excluded;
    j["mae"] = mae;
    j["rmse"] = rmse;
    j["smape_percent"] = smape_percent;
    j["acc_within_2"] = acc_within_2;
    if (perception) {
        nlohmann::json p;
        for (const auto& v : perception->variables) {
            nlohmann::json jv;
            jv["variable"] = v.variable;
            jv["n"] = v.n;
            jv["non_responses"] = v.non_responses;
            jv["exact_acc"] = v.exact_acc;
            jv["acc_within_1"] = v.acc_within_1;
            jv["mae"] = v.mae;
            if (v.qwk) jv["qwk"] = *v.qwk;
            jv["wasserstein"] = v.wasserstein;
            p["variables"].push_back(jv);
        }
        p["exact_acc_pooled"] = perception->exact_acc_pooled;
        p["exact_acc_mean_of_variables"] = perception->exact_acc_mean_of_variables;
        p["acc_within_1_pooled"] = perception->acc_within_1_pooled;
        p["acc_within_1_mean_of_variables"] = perception->acc_within_1_mean_of_variables;
        p["mae_pooled"] = perception->mae_pooled;
        p["mae_mean_of_variables"] = perception->mae_mean_of_variables;
        if (perception->structural_alignment)
            p["structural_alignment"] = *perception->structural_alignment;
        p["alignment_dropped_pairs"] = perception->alignment_dropped_pairs;
        j["perception"] = p;
    }
    return j.dump(2) + "\n";
}

std::string MetricsReport::to_table() const {
    std::ostringstream os;
    os << "households evaluated: " << n << " (excluded: " << excluded << ")\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "MAE %.4f | RMSE %.4f | sMAPE %.2f%% | +-2 acc %.4f\n", mae,
                  rmse, smape_percent, acc_within_2);
    os << buf;
    if (perception) {
        os << "perception validation:\n";
        for (const auto& v : perception->variables) {
            std::snprintf(buf, sizeof(buf),
                          "  %-8s n=%zu exact %.3f | +-1 %.3f | MAE %.3f | QWK %s | W1 %.3f\n",
                          v.variable.c_str(), v.n, v.exact_acc, v.acc_within_1, v.mae,
                          v.qwk ? std::to_string(*v.qwk).c_str() : "n/a", v.wasserstein);
            os << buf;
        }
        std::snprintf(buf, sizeof(buf), "  aggregate +-1 acc: pooled %.3f, mean-of-variables %.3f\n",
                      perception->acc_within_1_pooled, perception->acc_within_1_mean_of_variables);
        os << buf;
        if (perception->structural_alignment) {
            std::snprintf(buf, sizeof(buf), "  structural alignment: %.4f\n",
                          *perception->structural_alignment);
            os << buf;
        }
    }
    return os.str();
}

}  // namespace pemant::metrics
