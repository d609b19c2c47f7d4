// Copyright 2026 the ratemodel project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ratemodel/block.h"
#include "ratemodel/features.h"

namespace ratemodel {

// Selects a subset of the four features for fitting/prediction. Canonical
// string form uses the letters SLZE in that order (e.g. "SL", "SZE").
struct FeatureMask {
    bool s = true;
    bool l = true;
    bool z = true;
    bool e = true;

    static FeatureMask parse(std::string_view text);  // throws DataError on bad letters
    static FeatureMask none() { return {false, false, false, false}; }
    std::string str() const;
    int count() const { return int(s) + int(l) + int(z) + int(e); }
    bool empty() const { return count() == 0; }

    // The 15 non-empty subsets: singles, pairs, triples, full set, each group
    // in SLZE order.
    static const std::array<FeatureMask, 15>& all_subsets();

    bool operator==(const FeatureMask&) const = default;
};

// Linear model on the four features: R_est = a*S + b*L + c*Z + d*E + e.
// Masked-out features keep weight exactly 0; with bias disabled, e == 0.
struct SubBlockLinearParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double e = 0.0;
    bool bias_enabled = true;
};

// Nonzero-count baseline: R_est = alpha*S + beta.
struct RhoDomainParams {
    double alpha = 0.0;
    double beta = 0.0;
};

// Per-coefficient baseline: R_est = sum over positions of
// alpha*|c| + beta*g(gamma*|c| + delta), plus epsilon, with the logistic
// g(x) = 1/(1+exp(-x)). The sum runs over every position, zeros included.
struct LogisticParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;
};

struct FitReport {
    double final_mse = 0.0;
    int iterations = 0;  // 0 for closed-form fits
    bool converged = true;
};

double predict_subblock(const SubBlockLinearParams& params, const FeatureVector& fv);
double predict_rho(const RhoDomainParams& params, const FeatureVector& fv);
double predict_logistic(const LogisticParams& params, const CoeffBlock& block);

// Least-squares fit of the masked linear model (pseudo-inverse semantics:
// minimum-norm solution on rank deficiency). Throws DataError on an empty
// dataset or an all-empty design, NumericError on non-finite inputs.
std::pair<SubBlockLinearParams, FitReport> fit_linear(std::span<const FeatureVector> features,
                                                      std::span<const double> rates,
                                                      const FeatureMask& mask, bool bias);

// The rho-domain fit is the S-only linear fit; beta is frozen at 0 when
// bias is false.
std::pair<RhoDomainParams, FitReport> fit_rho(std::span<const FeatureVector> features,
                                              std::span<const double> rates, bool bias = true);

// Full-batch gradient descent settings for the logistic model. The descent
// runs on an internally normalized problem (rates, magnitude sums and
// per-position counts scaled to order 1); `init` and `step` apply in those
// normalized coordinates and the returned parameters are mapped back to raw
// units. Step halving is sticky: a step that caused an MSE increase stays
// halved, so the MSE over accepted iterates never increases.
struct GdConfig {
    LogisticParams init{0.5, 1.0, 1.0, 0.0, 0.0};
    double step = 1e-3;
    int max_iters = 10000;
    double rel_tol = 1e-9;     // stop when (prev-cur) <= rel_tol*prev
    double min_step = 1e-20;   // give up when halving reaches this
    std::vector<double>* mse_trace = nullptr;  // optional accepted-iterate MSE, raw units
};

std::pair<LogisticParams, FitReport> fit_logistic(std::span<const CoeffBlock> blocks,
                                                  std::span<const double> rates,
                                                  const GdConfig& config = {});
std::pair<LogisticParams, FitReport> fit_logistic(std::span<const DatasetRecord> records,
                                                  const GdConfig& config = {});

// MSE of the logistic model and its closed-form gradient d(MSE)/d(params),
// both in raw units. The gradient order is (alpha, beta, gamma, delta,
// epsilon).
double logistic_mse(const LogisticParams& params, std::span<const CoeffBlock> blocks,
                    std::span<const double> rates);
std::array<double, 5> analytic_gradient(const LogisticParams& params,
                                        std::span<const CoeffBlock> blocks,
                                        std::span<const double> rates);

// ---------------------------------------------------------------------------
// Tagged model union and the model parameter file.

enum class ModelKind { kSubBlock, kRho, kLogistic };

ModelKind parse_model_kind(std::string_view name);  // "subblock" | "rho" | "logistic"
std::string_view to_string(ModelKind kind);

using RateModel = std::variant<SubBlockLinearParams, RhoDomainParams, LogisticParams>;

ModelKind kind_of(const RateModel& model);

// Predicts the rate of one block. The feature vector is extracted on demand
// for the linear kinds; pass a precomputed one via the second overload when
// evaluating in a loop.
double predict(const RateModel& model, const CoeffBlock& block);
double predict(const RateModel& model, const CoeffBlock& block, const FeatureVector& fv);

// Model parameter file (JSON). Round-trips parameter values exactly.
struct ModelFile {
    RateModel model;
    FeatureMask feature_mask;  // fit-time mask; full set for rho/logistic
    bool bias_enabled = true;
    std::vector<int> qp_train;  // distinct QPs seen at fit time, ascending
    uint64_t n_samples = 0;
    double final_mse = 0.0;
};

std::string serialize_model(const ModelFile& file);
ModelFile parse_model(const std::string& text);
void write_model_file(const ModelFile& file, const std::string& path);
ModelFile read_model_file(const std::string& path);

}  // namespace ratemodel
