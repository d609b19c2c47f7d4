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

#include "ratemodel/models.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "ratemodel/errors.h"
#include "ratemodel/io_util.h"

namespace ratemodel {

// ---------------------------------------------------------------------------
// Feature masks

FeatureMask FeatureMask::parse(std::string_view text) {
    FeatureMask mask = FeatureMask::none();
    for (char ch : text) {
        switch (ch) {
            case 'S': case 's': mask.s = true; break;
            case 'L': case 'l': mask.l = true; break;
            case 'Z': case 'z': mask.z = true; break;
            case 'E': case 'e': mask.e = true; break;
            default:
                throw DataError(std::string("invalid feature letter '") + ch +
                                "' (expected a subset of SLZE)");
        }
    }
    return mask;
}

std::string FeatureMask::str() const {
    std::string out;
    if (s) out += 'S';
    if (l) out += 'L';
    if (z) out += 'Z';
    if (e) out += 'E';
    return out;
}

const std::array<FeatureMask, 15>& FeatureMask::all_subsets() {
    static const std::array<FeatureMask, 15> subsets = [] {
        std::array<FeatureMask, 15> out{};
        size_t i = 0;
        for (int size = 1; size <= 4; ++size) {
            // Bits in SLZE order; enumerate so that earlier letters vary last,
            // giving S, L, Z, E / SL, SZ, SE, LZ, LE, ZE / SLZ, SLE, SZE, LZE / SLZE.
            for (unsigned bits = 1; bits < 16; ++bits) {
                if (std::popcount(bits) != size) continue;
                FeatureMask m = FeatureMask::none();
                m.s = (bits & 1u) != 0;
                m.l = (bits & 2u) != 0;
                m.z = (bits & 4u) != 0;
                m.e = (bits & 8u) != 0;
                out[i++] = m;
            }
        }
        return out;
    }();
    return subsets;
}

// ---------------------------------------------------------------------------
// Prediction

double predict_subblock(const SubBlockLinearParams& params, const FeatureVector& fv) {
    return params.a * fv.s + params.b * fv.l + params.c * fv.z + params.d * fv.e + params.e;
}

double predict_rho(const RhoDomainParams& params, const FeatureVector& fv) {
    return params.alpha * fv.s + params.beta;
}

namespace {

inline double logistic_g(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

double predict_logistic(const LogisticParams& params, const CoeffBlock& block) {
    validate_block(block);
    double acc = 0.0;
    for (int32_t v : block.coeffs) {
        const double a = std::abs(static_cast<double>(v));
        acc += params.alpha * a + params.beta * logistic_g(params.gamma * a + params.delta);
    }
    return acc + params.epsilon;
}

// ---------------------------------------------------------------------------
// Linear least squares (pseudo-inverse semantics)

namespace {

void check_fit_inputs(size_t n_features, size_t n_rates, std::span<const double> rates) {
    if (n_features == 0) {
        throw DataError("cannot fit on an empty dataset");
    }
    if (n_features != n_rates) {
        throw DataError("feature/rate count mismatch: " + std::to_string(n_features) + " vs " +
                        std::to_string(n_rates));
    }
    for (double r : rates) {
        if (!std::isfinite(r)) {
            throw NumericError("non-finite rate in training data");
        }
    }
}

}  // namespace

std::pair<SubBlockLinearParams, FitReport> fit_linear(std::span<const FeatureVector> features,
                                                      std::span<const double> rates,
                                                      const FeatureMask& mask, bool bias) {
    check_fit_inputs(features.size(), rates.size(), rates);
    const int cols = mask.count() + (bias ? 1 : 0);
    if (cols == 0) {
        throw DataError("feature mask is empty and bias is disabled; nothing to fit");
    }

    const auto n = static_cast<Eigen::Index>(features.size());
    Eigen::MatrixXd design(n, cols);
    Eigen::VectorXd target(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const FeatureVector& fv = features[static_cast<size_t>(i)];
        const std::array<double, 4> values = fv.as_array();
        for (double v : values) {
            if (!std::isfinite(v)) {
                throw NumericError("non-finite feature value in training data");
            }
        }
        int col = 0;
        if (mask.s) design(i, col++) = fv.s;
        if (mask.l) design(i, col++) = fv.l;
        if (mask.z) design(i, col++) = fv.z;
        if (mask.e) design(i, col++) = fv.e;
        if (bias) design(i, col++) = 1.0;
        target(i) = rates[static_cast<size_t>(i)];
    }

    // SVD solve: numerically stable and yields the minimum-norm solution on
    // rank deficiency, matching pseudo-inverse behaviour.
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design,
                                                Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd weights = svd.solve(target);

    SubBlockLinearParams params;
    params.bias_enabled = bias;
    int col = 0;
    if (mask.s) params.a = weights(col++);
    if (mask.l) params.b = weights(col++);
    if (mask.z) params.c = weights(col++);
    if (mask.e) params.d = weights(col++);
    if (bias) params.e = weights(col++);

    const double mse = (design * weights - target).squaredNorm() / static_cast<double>(n);
    return {params, FitReport{mse, 0, true}};
}

std::pair<RhoDomainParams, FitReport> fit_rho(std::span<const FeatureVector> features,
                                              std::span<const double> rates, bool bias) {
    FeatureMask mask = FeatureMask::none();
    mask.s = true;
    auto [linear, report] = fit_linear(features, rates, mask, bias);
    return {RhoDomainParams{linear.a, linear.e}, report};
}

// ---------------------------------------------------------------------------
// Logistic model training
//
// The model sums identical terms over every coefficient position, so each
// block is reduced once to a magnitude histogram; MSE and gradient passes
// then cost O(distinct magnitudes) per block instead of O(positions).

namespace {

struct BlockHist {
    std::vector<std::pair<double, double>> bins;  // (magnitude, count), ascending
    double mag_sum = 0.0;                         // sum of |c|
};

BlockHist make_hist(const CoeffBlock& block) {
    validate_block(block);
    std::vector<uint32_t> mags(block.coeffs.size());
    for (size_t i = 0; i < block.coeffs.size(); ++i) {
        const int32_t v = block.coeffs[i];
        mags[i] = v < 0 ? 0u - static_cast<uint32_t>(v) : static_cast<uint32_t>(v);
    }
    std::sort(mags.begin(), mags.end());
    BlockHist hist;
    for (size_t i = 0; i < mags.size();) {
        size_t j = i;
        while (j < mags.size() && mags[j] == mags[i]) ++j;
        hist.bins.emplace_back(static_cast<double>(mags[i]), static_cast<double>(j - i));
        hist.mag_sum += static_cast<double>(mags[i]) * static_cast<double>(j - i);
        i = j;
    }
    return hist;
}

// The descent problem, optionally in normalized coordinates. With all scales
// at 1 this evaluates the raw MSE for raw parameters; fit_logistic sets the
// scales so that the linear-part features and the target are order 1, which
// is the coordinate system GdConfig's init/step refer to.
struct LogisticProblem {
    std::vector<BlockHist> hists;
    std::vector<double> rates;
    double positions_total = 0.0;
    double scale_rate = 1.0;      // divides R
    double scale_mag_sum = 1.0;   // divides sum|c|
    double scale_positions = 1.0; // divides the g-term sum
    double scale_mag = 1.0;       // divides |c| inside g

    void add_block(const CoeffBlock& block, double rate) {
        if (!std::isfinite(rate)) {
            throw NumericError("non-finite rate in training data");
        }
        hists.push_back(make_hist(block));
        rates.push_back(rate);
        positions_total += static_cast<double>(block.coeffs.size());
    }

    void choose_scales() {
        const double n = static_cast<double>(hists.size());
        double rate_abs = 0.0;
        double mag_total = 0.0;
        double nonzero_total = 0.0;
        for (size_t i = 0; i < hists.size(); ++i) {
            rate_abs += std::abs(rates[i]);
            mag_total += hists[i].mag_sum;
            for (const auto& [mag, count] : hists[i].bins) {
                if (mag > 0.0) nonzero_total += count;
            }
        }
        const auto positive_or_one = [](double v) { return v > 0.0 ? v : 1.0; };
        scale_rate = positive_or_one(rate_abs / n);
        scale_mag_sum = positive_or_one(mag_total / n);
        scale_positions = positive_or_one(positions_total / n);
        scale_mag = positive_or_one(nonzero_total > 0.0 ? mag_total / nonzero_total : 0.0);
    }

    double block_prediction(const LogisticParams& p, size_t i) const {
        const BlockHist& h = hists[i];
        double gsum = 0.0;
        for (const auto& [mag, count] : h.bins) {
            gsum += count * logistic_g(p.gamma * (mag / scale_mag) + p.delta);
        }
        return p.alpha * (h.mag_sum / scale_mag_sum) + p.beta * (gsum / scale_positions) +
               p.epsilon;
    }

    double mse(const LogisticParams& p) const {
        double acc = 0.0;
        for (size_t i = 0; i < hists.size(); ++i) {
            const double r = block_prediction(p, i) - rates[i] / scale_rate;
            acc += r * r;
        }
        return acc / static_cast<double>(hists.size());
    }

    std::array<double, 5> gradient(const LogisticParams& p) const {
        std::array<double, 5> grad{};
        for (size_t i = 0; i < hists.size(); ++i) {
            const BlockHist& h = hists[i];
            double gsum = 0.0;
            double dg_dgamma = 0.0;
            double dg_ddelta = 0.0;
            for (const auto& [mag, count] : h.bins) {
                const double scaled = mag / scale_mag;
                const double g = logistic_g(p.gamma * scaled + p.delta);
                const double gprime = g * (1.0 - g);
                gsum += count * g;
                dg_dgamma += count * gprime * scaled;
                dg_ddelta += count * gprime;
            }
            const double pred = p.alpha * (h.mag_sum / scale_mag_sum) +
                                p.beta * (gsum / scale_positions) + p.epsilon;
            const double resid = pred - rates[i] / scale_rate;
            grad[0] += resid * (h.mag_sum / scale_mag_sum);
            grad[1] += resid * (gsum / scale_positions);
            grad[2] += resid * p.beta * (dg_dgamma / scale_positions);
            grad[3] += resid * p.beta * (dg_ddelta / scale_positions);
            grad[4] += resid;
        }
        const double scale = 2.0 / static_cast<double>(hists.size());
        for (double& g : grad) g *= scale;
        return grad;
    }

    // Maps normalized parameters back to raw units.
    LogisticParams denormalize(const LogisticParams& p) const {
        LogisticParams raw;
        raw.alpha = p.alpha * scale_rate / scale_mag_sum;
        raw.beta = p.beta * scale_rate / scale_positions;
        raw.gamma = p.gamma / scale_mag;
        raw.delta = p.delta;
        raw.epsilon = p.epsilon * scale_rate;
        return raw;
    }
};

LogisticParams apply_step(const LogisticParams& p, const std::array<double, 5>& grad,
                          double step) {
    return LogisticParams{p.alpha - step * grad[0], p.beta - step * grad[1],
                          p.gamma - step * grad[2], p.delta - step * grad[3],
                          p.epsilon - step * grad[4]};
}

std::pair<LogisticParams, FitReport> run_gradient_descent(LogisticProblem& problem,
                                                          const GdConfig& config) {
    if (problem.hists.empty()) {
        throw DataError("cannot fit on an empty dataset");
    }
    problem.choose_scales();
    const double mse_unit = problem.scale_rate * problem.scale_rate;

    LogisticParams theta = config.init;
    double current = problem.mse(theta);
    if (!std::isfinite(current)) {
        throw NumericError("non-finite MSE at initialization");
    }
    if (config.mse_trace) {
        config.mse_trace->clear();
        config.mse_trace->push_back(current * mse_unit);
    }

    double step = config.step;
    int iterations = 0;
    bool converged = false;
    while (iterations < config.max_iters) {
        const std::array<double, 5> grad = problem.gradient(theta);
        for (double g : grad) {
            if (!std::isfinite(g)) {
                throw NumericError("non-finite gradient at iteration " +
                                   std::to_string(iterations));
            }
        }

        bool accepted = false;
        while (step >= config.min_step) {
            const LogisticParams candidate = apply_step(theta, grad, step);
            const double trial = problem.mse(candidate);
            if (std::isfinite(trial) && trial <= current) {
                theta = candidate;
                accepted = true;
                const double previous = current;
                current = trial;
                ++iterations;
                if (config.mse_trace) {
                    config.mse_trace->push_back(current * mse_unit);
                }
                if (previous - current <= config.rel_tol * previous) {
                    converged = true;
                }
                break;
            }
            step *= 0.5;
        }
        if (!accepted || converged || current == 0.0) {
            converged = converged || current == 0.0;
            break;
        }
    }

    return {problem.denormalize(theta), FitReport{current * mse_unit, iterations, converged}};
}

}  // namespace

std::pair<LogisticParams, FitReport> fit_logistic(std::span<const CoeffBlock> blocks,
                                                  std::span<const double> rates,
                                                  const GdConfig& config) {
    if (blocks.size() != rates.size()) {
        throw DataError("block/rate count mismatch");
    }
    LogisticProblem problem;
    for (size_t i = 0; i < blocks.size(); ++i) {
        problem.add_block(blocks[i], rates[i]);
    }
    return run_gradient_descent(problem, config);
}

std::pair<LogisticParams, FitReport> fit_logistic(std::span<const DatasetRecord> records,
                                                  const GdConfig& config) {
    LogisticProblem problem;
    for (const DatasetRecord& rec : records) {
        problem.add_block(rec.block, rec.rate_bits);
    }
    return run_gradient_descent(problem, config);
}

namespace {

LogisticProblem raw_problem(std::span<const CoeffBlock> blocks, std::span<const double> rates) {
    if (blocks.empty()) {
        throw DataError("cannot evaluate the logistic model on an empty dataset");
    }
    if (blocks.size() != rates.size()) {
        throw DataError("block/rate count mismatch");
    }
    LogisticProblem problem;  // all scales stay 1: raw coordinates
    for (size_t i = 0; i < blocks.size(); ++i) {
        problem.add_block(blocks[i], rates[i]);
    }
    return problem;
}

}  // namespace

double logistic_mse(const LogisticParams& params, std::span<const CoeffBlock> blocks,
                    std::span<const double> rates) {
    return raw_problem(blocks, rates).mse(params);
}

std::array<double, 5> analytic_gradient(const LogisticParams& params,
                                        std::span<const CoeffBlock> blocks,
                                        std::span<const double> rates) {
    return raw_problem(blocks, rates).gradient(params);
}

// ---------------------------------------------------------------------------
// Tagged union + model file

ModelKind parse_model_kind(std::string_view name) {
    if (name == "subblock") return ModelKind::kSubBlock;
    if (name == "rho") return ModelKind::kRho;
    if (name == "logistic") return ModelKind::kLogistic;
    throw DataError("unknown model kind '" + std::string(name) +
                    "' (expected subblock, rho or logistic)");
}

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::kSubBlock: return "subblock";
        case ModelKind::kRho: return "rho";
        case ModelKind::kLogistic: return "logistic";
    }
    return "?";
}

ModelKind kind_of(const RateModel& model) {
    if (std::holds_alternative<SubBlockLinearParams>(model)) return ModelKind::kSubBlock;
    if (std::holds_alternative<RhoDomainParams>(model)) return ModelKind::kRho;
    return ModelKind::kLogistic;
}

double predict(const RateModel& model, const CoeffBlock& block, const FeatureVector& fv) {
    if (const auto* sub = std::get_if<SubBlockLinearParams>(&model)) {
        return predict_subblock(*sub, fv);
    }
    if (const auto* rho = std::get_if<RhoDomainParams>(&model)) {
        return predict_rho(*rho, fv);
    }
    return predict_logistic(std::get<LogisticParams>(model), block);
}

double predict(const RateModel& model, const CoeffBlock& block) {
    if (std::holds_alternative<LogisticParams>(model)) {
        return predict_logistic(std::get<LogisticParams>(model), block);
    }
    return predict(model, block, extract(block));
}

namespace {

using json = nlohmann::ordered_json;

}  // namespace

std::string serialize_model(const ModelFile& file) {
    json doc;
    doc["model_kind"] = std::string(to_string(kind_of(file.model)));
    json params;
    if (const auto* sub = std::get_if<SubBlockLinearParams>(&file.model)) {
        params["a"] = sub->a;
        params["b"] = sub->b;
        params["c"] = sub->c;
        params["d"] = sub->d;
        params["e"] = sub->e;
    } else if (const auto* rho = std::get_if<RhoDomainParams>(&file.model)) {
        params["alpha"] = rho->alpha;
        params["beta"] = rho->beta;
    } else {
        const auto& lg = std::get<LogisticParams>(file.model);
        params["alpha"] = lg.alpha;
        params["beta"] = lg.beta;
        params["gamma"] = lg.gamma;
        params["delta"] = lg.delta;
        params["epsilon"] = lg.epsilon;
    }
    doc["params"] = params;
    doc["bias_enabled"] = file.bias_enabled;
    doc["feature_mask"] = file.feature_mask.str();
    doc["training"] = {{"qp_train", file.qp_train},
                       {"n_samples", file.n_samples},
                       {"final_mse", file.final_mse}};
    return doc.dump(2) + "\n";
}

ModelFile parse_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& ex) {
        throw DataError(std::string("malformed model file: ") + ex.what());
    }
    try {
        ModelFile file;
        const ModelKind kind = parse_model_kind(doc.at("model_kind").get<std::string>());
        const json& params = doc.at("params");
        switch (kind) {
            case ModelKind::kSubBlock: {
                SubBlockLinearParams p;
                p.a = params.at("a").get<double>();
                p.b = params.at("b").get<double>();
                p.c = params.at("c").get<double>();
                p.d = params.at("d").get<double>();
                p.e = params.at("e").get<double>();
                p.bias_enabled = doc.at("bias_enabled").get<bool>();
                file.model = p;
                break;
            }
            case ModelKind::kRho: {
                file.model = RhoDomainParams{params.at("alpha").get<double>(),
                                             params.at("beta").get<double>()};
                break;
            }
            case ModelKind::kLogistic: {
                file.model = LogisticParams{
                    params.at("alpha").get<double>(), params.at("beta").get<double>(),
                    params.at("gamma").get<double>(), params.at("delta").get<double>(),
                    params.at("epsilon").get<double>()};
                break;
            }
        }
        file.bias_enabled = doc.at("bias_enabled").get<bool>();
        file.feature_mask = FeatureMask::parse(doc.at("feature_mask").get<std::string>());
        const json& training = doc.at("training");
        file.qp_train = training.at("qp_train").get<std::vector<int>>();
        file.n_samples = training.at("n_samples").get<uint64_t>();
        file.final_mse = training.at("final_mse").get<double>();
        return file;
    } catch (const json::exception& ex) {
        throw DataError(std::string("invalid model file: ") + ex.what());
    }
}

void write_model_file(const ModelFile& file, const std::string& path) {
    write_text_file_atomic(path, serialize_model(file));
}

ModelFile read_model_file(const std::string& path) {
    return parse_model(read_text_file(path));
}

}  // namespace ratemodel
