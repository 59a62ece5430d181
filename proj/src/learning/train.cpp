#include "uavloc/learning/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "uavloc/rng.hpp"

namespace uavloc {

void TrainableModel::zero_grads() {
    for (Tensor* t : params()) t->zero_grad();
}

int TrainableModel::param_count() {
    int total = 0;
    for (Tensor* t : params()) total += t->size();
    return total;
}

std::vector<std::vector<double>> TrainableModel::snapshot() {
    std::vector<std::vector<double>> snap;
    for (Tensor* t : params()) snap.push_back(t->data);
    return snap;
}

void TrainableModel::restore(const std::vector<std::vector<double>>& snap) {
    const auto ps = params();
    if (snap.size() != ps.size()) throw std::invalid_argument("restore: snapshot arity mismatch");
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (snap[i].size() != ps[i]->data.size())
            throw std::invalid_argument("restore: snapshot shape mismatch");
        ps[i]->data = snap[i];
    }
}

DatasetSplit make_split(int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("make_split: need at least one sample");
    std::vector<int> idx(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) idx[static_cast<std::size_t>(i)] = i;
    Rng rng(seed);
    rng.shuffle(idx);

    const int n_train = static_cast<int>(std::lround(n_samples * 0.666));
    const int n_test = static_cast<int>(std::lround(n_samples * 0.222));
    DatasetSplit split;
    split.train.assign(idx.begin(), idx.begin() + n_train);
    split.test.assign(idx.begin() + n_train, idx.begin() + std::min(n_samples, n_train + n_test));
    split.validation.assign(idx.begin() + std::min(n_samples, n_train + n_test), idx.end());
    return split;
}

double eval_loss(TrainableModel& model, const std::vector<LabeledSample>& samples,
                 const std::vector<int>& indices) {
    if (indices.empty()) return 0.0;
    double total = 0.0;
    for (int i : indices) total += model.forward_loss(samples[static_cast<std::size_t>(i)]);
    return total / static_cast<double>(indices.size());
}

TrainResult train_model(TrainableModel& model, const std::vector<LabeledSample>& samples,
                        const DatasetSplit& split, const TrainConfig& cfg) {
    if (split.train.empty()) throw std::invalid_argument("train: empty training split");
    if (cfg.batch_size < 1 || cfg.epochs < 1) throw std::invalid_argument("train: bad config");

    // Empty validation split (tiny memorization runs) falls back to the
    // training loss for checkpointing.
    const std::vector<int>& val_idx = split.validation.empty() ? split.train : split.validation;

    const auto ps = model.params();
    std::vector<std::vector<double>> velocity;
    for (Tensor* t : ps) velocity.emplace_back(t->data.size(), 0.0);

    TrainResult result;
    auto best = model.snapshot();
    result.best_val_loss = eval_loss(model, samples, val_idx);
    result.best_epoch = 0;

    Rng rng(cfg.shuffle_seed);
    std::vector<int> order = split.train;
    int stall = 0;

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;
        std::size_t seen = 0;
        for (std::size_t start = 0; start < order.size();
             start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t stop =
                std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
            model.zero_grads();
            double batch_loss = 0.0;
            for (std::size_t i = start; i < stop; ++i) {
                batch_loss += model.forward_loss(samples[static_cast<std::size_t>(order[i])]);
                model.backward();
            }
            const double denom = static_cast<double>(stop - start);
            if (!std::isfinite(batch_loss)) {
                model.restore(best);
                result.diverged = true;
                return result;
            }
            epoch_loss += batch_loss;
            seen += stop - start;
            for (std::size_t p = 0; p < ps.size(); ++p) {
                auto& v = velocity[p];
                auto& data = ps[p]->data;
                const auto& grad = ps[p]->grad;
                for (std::size_t j = 0; j < v.size(); ++j) {
                    v[j] = cfg.momentum * v[j] - cfg.lr * grad[j] / denom;
                    data[j] += v[j];
                }
            }
        }
        const double train_loss = epoch_loss / static_cast<double>(seen);
        const double val_loss = eval_loss(model, samples, val_idx);
        result.curve.push_back({epoch, train_loss, val_loss});
        if (!std::isfinite(val_loss)) {
            model.restore(best);
            result.diverged = true;
            return result;
        }
        if (val_loss < result.best_val_loss) {
            result.best_val_loss = val_loss;
            result.best_epoch = epoch;
            best = model.snapshot();
            stall = 0;
        } else {
            ++stall;
            if (stall >= cfg.patience) break;
        }
    }
    model.restore(best);
    return result;
}

double grad_check(TrainableModel& model, const LabeledSample& sample, double epsilon) {
    if (epsilon < 1e-7 || epsilon > 1e-3)
        throw std::invalid_argument("grad_check: epsilon out of [1e-7, 1e-3]");
    model.zero_grads();
    model.forward_loss(sample);
    model.backward();

    std::vector<std::vector<double>> analytic;
    for (Tensor* t : model.params()) analytic.push_back(t->grad);

    double max_rel = 0.0;
    const auto ps = model.params();
    for (std::size_t p = 0; p < ps.size(); ++p) {
        for (std::size_t j = 0; j < ps[p]->data.size(); ++j) {
            const double orig = ps[p]->data[j];
            ps[p]->data[j] = orig + epsilon;
            const double lp = model.forward_loss(sample);
            ps[p]->data[j] = orig - epsilon;
            const double lm = model.forward_loss(sample);
            ps[p]->data[j] = orig;
            const double numeric = (lp - lm) / (2.0 * epsilon);
            const double a = analytic[p][j];
            const double rel =
                std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1e-3});
            max_rel = std::max(max_rel, rel);
        }
    }
    return max_rel;
}

void write_curve_csv(const std::vector<CurvePoint>& curve, std::ostream& os) {
    os << "epoch,train_loss,val_loss\n";
    for (const CurvePoint& c : curve)
        os << c.epoch << ',' << c.train_loss << ',' << c.val_loss << '\n';
}

}  // namespace uavloc
