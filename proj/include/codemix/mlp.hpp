#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "codemix/features.hpp"
#include "codemix/types.hpp"

namespace codemix {

struct NetworkLayout {
  std::size_t input_dim = 0;
  std::vector<std::size_t> hidden_sizes;
  std::size_t output_dim = kNumPolarities;

  // One hidden layer of ceil((inputs + outputs) / 2) units.
  static NetworkLayout with_default_hidden(std::size_t input_dim,
                                           std::size_t output_dim = kNumPolarities);
  void validate() const;
  bool operator==(const NetworkLayout&) const = default;
};

// Fully connected sigmoid layer. weights is row-major, one row per output
// unit, with the bias as the last column (weight on a constant-1 input).
struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;
  std::vector<double> previous_update;

  std::size_t cols() const { return inputs + 1; }
  double& w(std::size_t row, std::size_t col) { return weights[row * cols() + col]; }
  double w(std::size_t row, std::size_t col) const { return weights[row * cols() + col]; }
};

struct ForwardPass {
  // activations[0] is the input; activations.back() is the output.
  std::vector<std::vector<double>> activations;

  std::span<const double> output() const { return activations.back(); }
};

struct Gradients {
  std::vector<std::vector<double>> per_layer;
  double loss = 0.0;
};

struct TrainConfig {
  double learning_rate = 0.3;
  double momentum = 0.2;
  std::size_t epochs = 500;
  std::uint64_t seed = 0;

  void validate() const;
};

class TrainingDiverged : public Error {
 public:
  using Error::Error;
};

class Network {
 public:
  Network() = default;
  // All weights zero.
  explicit Network(const NetworkLayout& layout);

  // Weights uniform on [-0.5, 0.5] from a seeded generator, drawn layer by
  // layer in row-major order. Momentum accumulators start at zero.
  static Network initialize(const NetworkLayout& layout, std::uint64_t seed);

  const NetworkLayout& layout() const { return layout_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  ForwardPass forward(std::span<const double> x) const;

 private:
  NetworkLayout layout_;
  std::vector<DenseLayer> layers_;
};

double sigmoid(double z);

// Half the summed squared error of the network output against target.
double squared_error(const Network& net, std::span<const double> x, std::span<const double> target);

// dE/dw for every weight, E = 1/2 sum (o - t)^2.
Gradients compute_gradients(const Network& net, std::span<const double> x,
                            std::span<const double> target);

// w += -lr * grad + momentum * previous_update; stores the update.
void apply_update(Network& net, const Gradients& grads, const TrainConfig& cfg);

// One stochastic step. Returns the loss before the update; throws
// TrainingDiverged if it is not finite.
double backprop_update(Network& net, std::span<const double> x, std::span<const double> target,
                       const TrainConfig& cfg);

std::vector<double> one_hot(std::size_t label, std::size_t classes);

struct Example {
  std::vector<double> x;
  std::size_t label = 0;
};

struct TrainResult {
  Network network;
  // Mean per-instance loss of each epoch, measured before each update.
  std::vector<double> epoch_loss;
};

using EpochCallback = std::function<void(std::size_t epoch, double mean_loss)>;

// cfg.epochs passes over the data in the given order, one update per
// instance. Single-threaded and deterministic for a fixed config.
TrainResult train(std::span<const Example> data, const NetworkLayout& layout,
                  const TrainConfig& cfg, const EpochCallback& on_epoch = {});

// Index of the largest score; ties go to the lowest index.
std::size_t argmax_first(std::span<const double> scores);

struct Prediction {
  Polarity label = Polarity::Positive;
  std::array<double, kNumPolarities> scores{};
};

struct TrainedModel {
  Network network;
  ScalingParams scaling;
  FeatureMask mask;

  // Mask then scale.
  std::vector<double> prepare(const FeatureVector& v) const;
  // x must already be masked and scaled.
  Prediction predict_prepared(std::span<const double> x) const;
  Prediction predict(const FeatureVector& v) const { return predict_prepared(prepare(v)); }

  // Throws if the pieces disagree on dimensions.
  void validate() const;
};

class ModelFormatError : public Error {
 public:
  enum class Kind { Io, BadMagic, VersionMismatch, Checksum, Malformed };

  ModelFormatError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr std::uint32_t kModelFormatVersion = 1;

// Binary container: magic, version, layout, mask, scaling, weights
// (row-major little-endian IEEE-754 doubles), FNV-1a 64 checksum.
std::string serialize_model(const TrainedModel& model);
TrainedModel deserialize_model(std::string_view bytes);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace codemix
