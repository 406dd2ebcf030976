#include "codemix/mlp.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>

#include "codemix/random.hpp"

namespace codemix {

NetworkLayout NetworkLayout::with_default_hidden(std::size_t input_dim, std::size_t output_dim) {
  return NetworkLayout{input_dim, {(input_dim + output_dim + 1) / 2}, output_dim};
}

void NetworkLayout::validate() const {
  if (input_dim == 0 || output_dim == 0) throw Error("network layout: dimensions must be >= 1");
  for (auto h : hidden_sizes)
    if (h == 0) throw Error("network layout: hidden layer sizes must be >= 1");
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw Error("learning rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw Error("momentum must be in [0, 1)");
  if (epochs == 0) throw Error("epochs must be >= 1");
}

Network::Network(const NetworkLayout& layout) : layout_(layout) {
  layout.validate();
  std::size_t in = layout.input_dim;
  auto add_layer = [&](std::size_t out) {
    DenseLayer l;
    l.inputs = in;
    l.outputs = out;
    l.weights.assign(out * (in + 1), 0.0);
    l.previous_update.assign(l.weights.size(), 0.0);
    layers_.push_back(std::move(l));
    in = out;
  };
  for (auto h : layout.hidden_sizes) add_layer(h);
  add_layer(layout.output_dim);
}

Network Network::initialize(const NetworkLayout& layout, std::uint64_t seed) {
  Network net(layout);
  Rng rng(seed);
  for (auto& l : net.layers_)
    for (auto& w : l.weights) w = rng.uniform(-0.5, 0.5);
  return net;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

ForwardPass Network::forward(std::span<const double> x) const {
  if (x.size() != layout_.input_dim)
    throw Error("forward: input has " + std::to_string(x.size()) + " components, network expects " +
                std::to_string(layout_.input_dim));
  ForwardPass pass;
  pass.activations.reserve(layers_.size() + 1);
  pass.activations.emplace_back(x.begin(), x.end());
  for (const auto& l : layers_) {
    const auto& a = pass.activations.back();
    std::vector<double> next(l.outputs);
    for (std::size_t r = 0; r < l.outputs; ++r) {
      double z = l.w(r, l.inputs);
      for (std::size_t c = 0; c < l.inputs; ++c) z += l.w(r, c) * a[c];
      next[r] = sigmoid(z);
    }
    pass.activations.push_back(std::move(next));
  }
  return pass;
}

namespace {

double half_sse(std::span<const double> out, std::span<const double> target) {
  double e = 0.0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double d = out[k] - target[k];
    e += d * d;
  }
  return 0.5 * e;
}

void check_target(const Network& net, std::span<const double> target) {
  if (target.size() != net.layout().output_dim)
    throw Error("target has " + std::to_string(target.size()) + " components, network has " +
                std::to_string(net.layout().output_dim) + " outputs");
}

}  // namespace

double squared_error(const Network& net, std::span<const double> x, std::span<const double> target) {
  check_target(net, target);
  return half_sse(net.forward(x).output(), target);
}

Gradients compute_gradients(const Network& net, std::span<const double> x,
                            std::span<const double> target) {
  check_target(net, target);
  const auto pass = net.forward(x);
  const auto& layers = net.layers();

  Gradients g;
  g.loss = half_sse(pass.output(), target);
  g.per_layer.resize(layers.size());

  // delta for the output layer: (o - t) * o * (1 - o)
  std::vector<double> delta(pass.output().begin(), pass.output().end());
  for (std::size_t k = 0; k < delta.size(); ++k) {
    const double o = delta[k];
    delta[k] = (o - target[k]) * o * (1.0 - o);
  }

  for (std::size_t li = layers.size(); li-- > 0;) {
    const auto& l = layers[li];
    const auto& a_in = pass.activations[li];
    auto& grad = g.per_layer[li];
    grad.assign(l.weights.size(), 0.0);
    for (std::size_t r = 0; r < l.outputs; ++r) {
      for (std::size_t c = 0; c < l.inputs; ++c) grad[r * l.cols() + c] = delta[r] * a_in[c];
      grad[r * l.cols() + l.inputs] = delta[r];
    }
    if (li == 0) break;
    std::vector<double> prev(l.inputs, 0.0);
    for (std::size_t c = 0; c < l.inputs; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < l.outputs; ++r) s += l.w(r, c) * delta[r];
      prev[c] = s * a_in[c] * (1.0 - a_in[c]);
    }
    delta = std::move(prev);
  }
  return g;
}

void apply_update(Network& net, const Gradients& grads, const TrainConfig& cfg) {
  auto& layers = net.layers();
  if (grads.per_layer.size() != layers.size()) throw Error("apply_update: gradient shape mismatch");
  for (std::size_t li = 0; li < layers.size(); ++li) {
    auto& l = layers[li];
    const auto& g = grads.per_layer[li];
    if (g.size() != l.weights.size()) throw Error("apply_update: gradient shape mismatch");
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double step = -cfg.learning_rate * g[i] + cfg.momentum * l.previous_update[i];
      l.weights[i] += step;
      l.previous_update[i] = step;
    }
  }
}

double backprop_update(Network& net, std::span<const double> x, std::span<const double> target,
                       const TrainConfig& cfg) {
  const auto g = compute_gradients(net, x, target);
  if (!std::isfinite(g.loss)) throw TrainingDiverged("training diverged: loss is not finite");
  apply_update(net, g, cfg);
  return g.loss;
}

std::vector<double> one_hot(std::size_t label, std::size_t classes) {
  if (label >= classes) throw Error("one_hot: label out of range");
  std::vector<double> t(classes, 0.0);
  t[label] = 1.0;
  return t;
}

TrainResult train(std::span<const Example> data, const NetworkLayout& layout,
                  const TrainConfig& cfg, const EpochCallback& on_epoch) {
  cfg.validate();
  layout.validate();
  if (data.empty()) throw Error("train: empty dataset");
  std::vector<std::vector<double>> targets;
  targets.reserve(data.size());
  for (const auto& ex : data) {
    if (ex.x.size() != layout.input_dim)
      throw Error("train: example has " + std::to_string(ex.x.size()) +
                  " components, layout expects " + std::to_string(layout.input_dim));
    targets.push_back(one_hot(ex.label, layout.output_dim));
  }

  TrainResult result{Network::initialize(layout, cfg.seed), {}};
  result.epoch_loss.reserve(cfg.epochs);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      try {
        total += backprop_update(result.network, data[i].x, targets[i], cfg);
      } catch (const TrainingDiverged&) {
        throw TrainingDiverged("training diverged at epoch " + std::to_string(epoch + 1) +
                               ", instance " + std::to_string(i));
      }
    }
    const double mean = total / static_cast<double>(data.size());
    result.epoch_loss.push_back(mean);
    if (on_epoch) on_epoch(epoch + 1, mean);
  }
  for (const auto& l : result.network.layers())
    for (double w : l.weights)
      if (!std::isfinite(w)) throw TrainingDiverged("training diverged: non-finite weight");
  return result;
}

std::size_t argmax_first(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return best;
}

std::vector<double> TrainedModel::prepare(const FeatureVector& v) const {
  return scale(apply_mask(v, mask), scaling);
}

Prediction TrainedModel::predict_prepared(std::span<const double> x) const {
  if (network.layout().output_dim != kNumPolarities)
    throw Error("model does not have three outputs");
  const auto pass = network.forward(x);
  Prediction p;
  std::copy(pass.output().begin(), pass.output().end(), p.scores.begin());
  p.label = kPolarities[argmax_first(p.scores)];
  return p;
}

void TrainedModel::validate() const {
  network.layout().validate();
  if (network.layout().output_dim != kNumPolarities)
    throw Error("model does not have three outputs");
  const auto dim = mask.dimension();
  if (dim == 0) throw Error("model feature mask is empty");
  if (network.layout().input_dim != dim)
    throw Error("model input dimension " + std::to_string(network.layout().input_dim) +
                " does not match its feature mask (" + std::to_string(dim) + ")");
  if (scaling.dimension() != dim || scaling.max.size() != dim)
    throw Error("model scaling parameters do not match its feature mask");
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

constexpr char kMagic[8] = {'C', 'M', 'X', 'S', 'E', 'N', 'T', 'I'};

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(std::string_view s) { out_.append(s); }
  void size(std::size_t v) {
    if (v > UINT32_MAX) throw Error("model dimension too large to serialize");
    u32(static_cast<std::uint32_t>(v));
  }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  double f64() {
    const double v = std::bit_cast<double>(u64());
    if (!std::isfinite(v)) throw ModelFormatError(ModelFormatError::Kind::Malformed, "model contains a non-finite value");
    return v;
  }
  std::size_t dim(std::size_t limit = 1u << 20) {
    const auto v = u32();
    if (v > limit) throw ModelFormatError(ModelFormatError::Kind::Malformed, "model dimension out of range");
    return v;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) {
    if (bytes_.size() - pos_ < n)
      throw ModelFormatError(ModelFormatError::Kind::Malformed, "model file ends early");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_model(const TrainedModel& model) {
  model.validate();
  Writer w;
  w.raw(std::string_view(kMagic, sizeof kMagic));
  w.u32(kModelFormatVersion);

  const auto& layout = model.network.layout();
  w.size(layout.input_dim);
  w.size(layout.hidden_sizes.size());
  for (auto h : layout.hidden_sizes) w.size(h);
  w.size(layout.output_dim);

  w.u32(model.mask.to_bits());

  w.u8(model.scaling.enabled ? 1 : 0);
  w.size(model.scaling.dimension());
  for (double v : model.scaling.min) w.f64(v);
  for (double v : model.scaling.max) w.f64(v);

  for (const auto& l : model.network.layers())
    for (double v : l.weights) {
      if (!std::isfinite(v)) throw Error("refusing to save a model with non-finite weights");
      w.f64(v);
    }

  const auto checksum = fnv1a(w.bytes());
  w.u64(checksum);
  return std::move(w.bytes());
}

TrainedModel deserialize_model(std::string_view bytes) {
  using Kind = ModelFormatError::Kind;
  if (bytes.size() < sizeof kMagic || bytes.substr(0, sizeof kMagic) != std::string_view(kMagic, sizeof kMagic))
    throw ModelFormatError(Kind::BadMagic, "not a model file (bad magic bytes)");
  if (bytes.size() < sizeof kMagic + 4)
    throw ModelFormatError(Kind::Checksum, "model file truncated: checksum mismatch");

  Reader header(bytes.substr(sizeof kMagic, 4));
  const auto version = header.u32();
  if (version != kModelFormatVersion)
    throw ModelFormatError(Kind::VersionMismatch,
                           "unsupported model format version " + std::to_string(version) +
                               " (this build reads version " + std::to_string(kModelFormatVersion) + ")");

  if (bytes.size() < sizeof kMagic + 4 + 8)
    throw ModelFormatError(Kind::Checksum, "model file truncated: checksum mismatch");
  const auto body = bytes.substr(0, bytes.size() - 8);
  Reader trailer(bytes.substr(bytes.size() - 8));
  if (trailer.u64() != fnv1a(body))
    throw ModelFormatError(Kind::Checksum, "model file corrupt: checksum mismatch");

  Reader r(body.substr(sizeof kMagic + 4));
  NetworkLayout layout;
  layout.input_dim = r.dim();
  const auto hidden_layers = r.dim(64);
  for (std::size_t i = 0; i < hidden_layers; ++i) layout.hidden_sizes.push_back(r.dim());
  layout.output_dim = r.dim();

  TrainedModel model;
  try {
    model.mask = FeatureMask::from_bits(r.u32());
    model.scaling.enabled = r.u8() != 0;
    const auto sdim = r.dim();
    model.scaling.min.resize(sdim);
    model.scaling.max.resize(sdim);
    for (auto& v : model.scaling.min) v = r.f64();
    for (auto& v : model.scaling.max) v = r.f64();
    model.network = Network(layout);
    for (auto& l : model.network.layers())
      for (auto& v : l.weights) v = r.f64();
    if (!r.done()) throw ModelFormatError(Kind::Malformed, "trailing bytes in model file");
    model.validate();
  } catch (const ModelFormatError&) {
    throw;
  } catch (const Error& e) {
    throw ModelFormatError(Kind::Malformed, std::string("malformed model: ") + e.what());
  }
  return model;
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  const auto bytes = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ModelFormatError(ModelFormatError::Kind::Io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ModelFormatError(ModelFormatError::Kind::Io, "write failed for " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFormatError(ModelFormatError::Kind::Io, "cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_model(bytes);
}

}  // namespace codemix
