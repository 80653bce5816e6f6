#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "wganfuzz/bytes.hpp"
#include "wganfuzz/tensor.hpp"

namespace wganfuzz {

enum class Activation : uint8_t { Identity = 0, ReLU = 1, LeakyReLU = 2, Tanh = 3 };

struct LayerSpec {
  size_t in = 0;
  size_t out = 0;
  Activation act = Activation::Identity;
  double leaky_slope = 0.2;  // only read for LeakyReLU; must be in (0,1)
};

using MlpSpec = std::vector<LayerSpec>;

struct MlpLayer {
  Tensor2D w;              // (out, in)
  std::vector<double> b;   // (out)
  Activation act = Activation::Identity;
  double leaky_slope = 0.2;

  bool operator==(const MlpLayer&) const = default;
};

// Ordered dense layers; forward preserves the batch dimension.
struct Mlp {
  std::vector<MlpLayer> layers;

  size_t input_width() const { return layers.empty() ? 0 : layers.front().w.cols(); }
  size_t output_width() const { return layers.empty() ? 0 : layers.back().w.rows(); }
  size_t param_count() const;
  MlpSpec spec() const;

  bool operator==(const Mlp&) const = default;
};

// activations[0] is the network input, activations[i] the output of layer i-1.
struct ForwardCache {
  std::vector<Tensor2D> activations;
  MlpSpec spec;  // shapes of the net that produced the cache; stale caches are rejected
};

struct Gradients {
  std::vector<Tensor2D> dw;
  std::vector<std::vector<double>> db;
  Tensor2D dx;
};

// Uniform(-sqrt(1/fan_in), +sqrt(1/fan_in)) weights, zero biases.
Mlp init_mlp(const MlpSpec& spec, Rng& rng);

// Throws std::invalid_argument on shape mismatch and std::runtime_error when a
// layer produces a non-finite value.
Tensor2D forward(const Mlp& net, const Tensor2D& x, ForwardCache* cache = nullptr);

// Reverse-mode chain rule through the cached forward pass. dy must match the
// output shape recorded in the cache.
Gradients backward(const Mlp& net, const ForwardCache& cache, const Tensor2D& dy);

struct RmspropConfig {
  double alpha = 0.99;
  double eps = 1e-8;
};

// Per-parameter running mean of squared gradients, mirrors the net's shapes.
struct RmspropState {
  std::vector<Tensor2D> vw;
  std::vector<std::vector<double>> vb;

  static RmspropState like(const Mlp& net);
};

// v <- alpha*v + (1-alpha)*g^2 ; p <- p - lr*g/(sqrt(v)+eps)
void rmsprop_step(Mlp& net, const Gradients& grads, RmspropState& state, double lr,
                  const RmspropConfig& cfg = {});

// Projects every weight and bias into [-c, c].
void clip_weights(Mlp& net, double c);

double max_abs_param(const Mlp& net);

// Step decay: lr(e) = base * gamma^floor(e / step_size).
struct LrSchedule {
  double base_lr = 5e-5;
  size_t step_size = 50;
  double gamma = 1.0;  // in (0, 1]

  double at_epoch(size_t epoch) const;
};

// Versioned binary dump of layer shapes and parameters; round-trips bit-exact.
void write_mlp(std::ostream& os, const Mlp& net);
Mlp read_mlp(std::istream& is);

}  // namespace wganfuzz
