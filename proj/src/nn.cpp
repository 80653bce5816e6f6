#include "wganfuzz/nn.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace wganfuzz {

namespace {

void apply_activation(Tensor2D& z, Activation act, double slope) {
  switch (act) {
    case Activation::Identity:
      return;
    case Activation::ReLU:
      for (double& v : z.values())
        if (v < 0) v = 0;
      return;
    case Activation::LeakyReLU:
      for (double& v : z.values())
        if (v < 0) v *= slope;
      return;
    case Activation::Tanh:
      for (double& v : z.values()) v = std::tanh(v);
      return;
  }
}

// Local derivative reconstructed from the activation output. Works for every
// supported kind because sign(a) == sign(z) for the rectifier family.
double activation_deriv(double a, Activation act, double slope) {
  switch (act) {
    case Activation::Identity:
      return 1.0;
    case Activation::ReLU:
      return a > 0 ? 1.0 : 0.0;
    case Activation::LeakyReLU:
      return a > 0 ? 1.0 : slope;
    case Activation::Tanh:
      return 1.0 - a * a;
  }
  return 1.0;
}

void check_finite(const Tensor2D& t, const char* what) {
  if (!t.all_finite()) throw std::runtime_error(std::string("non-finite values in ") + what);
}

void write_raw(std::ostream& os, const void* p, size_t n) {
  os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void read_raw(std::istream& is, void* p, size_t n) {
  is.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (!is) throw std::runtime_error("truncated network dump");
}

constexpr char kMlpMagic[8] = {'W', 'F', 'N', 'N', '0', '0', '0', '1'};

}  // namespace

size_t Mlp::param_count() const {
  size_t n = 0;
  for (const auto& l : layers) n += l.w.size() + l.b.size();
  return n;
}

MlpSpec Mlp::spec() const {
  MlpSpec s;
  for (const auto& l : layers) s.push_back({l.w.cols(), l.w.rows(), l.act, l.leaky_slope});
  return s;
}

Mlp init_mlp(const MlpSpec& spec, Rng& rng) {
  Mlp net;
  size_t prev_out = 0;
  for (const auto& ls : spec) {
    if (ls.in == 0 || ls.out == 0) throw std::invalid_argument("zero layer width");
    if (!net.layers.empty() && ls.in != prev_out)
      throw std::invalid_argument("layer widths do not chain");
    if (ls.act == Activation::LeakyReLU && (ls.leaky_slope <= 0 || ls.leaky_slope >= 1))
      throw std::invalid_argument("leaky slope must be in (0,1)");
    MlpLayer layer;
    layer.act = ls.act;
    layer.leaky_slope = ls.leaky_slope;
    layer.w = Tensor2D(ls.out, ls.in);
    layer.b.assign(ls.out, 0.0);
    const double bound = std::sqrt(1.0 / static_cast<double>(ls.in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double& v : layer.w.values()) v = dist(rng);
    prev_out = ls.out;
    net.layers.push_back(std::move(layer));
  }
  return net;
}

Tensor2D forward(const Mlp& net, const Tensor2D& x, ForwardCache* cache) {
  if (net.layers.empty()) throw std::invalid_argument("forward on empty net");
  if (x.cols() != net.input_width())
    throw std::invalid_argument("input width does not match first layer");
  check_finite(x, "network input");

  if (cache) {
    cache->activations.clear();
    cache->activations.reserve(net.layers.size() + 1);
    cache->activations.push_back(x);
    cache->spec = net.spec();
  }

  Tensor2D cur = x;
  for (const auto& layer : net.layers) {
    Tensor2D z = matmul_abt(cur, layer.w);  // (n,in)·(out,in)ᵀ
    for (size_t r = 0; r < z.rows(); ++r) {
      double* row = z.row(r);
      for (size_t c = 0; c < z.cols(); ++c) row[c] += layer.b[c];
    }
    apply_activation(z, layer.act, layer.leaky_slope);
    check_finite(z, "layer output");
    cur = std::move(z);
    if (cache) cache->activations.push_back(cur);
  }
  return cur;
}

Gradients backward(const Mlp& net, const ForwardCache& cache, const Tensor2D& dy) {
  const size_t n_layers = net.layers.size();
  if (cache.activations.size() != n_layers + 1 || cache.spec != net.spec())
    throw std::invalid_argument("stale forward cache");
  if (!dy.same_shape(cache.activations.back()))
    throw std::invalid_argument("dy shape does not match forward output");

  Gradients g;
  g.dw.resize(n_layers);
  g.db.resize(n_layers);

  Tensor2D delta = dy;
  for (size_t li = n_layers; li-- > 0;) {
    const MlpLayer& layer = net.layers[li];
    const Tensor2D& out = cache.activations[li + 1];
    const Tensor2D& in = cache.activations[li];

    // dz = delta ⊙ act'(z), with act' reconstructed from the cached output
    Tensor2D dz = delta;
    if (layer.act != Activation::Identity) {
      for (size_t i = 0; i < dz.size(); ++i)
        dz.values()[i] *= activation_deriv(out.values()[i], layer.act, layer.leaky_slope);
    }

    g.dw[li] = matmul_atb(dz, in);  // (out,in)
    g.db[li].assign(layer.b.size(), 0.0);
    for (size_t r = 0; r < dz.rows(); ++r) {
      const double* row = dz.row(r);
      for (size_t c = 0; c < dz.cols(); ++c) g.db[li][c] += row[c];
    }
    delta = matmul(dz, layer.w);  // (n,out)·(out,in)
  }
  g.dx = std::move(delta);
  return g;
}

RmspropState RmspropState::like(const Mlp& net) {
  RmspropState s;
  for (const auto& l : net.layers) {
    s.vw.emplace_back(l.w.rows(), l.w.cols());
    s.vb.emplace_back(l.b.size(), 0.0);
  }
  return s;
}

void rmsprop_step(Mlp& net, const Gradients& grads, RmspropState& state, double lr,
                  const RmspropConfig& cfg) {
  if (grads.dw.size() != net.layers.size() || state.vw.size() != net.layers.size())
    throw std::invalid_argument("rmsprop shapes do not match net");
  for (size_t li = 0; li < net.layers.size(); ++li) {
    MlpLayer& layer = net.layers[li];
    auto& vw = state.vw[li].values();
    const auto& gw = grads.dw[li].values();
    auto& w = layer.w.values();
    for (size_t i = 0; i < w.size(); ++i) {
      vw[i] = cfg.alpha * vw[i] + (1.0 - cfg.alpha) * gw[i] * gw[i];
      w[i] -= lr * gw[i] / (std::sqrt(vw[i]) + cfg.eps);
    }
    auto& vb = state.vb[li];
    const auto& gb = grads.db[li];
    for (size_t i = 0; i < layer.b.size(); ++i) {
      vb[i] = cfg.alpha * vb[i] + (1.0 - cfg.alpha) * gb[i] * gb[i];
      layer.b[i] -= lr * gb[i] / (std::sqrt(vb[i]) + cfg.eps);
    }
  }
}

void clip_weights(Mlp& net, double c) {
  if (c <= 0) throw std::invalid_argument("clip constant must be positive");
  auto clamp = [c](double v) { return v > c ? c : (v < -c ? -c : v); };
  for (auto& layer : net.layers) {
    for (double& v : layer.w.values()) v = clamp(v);
    for (double& v : layer.b) v = clamp(v);
  }
}

double max_abs_param(const Mlp& net) {
  double m = 0.0;
  for (const auto& layer : net.layers) {
    for (double v : layer.w.values()) m = std::max(m, std::fabs(v));
    for (double v : layer.b) m = std::max(m, std::fabs(v));
  }
  return m;
}

double LrSchedule::at_epoch(size_t epoch) const {
  double lr = base_lr;
  if (step_size > 0 && gamma != 1.0) lr *= std::pow(gamma, static_cast<double>(epoch / step_size));
  return lr;
}

void write_mlp(std::ostream& os, const Mlp& net) {
  write_raw(os, kMlpMagic, sizeof(kMlpMagic));
  const uint32_t n = static_cast<uint32_t>(net.layers.size());
  write_raw(os, &n, sizeof(n));
  for (const auto& l : net.layers) {
    const uint32_t in = static_cast<uint32_t>(l.w.cols());
    const uint32_t out = static_cast<uint32_t>(l.w.rows());
    const uint8_t act = static_cast<uint8_t>(l.act);
    write_raw(os, &in, sizeof(in));
    write_raw(os, &out, sizeof(out));
    write_raw(os, &act, sizeof(act));
    write_raw(os, &l.leaky_slope, sizeof(double));
    write_raw(os, l.w.data(), l.w.size() * sizeof(double));
    write_raw(os, l.b.data(), l.b.size() * sizeof(double));
  }
}

Mlp read_mlp(std::istream& is) {
  char magic[8];
  read_raw(is, magic, sizeof(magic));
  if (std::memcmp(magic, kMlpMagic, sizeof(magic)) != 0)
    throw std::runtime_error("bad network dump magic");
  uint32_t n = 0;
  read_raw(is, &n, sizeof(n));
  Mlp net;
  for (uint32_t li = 0; li < n; ++li) {
    uint32_t in = 0, out = 0;
    uint8_t act = 0;
    MlpLayer layer;
    read_raw(is, &in, sizeof(in));
    read_raw(is, &out, sizeof(out));
    read_raw(is, &act, sizeof(act));
    read_raw(is, &layer.leaky_slope, sizeof(double));
    if (act > static_cast<uint8_t>(Activation::Tanh))
      throw std::runtime_error("bad activation kind in dump");
    layer.act = static_cast<Activation>(act);
    layer.w = Tensor2D(out, in);
    layer.b.assign(out, 0.0);
    read_raw(is, layer.w.data(), layer.w.size() * sizeof(double));
    read_raw(is, layer.b.data(), layer.b.size() * sizeof(double));
    net.layers.push_back(std::move(layer));
  }
  return net;
}

}  // namespace wganfuzz
