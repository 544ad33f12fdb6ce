#include "qsprep/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsprep/kernels.hpp"

namespace qsprep {

namespace {

constexpr double kNormTolerance = 1e-10;

std::size_t layout_product(const std::vector<Register>& layout) {
  std::size_t p = 1;
  for (const auto& r : layout) {
    if (r.dim == 0) throw std::invalid_argument("register dimension is zero");
    p *= r.dim;
  }
  return p;
}

}  // namespace

QuantumState::QuantumState(std::vector<Register> layout,
                           std::vector<double> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (layout_.empty()) throw std::invalid_argument("empty register layout");
  if (layout_product(layout_) != amplitudes_.size())
    throw std::invalid_argument(
        "amplitude length does not match layout product");
  const double norm2 = kern::sum_squares(amplitudes_);
  if (std::abs(norm2 - 1.0) > kNormTolerance)
    throw std::invalid_argument("state is not unit norm");
}

std::size_t QuantumState::register_index(const std::string& name) const {
  for (std::size_t i = 0; i < layout_.size(); ++i)
    if (layout_[i].name == name) return i;
  throw std::invalid_argument("unknown register: " + name);
}

std::size_t QuantumState::register_stride(std::size_t reg) const {
  std::size_t stride = 1;
  for (std::size_t i = layout_.size(); i-- > reg + 1;) stride *= layout_[i].dim;
  return stride;
}

std::vector<double> QuantumState::register_marginal(
    const std::string& name) const {
  const std::size_t reg = register_index(name);
  const std::size_t dim = layout_[reg].dim;
  const std::size_t stride = register_stride(reg);
  // Kahan compensation per outcome keeps the marginal exact enough for the
  // 1e-10 normalization contract at N up to 2^20.
  std::vector<double> acc(dim, 0.0), comp(dim, 0.0);
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    const std::size_t digit = (i / stride) % dim;
    const double y = amplitudes_[i] * amplitudes_[i] - comp[digit];
    const double t = acc[digit] + y;
    comp[digit] = (t - acc[digit]) - y;
    acc[digit] = t;
  }
  return acc;
}

bool QuantumState::same_layout(const QuantumState& other) const {
  if (layout_.size() != other.layout_.size()) return false;
  for (std::size_t i = 0; i < layout_.size(); ++i)
    if (layout_[i].name != other.layout_[i].name ||
        layout_[i].dim != other.layout_[i].dim)
      return false;
  return true;
}

QuantumState state_from_weights(const WeightVector& w) {
  std::vector<double> amps(w.size());
  kern::sqrt_scaled(w.entries(), 1.0 / w.total(), amps);
  return QuantumState({{"out", w.size()}}, std::move(amps));
}

namespace {

QuantumState collapse_on(const QuantumState& state, std::size_t reg,
                         std::size_t value) {
  const std::size_t stride = state.register_stride(reg);
  const std::size_t dim = state.layout()[reg].dim;
  std::vector<double> amps(state.amplitudes().begin(),
                           state.amplitudes().end());
  for (std::size_t i = 0; i < amps.size(); ++i)
    if ((i / stride) % dim != value) amps[i] = 0.0;
  const double branch = kern::sum_squares(amps);
  if (branch < 1e-28)
    throw std::runtime_error("measurement branch norm underflow");
  const double inv = 1.0 / std::sqrt(branch);
  for (double& a : amps) a *= inv;
  return QuantumState(state.layout(), std::move(amps));
}

}  // namespace

std::pair<std::size_t, QuantumState> measure(const QuantumState& state,
                                             const std::string& reg,
                                             Rng& rng) {
  const std::size_t reg_idx = state.register_index(reg);
  const std::vector<double> marginal = state.register_marginal(reg);
  const double u = rng.uniform01();
  double cum = 0.0;
  std::size_t outcome = 0;
  bool picked = false;
  for (std::size_t v = 0; v < marginal.size(); ++v) {
    cum += marginal[v];
    if (u < cum) {
      outcome = v;
      picked = true;
      break;
    }
  }
  if (!picked) {
    // u fell past the accumulated total (rounding shortfall); take the last
    // outcome with support.
    for (std::size_t v = marginal.size(); v-- > 0;) {
      if (marginal[v] > 0.0) {
        outcome = v;
        break;
      }
    }
  }
  return {outcome, collapse_on(state, reg_idx, outcome)};
}

QuantumState project_register(const QuantumState& state, const std::string& reg,
                              std::size_t value) {
  const std::size_t reg_idx = state.register_index(reg);
  if (value >= state.layout()[reg_idx].dim)
    throw std::invalid_argument("projection value outside register dimension");
  return collapse_on(state, reg_idx, value);
}

QuantumState drop_register(const QuantumState& state, const std::string& reg,
                           std::size_t value) {
  const std::size_t reg_idx = state.register_index(reg);
  const std::size_t dim = state.layout()[reg_idx].dim;
  const std::size_t stride = state.register_stride(reg_idx);
  if (value >= dim)
    throw std::invalid_argument("drop value outside register dimension");
  auto amps = state.amplitudes();
  std::vector<double> kept;
  kept.reserve(amps.size() / dim);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::size_t digit = (i / stride) % dim;
    if (digit == value) {
      kept.push_back(amps[i]);
    } else if (amps[i] != 0.0) {
      throw std::invalid_argument(
          "drop_register: register is not definite at the requested value");
    }
  }
  std::vector<Register> layout;
  for (std::size_t i = 0; i < state.layout().size(); ++i)
    if (i != reg_idx) layout.push_back(state.layout()[i]);
  return QuantumState(std::move(layout), std::move(kept));
}

QuantumState permute_registers(const QuantumState& state,
                               const std::vector<std::string>& order) {
  if (order.size() != state.layout().size())
    throw std::invalid_argument("permute_registers: order size mismatch");
  std::vector<std::size_t> src_reg(order.size());
  std::vector<Register> new_layout(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    src_reg[k] = state.register_index(order[k]);
    new_layout[k] = state.layout()[src_reg[k]];
  }
  std::vector<std::size_t> src_stride(order.size());
  for (std::size_t k = 0; k < order.size(); ++k)
    src_stride[k] = state.register_stride(src_reg[k]);
  std::vector<double> amps(state.dim());
  const auto src = state.amplitudes();
  std::vector<std::size_t> digits(order.size(), 0);
  for (std::size_t flat = 0; flat < amps.size(); ++flat) {
    // Decode flat index in the new layout, re-encode in the old one.
    std::size_t rem = flat, src_flat = 0;
    for (std::size_t k = order.size(); k-- > 0;) {
      digits[k] = rem % new_layout[k].dim;
      rem /= new_layout[k].dim;
    }
    for (std::size_t k = 0; k < order.size(); ++k)
      src_flat += digits[k] * src_stride[k];
    amps[flat] = src[src_flat];
  }
  return QuantumState(std::move(new_layout), std::move(amps));
}

double fidelity(const QuantumState& a, const QuantumState& b) {
  if (!a.same_layout(b))
    throw std::invalid_argument("fidelity: register layouts differ");
  const double ip = kern::dot(a.amplitudes(), b.amplitudes());
  return ip * ip;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw std::invalid_argument("tv_distance: length mismatch");
  if (p.empty()) throw std::invalid_argument("tv_distance: empty vectors");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < 0.0 || q[i] < 0.0)
      throw std::invalid_argument("tv_distance: negative entry");
  if (std::abs(kern::sum(p) - 1.0) > 1e-9 ||
      std::abs(kern::sum(q) - 1.0) > 1e-9)
    throw std::invalid_argument("tv_distance: vectors must sum to 1");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace qsprep
