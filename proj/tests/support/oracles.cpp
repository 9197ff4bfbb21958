#include "support/oracles.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "stackrl/generator/cell.h"
#include "stackrl/reinforce/rollout.h"

namespace stackrl::testing {

int brute_force_benzene_count(const chem::MoleculeGraph& g) {
  const std::size_t n = g.atom_count();
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.atom(i).element == "C" && g.atom(i).aromatic) eligible.push_back(i);
  }
  if (eligible.size() < 6) return 0;
  std::set<std::vector<std::pair<std::size_t, std::size_t>>> cycles;
  std::vector<bool> choose(eligible.size(), false);
  std::fill(choose.end() - 6, choose.end(), true);
  do {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < eligible.size(); ++i) {
      if (choose[i]) subset.push_back(eligible[i]);
    }
    // Orderings that keep subset[0] first cover every cycle through the subset.
    std::vector<std::size_t> rest(subset.begin() + 1, subset.end());
    do {
      std::vector<std::size_t> ring = {subset[0]};
      ring.insert(ring.end(), rest.begin(), rest.end());
      bool closed = true;
      std::vector<std::pair<std::size_t, std::size_t>> edges;
      for (std::size_t k = 0; k < 6 && closed; ++k) {
        const std::size_t a = ring[k], b = ring[(k + 1) % 6];
        closed = g.bond_between(a, b).has_value();
        edges.emplace_back(std::min(a, b), std::max(a, b));
      }
      if (closed) {
        std::sort(edges.begin(), edges.end());
        cycles.insert(edges);
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  } while (std::next_permutation(choose.begin(), choose.end()));
  return static_cast<int>(cycles.size());
}

std::vector<std::vector<double>> scalar_stack_update(const std::vector<std::vector<double>>& stack,
                                                     double a_push, double a_pop, double a_noop,
                                                     const std::vector<double>& pushed) {
  const std::size_t depth = stack.size();
  auto old = [&](std::size_t row, std::size_t col) { return row < depth ? stack[row][col] : 0.0; };
  std::vector<std::vector<double>> out(depth, std::vector<double>(pushed.size()));
  for (std::size_t i = 0; i < depth; ++i) {
    for (std::size_t j = 0; j < pushed.size(); ++j) {
      const double above = i == 0 ? pushed[j] : old(i - 1, j);
      out[i][j] = a_push * above + a_pop * old(i + 1, j) + a_noop * old(i, j);
    }
  }
  return out;
}

chem::Vocabulary letter_vocabulary(std::size_t ordinary) {
  static const std::string letters = "CONSPFIB";
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < ordinary; ++i) tokens.emplace_back(1, letters.at(i));
  return chem::Vocabulary(tokens);
}

generator::GeneratorModel tiny_generator(std::size_t hidden, std::size_t width, std::size_t depth,
                                         std::size_t ordinary_tokens, std::size_t max_len, std::uint64_t seed,
                                         double init_scale) {
  generator::GeneratorConfig cfg;
  cfg.hidden_size = hidden;
  cfg.stack_width = width;
  cfg.stack_depth = depth;
  cfg.stack_read_depth = std::min<std::size_t>(2, std::max<std::size_t>(depth, 1));
  cfg.embedding_dim = 5;
  cfg.vocab_size = ordinary_tokens + 3;
  cfg.max_len = max_len;
  Rng rng(seed);
  generator::GeneratorModel model(cfg, letter_vocabulary(ordinary_tokens), rng);
  // Random init leaves biases at zero; give them values so every block matters.
  for (auto& [name, t] : model.parameters().entries()) {
    const bool embedding = name == generator::param::kEmbedding;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (embedding) {
        t[i] = init_scale * uniform(rng, -1.0, 1.0);
        continue;
      }
      t[i] = init_scale * (t[i] == 0.0 ? uniform(rng, -0.5, 0.5) : t[i] * 1.5);
    }
  }
  return model;
}

std::vector<chem::TokenSequence> enumerate_sequences(const generator::GeneratorConfig& config) {
  std::vector<chem::TokenSequence> out;
  const auto first = static_cast<chem::TokenId>(chem::kEnd + 1);
  const auto last = static_cast<chem::TokenId>(config.vocab_size);
  std::vector<chem::TokenSequence> frontier = {chem::TokenSequence{{chem::kStart}}};
  for (std::size_t len = 0; len < config.max_len; ++len) {
    std::vector<chem::TokenSequence> next;
    for (const auto& prefix : frontier) {
      auto done = prefix;
      done.ids.push_back(chem::kEnd);
      out.push_back(std::move(done));
      for (chem::TokenId id = first; id < last; ++id) {
        auto longer = prefix;
        longer.ids.push_back(id);
        next.push_back(std::move(longer));
      }
    }
    frontier = std::move(next);
  }
  out.insert(out.end(), frontier.begin(), frontier.end());
  return out;
}

ExactObjective exact_objective(const generator::GeneratorModel& model, const reinforce::RewardFunction& reward_fn,
                               bool with_gradient) {
  ExactObjective out;
  for (const auto& seq : enumerate_sequences(model.config())) {
    const double lp = generator::sequence_log_prob(model, seq);
    const double p = std::exp(lp);
    const double r = reinforce::make_episode(model, reward_fn, seq, lp).reward;
    out.value += p * r;
    out.total_probability += p;
    if (with_gradient) out.weighted.accumulate(generator::log_prob_gradient(model, seq, p * r).gradient);
  }
  return out;
}

autodiff::Gradients finite_difference_objective(const generator::GeneratorModel& model,
                                                const reinforce::RewardFunction& reward_fn, double eps) {
  autodiff::Gradients out = model.parameters().zeros_like();
  generator::GeneratorModel probe = model;
  for (auto& [name, tensor] : probe.parameters().entries()) {
    auto& target = out.at(name);
    for (std::size_t i = 0; i < tensor.size(); ++i) {
      const double saved = tensor[i];
      tensor[i] = saved + eps;
      const double plus = exact_objective(probe, reward_fn, false).value;
      tensor[i] = saved - eps;
      const double minus = exact_objective(probe, reward_fn, false).value;
      tensor[i] = saved;
      target[i] = (plus - minus) / (2.0 * eps);
    }
  }
  return out;
}

double dot(const autodiff::NamedTensors& a, const autodiff::NamedTensors& b) {
  double s = 0.0;
  for (const auto& [name, t] : a.entries()) {
    const auto* other = b.find(name);
    if (other == nullptr) continue;
    for (std::size_t i = 0; i < t.size(); ++i) s += t[i] * (*other)[i];
  }
  return s;
}

double scalar_lstm_predict(const predictor::PredictorModel& model, const std::vector<chem::TokenId>& ids) {
  const auto& p = model.parameters();
  const auto& c = model.config();
  const std::size_t m = c.hidden_size, e = c.embedding_dim;
  std::vector<double> h(m, 0.0), cell(m, 0.0);
  auto sig = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  for (chem::TokenId id : ids) {
    std::vector<double> gi(m), gf(m), gg(m), go(m);
    for (std::size_t u = 0; u < m; ++u) {
      double pre[4];
      const char gates[4] = {'i', 'f', 'g', 'o'};
      for (int k = 0; k < 4; ++k) {
        const std::string suffix(1, gates[k]);
        const auto& W = p.at("lstm.W_" + suffix);
        const auto& U = p.at("lstm.U_" + suffix);
        double acc = p.at("lstm.b_" + suffix)[u];
        for (std::size_t j = 0; j < e; ++j) acc += W.at(u, j) * p.at("embedding").at(id, j);
        for (std::size_t j = 0; j < m; ++j) acc += U.at(u, j) * h[j];
        pre[k] = acc;
      }
      gi[u] = sig(pre[0]);
      gf[u] = sig(pre[1]);
      gg[u] = std::tanh(pre[2]);
      go[u] = sig(pre[3]);
    }
    for (std::size_t u = 0; u < m; ++u) {
      cell[u] = gf[u] * cell[u] + gi[u] * gg[u];
      h[u] = go[u] * std::tanh(cell[u]);
    }
  }
  const auto& W1 = p.at("dense1.W");
  const auto& b1 = p.at("dense1.b");
  const auto& W2 = p.at("dense2.W");
  double out = p.at("dense2.b")[0];
  for (std::size_t r = 0; r < W1.rows(); ++r) {
    double acc = b1[r];
    for (std::size_t j = 0; j < m; ++j) acc += W1.at(r, j) * h[j];
    out += W2.at(0, r) * std::max(acc, 0.0);
  }
  return c.target_scale * out + c.target_offset;
}

}  // namespace stackrl::testing
