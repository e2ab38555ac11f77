#include "distl0/master_bnb.hpp"

#include "distl0/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

namespace distl0 {

double evaluate_cuts(std::span<const Cut> cuts, const Support& s) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Cut& cut : cuts) {
    double v = cut.value;
    for (std::size_t i = 0; i < s.size(); ++i) {
      v += cut.grad(static_cast<Eigen::Index>(i)) *
           (static_cast<double>(s.bits[i]) - static_cast<double>(cut.anchor.bits[i]));
    }
    best = std::max(best, v);
  }
  return best;
}

namespace {

struct Node {
  double bound;
  std::uint64_t seq;
  std::size_t depth;
  std::size_t ones;
  std::vector<std::uint8_t> bits;
  std::vector<double> fixed;  // per cut: base + gradient over the fixed ones
};

struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(std::span<const Cut> cuts, std::size_t p, std::size_t k)
      : cuts_(cuts), p_(p), k_(std::min(k, p)), order_(p), rank_(p), base_(cuts.size()), negatives_(cuts.size()) {
    std::vector<double> magnitude(p, 0.0);
    double scale = 0.0;
    for (std::size_t j = 0; j < cuts.size(); ++j) {
      const Cut& c = cuts[j];
      base_[j] = c.value;
      double cut_scale = std::abs(c.value);
      for (std::size_t i = 0; i < p; ++i) {
        const double g = c.grad(static_cast<Eigen::Index>(i));
        base_[j] -= g * static_cast<double>(c.anchor.bits[i]);
        magnitude[i] = std::max(magnitude[i], std::abs(g));
        cut_scale += 2.0 * std::abs(g);
      }
      scale = std::max(scale, cut_scale);
    }
    // Bounds and leaf values are summed in different orders; nodes within
    // this slack of the incumbent are kept so exact ties are never pruned.
    slack_ = 1e-9 * (1.0 + scale);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return magnitude[a] > magnitude[b]; });
    for (std::size_t pos = 0; pos < p; ++pos) rank_[order_[pos]] = pos;
    // negative gradient entries of each cut, most negative first
    for (std::size_t j = 0; j < cuts.size(); ++j) {
      auto& neg = negatives_[j];
      for (std::size_t i = 0; i < p; ++i) {
        const double g = cuts[j].grad(static_cast<Eigen::Index>(i));
        if (g < 0.0) neg.emplace_back(g, rank_[i]);
      }
      std::stable_sort(neg.begin(), neg.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }
  }

  MasterResult solve() {
    seed_incumbent();
    std::priority_queue<Node, std::vector<Node>, WorseNode> open;
    Node root{0.0, 0, 0, 0, std::vector<std::uint8_t>(p_, 0), base_};
    root.bound = bound(root);
    open.push(std::move(root));
    std::uint64_t seq = 1;
    std::size_t explored = 0;

    while (!open.empty()) {
      Node node = open.top();
      open.pop();
      if (node.bound > best_value_ + slack_) break;
      ++explored;
      if (node.ones == k_ || node.depth == p_) {
        Support s;
        s.bits = std::move(node.bits);
        offer(std::move(s));
        continue;
      }
      const std::size_t coord = order_[node.depth];
      if (node.ones < k_) {
        Node one{0.0, seq++, node.depth + 1, node.ones + 1, node.bits, node.fixed};
        one.bits[coord] = 1;
        for (std::size_t j = 0; j < cuts_.size(); ++j) one.fixed[j] += cuts_[j].grad(static_cast<Eigen::Index>(coord));
        one.bound = bound(one);
        if (one.bound <= best_value_ + slack_) open.push(std::move(one));
      }
      Node zero{0.0, seq++, node.depth + 1, node.ones, std::move(node.bits), std::move(node.fixed)};
      zero.bound = bound(zero);
      if (zero.bound <= best_value_ + slack_) open.push(std::move(zero));
    }
    return MasterResult{best_, best_value_, explored};
  }

 private:
  double bound(const Node& node) const {
    const std::size_t budget = k_ - node.ones;
    double result = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < cuts_.size(); ++j) {
      double b = node.fixed[j];
      std::size_t taken = 0;
      for (const auto& [g, pos] : negatives_[j]) {
        if (taken == budget) break;
        if (pos < node.depth) continue;
        b += g;
        ++taken;
      }
      result = std::max(result, b);
    }
    return result;
  }

  void offer(Support s) {
    const double v = evaluate_cuts(cuts_, s);
    if (v < best_value_ || (v == best_value_ && s < best_)) {
      best_value_ = v;
      best_ = std::move(s);
    }
  }

  void seed_incumbent() {
    for (const Cut& c : cuts_)
      if (c.anchor.count() <= k_) offer(c.anchor);

    const Vector& g = cuts_.back().grad;
    std::vector<std::size_t> idx(p_);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return g(static_cast<Eigen::Index>(a)) < g(static_cast<Eigen::Index>(b));
    });
    Support greedy(p_);
    for (std::size_t t = 0; t < k_ && g(static_cast<Eigen::Index>(idx[t])) < 0.0; ++t) greedy.bits[idx[t]] = 1;
    offer(std::move(greedy));
  }

  std::span<const Cut> cuts_;
  std::size_t p_;
  std::size_t k_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> rank_;  // position of each coordinate in order_
  std::vector<double> base_;
  std::vector<std::vector<std::pair<double, std::size_t>>> negatives_;
  double slack_ = 0.0;
  Support best_;
  double best_value_ = std::numeric_limits<double>::infinity();
};

}  // namespace

MasterResult solve_master(std::span<const Cut> cuts, std::size_t p, std::size_t k) {
  if (cuts.empty()) throw Error(ErrorKind::NoCuts, "master problem needs at least one cut");
  for (const Cut& c : cuts) {
    if (static_cast<std::size_t>(c.grad.size()) != p || c.anchor.size() != p) {
      throw Error(ErrorKind::DimensionMismatch, "cut dimension differs from p=" + std::to_string(p));
    }
    if (!std::isfinite(c.value) || !c.grad.allFinite()) {
      throw Error(ErrorKind::InvalidParams, "cut has non-finite entries");
    }
  }
  return BranchAndBound(cuts, p, k).solve();
}

}  // namespace distl0
