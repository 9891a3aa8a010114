// Copyright 2026 the csd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSD_COMPILER_HPP
#define CSD_COMPILER_HPP

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "csd/liftgate.hpp"

namespace csd {

struct NotInGroup : std::runtime_error {
  explicit NotInGroup(const std::string &what) : std::runtime_error(what) {}
};

/// Free gates (the SWAP-transversal group) plus costly injected gates.
struct GeneratorSet {
  std::vector<SymplecticMatrix> free_generators;
  std::vector<std::pair<std::string, SymplecticMatrix>> injected;

  /// Optional physical realizations of the free generators, index-aligned
  /// with free_generators; used by schedule().
  std::vector<GateRecord> free_records;
};

struct Factorization {
  /// Alternating word f_1 s_1 f_2 s_2 ... f_m s_m f_final, stored as matrix
  /// product factors applied left to right.
  std::vector<SymplecticMatrix> factors;
  std::vector<int> injection_labels;  // index into GeneratorSet::injected, -1 for free
  size_t injection_count = 0;

  SymplecticMatrix product() const {
    SymplecticMatrix acc = SymplecticMatrix::identity(factors.at(0).dim());
    for (const auto &f : factors) {
      acc = acc.mul(f);
    }
    return acc;
  }
};

namespace detail {

inline std::string coset_key(const SymplecticMatrix &g,
                             const std::vector<SymplecticMatrix> &free_elements) {
  // Canonical member of the left coset g*F under lexicographic row order.
  std::string best;
  for (const auto &f : free_elements) {
    SymplecticMatrix cand = g.mul(f);
    std::string key(cand.dim() * 4, '\0');
    for (size_t i = 0; i < cand.dim(); i++) {
      uint32_t r = cand.row(i);
      key[4 * i] = char(r & 0xff);
      key[4 * i + 1] = char((r >> 8) & 0xff);
      key[4 * i + 2] = char((r >> 16) & 0xff);
      key[4 * i + 3] = char((r >> 24) & 0xff);
    }
    if (best.empty() || key < best) {
      best = key;
    }
  }
  return best;
}

struct CosetNode {
  SymplecticMatrix reached;  // actual product f_1 s_1 ... f_j s_j
  int parent = -1;
  int free_index = -1;
  int injection_index = -1;
  size_t level = 0;
};

}  // namespace detail

/// Exhaustive 0/1-cost BFS over left cosets of the free group. Free moves
/// stay within a coset, so the injection count of an element is the BFS level
/// of its coset.
class CosetSearch {
 public:
  CosetSearch(const GeneratorSet &gens, uint64_t free_cap = 1 << 20)
      : gens_(gens) {
    ClosureResult cl = group_closure(gens.free_generators, free_cap);
    if (cl.capped) {
      throw std::invalid_argument("free group too large for exact coset search");
    }
    free_elements_ = std::move(cl.elements);
    dim_ = free_elements_[0].dim();

    detail::CosetNode root;
    root.reached = SymplecticMatrix::identity(dim_);
    nodes_.push_back(root);
    key_to_node_[detail::coset_key(root.reached, free_elements_)] = 0;
    std::deque<int> frontier{0};
    while (!frontier.empty()) {
      int cur = frontier.front();
      frontier.pop_front();
      for (size_t fi = 0; fi < free_elements_.size(); fi++) {
        for (size_t si = 0; si < gens_.injected.size(); si++) {
          SymplecticMatrix next =
              nodes_[cur].reached.mul(free_elements_[fi]).mul(gens_.injected[si].second);
          std::string key = detail::coset_key(next, free_elements_);
          if (key_to_node_.count(key)) {
            continue;
          }
          detail::CosetNode node;
          node.reached = next;
          node.parent = cur;
          node.free_index = int(fi);
          node.injection_index = int(si);
          node.level = nodes_[cur].level + 1;
          key_to_node_[key] = int(nodes_.size());
          frontier.push_back(int(nodes_.size()));
          nodes_.push_back(node);
        }
      }
    }
  }

  size_t free_order() const { return free_elements_.size(); }
  size_t coset_count() const { return nodes_.size(); }

  /// Minimal injection count per element, aggregated over the group.
  std::map<size_t, uint64_t> injection_histogram() const {
    std::map<size_t, uint64_t> hist;
    for (const auto &node : nodes_) {
      hist[node.level] += free_elements_.size();
    }
    return hist;
  }

  /// Minimum-injection factorization of the target.
  Factorization factorize(const SymplecticMatrix &target) const {
    if (target.dim() != dim_ || !target.is_symplectic()) {
      throw std::invalid_argument("target must be symplectic of matching dimension");
    }
    auto it = key_to_node_.find(detail::coset_key(target, free_elements_));
    if (it == key_to_node_.end()) {
      throw NotInGroup("target not reachable from the generator set");
    }
    // Collect path root -> target coset.
    std::vector<int> path;
    for (int cur = it->second; cur != -1; cur = nodes_[cur].parent) {
      path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());

    Factorization fact;
    for (size_t i = 1; i < path.size(); i++) {
      const auto &node = nodes_[path[i]];
      fact.factors.push_back(free_elements_[node.free_index]);
      fact.injection_labels.push_back(-1);
      fact.factors.push_back(gens_.injected[node.injection_index].second);
      fact.injection_labels.push_back(node.injection_index);
      fact.injection_count++;
    }
    // Final free element: reached^-1 * target must lie in the free group.
    SymplecticMatrix tail = nodes_[it->second].reached.inverse().mul(target);
    bool found = false;
    for (const auto &f : free_elements_) {
      if (f == tail) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::logic_error("coset bookkeeping failure");
    }
    fact.factors.push_back(tail);
    fact.injection_labels.push_back(-1);
    return fact;
  }

 private:
  GeneratorSet gens_;
  std::vector<SymplecticMatrix> free_elements_;
  size_t dim_ = 0;
  std::vector<detail::CosetNode> nodes_;
  std::unordered_map<std::string, int> key_to_node_;
};

/// Greedy meet-in-the-middle fallback for groups whose free part is
/// enumerable but whose coset graph is not; explores up to `depth` injections
/// from the identity side and returns the first factorization found.
inline std::optional<Factorization> factorize_heuristic(const GeneratorSet &gens,
                                                        const SymplecticMatrix &target,
                                                        size_t depth = 6,
                                                        uint64_t free_cap = 1 << 20,
                                                        uint64_t node_cap = 2000000) {
  ClosureResult cl = group_closure(gens.free_generators, free_cap);
  if (cl.capped) {
    return std::nullopt;
  }
  const auto &fel = cl.elements;
  // Level sets of actual elements (coset reps) reached with j injections.
  std::unordered_map<std::string, detail::CosetNode> seen;
  std::vector<detail::CosetNode> nodes;
  detail::CosetNode root;
  root.reached = SymplecticMatrix::identity(target.dim());
  nodes.push_back(root);
  seen[detail::coset_key(root.reached, fel)] = root;
  std::deque<int> frontier{0};

  auto finish = [&](const detail::CosetNode &node) {
    Factorization fact;
    std::vector<detail::CosetNode> path;
    const detail::CosetNode *cur = &node;
    std::vector<const detail::CosetNode *> chain;
    while (cur->parent != -1) {
      chain.push_back(cur);
      cur = &nodes[cur->parent];
    }
    std::reverse(chain.begin(), chain.end());
    for (const auto *n : chain) {
      fact.factors.push_back(fel[n->free_index]);
      fact.injection_labels.push_back(-1);
      fact.factors.push_back(gens.injected[n->injection_index].second);
      fact.injection_labels.push_back(n->injection_index);
      fact.injection_count++;
    }
    SymplecticMatrix tail = node.reached.inverse().mul(target);
    fact.factors.push_back(tail);
    fact.injection_labels.push_back(-1);
    return fact;
  };

  std::string target_key = detail::coset_key(target, fel);
  if (detail::coset_key(root.reached, fel) == target_key) {
    return finish(root);
  }
  while (!frontier.empty()) {
    int cur = frontier.front();
    frontier.pop_front();
    if (nodes[cur].level >= depth) {
      continue;
    }
    for (size_t fi = 0; fi < fel.size(); fi++) {
      for (size_t si = 0; si < gens.injected.size(); si++) {
        SymplecticMatrix next = nodes[cur].reached.mul(fel[fi]).mul(gens.injected[si].second);
        std::string key = detail::coset_key(next, fel);
        if (seen.count(key)) {
          continue;
        }
        detail::CosetNode node;
        node.reached = next;
        node.parent = cur;
        node.free_index = int(fi);
        node.injection_index = int(si);
        node.level = nodes[cur].level + 1;
        nodes.push_back(node);
        seen[key] = node;
        if (key == target_key) {
          return finish(node);
        }
        if (nodes.size() >= node_cap) {
          return std::nullopt;
        }
        frontier.push_back(int(nodes.size()) - 1);
      }
    }
  }
  return std::nullopt;
}

/// One entry of a compiled physical schedule: a single-qubit Clifford layer
/// with a relabeling permutation, or an injection marker.
struct ScheduleStep {
  bool is_injection = false;
  std::string injection_label;
  std::vector<Mat2> layer;        // per-qubit single-qubit class
  std::vector<uint32_t> relabel;  // operators on q move to relabel[q]
};

struct ScheduleError : std::runtime_error {
  explicit ScheduleError(const std::string &what) : std::runtime_error(what) {}
};

namespace detail {

/// Compresses a SWAP-transversal circuit into one single-qubit layer plus a
/// relabeling permutation.
inline void compress_word(const CliffordCircuit &circuit, std::vector<Mat2> *layer,
                          std::vector<uint32_t> *relabel) {
  size_t n = circuit.n;
  layer->assign(n, Mat2::identity());
  relabel->resize(n);
  std::iota(relabel->begin(), relabel->end(), 0);
  for (const auto &op : circuit.ops) {
    if (op.g == Gate::SWAP) {
      // Find which wires currently map to op.a / op.b and swap their images.
      for (size_t q = 0; q < n; q++) {
        if ((*relabel)[q] == op.a) {
          (*relabel)[q] = op.b;
        } else if ((*relabel)[q] == op.b) {
          (*relabel)[q] = op.a;
        }
      }
    } else if (!is_two_qubit(op.g)) {
      // The gate acts on physical wire op.a; locate the source qubit.
      for (size_t q = 0; q < n; q++) {
        if ((*relabel)[q] == op.a) {
          (*layer)[q] = (*layer)[q].mul(Mat2::of_gate(op.g));
          break;
        }
      }
    } else {
      throw ScheduleError("free element contains an entangling gate");
    }
  }
}

}  // namespace detail

/// Collapses each free element of a factorization into one per-qubit layer
/// plus relabeling, alternating with injection markers.
inline std::vector<ScheduleStep> schedule(const Factorization &fact,
                                          const GeneratorSet &gens) {
  std::vector<ScheduleStep> out;
  for (size_t i = 0; i < fact.factors.size(); i++) {
    if (fact.injection_labels[i] >= 0) {
      ScheduleStep step;
      step.is_injection = true;
      step.injection_label = gens.injected[fact.injection_labels[i]].first;
      out.push_back(step);
      continue;
    }
    // Locate a bound record realizing this free element.
    const GateRecord *rec = nullptr;
    for (size_t r = 0; r < gens.free_records.size(); r++) {
      if (gens.free_records[r].action == fact.factors[i]) {
        rec = &gens.free_records[r];
        break;
      }
    }
    if (rec == nullptr) {
      throw ScheduleError("free element has no bound physical realization");
    }
    ScheduleStep step;
    detail::compress_word(rec->circuit, &step.layer, &step.relabel);
    out.push_back(step);
  }
  // Drop trailing or identity-only layers? Keep them; callers may fold.
  return out;
}

/// Rebuilds the compressed circuit of a non-injection schedule step.
inline CliffordCircuit schedule_step_circuit(const ScheduleStep &step, size_t n) {
  CliffordCircuit c(n);
  for (uint32_t q = 0; q < n; q++) {
    for (Gate g : step.layer[q].gate_word()) {
      c.add(g, q);
    }
  }
  detail::append_permutation(&c, step.relabel);
  return c;
}

}  // namespace csd

#endif
